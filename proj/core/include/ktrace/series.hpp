#pragma once

#include <utility>
#include <vector>

#include "ktrace/linops.hpp"

namespace ktrace {

/// One-sided power series sum_{k=0}^{K} a_k z^k (a finite member of the class
/// with sum k |a_k| < inf).
class CoefficientSeries {
public:
    CoefficientSeries() = default;
    explicit CoefficientSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Complex at(int k) const {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Complex{};
    }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    /// sum_k k |a_k|
    double weighted_norm() const;

private:
    std::vector<Complex> coeffs_;
};

/// Two-sided table c(n), n = -K..K. Used both for test functions psi and for
/// Fourier coefficients of the spectral shift.
class LaurentSeries {
public:
    LaurentSeries() : LaurentSeries(0) {}
    explicit LaurentSeries(int max_mode);
    static LaurentSeries from_modes(const std::vector<std::pair<int, Complex>>& modes);
    /// Embeds a one-sided series as the nonnegative modes.
    static LaurentSeries from_series(const CoefficientSeries& series);

    int max_mode() const { return max_mode_; }
    Complex at(int n) const {
        return n >= -max_mode_ && n <= max_mode_ ? coeffs_[n + max_mode_] : Complex{};
    }
    void set(int n, Complex value);

    /// sum_n |n c(n)|
    double weighted_norm() const;
    /// sum_n |c(n)|
    double absolute_sum() const;
    bool is_conjugate_symmetric(double tol) const;

private:
    int max_mode_ = 0;
    std::vector<Complex> coeffs_;
};

}  // namespace ktrace
