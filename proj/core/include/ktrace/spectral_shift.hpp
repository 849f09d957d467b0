#pragma once

#include <vector>

#include "ktrace/linops.hpp"
#include "ktrace/series.hpp"

namespace ktrace {

/// m_n = Tr(T^n - T0^n), n = 1..n_max.
struct MomentSequence {
    std::vector<Complex> values;
    double perturbation_trace_norm = 0.0;  // ||T - T0||_1
    double norm_bound = 1.0;               // max(||T||, ||T0||)
    bool both_strict = false;

    int n_max() const { return static_cast<int>(values.size()); }
    Complex at(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
    /// n ||T - T0||_1 max(||T||, ||T0||)^{n-1}
    double telescoping_bound(int n) const;
};

/// Fourier table of the real spectral shift function, normalized by xi^(0) = 0.
struct SpectralShift {
    LaurentSeries coeffs;
    /// max(||T||, ||T0||) of the generating pair; 1 when unknown.
    double norm_bound = 1.0;
    bool both_strict = false;

    int n_max() const { return coeffs.max_mode(); }
    Complex at(int n) const { return coeffs.at(n); }
    /// Same function shifted by an additive constant.
    SpectralShift with_constant(Complex c) const;
};

inline constexpr int kDefaultMomentCount = 64;
inline constexpr double kDefaultRealTolerance = 1e-10;

MomentSequence moments(const ContractionPair& pair, int n_max = kDefaultMomentCount);

/// xi^(-n) = m_n / (2 pi i n), xi^(n) = conj(xi^(-n)), xi^(0) = 0.
SpectralShift ssf_from_moments(const MomentSequence& m);

/// Abel mean sum_n xi^(n) r^|n| e^{int}. Throws NonRealResult if the imaginary
/// residual exceeds real_tol.
double evaluate_ssf(const SpectralShift& s, double t, double abel_radius,
                    double real_tol = kDefaultRealTolerance);

struct AdjointRelationReport {
    SpectralShift xi;   // pair (T, T0)
    SpectralShift chi;  // pair (T*, T0*)
    /// max over 1 <= |n| <= n_max of |chi^(n) + xi^(-n)|
    double max_residual = 0.0;
};

AdjointRelationReport adjoint_ssf_check(const ContractionPair& pair,
                                        int n_max = kDefaultMomentCount);

}  // namespace ktrace
