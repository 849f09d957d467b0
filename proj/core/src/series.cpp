#include "ktrace/series.hpp"

#include <algorithm>
#include <cstdlib>

#include "ktrace/error.hpp"

namespace ktrace {

double CoefficientSeries::weighted_norm() const {
    double total = 0.0;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) total += static_cast<double>(k) * std::abs(coeffs_[k]);
    return total;
}

LaurentSeries::LaurentSeries(int max_mode) : max_mode_(max_mode) {
    if (max_mode < 0) throw Error(ErrorCode::InvalidArgument, "max mode must be >= 0");
    coeffs_.assign(2 * static_cast<std::size_t>(max_mode) + 1, Complex{});
}

LaurentSeries LaurentSeries::from_modes(const std::vector<std::pair<int, Complex>>& modes) {
    int k = 0;
    for (const auto& [n, c] : modes) k = std::max(k, std::abs(n));
    LaurentSeries series(k);
    for (const auto& [n, c] : modes) series.set(n, series.at(n) + c);
    return series;
}

LaurentSeries LaurentSeries::from_series(const CoefficientSeries& series) {
    LaurentSeries out(std::max(series.degree(), 0));
    for (int k = 0; k <= series.degree(); ++k) out.set(k, series.at(k));
    return out;
}

void LaurentSeries::set(int n, Complex value) {
    if (n < -max_mode_ || n > max_mode_)
        throw Error(ErrorCode::InvalidArgument, "mode outside table");
    coeffs_[n + max_mode_] = value;
}

double LaurentSeries::weighted_norm() const {
    double total = 0.0;
    for (int n = -max_mode_; n <= max_mode_; ++n) total += std::abs(n) * std::abs(at(n));
    return total;
}

double LaurentSeries::absolute_sum() const {
    double total = 0.0;
    for (const Complex& c : coeffs_) total += std::abs(c);
    return total;
}

bool LaurentSeries::is_conjugate_symmetric(double tol) const {
    for (int n = 0; n <= max_mode_; ++n)
        if (std::abs(at(-n) - std::conj(at(n))) > tol) return false;
    return true;
}

}  // namespace ktrace
