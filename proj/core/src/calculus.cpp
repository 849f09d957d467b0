#include "ktrace/calculus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ktrace/error.hpp"
#include "ktrace/quadrature.hpp"

namespace ktrace {

namespace {

/// sum_{n=1}^{K} c_n M^n with c_n = coeff(n).
template <typename Coeff>
ComplexMatrix positive_powers(const ComplexMatrix& m, int top, Coeff coeff) {
    const Index d = m.rows();
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    if (top < 1) return acc;
    for (int n = top; n >= 1; --n) {
        acc.diagonal().array() += coeff(n);
        acc = m * acc;
    }
    return acc;
}

}  // namespace

ComplexMatrix apply_series(const CoefficientSeries& phi, const ComplexMatrix& t) {
    ComplexMatrix acc = positive_powers(t, phi.degree(), [&](int k) { return phi.at(k); });
    acc.diagonal().array() += phi.at(0);
    return acc;
}

ComplexMatrix apply_laurent(const LaurentSeries& psi, const ComplexMatrix& t) {
    const int k = psi.max_mode();
    const ComplexMatrix ts = t.adjoint();
    ComplexMatrix out = positive_powers(ts, k, [&](int n) { return psi.at(-n); });
    out += positive_powers(t, k, [&](int n) { return psi.at(n); });
    out.diagonal().array() += psi.at(0);
    return out;
}

CircleLhs trace_lhs_circle(const ContractionPair& pair, const CoefficientSeries& phi) {
    const ComplexMatrix diff = apply_series(phi, pair.T) - apply_series(phi, pair.T0);
    CircleLhs lhs;
    lhs.value = compensated_trace(diff);
    lhs.difference_trace_norm = trace_norm(diff);
    lhs.bound = phi.weighted_norm() * trace_norm(pair.T - pair.T0);
    return lhs;
}

CircleRhs trace_rhs_circle(const SpectralShift& s, const CoefficientSeries& phi,
                           double abel_radius, int grid) {
    const int top = phi.degree();
    if (top > s.n_max()) {
        std::ostringstream os;
        os << "series degree " << top << " exceeds spectral shift n_max " << s.n_max();
        throw Error(ErrorCode::InsufficientCoefficients, os.str());
    }
    if (grid <= top + s.n_max())
        throw Error(ErrorCode::InvalidConfig, "quadrature grid too coarse for the tables");

    const double two_pi = 2.0 * std::numbers::pi;
    CircleRhs rhs;
    for (int k = 1; k <= top; ++k) {
        rhs.value += Complex(0.0, two_pi) * static_cast<double>(k) * phi.at(k) * s.at(-k);
        rhs.tail_bound += two_pi * k * std::abs(phi.at(k)) * std::abs(s.at(-k)) *
                          (1.0 - std::pow(abel_radius, k));
    }

    const QuadratureRule rule = periodic_trapezoid(grid);
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const double t = rule.nodes[j];
        Complex derivative;
        for (int k = 1; k <= top; ++k)
            derivative += Complex(0.0, k) * phi.at(k) * std::polar(1.0, k * t);
        rhs.quadrature_value += rule.weights[j] * derivative * evaluate_ssf(s, t, abel_radius);
    }
    rhs.discrepancy = std::abs(rhs.value - rhs.quadrature_value);
    rhs.grid_budget = two_pi * phi.weighted_norm() * std::max(1.0, s.coeffs.absolute_sum()) *
                      grid * std::numeric_limits<double>::epsilon();
    return rhs;
}

LaurentTrace laurent_difference_trace(const ContractionPair& pair, const LaurentSeries& psi) {
    const ComplexMatrix diff = apply_laurent(psi, pair.T) - apply_laurent(psi, pair.T0);
    LaurentTrace out;
    out.value = compensated_trace(diff);
    out.difference_trace_norm = trace_norm(diff);
    out.bound = psi.weighted_norm() * trace_norm(pair.T - pair.T0);
    if (psi.max_mode() >= 1) {
        const MomentSequence m = moments(pair, psi.max_mode());
        for (int n = 1; n <= psi.max_mode(); ++n)
            out.moment_route += psi.at(-n) * std::conj(m.at(n)) + psi.at(n) * m.at(n);
    }
    return out;
}

}  // namespace ktrace
