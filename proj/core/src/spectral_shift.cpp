#include "ktrace/spectral_shift.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ktrace/error.hpp"

namespace ktrace {

double MomentSequence::telescoping_bound(int n) const {
    return n * perturbation_trace_norm * std::pow(norm_bound, n - 1);
}

SpectralShift SpectralShift::with_constant(Complex c) const {
    SpectralShift shifted = *this;
    shifted.coeffs.set(0, coeffs.at(0) + c);
    return shifted;
}

MomentSequence moments(const ContractionPair& pair, int n_max) {
    if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
    MomentSequence m;
    m.values.reserve(static_cast<std::size_t>(n_max));
    m.perturbation_trace_norm = trace_norm(pair.T - pair.T0);
    m.norm_bound = pair.norm_bound();
    m.both_strict = pair.both_strict();

    ComplexMatrix pt = pair.T;
    ComplexMatrix pt0 = pair.T0;
    for (int n = 1; n <= n_max; ++n) {
        m.values.push_back(compensated_trace(pt - pt0));
        pt = pt * pair.T;
        pt0 = pt0 * pair.T0;
    }
    return m;
}

SpectralShift ssf_from_moments(const MomentSequence& m) {
    SpectralShift s;
    s.coeffs = LaurentSeries(m.n_max());
    s.norm_bound = m.norm_bound;
    s.both_strict = m.both_strict;
    const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
    for (int n = 1; n <= m.n_max(); ++n) {
        const Complex negative = m.at(n) / (two_pi_i * static_cast<double>(n));
        s.coeffs.set(-n, negative);
        s.coeffs.set(n, std::conj(negative));
    }
    return s;
}

double evaluate_ssf(const SpectralShift& s, double t, double abel_radius, double real_tol) {
    if (!(abel_radius > 0.0 && abel_radius < 1.0))
        throw Error(ErrorCode::InvalidRadius, "Abel radius must lie in (0, 1)");
    Complex sum = s.at(0);
    double weight = 1.0;
    for (int n = 1; n <= s.n_max(); ++n) {
        weight *= abel_radius;
        sum += weight * (s.at(n) * std::polar(1.0, n * t) + s.at(-n) * std::polar(1.0, -n * t));
    }
    const double scale = std::max(1.0, s.coeffs.absolute_sum());
    if (std::abs(sum.imag()) > real_tol * scale) {
        std::ostringstream os;
        os << "imaginary residual " << sum.imag() << " at t = " << t;
        throw Error(ErrorCode::NonRealResult, os.str());
    }
    return sum.real();
}

AdjointRelationReport adjoint_ssf_check(const ContractionPair& pair, int n_max) {
    AdjointRelationReport report;
    report.xi = ssf_from_moments(moments(pair, n_max));
    report.chi = ssf_from_moments(moments(pair.adjoint(), n_max));
    for (int n = 1; n <= n_max; ++n) {
        report.max_residual = std::max(report.max_residual,
                                       std::abs(report.chi.at(n) + report.xi.at(-n)));
        report.max_residual = std::max(report.max_residual,
                                       std::abs(report.chi.at(-n) + report.xi.at(n)));
    }
    return report;
}

}  // namespace ktrace
