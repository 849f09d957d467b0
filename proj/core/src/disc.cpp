#include "ktrace/disc.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ktrace/calculus.hpp"
#include "ktrace/error.hpp"
#include "ktrace/parallel.hpp"
#include "ktrace/quadrature.hpp"

namespace ktrace {

namespace {

void require_interior(Complex z) {
    if (!(std::abs(z) <= 1.0 - kDiscGuard)) {
        std::ostringstream os;
        os << "|z| = " << std::abs(z) << " is outside the guarded open disc";
        throw Error(ErrorCode::OutsideOpenDisc, os.str());
    }
}

/// sum_{n=1}^{K} c(sign * n) w^n
Complex one_sided_sum(const LaurentSeries& c, Complex w, int sign) {
    Complex acc;
    for (int n = c.max_mode(); n >= 1; --n) acc = (acc + c.at(sign * n)) * w;
    return acc;
}

/// sum_{n=1}^{K} n c(sign * n) w^{n-1}
Complex one_sided_derivative(const LaurentSeries& c, Complex w, int sign) {
    Complex acc;
    for (int n = c.max_mode(); n >= 1; --n) {
        acc = acc * w + static_cast<double>(n) * c.at(sign * n);
    }
    return acc;
}

Complex boundary_value(const LaurentSeries& c, double t) {
    Complex sum = c.at(0);
    for (int n = 1; n <= c.max_mode(); ++n)
        sum += c.at(n) * std::polar(1.0, n * t) + c.at(-n) * std::polar(1.0, -n * t);
    return sum;
}

Complex jacobian_unchecked(const LaurentSeries& xi, const LaurentSeries& psi, Complex z) {
    const Complex zb = std::conj(z);
    return one_sided_derivative(xi, z, +1) * one_sided_derivative(psi, zb, -1) -
           one_sided_derivative(psi, z, +1) * one_sided_derivative(xi, zb, -1);
}

void require_radius(double radius, bool allow_one) {
    const bool ok = radius > 0.0 && (allow_one ? radius <= 1.0 : radius < 1.0);
    if (!ok) {
        std::ostringstream os;
        os << "radius " << radius << " outside " << (allow_one ? "(0, 1]" : "(0, 1)");
        throw Error(ErrorCode::InvalidRadius, os.str());
    }
}

/// -2i int_0^R int_0^{2pi} f(r e^{it}) r dt dr
template <typename Integrand>
Complex polar_integral(double radius, const DiscQuadratureConfig& cfg, Integrand f) {
    const QuadratureRule radial = gauss_legendre(cfg.radial_nodes, 0.0, radius);
    const QuadratureRule angular = periodic_trapezoid(cfg.angular_nodes);
    std::vector<Complex> partial(radial.size());
    parallel_for(radial.size(), cfg.threads, [&](std::size_t i) {
        const double r = radial.nodes[i];
        Complex ring;
        for (std::size_t j = 0; j < angular.size(); ++j)
            ring += angular.weights[j] * f(std::polar(r, angular.nodes[j]));
        partial[i] = radial.weights[i] * r * ring;
    });
    Complex total;
    for (const Complex& p : partial) total += p;
    return Complex(0.0, -2.0) * total;
}

}  // namespace

void DiscQuadratureConfig::validate(int max_mode) const {
    if (radial_nodes < 1) throw Error(ErrorCode::InvalidConfig, "radial_nodes must be >= 1");
    const auto angular = static_cast<unsigned>(angular_nodes);
    if (angular_nodes < 4 || !std::has_single_bit(angular))
        throw Error(ErrorCode::InvalidConfig, "angular_nodes must be a power of two >= 4");
    if (angular_nodes < 4 * (2 * max_mode + 1)) {
        std::ostringstream os;
        os << "angular_nodes " << angular_nodes << " < 4 x (2 x " << max_mode << " + 1)";
        throw Error(ErrorCode::InvalidConfig, os.str());
    }
    double previous = 0.0;
    for (double r : radius_schedule) {
        if (!(r > previous && r < 1.0))
            throw Error(ErrorCode::InvalidConfig,
                        "radius schedule must be strictly increasing inside (0, 1)");
        previous = r;
    }
}

DiscQuadratureConfig DiscQuadratureConfig::adapted_to(int max_mode) const {
    DiscQuadratureConfig out = *this;
    const auto needed = static_cast<unsigned>(4 * (2 * max_mode + 1));
    out.angular_nodes = static_cast<int>(
        std::max(std::bit_ceil(std::max(needed, 4u)), static_cast<unsigned>(angular_nodes)));
    return out;
}

Complex poisson_extend(const LaurentSeries& coeffs, Complex z) {
    require_interior(z);
    return coeffs.at(0) + one_sided_sum(coeffs, std::conj(z), -1) + one_sided_sum(coeffs, z, +1);
}

Complex wirtinger_dz(const LaurentSeries& coeffs, Complex z) {
    require_interior(z);
    return one_sided_derivative(coeffs, z, +1);
}

Complex wirtinger_dzbar(const LaurentSeries& coeffs, Complex z) {
    require_interior(z);
    return one_sided_derivative(coeffs, std::conj(z), -1);
}

KernelExpansionReport kernel_expansion_check(Complex z, const std::vector<double>& t_grid,
                                             int n_trunc) {
    const double rho = std::abs(z);
    if (!(rho <= 0.95)) throw Error(ErrorCode::InvalidArgument, "kernel check needs |z| <= 0.95");
    if (n_trunc < 0) throw Error(ErrorCode::InvalidArgument, "truncation must be >= 0");
    KernelExpansionReport report;
    report.bound = 2.0 * std::pow(rho, n_trunc + 1) / (1.0 - rho);
    for (double t : t_grid) {
        const Complex e = std::polar(1.0, t);
        const double kernel = (1.0 - rho * rho) / std::norm(e - z);
        Complex series = 1.0;
        Complex zbar_e = 1.0, z_ebar = 1.0;
        for (int n = 1; n <= n_trunc; ++n) {
            zbar_e *= std::conj(z) * e;
            z_ebar *= z * std::conj(e);
            series += zbar_e + z_ebar;
        }
        report.max_error = std::max(report.max_error, std::abs(kernel - series));
    }
    return report;
}

FatouReport fatou_check(const SpectralShift& s, const std::vector<double>& r_schedule,
                        const std::vector<double>& t_grid) {
    if (!s.both_strict)
        throw Error(ErrorCode::RequiresStrictPair,
                    "radial limit check needs a spectral shift of a strict-strict pair");
    FatouReport report;
    std::vector<Complex> boundary(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        boundary[j] = boundary_value(s.coeffs, t_grid[j]);
        report.boundary_sup = std::max(report.boundary_sup, std::abs(boundary[j]));
    }
    double previous_r = 0.0;
    for (double r : r_schedule) {
        require_radius(r, false);
        if (r <= previous_r)
            throw Error(ErrorCode::InvalidConfig, "radius schedule must be increasing");
        previous_r = r;
        FatouRow row;
        row.r = r;
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            const Complex inside = poisson_extend(s.coeffs, std::polar(r, t_grid[j]));
            row.sup_difference = std::max(row.sup_difference, std::abs(inside - boundary[j]));
        }
        row.constant = row.sup_difference / (1.0 - r);
        if (!report.rows.empty() && row.sup_difference > report.rows.back().sup_difference)
            report.monotone = false;
        report.rows.push_back(row);
    }
    if (!report.rows.empty()) report.final_constant = report.rows.back().constant;
    return report;
}

Complex jacobian_at(const SpectralShift& xi, const LaurentSeries& psi, Complex z) {
    require_interior(z);
    return jacobian_unchecked(xi.coeffs, psi, z);
}

Complex disc_integral_quadrature(const SpectralShift& xi, const LaurentSeries& psi, double radius,
                                 const DiscQuadratureConfig& cfg) {
    require_radius(radius, false);
    cfg.validate(std::max(xi.n_max(), psi.max_mode()));
    return polar_integral(radius, cfg,
                          [&](Complex z) { return jacobian_unchecked(xi.coeffs, psi, z); });
}

Complex disc_integral_closed_form(const SpectralShift& xi, const LaurentSeries& psi,
                                  double radius) {
    require_radius(radius, true);
    const int top = std::min(xi.n_max(), psi.max_mode());
    Complex sum;
    for (int n = 1; n <= top; ++n) {
        const double weight = std::pow(radius, 2 * n);
        sum += static_cast<double>(n) * psi.at(n) * xi.at(-n) * weight;
        sum += static_cast<double>(-n) * psi.at(-n) * xi.at(n) * weight;
    }
    return Complex(0.0, 2.0 * std::numbers::pi) * sum;
}

Complex monomial_disc_integral(int n, int m, double radius, const DiscQuadratureConfig& cfg) {
    require_radius(radius, false);
    if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "monomial degrees must be >= 1");
    cfg.validate(std::max(n, m));
    return polar_integral(radius, cfg, [&](Complex z) {
        return std::pow(z, n - 1) * std::pow(std::conj(z), m - 1);
    });
}

DiscPairingReport verify_disc_trace_formula(const ContractionPair& pair, const LaurentSeries& psi,
                                            const DiscQuadratureConfig& cfg, int n_max) {
    const int moment_count = std::max({n_max, psi.max_mode(), 1});
    const SpectralShift xi = ssf_from_moments(moments(pair, moment_count));
    const DiscQuadratureConfig used = cfg.adapted_to(std::max(xi.n_max(), psi.max_mode()));
    used.validate(std::max(xi.n_max(), psi.max_mode()));
    if (used.radius_schedule.empty())
        throw Error(ErrorCode::InvalidConfig, "radius schedule is empty");

    DiscPairingReport report;
    report.lhs_trace = laurent_difference_trace(pair, psi).value;
    for (double radius : used.radius_schedule) {
        DiscRow row{radius, disc_integral_quadrature(xi, psi, radius, used),
                    disc_integral_closed_form(xi, psi, radius)};
        report.max_quadrature_error =
            std::max(report.max_quadrature_error, std::abs(row.quadrature - row.closed_form));
        report.per_radius.push_back(row);
    }
    const double final_radius = used.radius_schedule.back();
    report.limit_estimate = disc_integral_closed_form(xi, psi, final_radius);
    for (int n = 1; n <= psi.max_mode(); ++n) {
        const double decay = 1.0 - std::pow(final_radius, 2 * n);
        report.tail_bound += 2.0 * std::numbers::pi * n *
                             (std::abs(psi.at(n) * xi.at(-n)) + std::abs(psi.at(-n) * xi.at(n))) *
                             decay;
    }
    report.limit_error = std::abs(report.limit_estimate - report.lhs_trace);
    report.passed = report.limit_error <= report.tail_bound + kDiscLimitSlack &&
                    report.max_quadrature_error <= kDiscQuadratureTolerance;
    return report;
}

}  // namespace ktrace
