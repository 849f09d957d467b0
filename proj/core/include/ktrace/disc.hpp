#pragma once

#include <vector>

#include "ktrace/linops.hpp"
#include "ktrace/series.hpp"
#include "ktrace/spectral_shift.hpp"

namespace ktrace {

/// Points with |z| > 1 - kDiscGuard are refused by the interior evaluators.
inline constexpr double kDiscGuard = 1e-6;

struct DiscQuadratureConfig {
    int radial_nodes = 64;
    int angular_nodes = 1024;
    std::vector<double> radius_schedule{0.5, 0.8, 0.9, 0.99, 0.999};
    unsigned threads = 0;  // 0 = hardware concurrency

    /// Throws InvalidConfig unless angular_nodes is a power of two
    /// >= 4 (2K + 1) for the largest table mode K and the schedule is
    /// strictly increasing inside (0, 1).
    void validate(int max_mode) const;
    /// Copy with angular_nodes raised to the smallest admissible power of two.
    DiscQuadratureConfig adapted_to(int max_mode) const;
};

/// Harmonic extension c(0) + sum c(-n) conj(z)^n + sum c(n) z^n.
Complex poisson_extend(const LaurentSeries& coeffs, Complex z);

/// d/dz and d/dz-bar of the harmonic extension.
Complex wirtinger_dz(const LaurentSeries& coeffs, Complex z);
Complex wirtinger_dzbar(const LaurentSeries& coeffs, Complex z);

struct KernelExpansionReport {
    double max_error = 0.0;
    double bound = 0.0;  // 2 |z|^{n+1} / (1 - |z|)
};

/// Poisson kernel (1 - |z|^2)/|e^{it} - z|^2 against its truncated series.
KernelExpansionReport kernel_expansion_check(Complex z, const std::vector<double>& t_grid,
                                             int n_trunc);

struct FatouRow {
    double r = 0.0;
    double sup_difference = 0.0;  // sup_t |xi~(r e^{it}) - xi(e^{it})|
    double constant = 0.0;        // sup_difference / (1 - r)
};

struct FatouReport {
    std::vector<FatouRow> rows;
    bool monotone = true;       // sup_difference decreases along the schedule
    double final_constant = 0.0;
    double boundary_sup = 0.0;  // sup_t |xi(e^{it})|
};

/// Radial convergence of the Poisson extension to the boundary series.
/// Requires a spectral shift generated by a pair of strict contractions.
FatouReport fatou_check(const SpectralShift& s, const std::vector<double>& r_schedule,
                        const std::vector<double>& t_grid);

/// J = xi_z psi_zbar - psi_z xi_zbar at z.
Complex jacobian_at(const SpectralShift& xi, const LaurentSeries& psi, Complex z);

/// Integral of J over |z| <= R against dz ^ dz-bar = -2i dx dy; Gauss-Legendre
/// in r, trapezoid in t.
Complex disc_integral_quadrature(const SpectralShift& xi, const LaurentSeries& psi, double radius,
                                 const DiscQuadratureConfig& cfg);

/// 2 pi i sum_{n != 0} n psi(n) xi(-n) R^{2|n|}, R in (0, 1].
Complex disc_integral_closed_form(const SpectralShift& xi, const LaurentSeries& psi,
                                  double radius);

/// Direct evaluation of the angular-orthogonality integral of z^{n-1} conj(z)^{m-1}
/// over |z| <= R against dz ^ dz-bar.
Complex monomial_disc_integral(int n, int m, double radius, const DiscQuadratureConfig& cfg);

struct DiscRow {
    double radius = 0.0;
    Complex quadrature;
    Complex closed_form;
};

struct DiscPairingReport {
    std::vector<DiscRow> per_radius;
    Complex limit_estimate;   // closed form at the final radius
    Complex lhs_trace;        // Tr(psi(T,T*) - psi(T0,T0*))
    double tail_bound = 0.0;  // 2 pi sum |n psi(n) xi(-n)| (1 - R^{2|n|}) at the final radius
    double limit_error = 0.0; // |limit_estimate - lhs_trace|
    double max_quadrature_error = 0.0;
    bool passed = false;
};

inline constexpr double kDiscLimitSlack = 1e-9;
inline constexpr double kDiscQuadratureTolerance = 1e-8;

DiscPairingReport verify_disc_trace_formula(const ContractionPair& pair, const LaurentSeries& psi,
                                            const DiscQuadratureConfig& cfg,
                                            int n_max = kDefaultMomentCount);

}  // namespace ktrace
