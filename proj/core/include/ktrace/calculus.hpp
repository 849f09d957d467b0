#pragma once

#include "ktrace/linops.hpp"
#include "ktrace/series.hpp"
#include "ktrace/spectral_shift.hpp"

namespace ktrace {

/// sum_k a_k T^k (Horner).
ComplexMatrix apply_series(const CoefficientSeries& phi, const ComplexMatrix& t);

/// psi(0) I + sum_{n>=1} psi(-n) T*^n + sum_{n>=1} psi(n) T^n. No mixed words.
ComplexMatrix apply_laurent(const LaurentSeries& psi, const ComplexMatrix& t);

struct CircleLhs {
    Complex value;                       // Tr(phi(T) - phi(T0))
    double difference_trace_norm = 0.0;  // ||phi(T) - phi(T0)||_1
    double bound = 0.0;                  // (sum k |a_k|) ||T - T0||_1

    bool bound_holds() const { return difference_trace_norm <= bound * (1.0 + 1e-12) + 1e-14; }
};

struct CircleRhs {
    Complex value;             // 2 pi i sum_k k a_k xi^(-k)
    Complex quadrature_value;  // grid quadrature of d/dt phi(e^{it}) xi_r(t)
    double discrepancy = 0.0;  // |value - quadrature_value|
    double tail_bound = 0.0;   // 2 pi sum_k k |a_k| |xi^(-k)| (1 - r^k)
    double grid_budget = 0.0;  // roundoff budget of the grid sum
};

inline constexpr int kDefaultCircleGrid = 4096;
inline constexpr double kDefaultCircleAbelRadius = 0.999;

CircleLhs trace_lhs_circle(const ContractionPair& pair, const CoefficientSeries& phi);

CircleRhs trace_rhs_circle(const SpectralShift& s, const CoefficientSeries& phi,
                           double abel_radius = kDefaultCircleAbelRadius,
                           int grid = kDefaultCircleGrid);

struct LaurentTrace {
    Complex value;                       // Tr(psi(T,T*) - psi(T0,T0*))
    Complex moment_route;                // sum psi(-n) conj(m_n) + sum psi(n) m_n
    double difference_trace_norm = 0.0;
    double bound = 0.0;                  // (sum |n psi(n)|) ||T - T0||_1

    bool bound_holds() const { return difference_trace_norm <= bound * (1.0 + 1e-12) + 1e-14; }
};

LaurentTrace laurent_difference_trace(const ContractionPair& pair, const LaurentSeries& psi);

}  // namespace ktrace
