#pragma once

#include <cstddef>

#include "ktrace/linops.hpp"

namespace ktrace {

/// Quadrature evaluation of A - B = int_0^inf e^{-tA} (A^2 - B^2) e^{-tB} dt
/// for positive contractions A, B with B >= delta_B > 0.
struct IntegralReport {
    ComplexMatrix computed_difference;
    ComplexMatrix direct_difference;
    double frobenius_error = 0.0;
    double upper_time_limit = 0.0;
    std::size_t nodes_used = 0;
};

struct KernelIntegralOptions {
    int nodes_per_unit = 32;
    /// Below this smallest eigenvalue of B the truncation point is uncontrolled.
    double delta_floor = 1e-4;
};

/// ||A - B||_1 <= ||A^2 - B^2||_1 / delta_B
struct TraceBound {
    double lhs = 0.0;
    double rhs = 0.0;

    /// Allows a relative 1e-12 roundoff slack on the right-hand side.
    bool holds() const { return lhs <= rhs * (1.0 + 1e-12) + 1e-15; }
};

struct DefectDifferenceReport {
    TraceBound left;   // A = D_T, B = D_{T0}
    TraceBound right;  // A = D_{T*}, B = D_{T0*}
    /// Frobenius residuals of D_T^2 - D_{T0}^2 = (T0-T)*T0 + T*(T0-T) and its adjoint analog.
    double left_identity_residual = 0.0;
    double right_identity_residual = 0.0;
};

IntegralReport semigroup_integral(const ComplexMatrix& a, const ComplexMatrix& b, double tol,
                                  const KernelIntegralOptions& options = {});

TraceBound difference_trace_bound(const ComplexMatrix& a, const ComplexMatrix& b,
                                  const KernelIntegralOptions& options = {});

DefectDifferenceReport defect_difference_check(const ContractionPair& pair,
                                               const KernelIntegralOptions& options = {});

}  // namespace ktrace
