#pragma once

#include <vector>

namespace ktrace {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// The same rule mapped affinely onto [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre: `panels` equal panels on [a, b], `n` nodes each.
QuadratureRule composite_gauss_legendre(int n, int panels, double a, double b);

/// Uniform periodic trapezoid nodes t_j = 2*pi*j/n with weights 2*pi/n.
QuadratureRule periodic_trapezoid(int n);

}  // namespace ktrace
