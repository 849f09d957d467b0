#pragma once

#include <cstdint>
#include <random>

#include "ktrace/linops.hpp"

namespace ktrace::testing {

/// Ginibre matrix rescaled to the given operator norm.
inline ComplexMatrix random_with_norm(Index dim, double norm, std::mt19937_64& rng) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    return g * (norm / operator_norm(g));
}

/// A random contraction with norm uniform in [lo, hi].
inline ComplexMatrix random_contraction(Index dim, std::mt19937_64& rng, double lo = 0.05,
                                        double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    return random_with_norm(dim, u(rng), rng);
}

/// Strict-strict pair: ||T0|| = 1 - delta, small perturbation keeps ||T|| < 1.
inline ContractionPair strict_pair(Index dim, double delta, std::uint64_t seed) {
    return random_pair(dim, delta, 0.5 * delta, seed);
}

inline ContractionPair scalar_pair(Complex t, Complex t0) {
    ComplexMatrix a(1, 1), b(1, 1);
    a(0, 0) = t;
    b(0, 0) = t0;
    return make_contraction_pair(a, b);
}

inline ComplexMatrix scalar(Complex v) {
    ComplexMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

}  // namespace ktrace::testing
