#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ktrace/calculus.hpp"
#include "ktrace/error.hpp"
#include "test_support.hpp"

namespace ktrace {
namespace {

using testing::scalar;
using testing::scalar_pair;

CoefficientSeries exponential_series(int degree) {
    std::vector<Complex> a(static_cast<std::size_t>(degree) + 1);
    double f = 1.0;
    for (int k = 0; k <= degree; ++k) {
        if (k > 0) f /= k;
        a[static_cast<std::size_t>(k)] = f;
    }
    return CoefficientSeries(a);
}

CoefficientSeries geometric_series(double q, int degree) {
    std::vector<Complex> a(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) a[static_cast<std::size_t>(k)] = std::pow(q, k);
    return CoefficientSeries(a);
}

TEST(ApplySeries, ScalarExponential) {
    const Complex z(0.3, -0.4);
    const ComplexMatrix e = apply_series(exponential_series(25), scalar(z));
    EXPECT_LE(std::abs(e(0, 0) - std::exp(z)), 1e-15);
}

TEST(ApplySeries, MatchesExplicitPowers) {
    std::mt19937_64 rng(1);
    const ComplexMatrix t = testing::random_contraction(4, rng, 0.5, 0.9);
    const CoefficientSeries phi({Complex(1, 0), Complex(0, 2), Complex(-0.5, 0.1), Complex(0.25, 0)});
    ComplexMatrix expected = ComplexMatrix::Identity(4, 4) * phi.at(0);
    for (int k = 1; k <= 3; ++k) expected += phi.at(k) * matrix_power(t, k);
    EXPECT_LE((apply_series(phi, t) - expected).norm(), 1e-14);
    EXPECT_EQ(apply_series(CoefficientSeries(), t).norm(), 0.0);
}

TEST(ApplyLaurent, UsesAdjointForNegativeModes) {
    std::mt19937_64 rng(2);
    const ComplexMatrix t = testing::random_contraction(3, rng, 0.5, 0.9);
    const LaurentSeries psi =
        LaurentSeries::from_modes({{-2, Complex(0.5, 0)}, {0, Complex(2, 0)}, {1, Complex(0, 1)}});
    const ComplexMatrix expected = 0.5 * matrix_power(t.adjoint(), 2) +
                                   2.0 * ComplexMatrix::Identity(3, 3) + Complex(0, 1) * t;
    EXPECT_LE((apply_laurent(psi, t) - expected).norm(), 1e-14);
}

TEST(CircleFormula, ScalarClosedForms) {
    const Complex t(0.5, 0.2), t0(-0.3, 0.1);
    const auto pair = scalar_pair(t, t0);
    const CircleLhs lhs = trace_lhs_circle(pair, exponential_series(30));
    EXPECT_LE(std::abs(lhs.value - (std::exp(t) - std::exp(t0))), 1e-14);
    EXPECT_TRUE(lhs.bound_holds());

    const CoefficientSeries geo = geometric_series(0.9, 60);
    const SpectralShift s = ssf_from_moments(moments(pair, 64));
    const CircleRhs rhs = trace_rhs_circle(s, geo);
    const Complex geo_closed = (1.0 - std::pow(0.9 * t, 61)) / (1.0 - 0.9 * t) -
                               (1.0 - std::pow(0.9 * t0, 61)) / (1.0 - 0.9 * t0);
    EXPECT_LE(std::abs(rhs.value - geo_closed), 1e-14);
}

TEST(CircleFormula, IdenticalOperators) {
    const auto pair = testing::strict_pair(4, 0.2, 3);
    const auto same = make_contraction_pair(pair.T0, pair.T0);
    const CoefficientSeries phi = exponential_series(20);
    const SpectralShift s = ssf_from_moments(moments(same, 64));
    EXPECT_EQ(trace_lhs_circle(same, phi).value, Complex{});
    const CircleRhs rhs = trace_rhs_circle(s, phi);
    EXPECT_EQ(rhs.value, Complex{});
    EXPECT_EQ(rhs.quadrature_value, Complex{});
}

TEST(CircleFormula, ConstantSeriesHasZeroTrace) {
    const auto pair = testing::strict_pair(3, 0.2, 8);
    const CoefficientSeries c({Complex(3.0, 1.0)});
    EXPECT_LE(std::abs(trace_lhs_circle(pair, c).value), 1e-14);
    const CircleRhs rhs = trace_rhs_circle(ssf_from_moments(moments(pair, 8)), c);
    EXPECT_EQ(rhs.value, Complex{});
}

TEST(CircleFormula, Errors) {
    const SpectralShift s = ssf_from_moments(moments(scalar_pair(0.5, 0.25), 8));
    try {
        trace_rhs_circle(s, geometric_series(0.5, 9));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientCoefficients);
    }
    try {
        trace_rhs_circle(s, geometric_series(0.5, 8), 0.9, 16);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
    }
    try {
        trace_rhs_circle(s, geometric_series(0.5, 8), 1.0, 1024);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidRadius);
    }
}

TEST(CircleFormulaProperties, RandomPairsAgree) {
    const CoefficientSeries series[] = {exponential_series(20), geometric_series(0.9, 60),
                                        CoefficientSeries({0, 0, 1})};
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto pair = random_pair(5, 0.2, 0.3, seed);
        const SpectralShift s = ssf_from_moments(moments(pair, 64));
        for (const auto& phi : series) {
            const CircleLhs lhs = trace_lhs_circle(pair, phi);
            const CircleRhs rhs = trace_rhs_circle(s, phi, 0.999, 1024);
            EXPECT_TRUE(lhs.bound_holds());
            EXPECT_LE(std::abs(lhs.value - rhs.value), 1e-9 * (1 + phi.weighted_norm()));
            EXPECT_LE(rhs.discrepancy, 10 * (rhs.tail_bound + rhs.grid_budget));
            // Additive constants in the spectral shift do not change the pairing.
            const CircleRhs shifted = trace_rhs_circle(s.with_constant(2.5), phi, 0.999, 1024);
            EXPECT_EQ(shifted.value, rhs.value);
        }
    }
}

TEST(LaurentTrace, ScalarAndMomentRoute) {
    const Complex t(0.4, 0.3), t0(0.1, -0.2);
    const LaurentSeries psi = LaurentSeries::from_modes({{-1, Complex(0, 1)}, {2, Complex(0.5, 0)}});
    const LaurentTrace r = laurent_difference_trace(scalar_pair(t, t0), psi);
    const Complex expected = Complex(0, 1) * (std::conj(t) - std::conj(t0)) +
                             0.5 * (t * t - t0 * t0);
    EXPECT_LE(std::abs(r.value - expected), 1e-15);
    EXPECT_LE(std::abs(r.moment_route - expected), 1e-15);
    EXPECT_TRUE(r.bound_holds());

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const LaurentTrace q = laurent_difference_trace(random_pair(4, 0.2, 0.3, seed), psi);
        EXPECT_LE(std::abs(q.value - q.moment_route), 1e-13);
        EXPECT_TRUE(q.bound_holds());
    }
}

}  // namespace
}  // namespace ktrace
