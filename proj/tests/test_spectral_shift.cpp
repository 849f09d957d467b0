#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ktrace/error.hpp"
#include "ktrace/spectral_shift.hpp"
#include "test_support.hpp"

namespace ktrace {
namespace {

using testing::scalar_pair;
constexpr double kPi = std::numbers::pi;

// For a scalar pair the Abel mean sums in closed form:
// xi_r(t) = (1/pi) [arg(1 - r t0 e^{-it}) - arg(1 - r t e^{-it})].
double scalar_ssf_oracle(Complex t, Complex t0, double theta, double r) {
    const Complex e = std::polar(r, -theta);
    return (std::arg(1.0 - t0 * e) - std::arg(1.0 - t * e)) / kPi;
}

TEST(Moments, ScalarPowers) {
    const MomentSequence m = moments(scalar_pair(Complex(0.5, 0.2), 0.3), 10);
    ASSERT_EQ(m.n_max(), 10);
    for (int n = 1; n <= 10; ++n) {
        const Complex expected = std::pow(Complex(0.5, 0.2), n) - std::pow(0.3, n);
        EXPECT_LE(std::abs(m.at(n) - expected), 1e-15);
    }
    EXPECT_NEAR(m.perturbation_trace_norm, std::abs(Complex(0.2, 0.2)), 1e-15);
    EXPECT_TRUE(m.both_strict);
}

TEST(Moments, RejectsBadCount) {
    try {
        moments(scalar_pair(0.5, 0.3), 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
}

TEST(SpectralShift, CoefficientsFromMoments) {
    const SpectralShift s = ssf_from_moments(moments(scalar_pair(0.5, 0.25), 4));
    EXPECT_EQ(s.at(0), Complex{});
    // xi^(-1) = 0.25 / (2 pi i)
    EXPECT_LE(std::abs(s.at(-1) - Complex(0.0, -0.25 / (2 * kPi))), 1e-17);
    EXPECT_LE(std::abs(s.at(1) - Complex(0.0, 0.25 / (2 * kPi))), 1e-17);
    EXPECT_LE(std::abs(s.at(-2) - Complex(0.0, -(0.25 - 0.0625) / (4 * kPi))), 1e-17);
    EXPECT_TRUE(s.coeffs.is_conjugate_symmetric(0.0));
}

TEST(SpectralShift, EqualOperatorsVanish) {
    const auto pair = testing::strict_pair(5, 0.2, 4);
    const SpectralShift s = ssf_from_moments(moments(make_contraction_pair(pair.T0, pair.T0), 16));
    for (int n = -16; n <= 16; ++n) EXPECT_EQ(s.at(n), Complex{});
    EXPECT_EQ(evaluate_ssf(s, 1.0, 0.9), 0.0);
}

TEST(SpectralShift, ScalarEvaluationMatchesClosedForm) {
    const Complex t(0.4, 0.3), t0(-0.2, 0.1);
    const SpectralShift s = ssf_from_moments(moments(scalar_pair(t, t0), 200));
    for (double theta : {0.0, 0.7, 2.0, -1.3, 3.1}) {
        // r^200 * 0.5^200 is far below double precision; truncation is invisible.
        EXPECT_NEAR(evaluate_ssf(s, theta, 0.9), scalar_ssf_oracle(t, t0, theta, 0.9), 1e-13);
        EXPECT_NEAR(evaluate_ssf(s, theta, 0.999), scalar_ssf_oracle(t, t0, theta, 0.999), 1e-13);
    }
}

TEST(SpectralShift, EvaluationErrors) {
    const SpectralShift s = ssf_from_moments(moments(scalar_pair(0.5, 0.25), 4));
    for (double r : {0.0, 1.0, -0.5, 1.5}) {
        try {
            evaluate_ssf(s, 0.0, r);
            FAIL() << r;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidRadius);
        }
    }
    SpectralShift broken = s;
    broken.coeffs.set(1, Complex(0.0, 1.0));
    broken.coeffs.set(-1, Complex(0.0, 1.0));
    try {
        evaluate_ssf(broken, 0.0, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonRealResult);
    }
}

TEST(SpectralShift, AdditiveConstant) {
    const SpectralShift s = ssf_from_moments(moments(scalar_pair(0.5, 0.25), 8));
    const SpectralShift shifted = s.with_constant(0.75);
    EXPECT_NEAR(evaluate_ssf(shifted, 0.4, 0.9) - evaluate_ssf(s, 0.4, 0.9), 0.75, 1e-15);
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(shifted.at(n), s.at(n));
}

TEST(SpectralShiftProperties, RealValuedAndConjugateSymmetric) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto pair = random_pair(6, 0.2, 0.3, seed);
        const SpectralShift s = ssf_from_moments(moments(pair, 64));
        EXPECT_TRUE(s.coeffs.is_conjugate_symmetric(0.0));
        for (double theta : {0.0, 1.0, 2.5, 4.0})
            EXPECT_NO_THROW(evaluate_ssf(s, theta, 0.99, 1e-12));
    }
}

TEST(SpectralShiftProperties, CoefficientDecay) {
    // Rigorous: |m_n| <= n ||T - T0||_1 max(||T||,||T0||)^{n-1}, hence
    // |xi^(n)| <= ||T - T0||_1 max(...)^{n-1} / (2 pi).
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto pair = testing::strict_pair(6, 0.2, seed);
        const MomentSequence m = moments(pair, 64);
        const SpectralShift s = ssf_from_moments(m);
        for (int n = 1; n <= 64; ++n) {
            EXPECT_LE(std::abs(m.at(n)), m.telescoping_bound(n) * (1 + 1e-12) + 1e-300);
            EXPECT_LE(std::abs(s.at(n)),
                      m.perturbation_trace_norm * std::pow(m.norm_bound, n - 1) / (2 * kPi) *
                              (1 + 1e-12) +
                          1e-300);
        }
    }
}

TEST(SpectralShiftProperties, GeometricSlopeForNormalPairs) {
    // For commuting diagonal pairs n |xi^(n)| decays like the largest modulus
    // among the eigenvalues that differ; a log-linear fit recovers it.
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Index d = 4;
        ComplexMatrix t = ComplexMatrix::Zero(d, d), t0 = ComplexMatrix::Zero(d, d);
        double rho = 0.0;
        for (Index i = 0; i < d; ++i) {
            const Complex a = std::polar(0.3 + 0.5 * u(rng), 2 * kPi * u(rng));
            const Complex b = std::polar(0.1 + 0.2 * u(rng), 2 * kPi * u(rng));
            t(i, i) = a;
            t0(i, i) = b;
            rho = std::max(rho, std::abs(a));
        }
        const SpectralShift s = ssf_from_moments(moments(make_contraction_pair(t, t0), 64));
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int count = 0;
        for (int n = 32; n <= 64; ++n) {
            const double y = std::log(n * std::abs(s.at(-n)));
            sx += n;
            sy += y;
            sxx += double(n) * n;
            sxy += n * y;
            ++count;
        }
        const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        EXPECT_LE(slope, std::log(rho) + 0.05) << "trial " << trial;
    }
}

TEST(AdjointRelation, ScalarAndRandom) {
    const AdjointRelationReport scalar = adjoint_ssf_check(scalar_pair(Complex(0.3, 0.5), 0.1), 16);
    EXPECT_LE(scalar.max_residual, 1e-16);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const AdjointRelationReport r = adjoint_ssf_check(random_pair(5, 0.2, 0.3, seed), 64);
        EXPECT_LE(r.max_residual, 1e-12);
    }
}

}  // namespace
}  // namespace ktrace
