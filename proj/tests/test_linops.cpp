#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "ktrace/error.hpp"
#include "ktrace/linops.hpp"
#include "test_support.hpp"

namespace ktrace {
namespace {

using testing::random_contraction;
using testing::scalar;

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected ktrace::Error";
    return ErrorCode::InvalidArgument;
}

ComplexMatrix jordan_block() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

TEST(ValidateContraction, ScalarHalfIsStrict) {
    const auto cert = validate_contraction(scalar(0.5));
    EXPECT_NEAR(cert.operator_norm, 0.5, 1e-15);
    EXPECT_NEAR(cert.strictness_margin, 0.5, 1e-15);
    EXPECT_TRUE(cert.is_strict);
}

TEST(ValidateContraction, IdentityIsNotStrict) {
    const auto cert = validate_contraction(ComplexMatrix::Identity(3, 3));
    EXPECT_NEAR(cert.operator_norm, 1.0, 1e-15);
    EXPECT_NEAR(cert.strictness_margin, 0.0, 1e-15);
    EXPECT_FALSE(cert.is_strict);
}

TEST(ValidateContraction, NilpotentJordanBlock) {
    const auto cert = validate_contraction(jordan_block());
    EXPECT_NEAR(cert.operator_norm, 1.0, 1e-15);
    EXPECT_FALSE(cert.is_strict);
}

TEST(ValidateContraction, Errors) {
    EXPECT_EQ(code_of([] { validate_contraction(ComplexMatrix::Zero(2, 3)); }), ErrorCode::NotSquare);
    EXPECT_EQ(code_of([] { validate_contraction(scalar(1.5)); }), ErrorCode::NotAContraction);
    // Overshoot within the tolerance is accepted.
    EXPECT_NO_THROW(validate_contraction(scalar(1.0 + 1e-12)));
}

TEST(PsdSqrt, Examples) {
    EXPECT_NEAR(psd_sqrt(scalar(0.64))(0, 0).real(), 0.8, 1e-15);
    EXPECT_EQ(psd_sqrt(ComplexMatrix::Zero(3, 3)).norm(), 0.0);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 1.0;
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = 2.0;
    expected(1, 1) = 1.0;
    EXPECT_LT((psd_sqrt(d) - expected).norm(), 1e-14);
}

TEST(PsdSqrt, ClampsRoundoffNegativesAndRejectsRealOnes) {
    EXPECT_EQ(psd_sqrt(scalar(-1e-12))(0, 0), Complex(0.0, 0.0));
    EXPECT_EQ(code_of([] { psd_sqrt(scalar(-1e-6)); }), ErrorCode::NotPSD);
    EXPECT_EQ(code_of([] { psd_sqrt(jordan_block()); }), ErrorCode::NotHermitian);
}

TEST(Defect, Examples) {
    EXPECT_NEAR(defect(scalar(0.6), DefectSide::Left)(0, 0).real(), 0.8, 1e-15);
    const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
    EXPECT_LT((defect(zero, DefectSide::Left) - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
    EXPECT_LT((defect(zero, DefectSide::Right) - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);

    ComplexMatrix left = ComplexMatrix::Zero(2, 2), right = ComplexMatrix::Zero(2, 2);
    left(0, 0) = 1.0;
    right(1, 1) = 1.0;
    EXPECT_LT((defect(jordan_block(), DefectSide::Left) - left).norm(), 1e-15);
    EXPECT_LT((defect(jordan_block(), DefectSide::Right) - right).norm(), 1e-15);
}

TEST(TraceNorm, Examples) {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -2.0;
    EXPECT_NEAR(trace_norm(d), 3.0, 1e-14);
    EXPECT_EQ(trace_norm(ComplexMatrix::Zero(4, 4)), 0.0);
    EXPECT_NEAR(trace_norm(jordan_block()), 1.0, 1e-15);
}

TEST(RandomPair, ScalarIsContractiveByConstruction) {
    const auto pair = random_pair(1, 0.5, 0.1, 42);
    EXPECT_LE(std::abs(pair.T0(0, 0)), 0.5 + 1e-15);
    EXPECT_LE(std::abs(pair.T(0, 0)), 1.0 + 1e-15);
}

TEST(RandomPair, DeterministicPerSeed) {
    const auto a = random_pair(6, 0.2, 0.3, 1234);
    const auto b = random_pair(6, 0.2, 0.3, 1234);
    EXPECT_EQ(a.T, b.T);
    EXPECT_EQ(a.T0, b.T0);
    const auto c = random_pair(6, 0.2, 0.3, 1235);
    EXPECT_NE(a.T, c.T);
}

TEST(RandomPair, StrictT0CertifiedByIndependentValidation) {
    const auto pair = random_pair(8, 0.1, 0.2, 99);
    const auto cert = validate_contraction(pair.T0);
    EXPECT_TRUE(cert.is_strict);
    EXPECT_NEAR(cert.operator_norm, 0.9, 1e-12);
    EXPECT_TRUE(pair.cert_T0.is_strict);
    EXPECT_LE(operator_norm(pair.T), 1.0 + kDefaultNormTolerance);
    // Without renormalization the perturbation has the requested trace norm.
    const auto small = random_pair(8, 0.5, 0.2, 7);
    EXPECT_NEAR(trace_norm(small.T - small.T0), 0.2, 1e-12);
}

TEST(RandomPair, Errors) {
    EXPECT_EQ(code_of([] { random_pair(3, 0.0, 0.1, 1); }), ErrorCode::InvalidDelta);
    EXPECT_EQ(code_of([] { random_pair(3, 1.0, 0.1, 1); }), ErrorCode::InvalidDelta);
    EXPECT_EQ(code_of([] { random_pair(0, 0.5, 0.1, 1); }), ErrorCode::InvalidArgument);
}

TEST(MakeContractionPair, RenormalizesOvershootAndEnforcesStrictT0) {
    const auto pair = make_contraction_pair(scalar(1.0 + 1e-11), scalar(0.5));
    EXPECT_LE(std::abs(pair.T(0, 0)), 1.0);
    EXPECT_EQ(code_of([] { make_contraction_pair(scalar(1.5), scalar(0.5)); }),
              ErrorCode::NotAContraction);
    EXPECT_EQ(code_of([] { make_contraction_pair(scalar(0.5), scalar(1.0)); }),
              ErrorCode::NotStrict);
    EXPECT_EQ(code_of([] { make_contraction_pair(ComplexMatrix::Zero(2, 2), scalar(0.5)); }),
              ErrorCode::DimensionMismatch);
}

TEST(CompensatedTrace, MatchesPlainTraceAndRecoversCancellation) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = 1e16;
    m(1, 1) = 1.0;
    m(2, 2) = -1e16;
    EXPECT_EQ(compensated_trace(m).real(), 1.0);
}

// Properties over random contractions.

TEST(LinopsProperties, DefectsAreHermitianPsdContractions) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const Index d = 1 + trial % 16;
        const ComplexMatrix m = random_contraction(d, rng);
        validate_contraction(m);
        for (DefectSide side : {DefectSide::Left, DefectSide::Right}) {
            const ComplexMatrix dm = defect(m, side);
            EXPECT_LE((dm - dm.adjoint()).norm(), 1e-14);
            EXPECT_GE(min_eigenvalue(dm), -1e-12);
            EXPECT_LE(operator_norm(dm), 1.0 + 1e-12);
        }
    }
}

TEST(LinopsProperties, StrictLeftDefectBoundedBelowByMargin) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const Index d = 1 + trial % 16;
        const ComplexMatrix m = random_contraction(d, rng, 0.05, 0.98);
        const auto cert = validate_contraction(m);
        ASSERT_TRUE(cert.is_strict);
        EXPECT_GE(min_eigenvalue(defect(m, DefectSide::Left)), cert.strictness_margin - 1e-12);
    }
}

TEST(LinopsProperties, PsdSqrtSquaresBack) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Index d = 1 + trial % 16;
        const ComplexMatrix g = random_ginibre(d, d, rng);
        const ComplexMatrix p = g * g.adjoint();
        const ComplexMatrix q = psd_sqrt(p);
        EXPECT_LE((q - q.adjoint()).norm(), 1e-14 * q.norm());
        EXPECT_LE((q * q - p).norm(), 1e-10 * p.norm());
    }
}

TEST(LinopsProperties, TraceNormSubadditiveAndUnitarilyInvariant) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Index d = 1 + trial % 12;
        const ComplexMatrix a = random_ginibre(d, d, rng);
        const ComplexMatrix b = random_ginibre(d, d, rng);
        EXPECT_LE(trace_norm(a + b), trace_norm(a) + trace_norm(b) + 1e-12);
        EXPECT_GE(trace_norm(a) + 1e-12, std::abs(a.trace()));
        const ComplexMatrix u = random_unitary(d, rng);
        const ComplexMatrix v = random_unitary(d, rng);
        EXPECT_NEAR(trace_norm(u * a * v), trace_norm(a), 1e-10);
    }
}

}  // namespace
}  // namespace ktrace
