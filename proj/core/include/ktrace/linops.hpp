#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ktrace {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultDeltaMin = 1e-6;
inline constexpr double kDefaultNormTolerance = 1e-10;
inline constexpr double kDefaultPsdTolerance = 1e-10;
inline constexpr double kDefaultHermitianTolerance = 1e-12;

struct ContractionCertificate {
    double operator_norm = 0.0;
    double strictness_margin = 1.0;  // 1 - operator_norm, may be <= 0
    bool is_strict = true;
};

/// A validated pair (T, T0). T0 is always strict; T only has to be a contraction.
struct ContractionPair {
    ComplexMatrix T;
    ComplexMatrix T0;
    ContractionCertificate cert_T;
    ContractionCertificate cert_T0;

    Index dim() const { return T.rows(); }
    /// max(||T||, ||T0||)
    double norm_bound() const { return std::max(cert_T.operator_norm, cert_T0.operator_norm); }
    bool both_strict() const { return cert_T.is_strict && cert_T0.is_strict; }
    /// The pair (T*, T0*), which satisfies the same hypotheses.
    ContractionPair adjoint() const;
};

enum class DefectSide {
    Left,   // (I - M*M)^{1/2}
    Right,  // (I - MM*)^{1/2}
};

RealVector singular_values(const ComplexMatrix& m);
double operator_norm(const ComplexMatrix& m);
double trace_norm(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double rel_tol = kDefaultHermitianTolerance);
ComplexMatrix hermitian_part(const ComplexMatrix& m);
/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& hermitian);

/// Certifies ||M|| <= 1 + tol_norm and classifies strictness against delta_min.
ContractionCertificate validate_contraction(const ComplexMatrix& m,
                                            double delta_min = kDefaultDeltaMin,
                                            double tol_norm = kDefaultNormTolerance);

/// Hermitian square root of a positive semidefinite matrix. Eigenvalues in
/// [-tol_psd, 0) are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& p, double tol_psd = kDefaultPsdTolerance);

ComplexMatrix defect(const ComplexMatrix& m, DefectSide side);

/// Validates both operators and assembles a pair. Norm overshoots within
/// tol_norm are renormalized away; T0 must be strict.
ContractionPair make_contraction_pair(ComplexMatrix t, ComplexMatrix t0,
                                      double delta_min = kDefaultDeltaMin,
                                      double tol_norm = kDefaultNormTolerance);

/// Ginibre T0 rescaled to norm 1 - delta, plus a low-rank Ginibre perturbation
/// of trace norm `perturbation_trace_norm`. T is rescaled onto the unit ball
/// if the sum leaves it. Deterministic per seed.
ContractionPair random_pair(Index dim, double delta, double perturbation_trace_norm,
                            std::uint64_t seed, double delta_min = kDefaultDeltaMin);

ComplexMatrix random_ginibre(Index rows, Index cols, std::mt19937_64& rng);
ComplexMatrix random_unitary(Index dim, std::mt19937_64& rng);
/// Hermitian with spectrum drawn uniformly from [lo, hi].
ComplexMatrix random_positive_contraction(Index dim, double lo, double hi, std::mt19937_64& rng);

ComplexMatrix matrix_power(const ComplexMatrix& m, int n);

/// Neumaier-compensated sum of the diagonal.
Complex compensated_trace(const ComplexMatrix& m);

}  // namespace ktrace
