#include "ktrace/linops.hpp"

#include <cmath>
#include <sstream>

#include "ktrace/error.hpp"

namespace ktrace {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << what << " is " << m.rows() << "x" << m.cols();
        throw Error(ErrorCode::NotSquare, os.str());
    }
}

ComplexMatrix scaled_to_norm(const ComplexMatrix& m, double target) {
    const double norm = operator_norm(m);
    if (norm == 0.0) return m;
    return m * (target / norm);
}

}  // namespace

ContractionPair ContractionPair::adjoint() const {
    return ContractionPair{T.adjoint(), T0.adjoint(), cert_T, cert_T0};
}

RealVector singular_values(const ComplexMatrix& m) {
    if (m.size() == 0) return RealVector();
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

double operator_norm(const ComplexMatrix& m) {
    const RealVector s = singular_values(m);
    return s.size() == 0 ? 0.0 : s.maxCoeff();
}

double trace_norm(const ComplexMatrix& m) {
    return singular_values(m).sum();
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

bool all_finite(const ComplexMatrix& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= rel_tol * m.norm();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

ContractionCertificate validate_contraction(const ComplexMatrix& m, double delta_min,
                                            double tol_norm) {
    require_square(m, "operator");
    if (!all_finite(m)) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
    ContractionCertificate cert;
    cert.operator_norm = operator_norm(m);
    if (cert.operator_norm > 1.0 + tol_norm) {
        std::ostringstream os;
        os.precision(17);
        os << "operator norm " << cert.operator_norm << " exceeds 1 + " << tol_norm;
        throw Error(ErrorCode::NotAContraction, os.str());
    }
    cert.strictness_margin = 1.0 - cert.operator_norm;
    cert.is_strict = cert.strictness_margin >= delta_min;
    return cert;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& p, double tol_psd) {
    require_square(p, "psd_sqrt input");
    if (!is_hermitian(p, kDefaultHermitianTolerance))
        throw Error(ErrorCode::NotHermitian, "psd_sqrt input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(p));
    RealVector lambda = es.eigenvalues();
    for (Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < -tol_psd) {
            std::ostringstream os;
            os << "eigenvalue " << lambda(i) << " below -" << tol_psd;
            throw Error(ErrorCode::NotPSD, os.str());
        }
        lambda(i) = std::sqrt(std::max(lambda(i), 0.0));
    }
    const ComplexMatrix& v = es.eigenvectors();
    ComplexMatrix root = v * lambda.asDiagonal() * v.adjoint();
    return hermitian_part(root);
}

ComplexMatrix defect(const ComplexMatrix& m, DefectSide side) {
    require_square(m, "defect input");
    const Index d = m.rows();
    const ComplexMatrix gram = side == DefectSide::Left ? ComplexMatrix(m.adjoint() * m)
                                                        : ComplexMatrix(m * m.adjoint());
    return psd_sqrt(hermitian_part(ComplexMatrix::Identity(d, d) - gram));
}

ContractionPair make_contraction_pair(ComplexMatrix t, ComplexMatrix t0, double delta_min,
                                      double tol_norm) {
    require_square(t, "T");
    require_square(t0, "T0");
    if (t.rows() != t0.rows())
        throw Error(ErrorCode::DimensionMismatch, "T and T0 differ in dimension");

    ContractionPair pair;
    pair.cert_T = validate_contraction(t, delta_min, tol_norm);
    pair.cert_T0 = validate_contraction(t0, delta_min, tol_norm);
    if (pair.cert_T.operator_norm > 1.0) {
        t /= pair.cert_T.operator_norm;
        pair.cert_T = validate_contraction(t, delta_min, tol_norm);
    }
    if (!pair.cert_T0.is_strict) {
        std::ostringstream os;
        os << "T0 has strictness margin " << pair.cert_T0.strictness_margin << " < " << delta_min;
        throw Error(ErrorCode::NotStrict, os.str());
    }
    pair.T = std::move(t);
    pair.T0 = std::move(t0);
    return pair;
}

ComplexMatrix random_ginibre(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(2.0));
    ComplexMatrix g(rows, cols);
    // Column-major fill order fixes the stream consumption per seed.
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

ComplexMatrix random_unitary(Index dim, std::mt19937_64& rng) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar.
    for (Index j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
    }
    return q;
}

ComplexMatrix random_positive_contraction(Index dim, double lo, double hi, std::mt19937_64& rng) {
    if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "spectrum bounds must satisfy 0 <= lo <= hi <= 1");
    const ComplexMatrix u = random_unitary(dim, rng);
    std::uniform_real_distribution<double> uniform(lo, hi);
    RealVector spectrum(dim);
    for (Index i = 0; i < dim; ++i) spectrum(i) = uniform(rng);
    return hermitian_part(u * spectrum.asDiagonal() * u.adjoint());
}

ContractionPair random_pair(Index dim, double delta, double perturbation_trace_norm,
                            std::uint64_t seed, double delta_min) {
    if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(ErrorCode::InvalidDelta, "delta must lie in (0, 1)");
    if (!(perturbation_trace_norm > 0.0))
        throw Error(ErrorCode::InvalidArgument, "perturbation trace norm must be positive");

    std::mt19937_64 rng(seed);
    ComplexMatrix t0 = scaled_to_norm(random_ginibre(dim, dim, rng), 1.0 - delta);

    const Index rank = std::max<Index>(1, (dim + 3) / 4);
    const ComplexMatrix x = random_ginibre(dim, rank, rng);
    const ComplexMatrix y = random_ginibre(dim, rank, rng);
    ComplexMatrix e = x * y.adjoint();
    e *= perturbation_trace_norm / trace_norm(e);

    ComplexMatrix t = t0 + e;
    const double norm_t = operator_norm(t);
    if (norm_t > 1.0) t /= norm_t;
    return make_contraction_pair(std::move(t), std::move(t0), delta_min);
}

ComplexMatrix matrix_power(const ComplexMatrix& m, int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative matrix power");
    ComplexMatrix result = ComplexMatrix::Identity(m.rows(), m.cols());
    for (int k = 0; k < n; ++k) result = result * m;
    return result;
}

Complex compensated_trace(const ComplexMatrix& m) {
    double sum_re = 0.0, comp_re = 0.0, sum_im = 0.0, comp_im = 0.0;
    auto neumaier = [](double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    };
    for (Index i = 0; i < std::min(m.rows(), m.cols()); ++i) {
        neumaier(sum_re, comp_re, m(i, i).real());
        neumaier(sum_im, comp_im, m(i, i).imag());
    }
    return {sum_re + comp_re, sum_im + comp_im};
}

}  // namespace ktrace
