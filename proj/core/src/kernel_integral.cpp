#include "ktrace/kernel_integral.hpp"

#include <cmath>
#include <sstream>

#include "ktrace/error.hpp"
#include "ktrace/quadrature.hpp"

namespace ktrace {

namespace {

struct Spectral {
    RealVector values;
    ComplexMatrix vectors;
};

Spectral require_positive_contraction(const ComplexMatrix& m, const char* name) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::NotSquare, std::string(name) + " is not square");
    if (!is_hermitian(m))
        throw Error(ErrorCode::NotPositiveContraction, std::string(name) + " is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
    const RealVector& lambda = es.eigenvalues();
    if (lambda.size() > 0 &&
        (lambda.minCoeff() < -kDefaultPsdTolerance || lambda.maxCoeff() > 1.0 + kDefaultNormTolerance)) {
        std::ostringstream os;
        os << name << " has spectrum [" << lambda.minCoeff() << ", " << lambda.maxCoeff()
           << "] outside [0, 1]";
        throw Error(ErrorCode::NotPositiveContraction, os.str());
    }
    return {lambda, es.eigenvectors()};
}

double require_nonsingular(const Spectral& b, double floor) {
    const double delta_b = b.values.size() == 0 ? 1.0 : b.values.minCoeff();
    if (delta_b < floor) {
        std::ostringstream os;
        os << "smallest eigenvalue of B is " << delta_b << " < " << floor;
        throw Error(ErrorCode::SingularB, os.str());
    }
    return delta_b;
}

}  // namespace

IntegralReport semigroup_integral(const ComplexMatrix& a, const ComplexMatrix& b, double tol,
                                  const KernelIntegralOptions& options) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    if (a.rows() != b.rows())
        throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
    const Spectral sa = require_positive_contraction(a, "A");
    const Spectral sb = require_positive_contraction(b, "B");
    const double delta_b = require_nonsingular(sb, options.delta_floor);

    const ComplexMatrix squares = a * a - b * b;
    const double squares_trace_norm = trace_norm(squares);

    // Dropped tail is bounded by e^{-s delta_B} ||A^2 - B^2||_1 / delta_B.
    double upper = 1.0;
    if (squares_trace_norm > 0.0)
        upper = std::max(upper, std::log(squares_trace_norm / (tol * delta_b)) / delta_b);
    const int panels = static_cast<int>(std::ceil(upper));
    const QuadratureRule rule =
        composite_gauss_legendre(options.nodes_per_unit, panels, 0.0, static_cast<double>(panels));

    // In the eigenbases the integrand is entrywise e^{-t(a_i + b_j)} M_ij.
    const ComplexMatrix m = sa.vectors.adjoint() * squares * sb.vectors;
    const Index d = a.rows();
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = rule.nodes[q];
        const double w = rule.weights[q];
        for (Index j = 0; j < d; ++j)
            for (Index i = 0; i < d; ++i)
                weights(i, j) += w * std::exp(-t * (sa.values(i) + sb.values(j)));
    }
    const ComplexMatrix integrated = m.cwiseProduct(weights.cast<Complex>());

    IntegralReport report;
    report.computed_difference = sa.vectors * integrated * sb.vectors.adjoint();
    report.direct_difference = a - b;
    report.frobenius_error = (report.computed_difference - report.direct_difference).norm();
    report.upper_time_limit = static_cast<double>(panels);
    report.nodes_used = rule.size();
    return report;
}

TraceBound difference_trace_bound(const ComplexMatrix& a, const ComplexMatrix& b,
                                  const KernelIntegralOptions& options) {
    if (a.rows() != b.rows())
        throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
    require_positive_contraction(a, "A");
    const Spectral sb = require_positive_contraction(b, "B");
    const double delta_b = require_nonsingular(sb, options.delta_floor);
    return {trace_norm(a - b), trace_norm(a * a - b * b) / delta_b};
}

DefectDifferenceReport defect_difference_check(const ContractionPair& pair,
                                               const KernelIntegralOptions& options) {
    const ComplexMatrix& t = pair.T;
    const ComplexMatrix& t0 = pair.T0;
    const ComplexMatrix diff = t0 - t;

    const ComplexMatrix d_t = defect(t, DefectSide::Left);
    const ComplexMatrix d_t0 = defect(t0, DefectSide::Left);
    const ComplexMatrix d_ts = defect(t, DefectSide::Right);
    const ComplexMatrix d_t0s = defect(t0, DefectSide::Right);

    DefectDifferenceReport report;
    report.left_identity_residual =
        ((d_t * d_t - d_t0 * d_t0) - (diff.adjoint() * t0 + t.adjoint() * diff)).norm();
    report.right_identity_residual =
        ((d_ts * d_ts - d_t0s * d_t0s) - (diff * t0.adjoint() + t * diff.adjoint())).norm();
    report.left = difference_trace_bound(d_t, d_t0, options);
    report.right = difference_trace_bound(d_ts, d_t0s, options);
    return report;
}

}  // namespace ktrace
