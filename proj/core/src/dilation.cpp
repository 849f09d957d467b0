#include "ktrace/dilation.hpp"

#include <algorithm>
#include <sstream>

#include "ktrace/error.hpp"

namespace ktrace {

namespace {

void require_power_in_window(int n, int window_radius) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "power must be >= 1");
    if (n > window_radius) {
        std::ostringstream os;
        os << "power " << n << " exceeds window radius " << window_radius;
        throw Error(ErrorCode::PowerExceedsWindow, os.str());
    }
}

bool is_difference_block(int row, int col) {
    return (row == 0 && col == 0) || (row == 0 && col == 1) || (row == -1 && col == 0) ||
           (row == -1 && col == 1);
}

}  // namespace

WindowDilation build_window_dilation(const ComplexMatrix& t, int window_radius) {
    validate_contraction(t);
    if (window_radius < 1) throw Error(ErrorCode::InvalidArgument, "window radius must be >= 1");

    WindowDilation w;
    w.window_radius = window_radius;
    w.block_dim = t.rows();
    const Index d = w.block_dim;
    const Index size = d * (2 * window_radius + 1);
    w.base = ComplexMatrix::Zero(size, size);

    auto put = [&](int row, int col, const ComplexMatrix& value) {
        w.base.block(w.block_offset(row), w.block_offset(col), d, d) = value;
    };
    const ComplexMatrix identity = ComplexMatrix::Identity(d, d);
    for (int k = -window_radius; k < window_radius; ++k)
        if (k != -1 && k != 0) put(k, k + 1, identity);

    put(-1, 0, defect(t, DefectSide::Left));
    put(-1, 1, -t.adjoint());
    put(0, 0, t);
    put(0, 1, defect(t, DefectSide::Right));
    return w;
}

double interior_orthonormality_error(const WindowDilation& w) {
    const Index first = w.block_offset(-w.window_radius + 1);
    const ComplexMatrix cols = w.base.rightCols(w.base.cols() - first);
    const ComplexMatrix gram = cols.adjoint() * cols;
    return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double compression_power_check(const WindowDilation& w, const ComplexMatrix& t, int n) {
    require_power_in_window(n, w.window_radius);
    if (t.rows() != w.block_dim)
        throw Error(ErrorCode::DimensionMismatch, "T does not match the dilation block size");
    ComplexMatrix power = w.base;
    for (int k = 1; k < n; ++k) power = power * w.base;
    const Index o = w.block_offset(0);
    const ComplexMatrix central = power.block(o, o, w.block_dim, w.block_dim);
    return (central - matrix_power(t, n)).norm();
}

DifferenceBlocks dilation_difference_blocks(const ContractionPair& pair) {
    const ComplexMatrix& t = pair.T;
    const ComplexMatrix& t0 = pair.T0;
    return DifferenceBlocks{
        t - t0,
        defect(t, DefectSide::Right) - defect(t0, DefectSide::Right),
        defect(t, DefectSide::Left) - defect(t0, DefectSide::Left),
        -(t.adjoint() - t0.adjoint()),
    };
}

DifferenceStructureReport difference_structure_check(const ContractionPair& pair,
                                                     int window_radius) {
    const WindowDilation wt = build_window_dilation(pair.T, window_radius);
    const WindowDilation wt0 = build_window_dilation(pair.T0, window_radius);
    const ComplexMatrix diff = wt.base - wt0.base;
    const DifferenceBlocks blocks = dilation_difference_blocks(pair);
    const Index d = wt.block_dim;

    DifferenceStructureReport report;
    for (int row = -window_radius; row <= window_radius; ++row) {
        for (int col = -window_radius; col <= window_radius; ++col) {
            if (is_difference_block(row, col)) continue;
            const double norm =
                diff.block(wt.block_offset(row), wt.block_offset(col), d, d).norm();
            report.max_off_block_norm = std::max(report.max_off_block_norm, norm);
        }
    }
    auto mismatch = [&](int row, int col, const ComplexMatrix& expected) {
        const ComplexMatrix got = diff.block(wt.block_offset(row), wt.block_offset(col), d, d);
        report.block_mismatch = std::max(report.block_mismatch, (got - expected).norm());
    };
    mismatch(0, 0, blocks.at_00);
    mismatch(0, 1, blocks.at_01);
    mismatch(-1, 0, blocks.at_m10);
    mismatch(-1, 1, blocks.at_m11);

    report.window_trace_norm = trace_norm(diff);
    report.block_trace_norm_sum = trace_norm(blocks.at_00) + trace_norm(blocks.at_01) +
                                  trace_norm(blocks.at_m10) + trace_norm(blocks.at_m11);
    return report;
}

TraceTransfer dilation_trace_transfer(const ContractionPair& pair, int n, int window_radius) {
    require_power_in_window(n, window_radius);
    const WindowDilation wt = build_window_dilation(pair.T, window_radius);
    const WindowDilation wt0 = build_window_dilation(pair.T0, window_radius);
    ComplexMatrix pt = wt.base;
    ComplexMatrix pt0 = wt0.base;
    for (int k = 1; k < n; ++k) {
        pt = pt * wt.base;
        pt0 = pt0 * wt0.base;
    }
    TraceTransfer result;
    result.lhs = compensated_trace(matrix_power(pair.T, n) - matrix_power(pair.T0, n));
    result.rhs = compensated_trace(pt - pt0);
    return result;
}

}  // namespace ktrace
