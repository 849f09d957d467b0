#pragma once

#include "ktrace/linops.hpp"

namespace ktrace {

/// Truncation of the Schaffer unitary dilation of T to the block window [-N, N].
///
/// Block (k, k+1) is the identity for k outside {-1, 0}; row -1 holds
/// (D_T, -T*) at columns (0, 1) and row 0 holds (T, D_{T*}). Window index k
/// sits at block position k + N. Blocks whose partner leaves the window are
/// dropped, so block column -N and block row N are zero; every other column is
/// orthonormal and central compressions of powers up to N are exact.
struct WindowDilation {
    int window_radius = 0;
    Index block_dim = 0;
    ComplexMatrix base;

    Index block_offset(int k) const { return (k + window_radius) * block_dim; }
    ComplexMatrix block(int row, int col) const {
        return base.block(block_offset(row), block_offset(col), block_dim, block_dim);
    }
};

/// The four blocks of U_T - U_{T0} that can be nonzero.
struct DifferenceBlocks {
    ComplexMatrix at_00;   // T - T0
    ComplexMatrix at_01;   // D_{T*} - D_{T0*}
    ComplexMatrix at_m10;  // D_T - D_{T0}
    ComplexMatrix at_m11;  // -(T* - T0*)
};

struct DifferenceStructureReport {
    double max_off_block_norm = 0.0;       // Frobenius, over all blocks except the four
    double block_mismatch = 0.0;           // window difference vs. dilation_difference_blocks
    double window_trace_norm = 0.0;        // ||W_T - W_{T0}||_1
    double block_trace_norm_sum = 0.0;     // sum of the four block trace norms
};

struct TraceTransfer {
    Complex lhs;  // Tr(T^n - T0^n)
    Complex rhs;  // full-window trace of W_T^n - W_{T0}^n
};

/// Smallest exact window for powers up to n_max.
inline int default_window_radius(int n_max) { return n_max + 1; }

WindowDilation build_window_dilation(const ComplexMatrix& t, int window_radius);

/// Max-entry deviation of the Gram matrix of the in-window columns from I.
double interior_orthonormality_error(const WindowDilation& w);

/// ||block (0,0) of base^n - T^n||_F for 1 <= n <= N.
double compression_power_check(const WindowDilation& w, const ComplexMatrix& t, int n);

DifferenceBlocks dilation_difference_blocks(const ContractionPair& pair);

DifferenceStructureReport difference_structure_check(const ContractionPair& pair, int window_radius);

TraceTransfer dilation_trace_transfer(const ContractionPair& pair, int n, int window_radius);

}  // namespace ktrace
