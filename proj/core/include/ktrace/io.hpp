#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ktrace/dilation.hpp"
#include "ktrace/disc.hpp"
#include "ktrace/linops.hpp"
#include "ktrace/series.hpp"
#include "ktrace/spectral_shift.hpp"

namespace ktrace::io {

// Matrix JSON: { "rows": r, "cols": c, "data": [[re, im], ...] } in row-major order.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(std::string_view text);

/// Matrix JSON of the window base with extra keys "N" and "d".
std::string dilation_to_json(const WindowDilation& w);

// Spectral shift JSON: { "n_max": K, "coeffs": [[n, re, im], ...] }.
std::string spectral_shift_to_json(const SpectralShift& s);
SpectralShift spectral_shift_from_json(std::string_view text);

// Series JSON: { "coeffs": [[k, re, im], ...] }; one-sided readers reject k < 0.
std::string series_to_json(const CoefficientSeries& phi);
CoefficientSeries series_from_json(std::string_view text);
std::string laurent_to_json(const LaurentSeries& psi);
LaurentSeries laurent_from_json(std::string_view text);

/// Rows "t,xi" of the Abel mean on a uniform grid of `points` values in [0, 2 pi).
void write_ssf_csv(std::ostream& out, const SpectralShift& s, int points, double abel_radius);

/// Columns R, quad_re, quad_im, closed_re, closed_im, lhs_re, lhs_im.
void write_disc_report_csv(std::ostream& out, const DiscPairingReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ktrace::io
