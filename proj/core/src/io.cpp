#include "ktrace/io.hpp"

#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ktrace/error.hpp"

namespace ktrace::io {

namespace {

using nlohmann::json;

json parse(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
    }
}

json matrix_json(const ComplexMatrix& m) {
    json data = json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

std::vector<std::pair<int, Complex>> mode_entries(const json& j) {
    const auto rows = field<json>(j, "coeffs");
    if (!rows.is_array()) throw Error(ErrorCode::ParseError, "'coeffs' must be an array");
    std::vector<std::pair<int, Complex>> out;
    for (const json& row : rows) {
        if (!row.is_array() || row.size() != 3)
            throw Error(ErrorCode::ParseError, "coefficient rows must be [n, re, im]");
        try {
            out.emplace_back(row[0].get<int>(), Complex(row[1].get<double>(), row[2].get<double>()));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::ParseError, e.what());
        }
    }
    return out;
}

json laurent_rows(const LaurentSeries& c) {
    json rows = json::array();
    for (int n = -c.max_mode(); n <= c.max_mode(); ++n)
        rows.push_back({n, c.at(n).real(), c.at(n).imag()});
    return rows;
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_json(m).dump(2) + "\n"; }

ComplexMatrix matrix_from_json(std::string_view text) {
    const json j = parse(text);
    const auto rows = field<long long>(j, "rows");
    const auto cols = field<long long>(j, "cols");
    const auto data = field<json>(j, "data");
    if (rows < 0 || cols < 0) throw Error(ErrorCode::ParseError, "negative matrix shape");
    if (!data.is_array() || static_cast<long long>(data.size()) != rows * cols) {
        std::ostringstream os;
        os << "data length " << (data.is_array() ? data.size() : 0) << " != rows*cols = "
           << rows * cols;
        throw Error(ErrorCode::ParseError, os.str());
    }
    ComplexMatrix m(rows, cols);
    for (long long k = 0; k < rows * cols; ++k) {
        const json& entry = data[static_cast<std::size_t>(k)];
        if (!entry.is_array() || entry.size() != 2)
            throw Error(ErrorCode::ParseError, "matrix entries must be [re, im]");
        try {
            m(k / cols, k % cols) = Complex(entry[0].get<double>(), entry[1].get<double>());
        } catch (const json::exception& e) {
            throw Error(ErrorCode::ParseError, e.what());
        }
    }
    if (!all_finite(m)) throw Error(ErrorCode::ParseError, "non-finite matrix entry");
    return m;
}

std::string dilation_to_json(const WindowDilation& w) {
    json j = matrix_json(w.base);
    j["N"] = w.window_radius;
    j["d"] = w.block_dim;
    return j.dump(2) + "\n";
}

std::string spectral_shift_to_json(const SpectralShift& s) {
    json j{{"n_max", s.n_max()},
           {"coeffs", laurent_rows(s.coeffs)},
           {"norm_bound", s.norm_bound},
           {"both_strict", s.both_strict}};
    return j.dump(2) + "\n";
}

SpectralShift spectral_shift_from_json(std::string_view text) {
    const json j = parse(text);
    const int n_max = field<int>(j, "n_max");
    if (n_max < 0) throw Error(ErrorCode::ParseError, "negative n_max");
    SpectralShift s;
    s.coeffs = LaurentSeries(n_max);
    for (const auto& [n, c] : mode_entries(j)) {
        if (std::abs(n) > n_max) throw Error(ErrorCode::ParseError, "mode beyond n_max");
        s.coeffs.set(n, c);
    }
    if (j.contains("norm_bound")) s.norm_bound = field<double>(j, "norm_bound");
    if (j.contains("both_strict")) s.both_strict = field<bool>(j, "both_strict");
    return s;
}

std::string series_to_json(const CoefficientSeries& phi) {
    json rows = json::array();
    for (int k = 0; k <= phi.degree(); ++k) rows.push_back({k, phi.at(k).real(), phi.at(k).imag()});
    return json{{"coeffs", std::move(rows)}}.dump(2) + "\n";
}

CoefficientSeries series_from_json(std::string_view text) {
    const auto entries = mode_entries(parse(text));
    int degree = -1;
    for (const auto& [k, c] : entries) {
        if (k < 0) throw Error(ErrorCode::ParseError, "one-sided series has a negative index");
        degree = std::max(degree, k);
    }
    std::vector<Complex> coeffs(static_cast<std::size_t>(degree + 1));
    for (const auto& [k, c] : entries) coeffs[static_cast<std::size_t>(k)] += c;
    return CoefficientSeries(std::move(coeffs));
}

std::string laurent_to_json(const LaurentSeries& psi) {
    return json{{"coeffs", laurent_rows(psi)}}.dump(2) + "\n";
}

LaurentSeries laurent_from_json(std::string_view text) {
    return LaurentSeries::from_modes(mode_entries(parse(text)));
}

void write_ssf_csv(std::ostream& out, const SpectralShift& s, int points, double abel_radius) {
    if (points < 1) throw Error(ErrorCode::InvalidArgument, "grid must have >= 1 point");
    out << "t,xi\n" << std::setprecision(17);
    for (int j = 0; j < points; ++j) {
        const double t = 2.0 * std::numbers::pi * j / points;
        out << t << ',' << evaluate_ssf(s, t, abel_radius) << '\n';
    }
}

void write_disc_report_csv(std::ostream& out, const DiscPairingReport& report) {
    out << "R,quad_re,quad_im,closed_re,closed_im,lhs_re,lhs_im\n" << std::setprecision(17);
    for (const DiscRow& row : report.per_radius) {
        out << row.radius << ',' << row.quadrature.real() << ',' << row.quadrature.imag() << ','
            << row.closed_form.real() << ',' << row.closed_form.imag() << ','
            << report.lhs_trace.real() << ',' << report.lhs_trace.imag() << '\n';
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace ktrace::io
