#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ktrace/calculus.hpp"
#include "ktrace/dilation.hpp"
#include "ktrace/disc.hpp"
#include "ktrace/error.hpp"
#include "ktrace/io.hpp"
#include "ktrace/kernel_integral.hpp"
#include "ktrace/spectral_shift.hpp"

namespace ktrace::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json certificate_json(const ContractionCertificate& c) {
    return json{{"operator_norm", c.operator_norm},
                {"strictness_margin", c.strictness_margin},
                {"is_strict", c.is_strict}};
}

ContractionPair load_pair(const fs::path& t_file, const fs::path& t0_file, const RunConfig& cfg) {
    ComplexMatrix t = io::matrix_from_json(io::read_text_file(t_file));
    ComplexMatrix t0 = io::matrix_from_json(io::read_text_file(t0_file));
    return make_contraction_pair(std::move(t), std::move(t0), cfg.tolerances.get("delta_min"),
                                 cfg.tolerances.get("norm"));
}

std::string format_complex(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << ',' << z.imag();
    return os.str();
}

class Recorder {
public:
    explicit Recorder(VerifyResult& result) : result_(result) {}

    void check(const std::string& suite, const std::string& name, double measured,
               double tolerance) {
        const bool ok = std::isfinite(measured) && measured <= tolerance;
        result_.assertions.push_back({suite, name, ok, measured, tolerance});
        if (!ok) result_.failures.push_back(suite + "/" + name);
    }

    void error(const std::string& suite, const Error& e) {
        result_.failures.push_back(suite + "/" + std::string(to_string(e.code())));
    }

private:
    VerifyResult& result_;
};

void run_lemma(const ContractionPair& pair, const RunConfig& cfg, Recorder& rec) {
    const Tolerances& tol = cfg.tolerances;
    const DefectDifferenceReport d = defect_difference_check(pair);
    rec.check("lemma", "left_identity", d.left_identity_residual, tol.get("identity"));
    rec.check("lemma", "right_identity", d.right_identity_residual, tol.get("identity"));
    rec.check("lemma", "left_trace_bound", d.left.holds() ? 0.0 : d.left.lhs - d.left.rhs, 0.0);
    rec.check("lemma", "right_trace_bound", d.right.holds() ? 0.0 : d.right.lhs - d.right.rhs, 0.0);

    const double integral_tol = tol.get("kernel_integral_tol");
    const IntegralReport left = semigroup_integral(defect(pair.T, DefectSide::Left),
                                                   defect(pair.T0, DefectSide::Left), integral_tol);
    const IntegralReport right = semigroup_integral(
        defect(pair.T, DefectSide::Right), defect(pair.T0, DefectSide::Right), integral_tol);
    rec.check("lemma", "left_semigroup_integral", left.frobenius_error, tol.get("kernel_integral"));
    rec.check("lemma", "right_semigroup_integral", right.frobenius_error,
              tol.get("kernel_integral"));
}

void run_dilation(const ContractionPair& pair, const VerifyOptions& options, const RunConfig& cfg,
                  Recorder& rec) {
    const Tolerances& tol = cfg.tolerances;
    const int window = options.window_radius;
    const WindowDilation wt = build_window_dilation(pair.T, window);
    const WindowDilation wt0 = build_window_dilation(pair.T0, window);
    rec.check("dilation", "orthonormality_T", interior_orthonormality_error(wt),
              tol.get("orthonormality"));
    rec.check("dilation", "orthonormality_T0", interior_orthonormality_error(wt0),
              tol.get("orthonormality"));

    const DifferenceStructureReport s = difference_structure_check(pair, window);
    rec.check("dilation", "off_block_norm", s.max_off_block_norm, tol.get("off_block"));
    rec.check("dilation", "block_mismatch", s.block_mismatch, tol.get("off_block"));
    rec.check("dilation", "trace_norm_subadditivity",
              std::max(0.0, s.window_trace_norm - s.block_trace_norm_sum * (1.0 + 1e-12)), 0.0);

    double compression = 0.0, transfer = 0.0;
    for (int n = 1; n <= window; ++n) {
        compression = std::max({compression, compression_power_check(wt, pair.T, n),
                                compression_power_check(wt0, pair.T0, n)});
        const TraceTransfer tr = dilation_trace_transfer(pair, n, window);
        transfer = std::max(transfer, std::abs(tr.lhs - tr.rhs));
    }
    rec.check("dilation", "compression_power", compression, tol.get("compression"));
    rec.check("dilation", "trace_transfer", transfer, tol.get("trace_transfer"));

    if (options.dump_dilation) {
        io::write_text_file(cfg.output_dir / "dilation_T.json", io::dilation_to_json(wt));
        io::write_text_file(cfg.output_dir / "dilation_T0.json", io::dilation_to_json(wt0));
    }
}

void run_circle(const ContractionPair& pair, const VerifyOptions& options, const RunConfig& cfg,
                Recorder& rec) {
    const Tolerances& tol = cfg.tolerances;
    std::vector<std::pair<std::string, CoefficientSeries>> series;
    if (options.phi_file)
        series.emplace_back("phi", io::series_from_json(io::read_text_file(*options.phi_file)));
    else
        series = default_circle_series();

    const SpectralShift xi = ssf_from_moments(moments(pair, cfg.n_max));
    std::ostringstream csv;
    csv << "series,lhs_re,lhs_im,rhs_re,rhs_im,quad_re,quad_im\n";
    for (const auto& [name, phi] : series) {
        const CircleLhs lhs = trace_lhs_circle(pair, phi);
        const CircleRhs rhs = trace_rhs_circle(xi, phi);
        rec.check("circle", name + "/formula", std::abs(lhs.value - rhs.value),
                  tol.get("circle") * (1.0 + phi.weighted_norm()));
        rec.check("circle", name + "/quadrature", rhs.discrepancy,
                  10.0 * (rhs.tail_bound + rhs.grid_budget));
        rec.check("circle", name + "/trace_norm_bound",
                  lhs.bound_holds() ? 0.0 : lhs.difference_trace_norm - lhs.bound, 0.0);
        const double shifted =
            std::abs(trace_rhs_circle(xi.with_constant(Complex(3.5, 0.0)), phi).value - rhs.value);
        rec.check("circle", name + "/additive_constant", shifted, 0.0);
        csv << name << ',' << format_complex(lhs.value) << ',' << format_complex(rhs.value) << ','
            << format_complex(rhs.quadrature_value) << '\n';
    }
    io::write_text_file(cfg.output_dir / "circle_report.csv", csv.str());

    rec.check("circle", "adjoint_relation", adjoint_ssf_check(pair, cfg.n_max).max_residual,
              tol.get("adjoint"));
}

void run_disc(const ContractionPair& pair, const VerifyOptions& options, const RunConfig& cfg,
              Recorder& rec) {
    const Tolerances& tol = cfg.tolerances;
    const LaurentSeries psi = options.psi_file
                                  ? io::laurent_from_json(io::read_text_file(*options.psi_file))
                                  : default_disc_table();
    DiscQuadratureConfig qc;
    qc.threads = cfg.threads;
    const DiscPairingReport report = verify_disc_trace_formula(pair, psi, qc, cfg.n_max);
    rec.check("disc", "quadrature_vs_closed_form", report.max_quadrature_error,
              tol.get("disc_quadrature"));
    rec.check("disc", "limit", report.limit_error, report.tail_bound + tol.get("disc_slack"));
    const LaurentTrace lt = laurent_difference_trace(pair, psi);
    rec.check("disc", "moment_route", std::abs(lt.value - lt.moment_route),
              tol.get("circle") * (1.0 + psi.weighted_norm()));
    rec.check("disc", "trace_norm_bound",
              lt.bound_holds() ? 0.0 : lt.difference_trace_norm - lt.bound, 0.0);

    std::ofstream out(cfg.output_dir / "disc_report.csv", std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write disc_report.csv");
    io::write_disc_report_csv(out, report);
}

template <typename Fn>
void guarded(const std::string& suite, Recorder& rec, Fn fn) {
    try {
        fn();
    } catch (const Error& e) {
        rec.error(suite, e);
    }
}

void write_summary(const VerifyResult& result, const fs::path& dir) {
    json assertions = json::array();
    for (const Assertion& a : result.assertions)
        assertions.push_back({{"suite", a.suite},
                              {"name", a.name},
                              {"passed", a.passed},
                              {"measured", a.measured},
                              {"tolerance", a.tolerance}});
    const json summary{{"passed", result.passed()},
                       {"assertions", std::move(assertions)},
                       {"failures", result.failures}};
    io::write_text_file(dir / "summary.json", summary.dump(2) + "\n");
}

}  // namespace

Tolerances::Tolerances()
    : values_{
          {"delta_min", kDefaultDeltaMin},
          {"norm", kDefaultNormTolerance},
          {"kernel_integral_tol", 1e-8},
          {"kernel_integral", 1e-7},
          {"identity", 1e-12},
          {"orthonormality", 1e-10},
          {"off_block", 1e-12},
          {"compression", 1e-10},
          {"trace_transfer", 1e-9},
          {"circle", 1e-9},
          {"adjoint", 1e-12},
          {"disc_quadrature", kDiscQuadratureTolerance},
          {"disc_slack", kDiscLimitSlack},
      } {}

double Tolerances::get(const std::string& name) const {
    const auto it = values_.find(name);
    if (it == values_.end()) throw Error(ErrorCode::InvalidConfig, "unknown tolerance " + name);
    return it->second;
}

void Tolerances::set(const std::string& name, double value) {
    if (!values_.contains(name)) throw Error(ErrorCode::InvalidConfig, "unknown tolerance " + name);
    if (!(value > 0.0) || !std::isfinite(value))
        throw Error(ErrorCode::InvalidConfig, "tolerance " + name + " must be positive");
    values_[name] = value;
}

void Tolerances::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw Error(ErrorCode::InvalidConfig, "expected name=value, got " + assignment);
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(assignment.substr(eq + 1), &used);
        if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidConfig, "bad tolerance value in " + assignment);
    }
    set(assignment.substr(0, eq), value);
}

Suite parse_suite(const std::string& name) {
    if (name == "lemma") return Suite::Lemma;
    if (name == "dilation") return Suite::Dilation;
    if (name == "circle") return Suite::Circle;
    if (name == "disc") return Suite::Disc;
    if (name == "all") return Suite::All;
    throw Error(ErrorCode::InvalidConfig, "unknown suite " + name);
}

std::vector<std::pair<std::string, CoefficientSeries>> default_circle_series() {
    std::vector<std::pair<std::string, CoefficientSeries>> out;
    out.emplace_back("polynomial", CoefficientSeries({{0.3, 0.0},
                                                      {-0.5, 0.0},
                                                      {0.2, 0.1},
                                                      {0.4, 0.0},
                                                      {0.0, -0.1}}));
    std::vector<Complex> exp_like(21), geometric(61), log_like(31);
    double factorial = 1.0;
    for (int k = 0; k <= 20; ++k) {
        if (k > 0) factorial *= k;
        exp_like[k] = 1.0 / factorial;
    }
    for (int k = 0; k <= 60; ++k) geometric[k] = std::pow(0.9, k);
    for (int k = 1; k <= 30; ++k) log_like[k] = std::pow(0.7, k) / k;
    out.emplace_back("exponential", CoefficientSeries(std::move(exp_like)));
    out.emplace_back("geometric", CoefficientSeries(std::move(geometric)));
    out.emplace_back("logarithmic", CoefficientSeries(std::move(log_like)));
    out.emplace_back("monomial", CoefficientSeries({0.0, 0.0, 1.0}));
    return out;
}

LaurentSeries default_disc_table() { return LaurentSeries::from_modes({{1, Complex(1.0, 0.0)}}); }

void cmd_gen(const RunConfig& cfg) {
    const ContractionPair pair = random_pair(cfg.dim, cfg.delta, cfg.perturbation, cfg.seed,
                                             cfg.tolerances.get("delta_min"));
    fs::create_directories(cfg.output_dir);
    io::write_text_file(cfg.output_dir / "T.json", io::matrix_to_json(pair.T));
    io::write_text_file(cfg.output_dir / "T0.json", io::matrix_to_json(pair.T0));
    const json manifest{{"dim", cfg.dim},
                        {"delta", cfg.delta},
                        {"perturbation", cfg.perturbation},
                        {"seed", cfg.seed},
                        {"T", "T.json"},
                        {"T0", "T0.json"},
                        {"cert_T", certificate_json(pair.cert_T)},
                        {"cert_T0", certificate_json(pair.cert_T0)}};
    io::write_text_file(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
}

VerifyResult cmd_verify(const VerifyOptions& options, const RunConfig& cfg) {
    VerifyResult result;
    Recorder rec(result);
    fs::create_directories(cfg.output_dir);

    std::optional<ContractionPair> pair;
    guarded("input", rec, [&] { pair = load_pair(options.t_file, options.t0_file, cfg); });
    if (pair) {
        const Suite s = options.suite;
        if (s == Suite::Lemma || s == Suite::All)
            guarded("lemma", rec, [&] { run_lemma(*pair, cfg, rec); });
        if (s == Suite::Dilation || s == Suite::All)
            guarded("dilation", rec, [&] { run_dilation(*pair, options, cfg, rec); });
        if (s == Suite::Circle || s == Suite::All)
            guarded("circle", rec, [&] { run_circle(*pair, options, cfg, rec); });
        if (s == Suite::Disc || s == Suite::All)
            guarded("disc", rec, [&] { run_disc(*pair, options, cfg, rec); });
    }
    write_summary(result, cfg.output_dir);
    return result;
}

void cmd_ssf(const SsfOptions& options, const RunConfig& cfg) {
    SpectralShift xi;
    if (options.coeffs_file) {
        xi = io::spectral_shift_from_json(io::read_text_file(*options.coeffs_file));
    } else {
        if (!options.t_file || !options.t0_file)
            throw Error(ErrorCode::InvalidArgument, "ssf needs --T and --T0 or --coeffs");
        const ContractionPair pair = load_pair(*options.t_file, *options.t0_file, cfg);
        xi = ssf_from_moments(moments(pair, cfg.n_max));
    }
    fs::create_directories(cfg.output_dir);
    std::ostringstream csv;
    io::write_ssf_csv(csv, xi, options.grid, options.abel_radius);
    io::write_text_file(cfg.output_dir / "ssf.csv", csv.str());
    if (!options.coeffs_file)
        io::write_text_file(cfg.output_dir / "ssf_coeffs.json", io::spectral_shift_to_json(xi));
}

bool cmd_disc_report(const DiscReportOptions& options, const RunConfig& cfg) {
    const ContractionPair pair = load_pair(options.t_file, options.t0_file, cfg);
    const LaurentSeries psi = options.psi_file
                                  ? io::laurent_from_json(io::read_text_file(*options.psi_file))
                                  : default_disc_table();
    DiscQuadratureConfig qc;
    qc.radial_nodes = options.radial_nodes;
    qc.angular_nodes = options.angular_nodes;
    qc.threads = cfg.threads;
    if (!options.radii.empty()) qc.radius_schedule = options.radii;
    const DiscPairingReport report = verify_disc_trace_formula(pair, psi, qc, cfg.n_max);

    fs::create_directories(cfg.output_dir);
    std::ostringstream csv;
    io::write_disc_report_csv(csv, report);
    io::write_text_file(cfg.output_dir / "disc_report.csv", csv.str());
    const json summary{{"passed", report.passed},
                       {"lhs", {report.lhs_trace.real(), report.lhs_trace.imag()}},
                       {"limit_estimate", {report.limit_estimate.real(), report.limit_estimate.imag()}},
                       {"limit_error", report.limit_error},
                       {"tail_bound", report.tail_bound},
                       {"max_quadrature_error", report.max_quadrature_error}};
    io::write_text_file(cfg.output_dir / "disc_summary.json", summary.dump(2) + "\n");
    return report.passed;
}

}  // namespace ktrace::cli
