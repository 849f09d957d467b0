#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ktrace/error.hpp"

namespace {

unsigned threads_from_env() {
    const char* value = std::getenv("SSF_DISC_THREADS");
    if (value == nullptr || *value == '\0') return 0;
    try {
        const long parsed = std::stol(value);
        return parsed > 0 ? static_cast<unsigned>(parsed) : 0;
    } catch (const std::exception&) {
        std::cerr << "ignoring malformed SSF_DISC_THREADS=" << value << "\n";
        return 0;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace ktrace::cli;

    CLI::App app{"Spectral shift functions and trace formulas for contraction pairs"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.threads = threads_from_env();
    std::vector<std::string> tolerance_overrides;
    std::string output_dir = ".";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", output_dir, "Output directory")->capture_default_str();
        sub->add_option("--n-max", cfg.n_max, "Number of moments / Fourier modes")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sub->add_option("--tol", tolerance_overrides, "Tolerance override name=value");
    };

    auto* gen = app.add_subcommand("gen", "Generate a random contraction pair");
    gen->add_option("--dim", cfg.dim, "Matrix dimension")->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--delta", cfg.delta, "Strictness margin of T0")->capture_default_str();
    gen->add_option("--perturbation", cfg.perturbation, "Trace norm of T - T0")->capture_default_str();
    gen->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    add_common(gen);

    VerifyOptions verify_opts;
    std::string suite = "all";
    std::string phi_file, psi_file;
    auto* verify = app.add_subcommand("verify", "Check the trace formulas on a pair");
    verify->add_option("--T", verify_opts.t_file, "Matrix JSON for T")->required();
    verify->add_option("--T0", verify_opts.t0_file, "Matrix JSON for T0")->required();
    verify->add_option("--suite", suite, "lemma | dilation | circle | disc | all")
        ->capture_default_str()
        ->check(CLI::IsMember({"lemma", "dilation", "circle", "disc", "all"}));
    verify->add_option("--window", verify_opts.window_radius, "Dilation window radius N")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    verify->add_option("--phi", phi_file, "One-sided series JSON for the circle suite");
    verify->add_option("--psi", psi_file, "Two-sided series JSON for the disc suite");
    verify->add_flag("--dump-dilation", verify_opts.dump_dilation, "Write window dilations as JSON");
    add_common(verify);

    SsfOptions ssf_opts;
    std::string t_file, t0_file, coeffs_file;
    auto* ssf = app.add_subcommand("ssf", "Tabulate the spectral shift function");
    ssf->add_option("--T", t_file, "Matrix JSON for T");
    ssf->add_option("--T0", t0_file, "Matrix JSON for T0");
    ssf->add_option("--coeffs", coeffs_file, "Coefficient JSON to evaluate instead of a pair");
    ssf->add_option("--grid", ssf_opts.grid, "Number of t samples")->capture_default_str();
    ssf->add_option("--abel-radius", ssf_opts.abel_radius, "Abel summation radius in (0, 1)")
        ->capture_default_str();
    add_common(ssf);

    DiscReportOptions disc_opts;
    auto* disc = app.add_subcommand("disc-report", "Tabulate the disc integral against radius");
    disc->add_option("--T", disc_opts.t_file, "Matrix JSON for T")->required();
    disc->add_option("--T0", disc_opts.t0_file, "Matrix JSON for T0")->required();
    disc->add_option("--psi", psi_file, "Two-sided series JSON (default psi(1) = 1)");
    disc->add_option("--radii", disc_opts.radii, "Increasing radius schedule in (0, 1)");
    disc->add_option("--radial-nodes", disc_opts.radial_nodes)->capture_default_str();
    disc->add_option("--angular-nodes", disc_opts.angular_nodes)->capture_default_str();
    add_common(disc);

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& o : tolerance_overrides) cfg.tolerances.apply_override(o);
        cfg.output_dir = output_dir;

        if (gen->parsed()) {
            cmd_gen(cfg);
            return 0;
        }
        if (verify->parsed()) {
            verify_opts.suite = parse_suite(suite);
            if (!phi_file.empty()) verify_opts.phi_file = phi_file;
            if (!psi_file.empty()) verify_opts.psi_file = psi_file;
            const VerifyResult result = cmd_verify(verify_opts, cfg);
            for (const auto& f : result.failures) std::cout << "FAIL " << f << "\n";
            std::cout << (result.passed() ? "verify: pass" : "verify: fail") << " ("
                      << result.assertions.size() << " assertions)\n";
            return result.exit_code();
        }
        if (ssf->parsed()) {
            if (!t_file.empty()) ssf_opts.t_file = t_file;
            if (!t0_file.empty()) ssf_opts.t0_file = t0_file;
            if (!coeffs_file.empty()) ssf_opts.coeffs_file = coeffs_file;
            cmd_ssf(ssf_opts, cfg);
            return 0;
        }
        if (disc->parsed()) {
            if (!psi_file.empty()) disc_opts.psi_file = psi_file;
            return cmd_disc_report(disc_opts, cfg) ? 0 : 1;
        }
    } catch (const ktrace::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
