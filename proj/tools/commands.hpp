#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ktrace/linops.hpp"
#include "ktrace/series.hpp"

namespace ktrace::cli {

/// Named tolerances with the per-module defaults. Overrides must name an
/// existing key and be positive.
class Tolerances {
public:
    Tolerances();
    double get(const std::string& name) const;
    void set(const std::string& name, double value);
    /// Parses "name=value".
    void apply_override(const std::string& assignment);
    const std::map<std::string, double>& values() const { return values_; }

private:
    std::map<std::string, double> values_;
};

struct RunConfig {
    std::uint64_t seed = 0;
    Index dim = 4;
    double delta = 0.2;
    double perturbation = 0.1;
    int n_max = 64;
    Tolerances tolerances;
    std::filesystem::path output_dir = ".";
    unsigned threads = 0;
};

enum class Suite { Lemma, Dilation, Circle, Disc, All };
Suite parse_suite(const std::string& name);

struct Assertion {
    std::string suite;
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

struct VerifyResult {
    std::vector<Assertion> assertions;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
    int exit_code() const { return passed() ? 0 : 1; }
};

struct VerifyOptions {
    std::filesystem::path t_file;
    std::filesystem::path t0_file;
    Suite suite = Suite::All;
    int window_radius = 8;
    std::optional<std::filesystem::path> phi_file;
    std::optional<std::filesystem::path> psi_file;
    bool dump_dilation = false;
};

struct SsfOptions {
    std::optional<std::filesystem::path> t_file;
    std::optional<std::filesystem::path> t0_file;
    /// Evaluate a stored coefficient table instead of a pair.
    std::optional<std::filesystem::path> coeffs_file;
    int grid = 256;
    double abel_radius = 0.99;
};

struct DiscReportOptions {
    std::filesystem::path t_file;
    std::filesystem::path t0_file;
    std::optional<std::filesystem::path> psi_file;
    std::vector<double> radii;
    int radial_nodes = 64;
    int angular_nodes = 1024;
};

/// Writes T.json, T0.json and manifest.json into cfg.output_dir.
void cmd_gen(const RunConfig& cfg);

/// Writes summary.json plus per-suite CSV reports; never throws for
/// validation failures, which land in the failure list instead.
VerifyResult cmd_verify(const VerifyOptions& options, const RunConfig& cfg);

/// Writes ssf.csv and (for pair input) ssf_coeffs.json.
void cmd_ssf(const SsfOptions& options, const RunConfig& cfg);

/// Writes disc_report.csv and disc_summary.json; returns whether the limit check passed.
bool cmd_disc_report(const DiscReportOptions& options, const RunConfig& cfg);

/// Test series used by the circle suite when no --phi file is given.
std::vector<std::pair<std::string, CoefficientSeries>> default_circle_series();

/// psi(1) = 1, the disc suite's default table.
LaurentSeries default_disc_table();

}  // namespace ktrace::cli
