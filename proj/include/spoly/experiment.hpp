#pragma once

#include <atomic>
#include <filesystem>
#include <optional>

#include "spoly/serialize.hpp"

namespace spoly {

// Config or argument problems: the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverOptions {
    int directions = 32;
    int max_iter = 500;
    double tol = 1e-10;
    std::string method = "lp"; // lp | lawson
};

struct GridSpec {
    double re_min = -3.0, re_max = 3.0;
    double im_min = -3.0, im_max = 3.0;
    double step = 0.05;
};

struct ExperimentConfig {
    std::string experiment; // gap | delta | hull | approx-rate | siciak-field
    Json set_json;
    std::optional<Json> compact;
    std::optional<Json> weight;
    std::optional<Json> function;
    std::optional<Json> validation; // finer generator for residual certification
    std::optional<GridSpec> grid;
    std::int64_t m_max = 0;
    std::vector<std::int64_t> m_list;
    std::int64_t m = 0; // hull experiment
    double R = 0.0;
    SolverOptions solver;
    std::uint64_t seed = 0;
    int threads = 0; // 0 = resolve via SPOLY_LAB_THREADS, default 1
    std::string output = ".";
};

// Parses and validates; error messages name the offending field.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& file);

// Resolved inputs built from a config.
ExponentSet resolve_set(const ExperimentConfig& cfg);
WeightedSampleSet resolve_samples(const ExperimentConfig& cfg);
std::vector<Complex> resolve_function(const ExperimentConfig& cfg,
                                      const std::vector<CVec>& points,
                                      const ExponentSet& S);

// Shorthand parser for --set flags: "simplex:N", "quarter-disc:R",
// "hypograph:B,C", or a path to a JSON file.
ExponentSet parse_set_spec(const std::string& spec);

// Cooperative interrupt: when set, per-m loops stop early and the partial
// report carries "truncated": true.
extern std::atomic<bool> g_interrupted;

// Runs the experiment and writes report.json / table.csv / points.csv into
// cfg.output.  Returns 0, or 130 when interrupted mid-run.
int run_experiment(const ExperimentConfig& cfg);

} // namespace spoly
