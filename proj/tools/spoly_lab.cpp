// spoly-lab: experiment runner for S-restricted polynomial approximation.
//
// Subcommands:
//   run <config.json>            full config-driven experiment
//   verify <suite>               geometry | gap | approx | siciak | all
//   gap  --set <spec> --m-max N  lattice gap table for a builtin or file set
//   hull --set <spec> --m N      hull lattice comparison at one scale
//
// Exit codes: 0 success, 1 failed verification, 2 configuration error,
// 3 solver error, 130 interrupted (partial results flushed).
#include <csignal>
#include <cstdio>

#include "CLI11.hpp"

#include "spoly/acceptance.hpp"
#include "spoly/experiment.hpp"
#include "spoly/parallel.hpp"

namespace {

void on_interrupt(int) { spoly::g_interrupted.store(true); }

int dispatch_errors(const std::function<int()>& body) {
    try {
        return body();
    } catch (const spoly::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return 2;
    } catch (const spoly::DegenerateSampleError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const spoly::InadmissibleWeightError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const spoly::IterationLimitError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, on_interrupt);
    std::signal(SIGTERM, on_interrupt);

    CLI::App app{"S-restricted polynomial approximation lab"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;
    int directions = 32;
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", seed, "seed echoed into reports")->capture_default_str();
    app.add_option("--threads", threads,
                   "worker threads (0 = SPOLY_LAB_THREADS or 1)")
        ->capture_default_str();
    app.add_option("--directions", directions, "polygonal relaxation directions")
        ->capture_default_str();

    auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
    std::string config_path;
    run_cmd->add_option("config", config_path, "config file")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify_cmd->add_option("suite", suite, "geometry|gap|approx|siciak|all")->required();

    auto* gap_cmd = app.add_subcommand("gap", "lattice gap table");
    std::string gap_set;
    std::int64_t gap_m_max = 0;
    gap_cmd->add_option("--set", gap_set, "simplex:N | quarter-disc:R | hypograph:B,C | file")
        ->required();
    gap_cmd->add_option("--m-max", gap_m_max, "largest scale index")->required();

    auto* hull_cmd = app.add_subcommand("hull", "hull lattice comparison");
    std::string hull_set;
    std::int64_t hull_m = 0;
    hull_cmd->add_option("--set", hull_set, "set spec as for gap")->required();
    hull_cmd->add_option("--m", hull_m, "scale index")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        return dispatch_errors([&] {
            spoly::ExperimentConfig cfg = spoly::load_config(config_path);
            if (out_dir != ".") cfg.output = out_dir;
            if (threads > 0) cfg.threads = threads;
            if (seed != 0) cfg.seed = seed;
            if (app.count("--directions") > 0) cfg.solver.directions = directions;
            return spoly::run_experiment(cfg);
        });
    }
    if (verify_cmd->parsed()) {
        return dispatch_errors([&] {
            auto results = spoly::run_acceptance(suite, spoly::resolve_threads(threads));
            bool ok = true;
            for (const auto& r : results) {
                std::printf("%s  criterion %2d: %s — %s\n", r.passed ? "PASS" : "FAIL", r.id,
                            r.name.c_str(), r.detail.c_str());
                ok = ok && r.passed;
            }
            return ok ? 0 : 1;
        });
    }
    if (gap_cmd->parsed()) {
        return dispatch_errors([&] {
            spoly::ExperimentConfig cfg;
            cfg.experiment = "gap";
            cfg.set_json = spoly::to_json(spoly::parse_set_spec(gap_set));
            cfg.m_max = gap_m_max;
            cfg.output = out_dir;
            cfg.threads = threads;
            cfg.seed = seed;
            if (cfg.m_max < 1) throw spoly::ConfigError("config field `m_max`: must be positive");
            return spoly::run_experiment(cfg);
        });
    }
    if (hull_cmd->parsed()) {
        return dispatch_errors([&] {
            spoly::ExperimentConfig cfg;
            cfg.experiment = "hull";
            cfg.set_json = spoly::to_json(spoly::parse_set_spec(hull_set));
            cfg.m = hull_m;
            cfg.output = out_dir;
            cfg.threads = threads;
            cfg.seed = seed;
            cfg.solver.directions = directions;
            if (cfg.m < 1) throw spoly::ConfigError("config field `m`: must be positive");
            return spoly::run_experiment(cfg);
        });
    }
    return 2;
}
