#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "spoly/experiment.hpp"
#include "spoly/lattice_gap.hpp"

using namespace spoly;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("spoly_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Json disc_set() { return Json{{"variant", "quarter_disc"}, {"radius", "1"}}; }

} // namespace

TEST_CASE("config parsing names the offending field") {
    Json base{{"experiment", "gap"}, {"set", disc_set()}, {"m_max", 5}};
    CHECK_NOTHROW(parse_config(base));

    Json missing = base;
    missing.erase("m_max");
    CHECK_THROWS_WITH_AS(parse_config(missing),
                         "config field `m_max`: must be a positive integer", ConfigError);

    Json bad_exp = base;
    bad_exp["experiment"] = "levitate";
    CHECK_THROWS_AS(parse_config(bad_exp), ConfigError);

    Json bad_solver = base;
    bad_solver["solver"] = Json{{"method", "sorcery"}};
    CHECK_THROWS_WITH_AS(parse_config(bad_solver), "config field `solver.method`: must be lp or lawson",
                         ConfigError);

    Json no_fun{{"experiment", "approx-rate"},
                {"set", Json{{"variant", "standard_simplex"}, {"n", 1}}},
                {"m_max", 5},
                {"compact", Json{{"kind", "circle"}, {"count", 16}}}};
    CHECK_THROWS_WITH_AS(parse_config(no_fun), "config field `function`: missing", ConfigError);
}

TEST_CASE("set specs parse builtins and reject garbage") {
    CHECK(parse_set_spec("simplex:2").vertices().size() == 3);
    CHECK(parse_set_spec("quarter-disc:3/2").radius() == Rational(3, 2));
    CHECK(parse_set_spec("hypograph:2,2").hypo_b() == 2.0);
    CHECK_THROWS_AS(parse_set_spec("dodecahedron"), ConfigError);
    CHECK_THROWS_AS(parse_set_spec("hypograph:2"), ConfigError);
}

TEST_CASE("gap experiment writes matching table and report") {
    auto dir = fresh_dir("gap");
    ExperimentConfig cfg;
    cfg.experiment = "gap";
    cfg.set_json = disc_set();
    cfg.m_max = 6;
    cfg.output = dir.string();
    CHECK(run_experiment(cfg) == 0);

    std::string csv = slurp(dir / "table.csv");
    CHECK(csv.find("m,d_m,root,delta,bound\n") == 0);
    // row for m = 2 carries sqrt(5) - 2
    CHECK(csv.find("\n2," + format_double(std::sqrt(5.0) - 2.0)) != std::string::npos);

    Json rep;
    std::ifstream(dir / "report.json") >> rep;
    CHECK(rep["truncated"] == false);
    CHECK(rep["config"]["experiment"] == "gap");
    CHECK(rep["report"]["rows"].size() == 6);
}

TEST_CASE("experiments rerun byte-identically") {
    auto dir1 = fresh_dir("det1");
    auto dir2 = fresh_dir("det2");
    for (const auto& dir : {dir1, dir2}) {
        ExperimentConfig cfg;
        cfg.experiment = "approx-rate";
        cfg.set_json = Json{{"variant", "standard_simplex"}, {"n", 1}};
        cfg.compact = Json{{"kind", "circle"}, {"count", 48}};
        cfg.function = Json{{"kind", "rational_poles"}, {"poles", {{2.0, 0.0}}}};
        cfg.m_max = 6;
        cfg.seed = 7;
        cfg.output = dir.string();
        CHECK(run_experiment(cfg) == 0);
    }
    CHECK(slurp(dir1 / "table.csv") == slurp(dir2 / "table.csv"));
    // reports agree once the echoed output directory is put aside
    Json r1, r2;
    std::ifstream(dir1 / "report.json") >> r1;
    std::ifstream(dir2 / "report.json") >> r2;
    r1["config"].erase("output");
    r2["config"].erase("output");
    CHECK(r1 == r2);
}

TEST_CASE("approx-rate recovers the geometric rate on a small window") {
    auto dir = fresh_dir("rate");
    ExperimentConfig cfg;
    cfg.experiment = "approx-rate";
    cfg.set_json = Json{{"variant", "standard_simplex"}, {"n", 1}};
    cfg.compact = Json{{"kind", "circle"}, {"count", 64}};
    cfg.function = Json{{"kind", "rational_poles"}, {"poles", {{2.0, 0.0}}}};
    cfg.m_max = 10;
    cfg.output = dir.string();
    CHECK(run_experiment(cfg) == 0);
    Json rep;
    std::ifstream(dir / "report.json") >> rep;
    double rate = rep["fitted_rate"].get<double>();
    CHECK(rate > 0.35);
    CHECK(rate < 0.65);
}

TEST_CASE("hull experiment reports lattice counts") {
    auto dir = fresh_dir("hull");
    ExperimentConfig cfg;
    cfg.experiment = "hull";
    cfg.set_json = Json{{"variant", "standard_simplex"}, {"n", 2}};
    cfg.m = 3;
    cfg.output = dir.string();
    CHECK(run_experiment(cfg) == 0);
    Json rep;
    std::ifstream(dir / "report.json") >> rep;
    CHECK(rep["base_count"] == 10);
    CHECK(rep["hull_count"] == 10); // simplex hulls add nothing
    std::string pts = slurp(dir / "points.csv");
    CHECK(pts.find("alpha1,alpha2,in_base\n") == 0);
}

TEST_CASE("delta experiment") {
    auto dir = fresh_dir("delta");
    ExperimentConfig cfg;
    cfg.experiment = "delta";
    cfg.set_json = Json{{"variant", "standard_simplex"}, {"n", 2}};
    cfg.output = dir.string();
    CHECK(run_experiment(cfg) == 0);
    Json rep;
    std::ifstream(dir / "report.json") >> rep;
    CHECK(rep["delta"].get<double>() == doctest::Approx(0.5 / std::sqrt(2.0)));
    CHECK(rep["common_denominator"] == 1);

    cfg.set_json = disc_set();
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("interrupted runs flush partial results with the truncated marker") {
    auto dir = fresh_dir("interrupt");
    ExperimentConfig cfg;
    cfg.experiment = "gap";
    cfg.set_json = disc_set();
    cfg.m_max = 10;
    cfg.output = dir.string();
    g_interrupted.store(true);
    CHECK(run_experiment(cfg) == 130);
    g_interrupted.store(false);
    Json rep;
    std::ifstream(dir / "report.json") >> rep;
    CHECK(rep["truncated"] == true);
    CHECK(rep["report"]["rows"].empty());
    // files exist and parse; a fresh run completes normally
    CHECK(run_experiment(cfg) == 0);
}

TEST_CASE("siciak-field experiment classifies a coarse grid") {
    auto dir = fresh_dir("field");
    ExperimentConfig cfg;
    cfg.experiment = "siciak-field";
    cfg.set_json = Json{{"variant", "standard_simplex"}, {"n", 1}};
    cfg.compact = Json{{"kind", "circle"}, {"count", 32}};
    cfg.R = 2.0;
    cfg.m_list = {1, 2, 4};
    GridSpec gs;
    gs.re_min = -3.0;
    gs.re_max = 3.0;
    gs.im_min = 0.0;
    gs.im_max = 0.0;
    gs.step = 0.5;
    cfg.grid = gs;
    cfg.output = dir.string();
    CHECK(run_experiment(cfg) == 0);
    std::string pts = slurp(dir / "points.csv");
    CHECK(pts.find("re(z1),im(z1),v_hat,inside\n") == 0);
    // z = 0 is inside, z = 3 is outside
    CHECK(pts.find("\n0,0,") != std::string::npos);
    Json rep;
    std::ifstream(dir / "report.json") >> rep;
    CHECK(rep["grid_points"] == 13);
    CHECK(rep["inside_count"].get<int>() >= 7); // |z| < 2 points
    CHECK(rep["inside_count"].get<int>() <= 9);
}
