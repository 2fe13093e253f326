#include "spoly/experiment.hpp"

#include <cmath>
#include <fstream>

#include "spoly/parallel.hpp"

namespace spoly {

std::atomic<bool> g_interrupted{false};

namespace {

namespace fs = std::filesystem;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw ConfigError("config field `" + field + "`: " + why);
}

template <typename T>
T get_field(const Json& j, const std::string& field) {
    if (!j.contains(field)) bad_field(field, "missing");
    try {
        return j.at(field).get<T>();
    } catch (const Json::exception&) {
        bad_field(field, "wrong type");
    }
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

Json config_echo(const ExperimentConfig& cfg) {
    Json j;
    j["experiment"] = cfg.experiment;
    j["set"] = cfg.set_json;
    if (cfg.compact) j["compact"] = *cfg.compact;
    if (cfg.weight) j["weight"] = *cfg.weight;
    if (cfg.function) j["function"] = *cfg.function;
    if (cfg.validation) j["validation"] = *cfg.validation;
    if (cfg.grid) {
        j["grid"] = Json{{"re_min", cfg.grid->re_min}, {"re_max", cfg.grid->re_max},
                         {"im_min", cfg.grid->im_min}, {"im_max", cfg.grid->im_max},
                         {"step", cfg.grid->step}};
    }
    if (cfg.m_max > 0) j["m_max"] = cfg.m_max;
    if (!cfg.m_list.empty()) j["m_list"] = cfg.m_list;
    if (cfg.m > 0) j["m"] = cfg.m;
    if (cfg.R > 0.0) j["R"] = cfg.R;
    j["solver"] = Json{{"directions", cfg.solver.directions},
                       {"max_iter", cfg.solver.max_iter},
                       {"tol", cfg.solver.tol},
                       {"method", cfg.solver.method}};
    j["seed"] = cfg.seed;
    j["threads"] = resolve_threads(cfg.threads);
    j["output"] = cfg.output;
    return j;
}

WeightedSampleSet samples_from_spec(const Json& spec) {
    std::string kind = get_field<std::string>(spec, "kind");
    if (kind == "circle") return circle_samples(get_field<int>(spec, "count"));
    if (kind == "torus")
        return torus_samples(get_field<int>(spec, "count1"), get_field<int>(spec, "count2"));
    if (kind == "segment") return segment_samples(get_field<int>(spec, "count"));
    if (kind == "disc_grid") return disc_grid_samples(get_field<double>(spec, "step"));
    if (kind == "file") {
        fs::path path = get_field<std::string>(spec, "path");
        std::ifstream in(path);
        if (!in) bad_field("compact.path", "cannot open " + path.string());
        Json j;
        in >> j;
        WeightedSampleSet s;
        for (const auto& pj : j.at("points")) {
            CVec z;
            for (const auto& cj : pj) z.push_back(Complex(cj.at(0).get<double>(),
                                                          cj.at(1).get<double>()));
            s.points.push_back(std::move(z));
        }
        if (j.contains("weights")) {
            for (const auto& wj : j.at("weights"))
                s.weights.push_back(wj.is_string() ? std::numeric_limits<double>::infinity()
                                                   : wj.get<double>());
        } else {
            s.weights.assign(s.points.size(), 0.0);
        }
        if (s.weights.size() != s.points.size())
            bad_field("compact.weights", "length differs from points");
        s.label = path.string();
        return s;
    }
    bad_field("compact.kind", "unknown generator " + kind);
}

} // namespace

ExperimentConfig parse_config(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig cfg;
    cfg.experiment = get_field<std::string>(j, "experiment");
    static const std::vector<std::string> kinds = {"gap", "delta", "hull", "approx-rate",
                                                   "siciak-field"};
    if (std::find(kinds.begin(), kinds.end(), cfg.experiment) == kinds.end())
        bad_field("experiment", "unknown experiment " + cfg.experiment);
    if (!j.contains("set")) bad_field("set", "missing");
    cfg.set_json = j.at("set");
    exponent_set_from_json(cfg.set_json); // validate now

    if (j.contains("compact")) cfg.compact = j.at("compact");
    if (j.contains("weight")) cfg.weight = j.at("weight");
    if (j.contains("function")) cfg.function = j.at("function");
    if (j.contains("validation")) cfg.validation = j.at("validation");
    if (j.contains("m_max")) cfg.m_max = get_field<std::int64_t>(j, "m_max");
    if (j.contains("m")) cfg.m = get_field<std::int64_t>(j, "m");
    if (j.contains("m_list")) cfg.m_list = get_field<std::vector<std::int64_t>>(j, "m_list");
    if (j.contains("R")) cfg.R = get_field<double>(j, "R");
    if (j.contains("seed")) cfg.seed = get_field<std::uint64_t>(j, "seed");
    if (j.contains("threads")) cfg.threads = get_field<int>(j, "threads");
    if (j.contains("output")) cfg.output = get_field<std::string>(j, "output");
    if (j.contains("grid")) {
        const Json& g = j.at("grid");
        GridSpec gs;
        if (g.contains("re_min")) gs.re_min = get_field<double>(g, "re_min");
        if (g.contains("re_max")) gs.re_max = get_field<double>(g, "re_max");
        if (g.contains("im_min")) gs.im_min = get_field<double>(g, "im_min");
        if (g.contains("im_max")) gs.im_max = get_field<double>(g, "im_max");
        gs.step = get_field<double>(g, "step");
        if (!(gs.step > 0.0)) bad_field("grid.step", "must be positive");
        cfg.grid = gs;
    }
    if (j.contains("solver")) {
        const Json& s = j.at("solver");
        if (s.contains("directions")) cfg.solver.directions = get_field<int>(s, "directions");
        if (s.contains("max_iter")) cfg.solver.max_iter = get_field<int>(s, "max_iter");
        if (s.contains("tol")) cfg.solver.tol = get_field<double>(s, "tol");
        if (s.contains("method")) cfg.solver.method = get_field<std::string>(s, "method");
        if (cfg.solver.method != "lp" && cfg.solver.method != "lawson")
            bad_field("solver.method", "must be lp or lawson");
        if (cfg.solver.directions < 3) bad_field("solver.directions", "must be at least 3");
    }

    // Per-experiment requirements.
    if (cfg.experiment == "gap" || cfg.experiment == "approx-rate") {
        if (cfg.m_max < 1) bad_field("m_max", "must be a positive integer");
    }
    if (cfg.experiment == "hull" && cfg.m < 1) bad_field("m", "must be a positive integer");
    if (cfg.experiment == "approx-rate") {
        if (!cfg.compact) bad_field("compact", "missing");
        if (!cfg.function) bad_field("function", "missing");
    }
    if (cfg.experiment == "siciak-field") {
        if (!cfg.compact) bad_field("compact", "missing");
        if (!(cfg.R > 0.0)) bad_field("R", "must be positive");
        if (cfg.m_list.empty()) bad_field("m_list", "must be nonempty");
        if (!cfg.grid) bad_field("grid", "missing");
    }
    return cfg;
}

ExperimentConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

ExponentSet resolve_set(const ExperimentConfig& cfg) {
    return exponent_set_from_json(cfg.set_json);
}

WeightedSampleSet resolve_samples(const ExperimentConfig& cfg) {
    if (!cfg.compact) throw ConfigError("config field `compact`: missing");
    WeightedSampleSet s = samples_from_spec(*cfg.compact);
    if (cfg.validation) {
        WeightedSampleSet v = samples_from_spec(*cfg.validation);
        s.validation_points = v.points;
        s.validation_weights = v.weights;
    }
    if (cfg.weight) {
        std::string kind = get_field<std::string>(*cfg.weight, "kind");
        if (kind == "zero") {
            set_constant_weight(s, 0.0);
        } else if (kind == "constant") {
            set_constant_weight(s, get_field<double>(*cfg.weight, "value"));
        } else if (kind == "radial") {
            set_radial_weight(s, get_field<double>(*cfg.weight, "alpha"));
        } else if (kind == "file") {
            fs::path path = get_field<std::string>(*cfg.weight, "path");
            std::ifstream in(path);
            if (!in) bad_field("weight.path", "cannot open " + path.string());
            Json j;
            in >> j;
            s.weights.clear();
            for (const auto& wj : j)
                s.weights.push_back(wj.is_string() ? std::numeric_limits<double>::infinity()
                                                   : wj.get<double>());
            if (s.weights.size() != s.points.size())
                bad_field("weight", "length differs from points");
        } else {
            bad_field("weight.kind", "unknown weight " + kind);
        }
    }
    return s;
}

std::vector<Complex> resolve_function(const ExperimentConfig& cfg,
                                      const std::vector<CVec>& points,
                                      const ExponentSet& S) {
    if (!cfg.function) throw ConfigError("config field `function`: missing");
    const Json& f = *cfg.function;
    std::string kind = get_field<std::string>(f, "kind");
    if (kind == "rational_poles") {
        std::vector<Complex> poles;
        for (const auto& pj : f.at("poles"))
            poles.push_back(Complex(pj.at(0).get<double>(), pj.at(1).get<double>()));
        if (poles.size() != points.front().size())
            bad_field("function.poles", "need one pole per coordinate");
        std::vector<Complex> out;
        for (const auto& z : points) {
            Complex denom(1.0, 0.0);
            for (std::size_t j = 0; j < poles.size(); ++j) denom *= z[j] - poles[j];
            out.push_back(1.0 / denom);
        }
        return out;
    }
    if (kind == "polynomial") {
        SPolynomial p = spolynomial_from_json(f.at("value"), S);
        std::vector<Complex> out;
        for (const auto& z : points) out.push_back(evaluate(p, z));
        return out;
    }
    if (kind == "file") {
        fs::path path = get_field<std::string>(f, "path");
        std::ifstream in(path);
        if (!in) bad_field("function.path", "cannot open " + path.string());
        Json j;
        in >> j;
        std::vector<Complex> out;
        for (const auto& vj : j)
            out.push_back(Complex(vj.at(0).get<double>(), vj.at(1).get<double>()));
        if (out.size() != points.size()) bad_field("function", "length differs from points");
        return out;
    }
    bad_field("function.kind", "unknown function " + kind);
}

ExponentSet parse_set_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
    try {
        if (head == "simplex") return ExponentSet::standard_simplex(std::stoi(tail));
        if (head == "quarter-disc")
            return ExponentSet::quarter_disc(tail.empty() ? Rational(1) : Rational::parse(tail));
        if (head == "hypograph") {
            auto comma = tail.find(',');
            if (comma == std::string::npos)
                throw ConfigError("hypograph spec needs B,C");
            return ExponentSet::hypograph(std::stod(tail.substr(0, comma)),
                                          std::stod(tail.substr(comma + 1)));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("bad set spec `" + spec + "`: " + e.what());
    }
    // otherwise a JSON file with the canonical serialization
    std::ifstream in(spec);
    if (!in) throw ConfigError("set spec is neither a builtin nor a readable file: " + spec);
    Json j;
    try {
        in >> j;
        return exponent_set_from_json(j);
    } catch (const std::exception& e) {
        throw ConfigError("bad set file `" + spec + "`: " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

namespace {

int run_gap(const ExperimentConfig& cfg, const fs::path& outdir) {
    ExponentSet S = resolve_set(cfg);
    GapReport report;
    bool truncated = false;
    // per-m loop with cooperative interrupt between rows
    report.rows.reserve(cfg.m_max);
    for (std::int64_t m = 1; m <= cfg.m_max; ++m) {
        if (g_interrupted.load()) {
            truncated = true;
            break;
        }
        GapResult g = gap_distance_full(S, m);
        GapRow row;
        row.m = m;
        row.d_m = g.distance;
        row.root = std::pow(g.distance, 1.0 / static_cast<double>(m));
        row.minimizers = std::move(g.minimizers);
        report.rows.push_back(std::move(row));
    }
    if (!report.rows.empty()) {
        std::int64_t have = static_cast<std::int64_t>(report.rows.size());
        std::int64_t start = (have + 1) / 2;
        double a = std::numeric_limits<double>::infinity();
        for (std::int64_t m = start; m <= have; ++m)
            a = std::min(a, report.rows[m - 1].root);
        report.a_estimate = a;
    }
    if (S.kind() == ExponentSet::Kind::Polytope) {
        DeltaResult d = polytope_delta(S);
        report.delta = d.delta;
        report.common_denominator = d.common_denominator;
    } else if (S.kind() == ExponentSet::Kind::Hypograph) {
        for (const auto& row : report.rows)
            report.bound_rows.emplace_back(row.m,
                                           hypograph_gap_bound(S.hypo_b(), S.hypo_c(), row.m));
    }

    Json rep;
    rep["config"] = config_echo(cfg);
    rep["report"] = to_json(report);
    rep["truncated"] = truncated;
    write_file(outdir / "report.json", rep.dump(2) + "\n");
    write_file(outdir / "table.csv", gap_report_csv(report));
    return truncated ? 130 : 0;
}

int run_delta(const ExperimentConfig& cfg, const fs::path& outdir) {
    ExponentSet S = resolve_set(cfg);
    if (S.kind() != ExponentSet::Kind::Polytope)
        throw ConfigError("config field `set`: delta experiment needs a rational polytope");
    DeltaResult d = polytope_delta(S);
    Json rep;
    rep["config"] = config_echo(cfg);
    rep["delta"] = d.delta;
    rep["common_denominator"] = d.common_denominator;
    rep["truncated"] = false;
    write_file(outdir / "report.json", rep.dump(2) + "\n");
    write_file(outdir / "table.csv", "m,d_m,root,delta,bound\n");
    return 0;
}

int run_hull(const ExperimentConfig& cfg, const fs::path& outdir) {
    ExponentSet S = resolve_set(cfg);
    const std::int64_t m = cfg.m;
    double gap = gap_distance(S, m);
    Cone gamma = Cone::ice_cream(gap);

    LatticeSet base = lattice_points(S, m);
    Json rep;
    rep["config"] = config_echo(cfg);
    rep["gap"] = gap;
    rep["base_count"] = base.exponents.size();

    std::string points_csv = "alpha1,alpha2,in_base\n";
    if (cfg.compact && cfg.function) {
        WeightedSampleSet samples = resolve_samples(cfg);
        std::vector<Complex> f = resolve_function(cfg, samples.points, S);
        std::vector<Complex> fv;
        if (!samples.validation_points.empty())
            fv = resolve_function(cfg, samples.validation_points, S);
        HullComparison hc =
            hull_approx_comparison(f, samples, S, m, cfg.solver.directions, fv);
        rep["d_S"] = hc.d_S;
        rep["d_hull"] = hc.d_hull;
        rep["hull_count"] = hc.hull_exponents.exponents.size();
        rep["heuristic"] = hc.heuristic;
        for (const auto& e : hc.hull_exponents.exponents) {
            bool in_base = std::find(base.exponents.begin(), base.exponents.end(), e) !=
                           base.exponents.end();
            points_csv += std::to_string(e[0]) + "," +
                          (e.size() > 1 ? std::to_string(e[1]) : "") + "," +
                          (in_base ? "1" : "0") + "\n";
        }
    } else {
        // lattice-only variant: enumerate the hull filter
        Vec ones(S.dim(), 1.0);
        double bound = static_cast<double>(m) * support_function(S, ones);
        std::int64_t hi = static_cast<std::int64_t>(std::floor(bound + 1e-9));
        std::size_t hull_count = 0;
        for (std::int64_t a = 0; a <= hi; ++a)
            for (std::int64_t b = 0; b <= hi; ++b) {
                if (S.dim() != 2) break;
                auto r = cone_hull_membership(
                    S, gamma, Vec{static_cast<double>(a) / m, static_cast<double>(b) / m});
                if (!r.member) continue;
                ++hull_count;
                IVec e{a, b};
                bool in_base = std::find(base.exponents.begin(), base.exponents.end(), e) !=
                               base.exponents.end();
                points_csv += std::to_string(a) + "," + std::to_string(b) + "," +
                              (in_base ? "1" : "0") + "\n";
            }
        rep["hull_count"] = hull_count;
    }
    rep["truncated"] = false;
    write_file(outdir / "report.json", rep.dump(2) + "\n");
    write_file(outdir / "points.csv", points_csv);
    return 0;
}

int run_approx_rate(const ExperimentConfig& cfg, const fs::path& outdir) {
    ExponentSet S = resolve_set(cfg);
    WeightedSampleSet samples = resolve_samples(cfg);
    std::vector<Complex> f = resolve_function(cfg, samples.points, S);
    std::vector<Complex> fv;
    if (!samples.validation_points.empty())
        fv = resolve_function(cfg, samples.validation_points, S);

    std::vector<ApproxResult> results;
    bool truncated = false;
    for (std::int64_t m = 1; m <= cfg.m_max; ++m) {
        if (g_interrupted.load()) {
            truncated = true;
            break;
        }
        if (cfg.solver.method == "lawson") {
            LawsonOptions opts;
            opts.max_iter = cfg.solver.max_iter;
            opts.tol = cfg.solver.tol;
            results.push_back(best_weighted_approx_lawson(f, samples, S, m, opts, fv));
        } else {
            results.push_back(
                best_weighted_approx_lp(f, samples, S, m, cfg.solver.directions, fv));
        }
    }

    Json rep;
    rep["config"] = config_echo(cfg);
    Json rows = Json::array();
    for (const auto& r : results) rows.push_back(to_json(r));
    rep["rows"] = rows;
    if (results.size() >= 4) {
        DecayRate rate = decay_rate(results);
        rep["fitted_rate"] = rate.fitted_rate;
        rep["roots"] = rate.roots;
        rep["degenerate"] = rate.degenerate;
    }
    rep["truncated"] = truncated;
    write_file(outdir / "report.json", rep.dump(2) + "\n");
    write_file(outdir / "table.csv", approx_results_csv(results));
    return truncated ? 130 : 0;
}

int run_siciak_field(const ExperimentConfig& cfg, const fs::path& outdir) {
    ExponentSet S = resolve_set(cfg);
    if (S.dim() != 1)
        throw ConfigError("config field `grid`: rectangular grids cover n = 1 only");
    WeightedSampleSet samples = resolve_samples(cfg);
    const GridSpec& gs = *cfg.grid;
    std::vector<CVec> grid;
    int nre = static_cast<int>(std::floor((gs.re_max - gs.re_min) / gs.step + 1e-9)) + 1;
    int nim = static_cast<int>(std::floor((gs.im_max - gs.im_min) / gs.step + 1e-9)) + 1;
    for (int i = 0; i < nre; ++i)
        for (int j = 0; j < nim; ++j)
            grid.push_back(CVec{Complex(gs.re_min + i * gs.step, gs.im_min + j * gs.step)});

    SiciakField field = sublevel_classify(S, samples, cfg.m_list, grid, cfg.R,
                                          cfg.solver.directions, resolve_threads(cfg.threads));
    Json rep;
    rep["config"] = config_echo(cfg);
    rep["grid_points"] = grid.size();
    std::size_t inside = 0;
    for (auto c : field.inside) inside += c;
    rep["inside_count"] = inside;
    rep["truncated"] = false;
    write_file(outdir / "report.json", rep.dump(2) + "\n");
    write_file(outdir / "points.csv", siciak_field_csv(field));
    return 0;
}

} // namespace

int run_experiment(const ExperimentConfig& cfg) {
    fs::path outdir(cfg.output);
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (!fs::is_directory(outdir))
        throw ConfigError("config field `output`: cannot create directory " + cfg.output);

    if (cfg.experiment == "gap") return run_gap(cfg, outdir);
    if (cfg.experiment == "delta") return run_delta(cfg, outdir);
    if (cfg.experiment == "hull") return run_hull(cfg, outdir);
    if (cfg.experiment == "approx-rate") return run_approx_rate(cfg, outdir);
    if (cfg.experiment == "siciak-field") return run_siciak_field(cfg, outdir);
    throw ConfigError("config field `experiment`: unknown experiment " + cfg.experiment);
}

} // namespace spoly
