#include "spoly/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace spoly {

namespace {

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("rational values must be integers or \"p/q\" strings");
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// ExponentSet
// ---------------------------------------------------------------------------

Json to_json(const ExponentSet& S) {
    Json j;
    switch (S.kind()) {
    case ExponentSet::Kind::Polytope: {
        j["variant"] = "rational_polytope";
        Json verts = Json::array();
        for (const auto& v : S.vertices()) {
            Json vj = Json::array();
            for (const auto& c : v) vj.push_back(c.str());
            verts.push_back(vj);
        }
        j["vertices"] = verts;
        break;
    }
    case ExponentSet::Kind::QuarterDisc:
        j["variant"] = "quarter_disc";
        j["radius"] = S.radius().str();
        break;
    case ExponentSet::Kind::Hypograph:
        j["variant"] = "concave_hypograph";
        j["b"] = S.hypo_b();
        j["c"] = S.hypo_c();
        break;
    }
    return j;
}

ExponentSet exponent_set_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("variant"))
        throw std::invalid_argument("exponent set needs a variant tag");
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "rational_polytope") {
        std::vector<RatVec> verts;
        for (const auto& vj : j.at("vertices")) {
            RatVec v;
            for (const auto& cj : vj) v.push_back(rational_from_json(cj));
            verts.push_back(std::move(v));
        }
        return ExponentSet::polytope(std::move(verts));
    }
    if (variant == "quarter_disc")
        return ExponentSet::quarter_disc(rational_from_json(j.at("radius")));
    if (variant == "concave_hypograph")
        return ExponentSet::hypograph(j.at("b").get<double>(), j.at("c").get<double>());
    if (variant == "standard_simplex")
        return ExponentSet::standard_simplex(j.at("n").get<int>());
    throw std::invalid_argument("unknown exponent set variant: " + variant);
}

// ---------------------------------------------------------------------------
// Cone
// ---------------------------------------------------------------------------

Json to_json(const Cone& c) {
    Json j;
    switch (c.kind()) {
    case Cone::Kind::FullSpace:
        j["variant"] = "full_space";
        break;
    case Cone::Kind::OrthantComplement:
        j["variant"] = "orthant_complement";
        break;
    case Cone::Kind::HalfspaceIntersection:
        j["variant"] = "halfspace_intersection";
        j["normals"] = c.normals();
        break;
    case Cone::Kind::IceCream:
        j["variant"] = "ice_cream";
        j["gap"] = c.gap();
        break;
    }
    return j;
}

Cone cone_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("variant"))
        throw std::invalid_argument("cone needs a variant tag");
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "full_space") return Cone::full_space();
    if (variant == "orthant_complement") return Cone::orthant_complement();
    if (variant == "halfspace_intersection")
        return Cone::halfspace_intersection(j.at("normals").get<std::vector<Vec>>());
    if (variant == "ice_cream") return Cone::ice_cream(j.at("gap").get<double>());
    throw std::invalid_argument("unknown cone variant: " + variant);
}

// ---------------------------------------------------------------------------
// SPolynomial
// ---------------------------------------------------------------------------

Json to_json(const SPolynomial& p) {
    Json j;
    j["m"] = p.degree_index();
    Json terms = Json::array();
    for (const auto& [alpha, a] : p.terms()) {
        Json t;
        t["alpha"] = alpha;
        t["re"] = a.real();
        t["im"] = a.imag();
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

SPolynomial spolynomial_from_json(const Json& j, ExponentSet source) {
    SPolynomial p(std::move(source), j.at("m").get<std::int64_t>());
    for (const auto& t : j.at("terms")) {
        IVec alpha = t.at("alpha").get<IVec>();
        p.set_term(alpha, Complex(t.at("re").get<double>(), t.at("im").get<double>()));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

Json to_json(const GapReport& r) {
    Json j;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json rj;
        rj["m"] = row.m;
        rj["d_m"] = row.d_m;
        rj["root"] = row.root;
        rj["minimizers"] = row.minimizers;
        rows.push_back(rj);
    }
    j["rows"] = rows;
    j["a_estimate"] = r.a_estimate;
    if (r.delta) j["delta"] = *r.delta;
    if (r.common_denominator) j["common_denominator"] = *r.common_denominator;
    if (!r.bound_rows.empty()) {
        Json b = Json::array();
        for (const auto& [m, v] : r.bound_rows) b.push_back(Json{{"m", m}, {"bound", v}});
        j["bound_rows"] = b;
    }
    return j;
}

Json to_json(const ApproxResult& r) {
    Json j;
    j["m"] = r.m;
    j["d_sample"] = r.d_sample;
    j["d_validation"] = r.d_validation;
    j["solver"] = r.solver;
    j["iterations"] = r.iterations;
    if (r.solver == "lp") j["lp_upper"] = r.lp_upper;
    j["p"] = to_json(r.p);
    return j;
}

std::string gap_report_csv(const GapReport& r) {
    std::string out = "m,d_m,root,delta,bound\n";
    for (const auto& row : r.rows) {
        out += std::to_string(row.m);
        out += ',';
        out += format_double(row.d_m);
        out += ',';
        out += format_double(row.root);
        out += ',';
        if (r.delta) out += format_double(*r.delta);
        out += ',';
        if (!r.bound_rows.empty()) out += format_double(r.bound_rows[row.m - 1].second);
        out += '\n';
    }
    return out;
}

std::string approx_results_csv(const std::vector<ApproxResult>& rs) {
    std::string out = "m,d_sample,d_validation,root,solver,iterations\n";
    for (const auto& r : rs) {
        double root = r.d_sample > 0.0
                          ? std::pow(r.d_sample, 1.0 / static_cast<double>(r.m))
                          : 0.0;
        out += std::to_string(r.m);
        out += ',';
        out += format_double(r.d_sample);
        out += ',';
        out += format_double(r.d_validation);
        out += ',';
        out += format_double(root);
        out += ',';
        out += r.solver;
        out += ',';
        out += std::to_string(r.iterations);
        out += '\n';
    }
    return out;
}

std::string siciak_field_csv(const SiciakField& f) {
    std::string out;
    const int n = f.grid.empty() ? 0 : static_cast<int>(f.grid.front().size());
    for (int j = 1; j <= n; ++j)
        out += "re(z" + std::to_string(j) + "),im(z" + std::to_string(j) + "),";
    out += "v_hat,inside\n";
    for (std::size_t g = 0; g < f.grid.size(); ++g) {
        for (int j = 0; j < n; ++j) {
            out += format_double(f.grid[g][j].real());
            out += ',';
            out += format_double(f.grid[g][j].imag());
            out += ',';
        }
        out += format_double(f.v_hat[g]);
        out += ',';
        out += f.inside[g] ? '1' : '0';
        out += '\n';
    }
    return out;
}

} // namespace spoly
