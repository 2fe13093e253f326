#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "spoly/lattice_gap.hpp"

using namespace spoly;

namespace {

// Unpruned oracle: scan every lattice point in the bounding box of mS
// inflated by a fixed 3, with no initial-bound pruning.
bool oracle_exterior(const ExponentSet& S, const IVec& p, std::int64_t m) {
    if (S.kind() == ExponentSet::Kind::Hypograph) {
        // f(0) = 1 and f(1) = 0 exactly, f strictly below 1 inside.
        if (p[0] > m || p[1] > m) return true;
        if (p[0] == 0 || p[1] == 0) return false;
        if (p[0] == m || p[1] == m) return true;
        double md = static_cast<double>(m);
        return static_cast<double>(p[1]) > md * S.hypo_f(static_cast<double>(p[0]) / md);
    }
    return !membership(S, p, m, 0.0).inside;
}

double brute_force_gap(const ExponentSet& S, std::int64_t m) {
    std::int64_t hi = (S.max_coordinate() * Rational(m)).ceil() + 3;
    double best = std::numeric_limits<double>::infinity();
    if (S.dim() == 1) {
        for (std::int64_t a = 0; a <= hi; ++a) {
            if (!oracle_exterior(S, IVec{a}, m)) continue;
            best = std::min(best, point_set_distance(S, m, IVec{a}));
        }
        return best;
    }
    for (std::int64_t a = 0; a <= hi; ++a)
        for (std::int64_t b = 0; b <= hi; ++b) {
            IVec p{a, b};
            if (!oracle_exterior(S, p, m)) continue;
            best = std::min(best, point_set_distance(S, m, p));
        }
    return best;
}

// Refined-lattice oracle for delta: scan (1/(nq)) Z^n around S.
double brute_force_delta(const ExponentSet& S, std::int64_t nq) {
    std::int64_t hi = (S.max_coordinate() * Rational(nq)).ceil() + 3;
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](const RatVec& x) {
        if (membership(S, x, 1).inside) return;
        auto r = membership(S, x, 1);
        best = std::min(best, -*r.margin);
    };
    if (S.dim() == 1) {
        for (std::int64_t a = -3; a <= hi; ++a) consider(RatVec{Rational(a, nq)});
        return best;
    }
    for (std::int64_t a = -3; a <= hi; ++a)
        for (std::int64_t b = -3; b <= hi; ++b)
            consider(RatVec{Rational(a, nq), Rational(b, nq)});
    return best;
}

bool contains_point(const std::vector<IVec>& pts, const IVec& p) {
    return std::find(pts.begin(), pts.end(), p) != pts.end();
}

} // namespace

TEST_CASE("point-to-set distances, frozen values") {
    auto disc = ExponentSet::quarter_disc(Rational(1));
    CHECK(point_set_distance(disc, 3, {3, 1}) ==
          doctest::Approx(std::sqrt(10.0) - 3.0).epsilon(1e-12));

    auto S = ExponentSet::standard_simplex(2);
    CHECK(point_set_distance(S, 2, {3, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    // projection of (1,2) onto the edge x1 + x2 = 2 lands at (1/2, 3/2)
    CHECK(point_set_distance(S, 2, {1, 2}) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(point_set_distance(S, 2, {1, 1}) == 0.0);
}

TEST_CASE("gap distance: quarter disc matches the closed form") {
    auto disc = ExponentSet::quarter_disc(Rational(1));
    for (std::int64_t m : {1, 2, 3, 5, 10, 25}) {
        auto g = gap_distance_full(disc, m);
        CHECK(std::abs(g.distance - disc_gap_exact(m)) <= 1e-9);
        CHECK(contains_point(g.minimizers, IVec{m, 1}));
        CHECK(contains_point(g.minimizers, IVec{1, m}));
    }
    CHECK(gap_distance(disc, 2) == doctest::Approx(std::sqrt(5.0) - 2.0).epsilon(1e-12));
}

TEST_CASE("gap distance: simplices") {
    auto S1 = ExponentSet::standard_simplex(1);
    CHECK(gap_distance(S1, 5) == doctest::Approx(1.0));
    auto S2 = ExponentSet::standard_simplex(2);
    // exterior point (1, m) projects onto x1 + x2 = m at distance 1/sqrt(2)
    CHECK(gap_distance(S2, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(gap_distance(S2, 4) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("gap distance agrees with the unpruned scan for every variant") {
    std::vector<ExponentSet> sets;
    sets.push_back(ExponentSet::standard_simplex(2));
    sets.push_back(ExponentSet::standard_simplex(1));
    sets.push_back(ExponentSet::quarter_disc(Rational(1)));
    sets.push_back(ExponentSet::quarter_disc(Rational(3, 2)));
    sets.push_back(ExponentSet::hypograph(2.0, 2.0));
    sets.push_back(ExponentSet::polytope({{Rational(0), Rational(0)},
                                          {Rational(1), Rational(0)},
                                          {Rational(0), Rational(1)},
                                          {Rational(3, 4), Rational(3, 4)}}));
    for (const auto& S : sets)
        for (std::int64_t m = 1; m <= 6; ++m)
            CHECK(std::abs(gap_distance(S, m) - brute_force_gap(S, m)) <= 1e-10);
}

TEST_CASE("polytope delta: standard simplices") {
    auto d2 = polytope_delta(ExponentSet::standard_simplex(2));
    CHECK(d2.common_denominator == 1);
    CHECK(d2.delta == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(d2.delta ==
          doctest::Approx(brute_force_delta(ExponentSet::standard_simplex(2), 2)).epsilon(1e-10));

    auto d1 = polytope_delta(ExponentSet::standard_simplex(1));
    CHECK(d1.common_denominator == 1);
    CHECK(d1.delta == doctest::Approx(1.0));
}

TEST_CASE("polytope delta: half-scale simplex picks up the denominator") {
    auto S = ExponentSet::polytope(
        {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 2)}});
    auto d = polytope_delta(S);
    CHECK(d.common_denominator == 2);
    // nearest refined point (1/4, 1/2) projects onto x + y = 1/2
    CHECK(d.delta == doctest::Approx(1.0 / (4.0 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(d.delta == doctest::Approx(brute_force_delta(S, 4)).epsilon(1e-10));
}

TEST_CASE("gap dominates delta for rational polytopes") {
    std::vector<ExponentSet> polys;
    polys.push_back(ExponentSet::standard_simplex(2));
    polys.push_back(ExponentSet::polytope({{Rational(0), Rational(0)},
                                           {Rational(1), Rational(0)},
                                           {Rational(0), Rational(1)},
                                           {Rational(3, 4), Rational(3, 4)}}));
    for (const auto& S : polys) {
        double delta = polytope_delta(S).delta;
        for (std::int64_t m = 1; m <= 20; ++m) CHECK(gap_distance(S, m) >= delta - 1e-12);
    }
}

TEST_CASE("rate report: quarter disc window") {
    auto disc = ExponentSet::quarter_disc(Rational(1));
    auto rep = gap_rate_report(disc, 40);
    REQUIRE(rep.rows.size() == 40);
    for (const auto& row : rep.rows) {
        CHECK(std::abs(row.d_m - disc_gap_exact(row.m)) <= 1e-9);
        CHECK(row.root == doctest::Approx(std::pow(disc_gap_exact(row.m),
                                                   1.0 / static_cast<double>(row.m))));
        CHECK(row.d_m > 0.0);
    }
    // closed-form oracle for the window minimum: roots increase with m, so
    // the upper-half minimum sits at m = 20
    double expect = std::pow(disc_gap_exact(20), 1.0 / 20.0);
    CHECK(rep.a_estimate == doctest::Approx(expect).epsilon(1e-12));
    CHECK_FALSE(rep.delta.has_value());
}

TEST_CASE("rate report: one-dimensional simplex is flat at one") {
    auto rep = gap_rate_report(ExponentSet::standard_simplex(1), 10);
    for (const auto& row : rep.rows) CHECK(row.d_m == doctest::Approx(1.0));
    CHECK(rep.a_estimate == doctest::Approx(1.0));
    REQUIRE(rep.delta.has_value());
    CHECK(*rep.delta == doctest::Approx(1.0));
    CHECK(*rep.common_denominator == 1);
}

TEST_CASE("rate report: hypograph bounds collapse") {
    auto S = ExponentSet::hypograph(2.0, 2.0);
    auto rep = gap_rate_report(S, 12);
    REQUIRE(rep.bound_rows.size() == 12);
    for (const auto& row : rep.rows) {
        double bound = rep.bound_rows[row.m - 1].second;
        CHECK(row.d_m <= bound + 1e-9);
        CHECK(row.d_m >= 0.0);
    }
    CHECK(rep.a_estimate <= 0.05);
    // exact positivity is only resolvable while the bound exceeds the
    // working tolerance
    for (const auto& row : rep.rows)
        if (rep.bound_rows[row.m - 1].second > 1e-8) CHECK(row.d_m > 0.0);
}

TEST_CASE("closed forms") {
    CHECK(disc_gap_exact(1) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
    CHECK(disc_gap_exact(2) == doctest::Approx(std::sqrt(5.0) - 2.0).epsilon(1e-15));
    CHECK(hypograph_gap_bound(2.0, 2.0, 4) == doctest::Approx(4.0 * std::exp(-30.0)));
    CHECK_THROWS_AS(hypograph_gap_bound(2.0, 1.0, 4), std::domain_error);

    // classification limits of the m-th roots
    CHECK(hypograph_classification_root(1.0, 3.0, 4000) ==
          doctest::Approx(std::exp(-3.0)).epsilon(1e-3));
    CHECK(hypograph_classification_root(0.5, 4.0, 2000000) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(hypograph_classification_root(2.0, 2.0, 60) <= 1e-40);
}

TEST_CASE("gap minimizer reporting for the simplex") {
    auto g = gap_distance_full(ExponentSet::standard_simplex(2), 3);
    // all integer points on x1 + x2 = 4 that project into the edge
    CHECK(contains_point(g.minimizers, IVec{1, 3}));
    CHECK(contains_point(g.minimizers, IVec{3, 1}));
    CHECK(contains_point(g.minimizers, IVec{2, 2}));
    for (const auto& mnz : g.minimizers) CHECK(mnz[0] + mnz[1] == 4);
}

TEST_CASE("point distances for a three-dimensional simplex run through Frank-Wolfe") {
    auto S3 = ExponentSet::standard_simplex(3);
    CHECK(point_set_distance(S3, 2, {3, 0, 0}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(point_set_distance(S3, 2, {1, 1, 0}) == 0.0);
    // (1,1,1) lies outside 2*simplex; project onto x+y+z = 2
    CHECK(point_set_distance(S3, 2, {1, 1, 1}) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
}
