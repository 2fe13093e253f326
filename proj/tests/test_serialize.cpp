#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spoly/serialize.hpp"

using namespace spoly;

TEST_CASE("exponent set JSON round-trip") {
    auto poly = ExponentSet::polytope({{Rational(0), Rational(0)},
                                       {Rational(1), Rational(0)},
                                       {Rational(3, 4), Rational(3, 4)}});
    auto back = exponent_set_from_json(to_json(poly));
    CHECK(back.kind() == ExponentSet::Kind::Polytope);
    CHECK(back.vertices() == poly.vertices());

    auto disc = ExponentSet::quarter_disc(Rational(3, 2));
    auto disc_back = exponent_set_from_json(to_json(disc));
    CHECK(disc_back.kind() == ExponentSet::Kind::QuarterDisc);
    CHECK(disc_back.radius() == Rational(3, 2));

    auto hypo = ExponentSet::hypograph(2.0, 2.5);
    auto hypo_back = exponent_set_from_json(to_json(hypo));
    CHECK(hypo_back.hypo_b() == 2.0);
    CHECK(hypo_back.hypo_c() == 2.5);

    auto simplex = exponent_set_from_json(Json{{"variant", "standard_simplex"}, {"n", 2}});
    CHECK(simplex.vertices().size() == 3);
}

TEST_CASE("rationals parse from strings and integers") {
    Json j = {{"variant", "quarter_disc"}, {"radius", "5/4"}};
    CHECK(exponent_set_from_json(j).radius() == Rational(5, 4));
    Json j2 = {{"variant", "quarter_disc"}, {"radius", 2}};
    CHECK(exponent_set_from_json(j2).radius() == Rational(2));
}

TEST_CASE("invalid serializations are rejected with named problems") {
    CHECK_THROWS_AS(exponent_set_from_json(Json{{"variant", "cube"}}), std::invalid_argument);
    CHECK_THROWS_AS(exponent_set_from_json(Json::array()), std::invalid_argument);
    Json bad = {{"variant", "quarter_disc"}, {"radius", 1.5}};
    CHECK_THROWS_AS(exponent_set_from_json(bad), std::invalid_argument);
    CHECK_THROWS_AS(cone_from_json(Json{{"variant", "donut"}}), std::invalid_argument);
}

TEST_CASE("cone JSON round-trip") {
    auto ice = cone_from_json(to_json(Cone::ice_cream(0.75)));
    CHECK(ice.kind() == Cone::Kind::IceCream);
    CHECK(ice.gap() == 0.75);
    auto full = cone_from_json(to_json(Cone::full_space()));
    CHECK(full.kind() == Cone::Kind::FullSpace);
    auto oc = cone_from_json(to_json(Cone::orthant_complement()));
    CHECK(oc.kind() == Cone::Kind::OrthantComplement);
    auto hs = cone_from_json(to_json(Cone::halfspace_intersection({{1.0, 0.0}, {0.5, 0.5}})));
    CHECK(hs.normals().size() == 2);
}

TEST_CASE("polynomial JSON round-trip preserves terms") {
    auto S = ExponentSet::standard_simplex(2);
    SPolynomial p(S, 3);
    p.set_term({1, 2}, Complex(0.5, -1.25));
    p.set_term({0, 0}, Complex(2.0, 0.0));
    auto back = spolynomial_from_json(to_json(p), S);
    CHECK(back.degree_index() == 3);
    CHECK(back.terms() == p.terms());
    // terms outside mS are rejected on the way back in
    Json forged = to_json(p);
    forged["terms"].push_back(Json{{"alpha", IVec{9, 9}}, {"re", 1.0}, {"im", 0.0}});
    CHECK_THROWS_AS(spolynomial_from_json(forged, S), std::domain_error);
}

TEST_CASE("gap report CSV") {
    auto S = ExponentSet::standard_simplex(1);
    auto rep = gap_rate_report(S, 3);
    std::string csv = gap_report_csv(rep);
    CHECK(csv.find("m,d_m,root,delta,bound\n") == 0);
    CHECK(csv.find("\n1,1,1,1,\n") != std::string::npos);
    // three data rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("siciak field CSV carries the coordinate layout") {
    SiciakField f;
    f.grid = {CVec{Complex(0.5, -0.25)}};
    f.m_list = {1};
    f.phi_upper = {{1.0}};
    f.v_hat = {0.0};
    f.inside = {1};
    f.log_r = std::log(2.0);
    std::string csv = siciak_field_csv(f);
    CHECK(csv.find("re(z1),im(z1),v_hat,inside\n") == 0);
    CHECK(csv.find("0.5,-0.25,0,1\n") != std::string::npos);
}

TEST_CASE("float formatting is deterministic and precise") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(std::sqrt(2.0)) == format_double(std::sqrt(2.0)));
}
