#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "spoly/basis.hpp"
#include "spoly/polynomial.hpp"
#include "spoly/sample_set.hpp"

using namespace spoly;

namespace {

// Independent nested (Horner-style) evaluation for n = 2: collect a dense
// coefficient grid and fold one variable at a time.
Complex horner_oracle(const SPolynomial& p, const CVec& z) {
    std::int64_t d1 = 0, d2 = 0;
    for (const auto& [a, c] : p.terms()) {
        d1 = std::max(d1, a[0]);
        d2 = std::max(d2, a[1]);
    }
    std::vector<std::vector<Complex>> grid(d1 + 1, std::vector<Complex>(d2 + 1, Complex(0, 0)));
    for (const auto& [a, c] : p.terms()) grid[a[0]][a[1]] = c;
    Complex acc(0.0, 0.0);
    for (std::int64_t i = d1; i >= 0; --i) {
        Complex inner(0.0, 0.0);
        for (std::int64_t j = d2; j >= 0; --j) inner = inner * z[1] + grid[i][j];
        acc = acc * z[0] + inner;
    }
    return acc;
}

} // namespace

TEST_CASE("evaluation basics") {
    auto S = ExponentSet::standard_simplex(2);
    SPolynomial one(S, 0);
    one.set_term({0, 0}, Complex(1.0, 0.0));
    CHECK(evaluate(one, {Complex(3, 1), Complex(-2, 5)}) == Complex(1.0, 0.0));

    SPolynomial p(S, 3);
    p.set_term({2, 1}, Complex(1.0, 0.0)); // z1^2 z2
    CHECK(evaluate(p, {Complex(2, 0), Complex(3, 0)}) == Complex(12.0, 0.0));

    SPolynomial zero(S, 5);
    CHECK(evaluate(zero, {Complex(9, 9), Complex(9, 9)}) == Complex(0.0, 0.0));
}

TEST_CASE("random polynomials agree with the nested oracle") {
    auto S = ExponentSet::standard_simplex(2);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto lat = lattice_points(S, 4);
    for (int trial = 0; trial < 40; ++trial) {
        SPolynomial p(S, 4);
        for (const auto& alpha : lat.exponents)
            p.set_term(alpha, Complex(U(rng), U(rng)));
        double th = U(rng) * M_PI, ph = U(rng) * M_PI;
        CVec z{Complex(std::cos(th), std::sin(th)), Complex(std::cos(ph), std::sin(ph))};
        Complex a = evaluate(p, z);
        Complex b = horner_oracle(p, z);
        CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("support validation at construction") {
    auto S = ExponentSet::standard_simplex(2);
    SPolynomial p(S, 2);
    CHECK_NOTHROW(p.set_term({1, 1}, Complex(1, 0)));
    CHECK_NOTHROW(p.set_term({2, 0}, Complex(1, 0)));
    CHECK_THROWS_AS(p.set_term({2, 1}, Complex(1, 0)), std::domain_error);
    CHECK_THROWS_AS(p.set_term({3, 0}, Complex(1, 0)), std::domain_error);

    auto disc = ExponentSet::quarter_disc(Rational(1));
    SPolynomial q(disc, 2);
    CHECK_NOTHROW(q.set_term({2, 0}, Complex(1, 0)));
    CHECK_THROWS_AS(q.set_term({2, 1}, Complex(1, 0)), std::domain_error); // |(2,1)| > 2
}

TEST_CASE("zero coefficients erase terms") {
    auto S = ExponentSet::standard_simplex(2);
    SPolynomial p(S, 2);
    p.set_term({1, 0}, Complex(2, 0));
    p.set_term({1, 0}, Complex(0, 0));
    CHECK(p.is_zero());
}

TEST_CASE("products stay inside the scaled sum of supports") {
    auto S = ExponentSet::standard_simplex(2);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        SPolynomial a(S, 2), b(S, 3);
        for (const auto& alpha : lattice_points(S, 2).exponents)
            if (U(rng) > 0.0) a.set_term(alpha, Complex(U(rng), U(rng)));
        for (const auto& alpha : lattice_points(S, 3).exponents)
            if (U(rng) > 0.0) b.set_term(alpha, Complex(U(rng), U(rng)));
        // multiply() re-validates every product exponent against 5S
        SPolynomial ab = multiply(a, b);
        CHECK(ab.degree_index() == 5);
        CVec z{Complex(0.3, 0.4), Complex(-0.2, 0.9)};
        Complex lhs = evaluate(ab, z);
        Complex rhs = evaluate(a, z) * evaluate(b, z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("evaluation is linear in the coefficients") {
    auto S = ExponentSet::quarter_disc(Rational(1));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto lat = lattice_points(S, 3);
    for (int trial = 0; trial < 20; ++trial) {
        SPolynomial a(S, 3), b(S, 3), sum(S, 3);
        for (const auto& alpha : lat.exponents) {
            Complex ca(U(rng), U(rng)), cb(U(rng), U(rng));
            a.set_term(alpha, ca);
            b.set_term(alpha, cb);
            sum.set_term(alpha, ca + cb);
        }
        CVec z{Complex(U(rng), U(rng)), Complex(U(rng), U(rng))};
        CHECK(std::abs(evaluate(sum, z) - evaluate(a, z) - evaluate(b, z)) <= 1e-12);
    }
}

TEST_CASE("basis: generic interpolation is nonsingular") {
    auto S = ExponentSet::standard_simplex(2);
    WeightedSampleSet pts;
    pts.points = {CVec{Complex(0.3, 0.1), Complex(1.2, -0.4)},
                  CVec{Complex(-0.7, 0.9), Complex(0.2, 0.8)},
                  CVec{Complex(1.5, 0.2), Complex(-0.3, -0.6)}};
    pts.weights = {0.0, 0.0, 0.0};
    auto basis = build_basis(S, 1, pts, true); // would throw if singular
    CHECK(basis.rows.size() == 3);
    CHECK(basis.exponents.exponents.size() == 3);
    CHECK_FALSE(basis.underdetermined);
}

TEST_CASE("basis: m = 0 gives the all-ones column") {
    auto S = ExponentSet::quarter_disc(Rational(1));
    auto samples = torus_samples(3, 3);
    auto basis = build_basis(S, 0, samples, false);
    CHECK(basis.exponents.exponents.size() == 1);
    for (const auto& row : basis.rows) CHECK(row[0] == Complex(1.0, 0.0));
}

TEST_CASE("basis: equispaced circle powers orthogonalize to the identity") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(256);
    auto basis = build_basis(S1, 8, samples, true);
    const std::size_t d = basis.exponents.exponents.size();
    REQUIRE(d == 9);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Complex g(0.0, 0.0);
            for (std::size_t r = 0; r < basis.rows.size(); ++r)
                g += std::conj(basis.rows[r][i]) * basis.rows[r][j];
            CHECK(std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0))) <= 1e-10);
        }
}

TEST_CASE("basis: coefficients map back through the triangular factor") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(32);
    auto plain = build_basis(S1, 5, samples, false);
    auto ortho = build_basis(S1, 5, samples, true);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<Complex> mono(6);
    for (auto& c : mono) c = Complex(U(rng), U(rng));
    // c_orth = R c_mono, then the inverse map must restore c_mono
    std::vector<Complex> orth(6, Complex(0, 0));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j) orth[i] += ortho.r_factor[i][j] * mono[j];
    auto back = to_monomial_coefficients(ortho, orth);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(back[i] - mono[i]) <= 1e-10);
}

TEST_CASE("basis: coincident samples are rejected as degenerate") {
    auto S1 = ExponentSet::standard_simplex(1);
    WeightedSampleSet pts;
    pts.points = {CVec{Complex(1.0, 0.0)}, CVec{Complex(1.0, 0.0)}, CVec{Complex(1.0, 0.0)}};
    pts.weights = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(build_basis(S1, 2, pts, true), DegenerateSampleError);
}

TEST_CASE("basis: underdetermined flag") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(4);
    auto basis = build_basis(S1, 8, samples, false);
    CHECK(basis.underdetermined);
}

TEST_CASE("growth check") {
    auto S = ExponentSet::standard_simplex(2);
    SPolynomial p(S, 3);
    p.set_term({3, 0}, Complex(1, 0));
    p.set_term({1, 1}, Complex(0.5, -0.5));
    CHECK(growth_check(p, 200));

    SPolynomial zero(S, 4);
    CHECK(growth_check(zero, 10));

    // exponent deliberately outside 3S: violated along directions near e1
    std::map<IVec, Complex> bad;
    bad[{5, 0}] = Complex(1.0, 0.0);
    SPolynomial q = SPolynomial::unchecked(S, 3, std::move(bad));
    CHECK_FALSE(growth_check(q, 400));
}
