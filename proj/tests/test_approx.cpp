#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "spoly/approx.hpp"
#include "spoly/lattice_gap.hpp"

using namespace spoly;

namespace {

std::vector<Complex> sample_values(const SPolynomial& p, const WeightedSampleSet& s) {
    std::vector<Complex> f;
    for (const auto& z : s.points) f.push_back(evaluate(p, z));
    return f;
}

std::vector<Complex> sample_function(const WeightedSampleSet& s,
                                     const std::function<Complex(const CVec&)>& f) {
    std::vector<Complex> out;
    for (const auto& z : s.points) out.push_back(f(z));
    return out;
}

// Independent least-squares line fit used to freeze the synthetic decay
// expectations.
double regression_rate_oracle(const std::vector<std::int64_t>& ms,
                              const std::vector<double>& ds) {
    std::size_t start = ms.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (std::size_t i = start; i < ms.size(); ++i) {
        double x = static_cast<double>(ms[i]), y = std::log(ds[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y; n += 1;
    }
    return std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
}

ApproxResult synthetic_result(const ExponentSet& S, std::int64_t m, double d) {
    return ApproxResult{m, d, d, SPolynomial(S, m), "synthetic", 0, 0.0};
}

} // namespace

TEST_CASE("weight validation") {
    auto s = circle_samples(100);
    auto rep = validate_weight(s);
    CHECK(rep.admissible);
    CHECK(rep.finite_count == 100);
    CHECK(rep.warnings.empty());

    WeightedSampleSet inf = circle_samples(10);
    set_constant_weight(inf, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(validate_weight(inf), InadmissibleWeightError);

    WeightedSampleSet few = circle_samples(10);
    for (std::size_t k = 2; k < few.weights.size(); ++k)
        few.weights[k] = std::numeric_limits<double>::infinity();
    auto warned = validate_weight(few, 6);
    CHECK(warned.admissible);
    CHECK(warned.finite_count == 2);
    REQUIRE(warned.warnings.size() == 1);
    CHECK(warned.warnings[0].find("degenerate") != std::string::npos);
}

TEST_CASE("exact representability drives both solvers to zero") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(64);
    SPolynomial p0(S1, 4);
    p0.set_term({0}, Complex(0.4, -0.2));
    p0.set_term({2}, Complex(-1.1, 0.3));
    p0.set_term({4}, Complex(0.9, 0.1));
    auto f = sample_values(p0, samples);

    auto lw = best_weighted_approx_lawson(f, samples, S1, 4);
    CHECK(lw.d_sample <= 1e-10);
    auto lp = best_weighted_approx_lp(f, samples, S1, 4);
    CHECK(lp.d_sample <= 1e-10);
    CHECK(lp.d_validation <= 1e-8);
}

TEST_CASE("constant weights factor out of the optimum") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(48);
    auto f = sample_function(samples, [](const CVec& z) { return 1.0 / (z[0] - 2.0); });
    for (std::int64_t m : {2, 5}) {
        auto base = best_weighted_approx_lawson(f, samples, S1, m);
        WeightedSampleSet shifted = samples;
        set_constant_weight(shifted, 0.7);
        auto scaled = best_weighted_approx_lawson(f, shifted, S1, m);
        double factor = std::exp(-0.7 * static_cast<double>(m));
        CHECK(scaled.d_sample ==
              doctest::Approx(base.d_sample * factor).epsilon(1e-8));
    }
}

TEST_CASE("geometric tail: pole at 2 on the unit circle") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(256);
    auto f = sample_function(samples, [](const CVec& z) { return 1.0 / (z[0] - 2.0); });
    auto r = best_weighted_approx_lawson(f, samples, S1, 6);
    CHECK(r.d_sample > 0.0);
    CHECK(r.d_sample <= std::pow(2.0, -6.0)); // truncated geometric series bound
    auto lp = best_weighted_approx_lp(f, samples, S1, 6);
    CHECK(lp.d_sample <= r.d_sample + 1e-12);
}

TEST_CASE("polygonal sandwich: nested direction counts") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(40);
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<Complex> f;
    for (std::size_t k = 0; k < samples.size(); ++k) f.push_back(Complex(U(rng), U(rng)));
    auto t4 = best_weighted_approx_lp(f, samples, S1, 3, 4);
    auto t64 = best_weighted_approx_lp(f, samples, S1, 3, 64);
    CHECK(t4.d_sample <= t64.d_sample + 1e-9);
    CHECK(t64.d_sample <= t4.d_sample / std::cos(M_PI / 4.0) + 1e-9);
}

TEST_CASE("cross-solver agreement on random instances") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_real_distribution<double> Q(0.0, 1.0);
    auto S1 = ExponentSet::standard_simplex(1);
    auto S2 = ExponentSet::standard_simplex(2);
    for (int inst = 0; inst < 12; ++inst) {
        bool two = inst % 2 == 1;
        WeightedSampleSet samples = two ? torus_samples(8, 8) : circle_samples(50);
        for (auto& w : samples.weights) w = Q(rng);
        const ExponentSet& S = two ? S2 : S1;
        std::int64_t m = 1 + inst % 4;
        std::vector<Complex> f;
        for (std::size_t k = 0; k < samples.size(); ++k) f.push_back(Complex(U(rng), U(rng)));

        auto lp = best_weighted_approx_lp(f, samples, S, m, 32);
        auto lw = best_weighted_approx_lawson(f, samples, S, m);
        double lo = lp.d_sample * 0.98;
        double hi = lp.lp_upper * 1.02;
        CHECK(lw.d_sample >= lo);
        CHECK(lw.d_sample <= hi);
    }
}

TEST_CASE("decay rate: synthetic sequences") {
    auto S1 = ExponentSet::standard_simplex(1);
    SUBCASE("pure geometric is exact") {
        std::vector<ApproxResult> rs;
        for (std::int64_t m = 1; m <= 12; ++m)
            rs.push_back(synthetic_result(S1, m, std::pow(2.0, -static_cast<double>(m))));
        auto d = decay_rate(std::move(rs));
        CHECK_FALSE(d.degenerate);
        CHECK(d.fitted_rate == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(d.roots[0] == doctest::Approx(0.5));
    }
    SUBCASE("polynomially modulated geometric approaches 1/3") {
        std::vector<std::int64_t> ms;
        std::vector<double> ds;
        std::vector<ApproxResult> rs;
        for (std::int64_t m = 10; m <= 30; ++m) {
            double d = std::pow(3.0, -static_cast<double>(m)) * m * m;
            ms.push_back(m);
            ds.push_back(d);
            rs.push_back(synthetic_result(S1, m, d));
        }
        auto d = decay_rate(std::move(rs));
        double oracle = regression_rate_oracle(ms, ds);
        CHECK(d.fitted_rate == doctest::Approx(oracle).epsilon(1e-12));
        // the m^2 modulation biases the window fit upward by ~8 percent
        CHECK(d.fitted_rate == doctest::Approx(1.0 / 3.0).epsilon(0.09));
    }
    SUBCASE("zero entries flag the rate") {
        std::vector<ApproxResult> rs;
        for (std::int64_t m = 1; m <= 5; ++m)
            rs.push_back(synthetic_result(S1, m, m == 3 ? 0.0 : 0.1));
        auto d = decay_rate(std::move(rs));
        CHECK(d.degenerate);
        CHECK(d.fitted_rate == 0.0);
    }
    SUBCASE("too few results is an error") {
        std::vector<ApproxResult> rs;
        rs.push_back(synthetic_result(S1, 1, 0.5));
        CHECK_THROWS_AS(decay_rate(std::move(rs)), std::invalid_argument);
    }
}

TEST_CASE("monotonicity and feasibility bounds") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(64);
    auto f = sample_function(samples, [](const CVec& z) { return 1.0 / (z[0] - 2.0); });

    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t m = 1; m <= 8; ++m) {
        auto r = best_weighted_approx_lp(f, samples, S1, m);
        CHECK(r.d_sample <= prev + 1e-9); // nested spaces
        prev = r.d_sample;
        // zero is always a candidate
        double zero_bound = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k)
            zero_bound = std::max(zero_bound, std::abs(f[k]));
        CHECK(r.d_sample <= zero_bound + 1e-12);
    }
}

TEST_CASE("enlarging the sample set never decreases the optimum") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto small = circle_samples(32);
    auto big = circle_samples(64); // contains the 32-point set
    auto fs = sample_function(small, [](const CVec& z) { return 1.0 / (z[0] - 2.0); });
    auto fb = sample_function(big, [](const CVec& z) { return 1.0 / (z[0] - 2.0); });
    for (std::int64_t m : {2, 4}) {
        auto rs = best_weighted_approx_lp(fs, small, S1, m);
        auto rb = best_weighted_approx_lp(fb, big, S1, m);
        CHECK(rb.d_sample >= rs.d_sample - 1e-10);
    }
}

TEST_CASE("validation residual brackets the sample optimum") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(32);
    auto finer = circle_samples(64); // superset of the 32-point set
    samples.validation_points = finer.points;
    samples.validation_weights = finer.weights;
    auto f = sample_function(samples, [](const CVec& z) { return 1.0 / (z[0] - 2.0); });
    std::vector<Complex> fv;
    for (const auto& z : samples.validation_points) fv.push_back(1.0 / (z[0] - 2.0));
    for (std::int64_t m : {2, 4, 6}) {
        auto lw = best_weighted_approx_lawson(f, samples, S1, m, {}, fv);
        CHECK(lw.d_sample >= 0.0);
        CHECK(lw.d_sample <= lw.d_validation + 1e-9);
        auto lp = best_weighted_approx_lp(f, samples, S1, m, 32, fv);
        CHECK(lp.d_sample <= lp.d_validation + 1e-9);
    }
}

TEST_CASE("points with infinite weight drop out of the objective") {
    auto S1 = ExponentSet::standard_simplex(1);
    auto samples = circle_samples(32);
    auto f = sample_function(samples, [](const CVec& z) { return 1.0 / (z[0] - 2.0); });
    // poison one sample value; with q = +inf there the optimum is unchanged
    WeightedSampleSet poisoned = samples;
    auto fbad = f;
    fbad[7] = Complex(1e9, -1e9);
    poisoned.weights[7] = std::numeric_limits<double>::infinity();
    auto base = best_weighted_approx_lp(f, samples, S1, 3);
    auto drop = best_weighted_approx_lp(fbad, poisoned, S1, 3);
    // optimum over 31 points is at most the 32-point optimum
    CHECK(drop.d_sample <= base.d_sample + 1e-9);
    CHECK(drop.d_sample > 0.0);
}

TEST_CASE("hull comparison: the simplex hull adds nothing") {
    auto S = ExponentSet::standard_simplex(2);
    auto samples = torus_samples(10, 10);
    auto f = sample_function(samples, [](const CVec& z) {
        return 1.0 / ((z[0] - 2.0) * (z[1] - 2.0));
    });
    auto hc = hull_approx_comparison(f, samples, S, 3, 16);
    CHECK(hc.hull_exponents.exponents == lattice_points(S, 3).exponents);
    CHECK(hc.d_hull == hc.d_S); // identical lattice, identical solve
    CHECK_FALSE(hc.heuristic);
}

TEST_CASE("hull comparison: quarter disc") {
    auto S = ExponentSet::quarter_disc(Rational(1));
    auto samples = torus_samples(9, 9);
    auto f = sample_function(samples, [](const CVec& z) {
        return 1.0 / ((z[0] - 2.0) * (z[1] - 2.0));
    });
    auto hc = hull_approx_comparison(f, samples, S, 3, 16);
    // the hull contains S, so its space is at least as expressive
    auto base = lattice_points(S, 3).exponents;
    for (const auto& e : base)
        CHECK(std::find(hc.hull_exponents.exponents.begin(), hc.hull_exponents.exponents.end(),
                        e) != hc.hull_exponents.exponents.end());
    CHECK(hc.d_hull <= hc.d_S + 1e-12);
    CHECK(hc.gap == doctest::Approx(disc_gap_exact(3)).epsilon(1e-9));

    // representable target: both distances collapse
    SPolynomial p0(S, 3);
    p0.set_term({2, 1}, Complex(1.0, 0.5));
    auto f0 = sample_values(p0, samples);
    auto hc0 = hull_approx_comparison(f0, samples, S, 3, 16);
    CHECK(hc0.d_S <= 1e-9);
    CHECK(hc0.d_hull <= 1e-9);
}
