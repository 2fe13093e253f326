#include "spoly/approx.hpp"

#include <algorithm>
#include <cmath>

#include "spoly/cone.hpp"
#include "spoly/lattice_gap.hpp"

namespace spoly {

namespace {

struct FilteredProblem {
    std::vector<std::size_t> keep;   // indices of finite-weight samples
    std::vector<double> scales;      // e^{-m q_k} for kept samples
    WeightedSampleSet samples;       // kept points only (weights preserved)
    std::vector<Complex> f;          // f at kept points
};

FilteredProblem filter_infinite_weights(const std::vector<Complex>& f_values,
                                        const WeightedSampleSet& samples,
                                        std::int64_t m) {
    if (f_values.size() != samples.points.size())
        throw std::invalid_argument("sampled values and points differ in length");
    FilteredProblem fp;
    for (std::size_t k = 0; k < samples.points.size(); ++k) {
        if (!std::isfinite(samples.weights[k])) continue;
        fp.keep.push_back(k);
        fp.scales.push_back(std::exp(-static_cast<double>(m) * samples.weights[k]));
        fp.samples.points.push_back(samples.points[k]);
        fp.samples.weights.push_back(samples.weights[k]);
        fp.f.push_back(f_values[k]);
    }
    if (fp.keep.empty())
        throw InadmissibleWeightError("all weights are infinite; the weighted norm is void");
    return fp;
}

// The exponent list may exceed mS (hull solves), so construction bypasses
// the per-term support check; the list itself came from a lattice filter.
SPolynomial make_polynomial(const ExponentSet& S, std::int64_t m, const LatticeSet& exps,
                            const std::vector<Complex>& coeffs) {
    std::map<IVec, Complex> terms;
    for (std::size_t i = 0; i < exps.exponents.size(); ++i)
        if (std::abs(coeffs[i]) > 0.0) terms[exps.exponents[i]] = coeffs[i];
    return SPolynomial::unchecked(S, m, std::move(terms));
}

double max_weighted_residual(const SPolynomial& p, const std::vector<CVec>& pts,
                             const std::vector<double>& weights,
                             const std::vector<Complex>& f, std::int64_t m) {
    double worst = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (!std::isfinite(weights[k])) continue;
        double s = std::exp(-static_cast<double>(m) * weights[k]);
        worst = std::max(worst, std::abs(f[k] - evaluate(p, pts[k])) * s);
    }
    return worst;
}

double validation_residual(const SPolynomial& p, const WeightedSampleSet& samples,
                           const std::vector<Complex>& f_values,
                           const std::vector<Complex>& f_validation, std::int64_t m) {
    if (!samples.validation_points.empty() && !f_validation.empty()) {
        std::vector<double> w = samples.validation_weights;
        if (w.size() != samples.validation_points.size())
            w.assign(samples.validation_points.size(), 0.0);
        return max_weighted_residual(p, samples.validation_points, w, f_validation, m);
    }
    return max_weighted_residual(p, samples.points, samples.weights, f_values, m);
}

// Weighted complex least squares by modified Gram-Schmidt on the row-scaled
// matrix: min over c of sum_k d_k |(A c)_k - f_k|^2.
std::vector<Complex> weighted_least_squares(const std::vector<CVec>& rows,
                                            const std::vector<Complex>& f,
                                            const std::vector<double>& row_scale) {
    const std::size_t k = rows.size();
    const std::size_t d = rows.empty() ? 0 : rows.front().size();
    std::vector<CVec> q(k, CVec(d));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t i = 0; i < d; ++i) q[r][i] = rows[r][i] * row_scale[r];
    std::vector<Complex> rhs(k);
    for (std::size_t r = 0; r < k; ++r) rhs[r] = f[r] * row_scale[r];

    std::vector<CVec> rmat(d, CVec(d, Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < d; ++i) {
        double orig = 0.0;
        for (std::size_t r = 0; r < k; ++r) orig += std::norm(q[r][i]);
        orig = std::sqrt(orig);
        for (std::size_t j = 0; j < i; ++j) {
            Complex proj(0.0, 0.0);
            for (std::size_t r = 0; r < k; ++r) proj += std::conj(q[r][j]) * q[r][i];
            rmat[j][i] = proj;
            for (std::size_t r = 0; r < k; ++r) q[r][i] -= proj * q[r][j];
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < k; ++r) nrm += std::norm(q[r][i]);
        nrm = std::sqrt(nrm);
        if (nrm <= 1e-13 * (orig > 0.0 ? orig : 1.0))
            throw DegenerateSampleError("samples fail to separate the polynomial space");
        rmat[i][i] = Complex(nrm, 0.0);
        for (std::size_t r = 0; r < k; ++r) q[r][i] /= nrm;
    }
    // c = R^{-1} Q^H rhs
    std::vector<Complex> qh(d, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t r = 0; r < k; ++r) qh[i] += std::conj(q[r][i]) * rhs[r];
    std::vector<Complex> c(d);
    for (std::size_t ii = d; ii-- > 0;) {
        Complex s = qh[ii];
        for (std::size_t j = ii + 1; j < d; ++j) s -= rmat[ii][j] * c[j];
        c[ii] = s / rmat[ii][ii];
    }
    return c;
}

} // namespace

// ---------------------------------------------------------------------------
// Lawson
// ---------------------------------------------------------------------------

ApproxResult best_weighted_approx_lawson_on(const LatticeSet& exponents,
                                            const std::vector<Complex>& f_values,
                                            const WeightedSampleSet& samples,
                                            const ExponentSet& S,
                                            const LawsonOptions& opts,
                                            const std::vector<Complex>& f_validation) {
    const std::int64_t m = exponents.m;
    FilteredProblem fp = filter_infinite_weights(f_values, samples, m);
    SampleBasis basis = build_basis_from_exponents(exponents, fp.samples, false);
    const std::size_t k = fp.samples.points.size();

    std::vector<double> lawson(k, 1.0 / static_cast<double>(k));
    std::vector<double> row_scale(k);
    std::vector<Complex> coeffs;
    double dmax = 0.0, prev = std::numeric_limits<double>::infinity();
    int used = 0;
    int flat = 0;
    for (int it = 0; it < opts.max_iter; ++it, ++used) {
        for (std::size_t r = 0; r < k; ++r)
            row_scale[r] = std::sqrt(lawson[r]) * fp.scales[r];
        coeffs = weighted_least_squares(basis.rows, fp.f, row_scale);
        dmax = 0.0;
        double nu2 = 0.0; // weighted mean square: nu = sqrt(nu2) <= minimax
        std::vector<double> resid(k);
        for (std::size_t r = 0; r < k; ++r) {
            Complex pr(0.0, 0.0);
            for (std::size_t i = 0; i < coeffs.size(); ++i) pr += coeffs[i] * basis.rows[r][i];
            resid[r] = std::abs(fp.f[r] - pr) * fp.scales[r];
            dmax = std::max(dmax, resid[r]);
            nu2 += lawson[r] * resid[r] * resid[r];
        }
        double nu = std::sqrt(nu2);
        // certified: max residual within 0.1% of the Lawson lower bound, or
        // the residual is flat at the working tolerance
        if (dmax - nu <= 1e-3 * nu || dmax <= opts.tol) {
            ++used;
            break;
        }
        flat = std::abs(dmax - prev) <= opts.tol * dmax ? flat + 1 : 0;
        if (flat >= 10) {
            ++used;
            break;
        }
        prev = dmax;
        double total = 0.0, wmax = 0.0;
        for (std::size_t r = 0; r < k; ++r) {
            lawson[r] = std::max(lawson[r] * resid[r], opts.weight_floor);
            wmax = std::max(wmax, lawson[r]);
        }
        // relative floor so deactivated points can re-enter quickly
        for (std::size_t r = 0; r < k; ++r) {
            lawson[r] = std::max(lawson[r], 1e-14 * wmax);
            total += lawson[r];
        }
        for (std::size_t r = 0; r < k; ++r) lawson[r] /= total;
    }

    SPolynomial p = make_polynomial(S, m, exponents, coeffs);
    double d_validation = validation_residual(p, samples, f_values, f_validation, m);
    return ApproxResult{m, dmax, d_validation, std::move(p), "lawson", used, 0.0};
}

ApproxResult best_weighted_approx_lawson(const std::vector<Complex>& f_values,
                                         const WeightedSampleSet& samples,
                                         const ExponentSet& S, std::int64_t m,
                                         const LawsonOptions& opts,
                                         const std::vector<Complex>& f_validation) {
    return best_weighted_approx_lawson_on(lattice_points(S, m), f_values, samples, S, opts,
                                          f_validation);
}

// ---------------------------------------------------------------------------
// Polygonal LP
// ---------------------------------------------------------------------------

ApproxResult best_weighted_approx_lp_on(const LatticeSet& exponents,
                                        const std::vector<Complex>& f_values,
                                        const WeightedSampleSet& samples,
                                        const ExponentSet& S, int directions,
                                        const std::vector<Complex>& f_validation) {
    if (directions < 3) throw std::invalid_argument("need at least three directions");
    const std::int64_t m = exponents.m;
    FilteredProblem fp = filter_infinite_weights(f_values, samples, m);
    SampleBasis basis = build_basis_from_exponents(exponents, fp.samples, false);
    const std::size_t k = fp.samples.points.size();
    const std::size_t d = exponents.exponents.size();
    const std::size_t nvars = 2 * d + 1; // Re parts, Im parts, t

    // Constraint rows: s_k [Re(e^{i th} f_k) - sum x Re(e^{i th} M) +
    // sum y Im(e^{i th} M)] <= t.
    std::vector<std::vector<double>> g_rows;
    std::vector<double> h;
    g_rows.reserve(k * directions);
    for (std::size_t r = 0; r < k; ++r) {
        for (int j = 0; j < directions; ++j) {
            double th = 2.0 * M_PI * j / directions;
            Complex rot(std::cos(th), std::sin(th));
            std::vector<double> row(nvars, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                Complex v = rot * basis.rows[r][i];
                row[i] = -fp.scales[r] * v.real();
                row[d + i] = fp.scales[r] * v.imag();
            }
            row[2 * d] = -1.0;
            g_rows.push_back(std::move(row));
            h.push_back(-fp.scales[r] * (rot * fp.f[r]).real());
        }
    }
    std::vector<double> c0(nvars, 0.0);
    c0[2 * d] = -1.0; // maximize -t

    PolygonalLp lp(std::move(g_rows), std::move(h), std::move(c0));
    auto sol = lp.solve();
    if (!sol) throw DegenerateSampleError("samples fail to separate the polynomial space");

    std::vector<Complex> coeffs(d);
    for (std::size_t i = 0; i < d; ++i) coeffs[i] = Complex(sol->u[i], sol->u[d + i]);
    double t_star = std::max(sol->u[2 * d], 0.0);

    SPolynomial p = make_polynomial(S, m, exponents, coeffs);
    double d_validation = validation_residual(p, samples, f_values, f_validation, m);
    return ApproxResult{m,
                        t_star,
                        d_validation,
                        std::move(p),
                        "lp",
                        sol->iterations,
                        t_star / std::cos(M_PI / directions)};
}

ApproxResult best_weighted_approx_lp(const std::vector<Complex>& f_values,
                                     const WeightedSampleSet& samples,
                                     const ExponentSet& S, std::int64_t m,
                                     int directions,
                                     const std::vector<Complex>& f_validation) {
    return best_weighted_approx_lp_on(lattice_points(S, m), f_values, samples, S, directions,
                                      f_validation);
}

// ---------------------------------------------------------------------------
// Decay rates
// ---------------------------------------------------------------------------

DecayRate decay_rate(std::vector<ApproxResult> results) {
    if (results.size() < 4)
        throw std::invalid_argument("need at least four approximation numbers");
    std::sort(results.begin(), results.end(),
              [](const ApproxResult& a, const ApproxResult& b) { return a.m < b.m; });
    DecayRate out;
    for (const auto& r : results) {
        if (r.d_sample <= 0.0) {
            out.degenerate = true;
            out.roots.push_back(0.0);
        } else {
            out.roots.push_back(std::pow(r.d_sample, 1.0 / static_cast<double>(r.m)));
        }
    }
    if (out.degenerate) {
        out.fitted_rate = 0.0;
        return out;
    }
    // LS slope of log d_m against m over the trailing half window.
    std::size_t start = results.size() / 2;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double n = 0.0;
    for (std::size_t i = start; i < results.size(); ++i) {
        double x = static_cast<double>(results[i].m);
        double y = std::log(results[i].d_sample);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n += 1.0;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.fitted_rate = std::exp(slope);
    return out;
}

// ---------------------------------------------------------------------------
// Hull comparison
// ---------------------------------------------------------------------------

HullComparison hull_approx_comparison(const std::vector<Complex>& f_values,
                                      const WeightedSampleSet& samples,
                                      const ExponentSet& S, std::int64_t m,
                                      int directions,
                                      const std::vector<Complex>& f_validation) {
    HullComparison out;
    out.gap = gap_distance(S, m);
    Cone gamma = Cone::ice_cream(out.gap);

    // x in m*hull(S) pulls <x, 1> <= m phi_S(1), so the integer box is
    // bounded by m phi_S(1) in each coordinate.
    const int n = S.dim();
    Vec ones(n, 1.0);
    double bound = static_cast<double>(m) * support_function(S, ones);
    std::int64_t hi = static_cast<std::int64_t>(std::floor(bound + 1e-9));

    out.hull_exponents.m = m;
    IVec cur(n, 0);
    // recursive scan without building a helper: n <= 2 in certified use
    if (n == 1) {
        for (std::int64_t a = 0; a <= hi; ++a) {
            auto r = cone_hull_membership(S, gamma, Vec{static_cast<double>(a) / m});
            out.heuristic = out.heuristic || r.heuristic;
            if (r.member) out.hull_exponents.exponents.push_back(IVec{a});
        }
    } else if (n == 2) {
        for (std::int64_t a = 0; a <= hi; ++a)
            for (std::int64_t b = 0; b <= hi; ++b) {
                auto r = cone_hull_membership(
                    S, gamma, Vec{static_cast<double>(a) / m, static_cast<double>(b) / m});
                out.heuristic = out.heuristic || r.heuristic;
                if (r.member) out.hull_exponents.exponents.push_back(IVec{a, b});
            }
    } else {
        throw std::invalid_argument("hull comparison is certified for n <= 2 only");
    }

    LatticeSet base = lattice_points(S, m);
    ApproxResult rs = best_weighted_approx_lp_on(base, f_values, samples, S, directions,
                                                 f_validation);
    ApproxResult rh = best_weighted_approx_lp_on(out.hull_exponents, f_values, samples, S,
                                                 directions, f_validation);
    out.d_S = rs.d_sample;
    out.d_hull = rh.d_sample;
    return out;
}

} // namespace spoly
