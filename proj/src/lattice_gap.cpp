#include "spoly/lattice_gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spoly/parallel.hpp"

namespace spoly {

namespace {

constexpr double kCandidateTol = 1e-12;

Rational cross(const RatVec& o, const RatVec& a, const RatVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Rational sq_dist_segment(const RatVec& a, const RatVec& b, const RatVec& x) {
    RatVec ab{b[0] - a[0], b[1] - a[1]};
    RatVec ax{x[0] - a[0], x[1] - a[1]};
    Rational len2 = dot(ab, ab);
    if (len2.is_zero()) return dot(ax, ax);
    Rational proj = dot(ax, ab);
    if (proj.sign() <= 0) return dot(ax, ax);
    if (proj >= len2) {
        RatVec bx{x[0] - b[0], x[1] - b[1]};
        return dot(bx, bx);
    }
    return dot(ax, ax) - proj * proj / len2;
}

// Exact squared distance from a rational point to the boundary of a scaled
// polygon given by hull vertices (any degenerate shape included).
Rational sq_dist_polygon(const std::vector<RatVec>& hull, const RatVec& x) {
    if (hull.size() == 1) {
        RatVec d{x[0] - hull[0][0], x[1] - hull[0][1]};
        return dot(d, d);
    }
    Rational best;
    bool first = true;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const RatVec& a = hull[i];
        const RatVec& b = hull[(i + 1) % hull.size()];
        if (hull.size() == 2 && i == 1) break;
        Rational sq = sq_dist_segment(a, b, x);
        if (first || sq < best) best = sq;
        first = false;
    }
    return best;
}

bool polygon_contains(const std::vector<RatVec>& hull, const RatVec& x) {
    if (hull.size() == 1) return x == hull[0];
    if (hull.size() == 2) {
        RatVec ab{hull[1][0] - hull[0][0], hull[1][1] - hull[0][1]};
        RatVec ax{x[0] - hull[0][0], x[1] - hull[0][1]};
        if ((ab[0] * ax[1] - ab[1] * ax[0]).sign() != 0) return false;
        Rational t = dot(ax, ab);
        return t.sign() >= 0 && t <= dot(ab, ab);
    }
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (cross(hull[i], hull[(i + 1) % hull.size()], x).sign() < 0) return false;
    return true;
}

std::vector<RatVec> scaled_hull(const ExponentSet& S, const Rational& factor) {
    std::vector<RatVec> hull = S.extremal_points();
    for (auto& v : hull)
        for (auto& c : v) c *= factor;
    return hull;
}

// Wolfe's min-norm-point algorithm over conv(m * ext S) - x; double
// precision, used only for polytopes with n >= 3.
double wolfe_min_norm_distance(const ExponentSet& S, std::int64_t m, const Vec& x) {
    const int n = S.dim();
    std::vector<Vec> pts; // vertices shifted by -x
    for (const auto& v : S.extremal_points()) {
        Vec w(n);
        for (int j = 0; j < n; ++j) w[j] = v[j].to_double() * static_cast<double>(m) - x[j];
        pts.push_back(w);
    }
    auto sq = [&](const Vec& p) {
        double s = 0.0;
        for (double c : p) s += c * c;
        return s;
    };
    auto inner = [&](const Vec& a, const Vec& b) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a[j] * b[j];
        return s;
    };

    std::size_t start = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (sq(pts[i]) < sq(pts[start])) start = i;

    std::vector<std::size_t> corral{start};
    std::vector<double> lambda{1.0};
    Vec w = pts[start];

    // Affine min-norm point over the corral via the KKT system
    // [2G 1; 1^T 0] [mu; nu] = [0; 1].
    auto affine_min_norm = [&](std::vector<double>& mu) {
        const std::size_t k = corral.size();
        std::vector<std::vector<double>> A(k + 1, std::vector<double>(k + 2, 0.0));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j)
                A[i][j] = 2.0 * inner(pts[corral[i]], pts[corral[j]]);
            A[i][k] = 1.0;
        }
        for (std::size_t j = 0; j < k; ++j) A[k][j] = 1.0;
        A[k][k + 1] = 1.0;
        // Gaussian elimination with partial pivoting.
        for (std::size_t col = 0; col <= k; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r <= k; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            std::swap(A[col], A[piv]);
            if (std::abs(A[col][col]) < 1e-14) return false;
            for (std::size_t r = 0; r <= k; ++r) {
                if (r == col) continue;
                double f = A[r][col] / A[col][col];
                if (f == 0.0) continue;
                for (std::size_t c2 = col; c2 <= k + 1; ++c2) A[r][c2] -= f * A[col][c2];
            }
        }
        mu.resize(k);
        for (std::size_t i = 0; i < k; ++i) mu[i] = A[i][k + 1] / A[i][i];
        return true;
    };

    for (int major = 0; major < 200; ++major) {
        double wn = sq(w);
        std::size_t best = 0;
        double bestip = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double ip = inner(w, pts[i]);
            if (ip < bestip) {
                bestip = ip;
                best = i;
            }
        }
        if (wn - bestip <= 1e-12 * (1.0 + wn)) break;
        bool present = false;
        for (auto idx : corral)
            if (idx == best) present = true;
        if (present) break;
        corral.push_back(best);
        lambda.push_back(0.0);

        for (int minor = 0; minor < 100; ++minor) {
            std::vector<double> mu;
            if (!affine_min_norm(mu)) { // degenerate corral, drop the newest point
                corral.pop_back();
                lambda.pop_back();
                break;
            }
            bool interior = true;
            for (double v : mu)
                if (v < 1e-12) interior = false;
            if (interior) {
                lambda = mu;
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < mu.size(); ++i)
                if (mu[i] < 1e-12)
                    theta = std::min(theta, lambda[i] / (lambda[i] - mu[i]));
            for (std::size_t i = 0; i < mu.size(); ++i)
                lambda[i] += theta * (mu[i] - lambda[i]);
            std::vector<std::size_t> keep_idx;
            std::vector<double> keep_lam;
            for (std::size_t i = 0; i < lambda.size(); ++i) {
                if (lambda[i] > 1e-12) {
                    keep_idx.push_back(corral[i]);
                    keep_lam.push_back(lambda[i]);
                }
            }
            corral = keep_idx;
            lambda = keep_lam;
        }
        w.assign(n, 0.0);
        for (std::size_t i = 0; i < corral.size(); ++i)
            for (int j = 0; j < n; ++j) w[j] += lambda[i] * pts[corral[i]][j];
    }
    return std::sqrt(sq(w));
}

// ---------------------------------------------------------------------------
// Candidate enumeration shared by gap_distance and polytope_delta
// ---------------------------------------------------------------------------

// Outer corner points of mS ("rounded-up vertices plus unit steps") used to
// seed the search radius.
std::vector<IVec> seed_candidates(const ExponentSet& S, std::int64_t m) {
    std::vector<RatVec> corners;
    switch (S.kind()) {
    case ExponentSet::Kind::Polytope:
        corners = scaled_hull(S, Rational(m));
        break;
    case ExponentSet::Kind::QuarterDisc: {
        Rational mr = S.radius() * Rational(m);
        corners = {{mr, Rational(0)}, {Rational(0), mr}};
        break;
    }
    case ExponentSet::Kind::Hypograph:
        corners = {{Rational(m), Rational(0)}, {Rational(0), Rational(m)}};
        break;
    }
    const int n = S.dim();
    std::vector<IVec> out;
    for (const auto& c : corners) {
        IVec base(n);
        for (int j = 0; j < n; ++j) base[j] = std::max<std::int64_t>(c[j].ceil(), 0);
        for (int j = 0; j < n; ++j) {
            IVec cand = base;
            cand[j] += 1;
            out.push_back(cand);
        }
    }
    // Far corner of the bounding box, always exterior for bounded S.
    std::int64_t hi = (S.max_coordinate() * Rational(m)).ceil() + 1;
    out.push_back(IVec(n, hi));
    return out;
}

// Exterior test for integer points against the scaled hypograph.  The
// endpoint values f(0) = 1 and f(1) = 0 are exact and f < 1 strictly on
// (0, 1), so the structural cases are decided without evaluating f; only the
// generic interior comparison is floating point.
bool hypograph_exterior_int(const ExponentSet& S, std::int64_t a1, std::int64_t a2,
                            std::int64_t m) {
    if (a1 < 0 || a2 < 0) return true;
    if (a1 > m || a2 > m) return true;
    if (a1 == 0) return false; // segment {0} x [0, m] lies in mS
    if (a2 == 0) return false; // bottom edge
    if (a1 == m) return true;  // a2 >= 1 > 0 = m f(1)
    if (a2 == m) return true;  // f < 1 strictly for 0 < t < 1
    double md = static_cast<double>(m);
    return static_cast<double>(a2) > md * S.hypo_f(static_cast<double>(a1) / md);
}

bool is_gap_candidate(const ExponentSet& S, const IVec& alpha, std::int64_t m) {
    if (S.kind() == ExponentSet::Kind::Hypograph)
        return hypograph_exterior_int(S, alpha[0], alpha[1], m);
    return !membership(S, alpha, m, 0.0).inside;
}

template <typename Visit>
void for_each_box_point(std::int64_t lo, std::int64_t hi, IVec& cur, std::size_t coord,
                        const Visit& visit) {
    if (coord == cur.size()) {
        visit(cur);
        return;
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
        cur[coord] = v;
        for_each_box_point(lo, hi, cur, coord + 1, visit);
    }
}

} // namespace

// ---------------------------------------------------------------------------
// point_set_distance
// ---------------------------------------------------------------------------

double point_set_distance(const ExponentSet& S, std::int64_t m, const IVec& alpha) {
    if (static_cast<int>(alpha.size()) != S.dim())
        throw std::invalid_argument("point dimension mismatch");
    double tol = S.kind() == ExponentSet::Kind::Hypograph ? kCandidateTol : 0.0;
    MembershipResult res = membership(S, alpha, m, tol);
    if (res.inside) return 0.0;
    if (res.margin) return -*res.margin;
    Vec x(alpha.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) x[j] = static_cast<double>(alpha[j]);
    return wolfe_min_norm_distance(S, m, x);
}

// ---------------------------------------------------------------------------
// gap_distance
// ---------------------------------------------------------------------------

namespace {

GapResult gap_polytope_2d(const ExponentSet& S, std::int64_t m, double upper) {
    auto hull = scaled_hull(S, Rational(m));
    std::int64_t infl = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(upper)));
    std::int64_t hi = (S.max_coordinate() * Rational(m)).ceil() + infl;
    GapResult best;
    Rational best_sq;
    bool first = true;
    IVec cur(2);
    for_each_box_point(0, hi, cur, 0, [&](const IVec& a) {
        RatVec x = rat_vec_from_ints(a);
        if (polygon_contains(hull, x)) return;
        Rational sq = sq_dist_polygon(hull, x);
        if (first || sq < best_sq) {
            best_sq = sq;
            best.minimizers.clear();
            best.minimizers.push_back(a);
            first = false;
        } else if (sq == best_sq) {
            best.minimizers.push_back(a);
        }
    });
    best.distance = std::sqrt(best_sq.to_double());
    return best;
}

GapResult gap_polytope_1d(const ExponentSet& S, std::int64_t m) {
    Rational mx = S.max_coordinate() * Rational(m);
    std::int64_t first_out = mx.floor() + 1;
    GapResult r;
    r.distance = (Rational(first_out) - mx).to_double();
    r.minimizers.push_back(IVec{first_out});
    return r;
}

GapResult gap_quarter_disc(const ExponentSet& S, std::int64_t m, double upper) {
    Rational mr = S.radius() * Rational(m);
    Rational mr2 = mr * mr;
    std::int64_t infl = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(upper)));
    std::int64_t hi = mr.ceil() + infl;
    GapResult best;
    Rational best_sq;
    bool first = true;
    IVec cur(2);
    for_each_box_point(0, hi, cur, 0, [&](const IVec& a) {
        Rational sq = Rational(a[0]) * Rational(a[0]) + Rational(a[1]) * Rational(a[1]);
        if (sq <= mr2) return; // inside the quarter disc
        if (first || sq < best_sq) {
            best_sq = sq;
            best.minimizers.clear();
            best.minimizers.push_back(a);
            first = false;
        } else if (sq == best_sq) {
            best.minimizers.push_back(a);
        }
    });
    best.distance = std::sqrt(best_sq.to_double()) - mr.to_double();
    return best;
}

GapResult gap_generic(const ExponentSet& S, std::int64_t m, double upper) {
    std::int64_t infl = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(upper)));
    std::int64_t hi = (S.max_coordinate() * Rational(m)).ceil() + infl;
    GapResult best;
    best.distance = std::numeric_limits<double>::infinity();
    IVec cur(S.dim());
    for_each_box_point(0, hi, cur, 0, [&](const IVec& a) {
        if (!is_gap_candidate(S, a, m)) return;
        double d = point_set_distance(S, m, a);
        if (d < best.distance - kCandidateTol) {
            best.distance = d;
            best.minimizers.clear();
            best.minimizers.push_back(a);
        } else if (d <= best.distance + kCandidateTol) {
            best.minimizers.push_back(a);
        }
    });
    return best;
}

} // namespace

GapResult gap_distance_full(const ExponentSet& S, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("scale index must be positive");
    double upper = std::numeric_limits<double>::infinity();
    for (const auto& cand : seed_candidates(S, m)) {
        if (!is_gap_candidate(S, cand, m)) continue;
        upper = std::min(upper, point_set_distance(S, m, cand));
    }
    if (!std::isfinite(upper)) upper = 1.0;

    switch (S.kind()) {
    case ExponentSet::Kind::Polytope:
        if (S.dim() == 1) return gap_polytope_1d(S, m);
        if (S.dim() == 2) return gap_polytope_2d(S, m, upper);
        return gap_generic(S, m, upper);
    case ExponentSet::Kind::QuarterDisc:
        return gap_quarter_disc(S, m, upper);
    case ExponentSet::Kind::Hypograph:
        return gap_generic(S, m, upper);
    }
    return {};
}

double gap_distance(const ExponentSet& S, std::int64_t m) {
    return gap_distance_full(S, m).distance;
}

// ---------------------------------------------------------------------------
// polytope_delta
// ---------------------------------------------------------------------------

DeltaResult polytope_delta(const ExponentSet& S) {
    if (S.kind() != ExponentSet::Kind::Polytope)
        throw std::invalid_argument("delta bound applies to rational polytopes");
    std::int64_t q = 1;
    for (const auto& v : S.vertices())
        for (const auto& c : v) q = lcm64(q, c.den());
    const int n = S.dim();
    const std::int64_t nq = n * q;

    DeltaResult out;
    out.common_denominator = q;

    // Work with S' = nq * S against the integer lattice; exterior points with
    // negative coordinates are part of (1/(nq)) Z^n \ S and must be scanned.
    Rational scale(nq);
    std::int64_t hi = (S.max_coordinate() * scale).ceil() + 1;
    std::int64_t lo = -1;

    if (n == 1) {
        Rational mx = S.max_coordinate() * scale;
        Rational d = std::min(Rational(mx.floor() + 1) - mx, Rational(1)); // -1 is at distance 1
        out.delta = (d / scale).to_double();
        return out;
    }
    if (n == 2) {
        auto hull = scaled_hull(S, scale);
        Rational best_sq;
        bool first = true;
        IVec cur(2);
        for_each_box_point(lo, hi, cur, 0, [&](const IVec& a) {
            RatVec x = rat_vec_from_ints(a);
            if (polygon_contains(hull, x)) return;
            Rational sq = sq_dist_polygon(hull, x);
            if (first || sq < best_sq) best_sq = sq;
            first = false;
        });
        out.delta = std::sqrt(best_sq.to_double()) / static_cast<double>(nq);
        return out;
    }

    // n >= 3: Frank-Wolfe distances on the scaled hull.
    double best = std::numeric_limits<double>::infinity();
    IVec cur(n);
    std::vector<RatVec> ext;
    for (auto v : S.extremal_points()) {
        for (auto& c : v) c *= scale;
        ext.push_back(v);
    }
    ExponentSet scaled = ExponentSet::polytope(ext);
    for_each_box_point(lo, hi, cur, 0, [&](const IVec& a) {
        RatVec x = rat_vec_from_ints(a);
        bool neg = false;
        for (auto v : a)
            if (v < 0) neg = true;
        if (!neg && membership(scaled, x, 1).inside) return;
        Vec xd(n);
        for (int j = 0; j < n; ++j) xd[j] = static_cast<double>(a[j]);
        best = std::min(best, wolfe_min_norm_distance(scaled, 1, xd));
    });
    out.delta = best / static_cast<double>(nq);
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms and reports
// ---------------------------------------------------------------------------

double disc_gap_exact(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("scale index must be positive");
    double md = static_cast<double>(m);
    return 1.0 / (std::sqrt(md * md + 1.0) + md);
}

double hypograph_gap_bound(double b, double c, std::int64_t m) {
    if (!(b > 0.0) || !(c > 1.0 + 1.0 / b))
        throw std::domain_error("hypograph bound requires b > 0 and c > 1 + 1/b");
    if (m < 1) throw std::invalid_argument("scale index must be positive");
    double md = static_cast<double>(m);
    return md * std::exp(c * (1.0 - std::pow(md, b)));
}

double hypograph_classification_root(double b, double c, std::int64_t m) {
    if (!(b > 0.0) || !(c > 1.0 + 1.0 / b))
        throw std::domain_error("hypograph bound requires b > 0 and c > 1 + 1/b");
    if (m < 1) throw std::invalid_argument("scale index must be positive");
    double md = static_cast<double>(m);
    return std::exp(c * (1.0 - std::pow(md, b)) / md);
}

GapReport gap_rate_report(const ExponentSet& S, std::int64_t m_max, int threads) {
    if (m_max < 1) throw std::invalid_argument("m_max must be positive");
    GapReport report;
    report.rows.resize(m_max);
    parallel_for(m_max, threads, [&](std::int64_t i) {
        std::int64_t m = i + 1;
        GapResult g = gap_distance_full(S, m);
        GapRow row;
        row.m = m;
        row.d_m = g.distance;
        row.root = std::pow(g.distance, 1.0 / static_cast<double>(m));
        row.minimizers = std::move(g.minimizers);
        report.rows[i] = std::move(row);
    });

    std::int64_t start = (m_max + 1) / 2; // upper half of the window
    double a_est = std::numeric_limits<double>::infinity();
    for (std::int64_t m = start; m <= m_max; ++m) a_est = std::min(a_est, report.rows[m - 1].root);
    report.a_estimate = a_est;

    if (S.kind() == ExponentSet::Kind::Polytope) {
        DeltaResult d = polytope_delta(S);
        report.delta = d.delta;
        report.common_denominator = d.common_denominator;
    } else if (S.kind() == ExponentSet::Kind::Hypograph) {
        for (std::int64_t m = 1; m <= m_max; ++m)
            report.bound_rows.emplace_back(m, hypograph_gap_bound(S.hypo_b(), S.hypo_c(), m));
    }
    return report;
}

} // namespace spoly
