#include "spoly/exponent_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spoly {

namespace {

Rational cross(const RatVec& o, const RatVec& a, const RatVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone chain, counter-clockwise, collinear points dropped.
std::vector<RatVec> convex_hull_2d(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end(), [](const RatVec& a, const RatVec& b) {
        if (a[0] != b[0]) return a[0] < b[0];
        return a[1] < b[1];
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<RatVec> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool on_segment(const RatVec& a, const RatVec& b, const RatVec& x) {
    RatVec ab{b[0] - a[0], b[1] - a[1]};
    RatVec ax{x[0] - a[0], x[1] - a[1]};
    if ((ab[0] * ax[1] - ab[1] * ax[0]).sign() != 0) return false;
    Rational t = dot(ax, ab);
    return t.sign() >= 0 && t <= dot(ab, ab);
}

// Squared distance from x to segment [a, b], exact.
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

} // namespace

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

ExponentSet ExponentSet::polytope(std::vector<RatVec> vertices) {
    if (vertices.empty()) throw std::invalid_argument("polytope needs at least one vertex");
    const std::size_t n = vertices.front().size();
    if (n == 0) throw std::invalid_argument("polytope dimension must be positive");
    bool has_origin = false;
    for (const auto& v : vertices) {
        if (v.size() != n) throw std::invalid_argument("inconsistent vertex dimensions");
        bool zero = true;
        for (const auto& c : v) {
            if (c.sign() < 0) throw std::invalid_argument("polytope vertex with negative coordinate");
            if (!c.is_zero()) zero = false;
        }
        if (zero) has_origin = true;
    }
    if (!has_origin) throw std::invalid_argument("polytope must contain the origin as a vertex");

    ExponentSet s;
    s.kind_ = Kind::Polytope;
    s.dim_ = static_cast<int>(n);
    s.vertices_ = vertices;
    if (n == 1) {
        Rational mx;
        for (const auto& v : vertices) mx = std::max(mx, v[0]);
        s.extremal_ = {{Rational(0)}};
        if (!mx.is_zero()) s.extremal_.push_back({mx});
    } else if (n == 2) {
        s.extremal_ = convex_hull_2d(vertices);
    } else {
        // A generating point is extremal iff it is not in the hull of the rest.
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            std::vector<RatVec> rest;
            for (std::size_t j = 0; j < vertices.size(); ++j)
                if (j != i) rest.push_back(vertices[j]);
            bool dup = false;
            for (const auto& r : rest)
                if (r == vertices[i]) { dup = true; break; }
            if (dup) continue;
            if (!convex_combination_weights(rest, vertices[i]))
                s.extremal_.push_back(vertices[i]);
        }
        if (s.extremal_.empty()) s.extremal_ = {vertices.front()};
    }
    return s;
}

ExponentSet ExponentSet::standard_simplex(int n) {
    if (n < 1) throw std::invalid_argument("simplex dimension must be positive");
    std::vector<RatVec> verts;
    verts.emplace_back(RatVec(n, Rational(0)));
    for (int j = 0; j < n; ++j) {
        RatVec e(n, Rational(0));
        e[j] = Rational(1);
        verts.push_back(e);
    }
    return polytope(std::move(verts));
}

ExponentSet ExponentSet::quarter_disc(const Rational& radius) {
    if (radius.sign() <= 0) throw std::invalid_argument("quarter-disc radius must be positive");
    ExponentSet s;
    s.kind_ = Kind::QuarterDisc;
    s.dim_ = 2;
    s.radius_ = radius;
    return s;
}

ExponentSet ExponentSet::hypograph(double b, double c) {
    if (!(b > 0.0)) throw std::invalid_argument("hypograph parameter b must be positive");
    if (!(c > 1.0 + 1.0 / b))
        throw std::invalid_argument("hypograph requires c > 1 + 1/b for concavity");
    ExponentSet s;
    s.kind_ = Kind::Hypograph;
    s.dim_ = 2;
    s.hypo_b_ = b;
    s.hypo_c_ = c;
    return s;
}

double ExponentSet::hypo_f(double t) const {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return t > 1.0 ? -std::expm1(hypo_c_ * (1.0 - std::pow(t, -hypo_b_))) : 0.0;
    // 1 - exp(c (1 - t^-b)), written through expm1 to keep precision near t = 1.
    return -std::expm1(hypo_c_ * (1.0 - std::pow(t, -hypo_b_)));
}

double ExponentSet::hypo_fprime(double t) const {
    if (t <= 0.0) return 0.0; // vanishes to infinite order at 0
    double fm1 = -std::exp(hypo_c_ * (1.0 - std::pow(t, -hypo_b_))); // f(t) - 1
    return hypo_b_ * hypo_c_ * std::pow(t, -hypo_b_ - 1.0) * fm1;
}

Rational ExponentSet::max_coordinate() const {
    switch (kind_) {
    case Kind::QuarterDisc:
        return radius_;
    case Kind::Hypograph:
        return Rational(1);
    case Kind::Polytope: {
        Rational mx;
        for (const auto& v : vertices_)
            for (const auto& c : v) mx = std::max(mx, c);
        return mx;
    }
    }
    return Rational(0);
}

// ---------------------------------------------------------------------------
// Support functions
// ---------------------------------------------------------------------------

namespace {

// Hypograph: maximize s1 xi1 + f(s1) xi2 for xi2 > 0.  The stationarity
// condition xi1 + f'(s1) xi2 = 0 is strictly decreasing in s1 (f'' < 0).
double hypograph_support(const ExponentSet& S, double xi1, double xi2) {
    if (xi2 <= 0.0) return std::max(xi1, 0.0);
    if (xi1 <= 0.0) return xi2; // maximum at s1 = 0, f(0) = 1
    double bc = S.hypo_b() * S.hypo_c();
    if (xi1 - bc * xi2 >= 0.0) return xi1; // maximum at s1 = 1, f(1) = 0
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (xi1 + S.hypo_fprime(mid) * xi2 > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double s1 = 0.5 * (lo + hi);
    double val = s1 * xi1 + S.hypo_f(s1) * xi2;
    return std::max({val, xi1, xi2});
}

// Support function of the face S over the coordinates not in `zero_mask`,
// evaluated at xi restricted to those coordinates.  The masked coordinates
// are the ones pinned to zero.
double face_support(const ExponentSet& S, const std::vector<bool>& zero_mask, const Vec& xi) {
    switch (S.kind()) {
    case ExponentSet::Kind::Polytope: {
        double best = 0.0;
        bool first = true;
        for (const auto& v : S.vertices()) {
            bool on_face = true;
            for (std::size_t j = 0; j < zero_mask.size(); ++j)
                if (zero_mask[j] && !v[j].is_zero()) { on_face = false; break; }
            if (!on_face) continue;
            double s = 0.0;
            for (std::size_t j = 0; j < zero_mask.size(); ++j)
                if (!zero_mask[j]) s += v[j].to_double() * xi[j];
            best = first ? s : std::max(best, s);
            first = false;
        }
        return best; // origin is always on the face, so `first` ends false
    }
    case ExponentSet::Kind::QuarterDisc: {
        double s = 0.0;
        for (std::size_t j = 0; j < zero_mask.size(); ++j)
            if (!zero_mask[j] && xi[j] > 0.0) s += xi[j] * xi[j];
        return S.radius().to_double() * std::sqrt(s);
    }
    case ExponentSet::Kind::Hypograph: {
        if (zero_mask[0] && zero_mask[1]) return 0.0;
        if (zero_mask[0]) return std::max(xi[1], 0.0); // segment {0} x [0,1]
        if (zero_mask[1]) return std::max(xi[0], 0.0); // segment [0,1] x {0}
        return hypograph_support(S, xi[0], xi[1]);
    }
    }
    return 0.0;
}

} // namespace

double support_function(const ExponentSet& S, const Vec& xi) {
    if (static_cast<int>(xi.size()) != S.dim())
        throw std::invalid_argument("direction dimension mismatch");
    for (double c : xi)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite direction");
    std::vector<bool> mask(xi.size(), false);
    return face_support(S, mask, xi);
}

Rational support_function_exact(const ExponentSet& S, const RatVec& xi) {
    if (S.kind() != ExponentSet::Kind::Polytope)
        throw UnsupportedExactnessError("exact support values are available for polytopes only");
    if (xi.size() != S.vertices().front().size())
        throw std::invalid_argument("direction dimension mismatch");
    Rational best;
    bool first = true;
    for (const auto& v : S.vertices()) {
        Rational s = dot(v, xi);
        if (first || s > best) best = s;
        first = false;
    }
    return best;
}

double log_support(const ExponentSet& S, const CVec& z) {
    if (static_cast<int>(z.size()) != S.dim())
        throw std::invalid_argument("point dimension mismatch");
    std::vector<bool> mask(z.size(), false);
    Vec xi(z.size(), 0.0);
    for (std::size_t j = 0; j < z.size(); ++j) {
        double a = std::abs(z[j]);
        if (a == 0.0)
            mask[j] = true;
        else
            xi[j] = std::log(a);
    }
    return face_support(S, mask, xi);
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

namespace {

MembershipResult polytope_membership_1d(const ExponentSet& S, const Rational& x,
                                        std::int64_t m) {
    Rational mx = S.max_coordinate() * Rational(m);
    MembershipResult r;
    r.inside = x.sign() >= 0 && x <= mx;
    if (r.inside)
        r.margin = std::min(x.to_double(), (mx - x).to_double());
    else
        r.margin = x.sign() < 0 ? x.to_double() : (mx - x).to_double();
    return r;
}

MembershipResult polytope_membership_2d(const ExponentSet& S, const RatVec& x,
                                        std::int64_t m) {
    const auto& hull = S.extremal_points();
    RatVec xs{x[0] / Rational(m), x[1] / Rational(m)};
    MembershipResult r;
    if (hull.size() == 1) {
        r.inside = xs == hull[0];
        RatVec d{xs[0] - hull[0][0], xs[1] - hull[0][1]};
        double dist = std::sqrt(dot(d, d).to_double()) * static_cast<double>(m);
        r.margin = r.inside ? 0.0 : -dist;
        return r;
    }
    Rational best_sq;
    bool first = true;
    auto feed = [&](const RatVec& a, const RatVec& b) {
        Rational sq = sq_dist_segment(a, b, xs);
        if (first || sq < best_sq) best_sq = sq;
        first = false;
    };
    if (hull.size() == 2) {
        r.inside = on_segment(hull[0], hull[1], xs);
        feed(hull[0], hull[1]);
    } else {
        bool inside = true;
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const RatVec& a = hull[i];
            const RatVec& b = hull[(i + 1) % hull.size()];
            if (cross(a, b, xs).sign() < 0) inside = false;
            feed(a, b);
        }
        r.inside = inside;
    }
    double dist = std::sqrt(best_sq.to_double()) * static_cast<double>(m);
    r.margin = r.inside ? dist : -dist;
    return r;
}

MembershipResult quarter_disc_membership(const ExponentSet& S, const RatVec& x,
                                         std::int64_t m) {
    Rational mr = S.radius() * Rational(m);
    MembershipResult r;
    bool nonneg = x[0].sign() >= 0 && x[1].sign() >= 0;
    Rational sq = squared_norm(x);
    r.inside = nonneg && sq <= mr * mr;
    double norm = std::sqrt(sq.to_double());
    double rad = mr.to_double();
    if (r.inside) {
        r.margin = std::min({x[0].to_double(), x[1].to_double(), rad - norm});
    } else {
        // Projection onto the quarter disc: clamp to the quadrant, then to
        // the arc (the disc is centered at the cone apex, so the two
        // projections compose).
        double px = std::max(x[0].to_double(), 0.0);
        double py = std::max(x[1].to_double(), 0.0);
        double dx = x[0].to_double() - px, dy = x[1].to_double() - py;
        double pn = std::hypot(px, py);
        double radial = pn > rad ? pn - rad : 0.0;
        r.margin = -std::hypot(std::hypot(dx, dy), radial);
    }
    return r;
}

// Projection of p (exterior, p >= 0) onto the scaled boundary curve
// t -> (t, m f(t/m)).  The normal condition G(t) = (t - p1) + f'(t/m)
// (m f(t/m) - p2) is strictly increasing wherever roots can lie.
double hypograph_curve_distance(const ExponentSet& S, double p1, double p2,
                                std::int64_t m) {
    const double md = static_cast<double>(m);
    auto G = [&](double t) {
        double u = t / md;
        return (t - p1) + S.hypo_fprime(u) * (md * S.hypo_f(u) - p2);
    };
    double lo = 0.0, hi = md;
    double t;
    if (G(lo) >= 0.0)
        t = lo;
    else if (G(hi) <= 0.0)
        t = hi;
    else {
        for (int it = 0; it < 200 && hi - lo > 1e-10 * std::max(1.0, md); ++it) {
            double mid = 0.5 * (lo + hi);
            if (G(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        t = 0.5 * (lo + hi);
    }
    double best = std::hypot(t - p1, md * S.hypo_f(t / md) - p2);
    // Curve endpoints double as the corners (0, m) and (m, 0).
    best = std::min(best, std::hypot(p1, md - p2));
    best = std::min(best, std::hypot(md - p1, p2));
    return best;
}

MembershipResult hypograph_membership(const ExponentSet& S, const RatVec& x,
                                      std::int64_t m, double tol) {
    const double md = static_cast<double>(m);
    double p1 = x[0].to_double(), p2 = x[1].to_double();
    MembershipResult r;
    r.exact = false;
    double t = p1 / md;
    double fv = S.hypo_f(t);
    r.inside = p1 >= -tol * md && p1 <= md * (1.0 + tol) && p2 >= -tol * md &&
               p2 <= md * (fv + tol);
    if (p1 >= 0.0 && p2 >= 0.0) {
        if (p2 > md * fv || p1 > md) {
            r.margin = -hypograph_curve_distance(S, p1, p2, m);
        } else {
            // Interior depth bound: |f'| <= bc on (0,1], so the vertical gap
            // to the curve underestimates the true distance by at most
            // sqrt(1 + (bc)^2).
            double bc = S.hypo_b() * S.hypo_c();
            double curve_gap = (md * fv - p2) / std::sqrt(1.0 + bc * bc);
            r.margin = std::min({p1, p2, curve_gap});
        }
    }
    return r;
}

} // namespace

MembershipResult membership(const ExponentSet& S, const RatVec& x, std::int64_t m,
                            double tol) {
    if (static_cast<int>(x.size()) != S.dim())
        throw std::invalid_argument("point dimension mismatch");
    if (m < 0) throw std::invalid_argument("scale index must be nonnegative");
    if (m == 0) {
        // 0 S = {0}
        bool zero = true;
        for (const auto& c : x)
            if (!c.is_zero()) zero = false;
        MembershipResult r;
        r.inside = zero;
        if (zero) r.margin = 0.0;
        return r;
    }
    switch (S.kind()) {
    case ExponentSet::Kind::Polytope: {
        if (S.dim() == 1) return polytope_membership_1d(S, x[0], m);
        if (S.dim() == 2) return polytope_membership_2d(S, x, m);
        RatVec xs(x);
        for (auto& c : xs) c /= Rational(m);
        MembershipResult r;
        r.inside = convex_combination_weights(S.extremal_points(), xs).has_value();
        return r; // no certified margin in higher dimensions
    }
    case ExponentSet::Kind::QuarterDisc:
        return quarter_disc_membership(S, x, m);
    case ExponentSet::Kind::Hypograph:
        if (tol == 0.0)
            throw UnsupportedExactnessError(
                "hypograph membership requires a positive tolerance");
        return hypograph_membership(S, x, m, tol);
    }
    return {};
}

MembershipResult membership(const ExponentSet& S, const IVec& x, std::int64_t m,
                            double tol) {
    return membership(S, rat_vec_from_ints(x), m, tol);
}

// ---------------------------------------------------------------------------
// Lattice enumeration
// ---------------------------------------------------------------------------

namespace {

constexpr double kHypographLatticeTol = 1e-12;

bool lattice_member(const ExponentSet& S, const IVec& alpha, std::int64_t m) {
    double tol = S.kind() == ExponentSet::Kind::Hypograph ? kHypographLatticeTol : 0.0;
    return membership(S, alpha, m, tol).inside;
}

void scan_box(const ExponentSet& S, std::int64_t m, std::int64_t hi, IVec& cur,
              std::size_t coord, std::vector<IVec>& out) {
    if (coord == cur.size()) {
        if (lattice_member(S, cur, m)) out.push_back(cur);
        return;
    }
    for (std::int64_t v = 0; v <= hi; ++v) {
        cur[coord] = v;
        scan_box(S, m, hi, cur, coord + 1, out);
    }
}

} // namespace

LatticeSet lattice_points(const ExponentSet& S, std::int64_t m) {
    if (m < 0) throw std::invalid_argument("scale index must be nonnegative");
    LatticeSet ls;
    ls.m = m;
    if (m == 0) {
        ls.exponents.push_back(IVec(S.dim(), 0));
        return ls;
    }
    std::int64_t hi = (S.max_coordinate() * Rational(m)).ceil();
    IVec cur(S.dim(), 0);
    scan_box(S, m, hi, cur, 0, ls.exponents);
    return ls;
}

// ---------------------------------------------------------------------------
// Caratheodory weights and the Minkowski peel
// ---------------------------------------------------------------------------

// Phase-1 simplex in exact rational arithmetic with Bland's rule.  Rows are
// the n coordinate equations plus the normalization row; a basic feasible
// solution has at most n + 1 positive weights.
std::optional<RatVec> convex_combination_weights(const std::vector<RatVec>& points,
                                                 const RatVec& x) {
    const std::size_t n = x.size();
    const std::size_t rows = n + 1;
    const std::size_t npts = points.size();
    const std::size_t cols = npts + rows; // points then artificials
    std::vector<RatVec> tab(rows, RatVec(cols + 1, Rational(0)));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < npts; ++j) tab[i][j] = points[j][i];
        tab[i][cols] = x[i];
    }
    for (std::size_t j = 0; j < npts; ++j) tab[n][j] = Rational(1);
    tab[n][cols] = Rational(1);

    for (std::size_t i = 0; i < rows; ++i) {
        if (tab[i][cols].sign() < 0)
            for (auto& v : tab[i]) v = -v;
        tab[i][npts + i] = Rational(1);
    }

    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = npts + i;

    // Reduced costs for the phase-1 objective (sum of artificials).
    RatVec cost(cols + 1, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j <= cols; ++j) cost[j] -= tab[i][j];

    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < npts; ++j) { // Bland: smallest eligible index
            if (cost[j].sign() < 0) { enter = j; break; }
        }
        if (enter == cols) break;
        std::size_t leave = rows;
        Rational best;
        for (std::size_t i = 0; i < rows; ++i) {
            if (tab[i][enter].sign() <= 0) continue;
            Rational ratio = tab[i][cols] / tab[i][enter];
            if (leave == rows || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == rows) return std::nullopt; // unbounded: cannot happen here
        Rational piv = tab[leave][enter];
        for (auto& v : tab[leave]) v /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave) continue;
            Rational f = tab[i][enter];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        Rational fc = cost[enter];
        if (!fc.is_zero())
            for (std::size_t j = 0; j <= cols; ++j) cost[j] -= fc * tab[leave][j];
        basis[leave] = enter;
    }

    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] >= npts && !tab[i][cols].is_zero()) return std::nullopt;

    RatVec lambda(npts, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] < npts) lambda[basis[i]] = tab[i][cols];
    return lambda;
}

MinkowskiDecomposition minkowski_decompose(const ExponentSet& S, const RatVec& s,
                                           std::int64_t m) {
    if (S.kind() != ExponentSet::Kind::Polytope)
        throw std::invalid_argument("Minkowski decomposition applies to polytopes");
    const int n = S.dim();
    if (m <= n) throw std::invalid_argument("scale index must exceed the dimension");

    const auto& ext = S.extremal_points();
    MinkowskiDecomposition out;
    RatVec cur = s;
    for (std::int64_t k = m; k > n; --k) {
        RatVec scaled(cur);
        for (auto& c : scaled) c /= Rational(k);
        auto weights = convex_combination_weights(ext, scaled);
        if (!weights) throw std::domain_error("point is not in mS");
        // sum of k * mu over <= n+1 extremal points is k, so the largest
        // weight is at least k / (n+1) >= 1.
        std::size_t pick = 0;
        Rational best(-1);
        for (std::size_t j = 0; j < weights->size(); ++j) {
            Rational w = (*weights)[j] * Rational(k);
            if (w > best) { best = w; pick = j; }
        }
        out.summands.push_back(ext[pick]);
        for (int i = 0; i < n; ++i) cur[i] -= ext[pick][i];
    }
    // cur is now in nS by construction; verify.
    RatVec check(cur);
    for (auto& c : check) c /= Rational(n);
    if (!convex_combination_weights(ext, check))
        throw std::logic_error("Minkowski peel left the core outside nS");
    out.core = cur;
    return out;
}

} // namespace spoly
