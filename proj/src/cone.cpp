#include "spoly/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace spoly {

Cone Cone::full_space() {
    Cone c;
    c.kind_ = Kind::FullSpace;
    return c;
}

Cone Cone::orthant_complement() {
    Cone c;
    c.kind_ = Kind::OrthantComplement;
    return c;
}

Cone Cone::halfspace_intersection(std::vector<Vec> normals) {
    Cone c;
    c.kind_ = Kind::HalfspaceIntersection;
    c.normals_ = std::move(normals);
    return c;
}

Cone Cone::ice_cream(double gap) {
    if (!(gap >= 0.0)) throw std::invalid_argument("ice-cream gap must be nonnegative");
    Cone c;
    c.kind_ = Kind::IceCream;
    c.gap_ = gap;
    return c;
}

bool Cone::contains(const Vec& xi) const {
    switch (kind_) {
    case Kind::FullSpace:
        return true;
    case Kind::OrthantComplement: {
        bool all_zero = true;
        for (double v : xi) {
            if (v > 0.0) return true;
            if (v != 0.0) all_zero = false;
        }
        return all_zero;
    }
    case Kind::HalfspaceIntersection: {
        for (const auto& nrm : normals_) {
            double s = 0.0;
            for (std::size_t j = 0; j < xi.size(); ++j) s += nrm[j] * xi[j];
            if (s < 0.0) return false;
        }
        return true;
    }
    case Kind::IceCream: {
        double sum = 0.0, sq = 0.0;
        for (double v : xi) {
            sum += v;
            sq += v * v;
        }
        return sum >= -0.5 * gap_ * std::sqrt(sq);
    }
    }
    return false;
}

namespace {

constexpr double kPi = std::numbers::pi;

double hull_objective(const ExponentSet& S, const Vec& x, const Vec& xi) {
    double inner = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) inner += x[j] * xi[j];
    return inner - support_function(S, xi);
}

// Golden-section maximization over theta; evaluations outside the cone count
// as -inf so the search stays on the feasible arc.
double golden_refine(const ExponentSet& S, const Cone& gamma, const Vec& x, double lo,
                     double hi, double* best_theta) {
    auto eval = [&](double th) {
        Vec xi{std::cos(th), std::sin(th)};
        if (!gamma.contains(xi)) return -std::numeric_limits<double>::infinity();
        return hull_objective(S, x, xi);
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    double mid = 0.5 * (a + b);
    double fm = eval(mid);
    if (best_theta) *best_theta = mid;
    return std::max({fm, fc, fd});
}

HullMembershipResult hull_membership_1d(const ExponentSet& S, const Cone& gamma,
                                        const Vec& x) {
    HullMembershipResult r;
    r.margin = -std::numeric_limits<double>::infinity();
    for (double dir : {1.0, -1.0}) {
        Vec xi{dir};
        if (!gamma.contains(xi)) continue;
        double v = hull_objective(S, x, xi);
        if (v > r.margin) {
            r.margin = v;
            r.witness = xi;
        }
    }
    return r;
}

HullMembershipResult hull_membership_2d(const ExponentSet& S, const Cone& gamma,
                                        const Vec& x, const HullOptions& opts) {
    HullMembershipResult r;
    const int n = opts.grid;
    const double step = 2.0 * kPi / n;
    std::vector<double> vals(n, -std::numeric_limits<double>::infinity());
    std::vector<char> feas(n, 0);
    for (int i = 0; i < n; ++i) {
        double th = i * step;
        Vec xi{std::cos(th), std::sin(th)};
        if (!gamma.contains(xi)) continue;
        feas[i] = 1;
        vals[i] = hull_objective(S, x, xi);
    }

    // Best three grid cells, refined; plus the feasibility transition angles
    // of the cone boundary, located by bisection.
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if (feas[i]) order.push_back(i);
    if (order.empty()) {
        r.margin = -std::numeric_limits<double>::infinity();
        return r;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] > vals[b]; });

    double best = -std::numeric_limits<double>::infinity();
    double best_theta = order[0] * step;
    auto consider = [&](double v, double th) {
        if (v > best) {
            best = v;
            best_theta = th;
        }
    };
    for (std::size_t k = 0; k < order.size() && k < 3; ++k) {
        int i = order[k];
        double th;
        double v = golden_refine(S, gamma, x, (i - 1) * step, (i + 1) * step, &th);
        consider(v, th);
        consider(vals[i], i * step);
    }
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        if (feas[i] == feas[j]) continue;
        // Bisect the transition, evaluate just inside the cone.
        double lo = i * step, hi = (i + 1) * step;
        bool lo_in = feas[i];
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            Vec xi{std::cos(mid), std::sin(mid)};
            if (gamma.contains(xi) == lo_in)
                lo = mid;
            else
                hi = mid;
        }
        double th = lo_in ? lo : hi;
        Vec xi{std::cos(th), std::sin(th)};
        if (gamma.contains(xi)) consider(hull_objective(S, x, xi), th);
    }

    r.margin = best;
    r.witness = Vec{std::cos(best_theta), std::sin(best_theta)};
    return r;
}

// Deterministic low-discrepancy directions on the unit sphere via an additive
// lattice rule in angles, mapped through the area-preserving parametrization.
HullMembershipResult hull_membership_nd(const ExponentSet& S, const Cone& gamma,
                                        const Vec& x, const HullOptions& opts) {
    HullMembershipResult r;
    r.heuristic = true;
    const int dim = static_cast<int>(x.size());
    r.margin = -std::numeric_limits<double>::infinity();
    std::vector<double> alpha(dim);
    for (int j = 0; j < dim; ++j) alpha[j] = std::sqrt(2.0 + j); // irrational steps
    Vec xi(dim);
    for (int i = 1; i <= opts.sample_count; ++i) {
        double norm = 0.0;
        for (int j = 0; j < dim; ++j) {
            double u = std::fmod(i * alpha[j], 1.0);
            // inverse-normal-free gaussianization: sum of two uniforms shifted
            double g = std::cos(2.0 * kPi * u) *
                       std::sqrt(-2.0 * std::log(std::fmod(i * alpha[(j + 1) % dim], 1.0) + 1e-12));
            xi[j] = g;
            norm += g * g;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        for (auto& v : xi) v /= norm;
        if (!gamma.contains(xi)) continue;
        double v = hull_objective(S, x, xi);
        if (v > r.margin) {
            r.margin = v;
            r.witness = xi;
        }
    }
    return r;
}

} // namespace

HullMembershipResult cone_hull_membership(const ExponentSet& S, const Cone& gamma,
                                          const Vec& x, const HullOptions& opts) {
    if (static_cast<int>(x.size()) != S.dim())
        throw std::invalid_argument("point dimension mismatch");
    HullMembershipResult r;
    if (S.dim() == 1)
        r = hull_membership_1d(S, gamma, x);
    else if (S.dim() == 2)
        r = hull_membership_2d(S, gamma, x, opts);
    else
        r = hull_membership_nd(S, gamma, x, opts);

    bool nonneg = true;
    for (double c : x)
        if (c < 0.0) nonneg = false;
    r.member = nonneg && r.margin <= opts.tolerance;
    return r;
}

} // namespace spoly
