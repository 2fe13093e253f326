#include "spoly/siciak.hpp"

#include <algorithm>
#include <cmath>

#include "spoly/parallel.hpp"

namespace spoly {

namespace {

// Constraint system of the Siciak LP for one (S, samples, m): rows over
// (sample, direction) pairs, Re(e^{i th_j} p(z_k)) <= e^{m q_k}.  The
// objective row for a target z is built separately so one system serves a
// whole grid of targets through warm restarts.
struct SiciakSystem {
    LatticeSet exponents;
    std::vector<std::vector<double>> g_rows;
    std::vector<double> h;
    std::size_t nvars = 0;
};

SiciakSystem build_system(const ExponentSet& S, const WeightedSampleSet& samples,
                          std::int64_t m, int directions) {
    if (directions < 3) throw std::invalid_argument("need at least three directions");
    SiciakSystem sys;
    sys.exponents = lattice_points(S, m);
    const std::size_t d = sys.exponents.exponents.size();
    sys.nvars = 2 * d;

    validate_weight(samples, d);
    for (std::size_t k = 0; k < samples.points.size(); ++k) {
        if (!std::isfinite(samples.weights[k])) continue; // vacuous constraint
        double cap = std::exp(static_cast<double>(m) * samples.weights[k]);
        CVec mono(d);
        for (std::size_t i = 0; i < d; ++i)
            mono[i] = monomial_value(samples.points[k], sys.exponents.exponents[i]);
        for (int j = 0; j < directions; ++j) {
            double th = 2.0 * M_PI * j / directions;
            Complex rot(std::cos(th), std::sin(th));
            std::vector<double> row(sys.nvars, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                Complex v = rot * mono[i];
                row[i] = v.real();
                row[d + i] = -v.imag();
            }
            sys.g_rows.push_back(std::move(row));
            sys.h.push_back(cap);
        }
    }
    return sys;
}

std::vector<double> objective_for(const SiciakSystem& sys, const CVec& z) {
    const std::size_t d = sys.exponents.exponents.size();
    std::vector<double> c0(sys.nvars, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        Complex v = monomial_value(z, sys.exponents.exponents[i]);
        c0[i] = v.real();
        c0[d + i] = -v.imag();
    }
    return c0;
}

SiciakPhiResult finish_phi(const PolygonalLpResult& sol, std::size_t d, std::int64_t m,
                           int directions) {
    SiciakPhiResult out;
    out.opt = sol.objective;
    out.directions = directions;
    out.iterations = sol.iterations;
    double sec = 1.0 / std::cos(M_PI / directions);
    double inv_m = 1.0 / static_cast<double>(m);
    double safe = std::max(sol.objective, 0.0);
    out.upper = std::pow(safe, inv_m);
    out.value = std::pow(safe / sec, inv_m);
    out.coefficients.resize(d);
    for (std::size_t i = 0; i < d; ++i)
        out.coefficients[i] = Complex(sol.u[i], sol.u[d + i]);
    return out;
}

} // namespace

SiciakPhiResult siciak_phi(const ExponentSet& S, const WeightedSampleSet& samples,
                           std::int64_t m, const CVec& z, int directions) {
    if (m < 1) throw std::invalid_argument("degree index must be positive");
    SiciakSystem sys = build_system(S, samples, m, directions);
    PolygonalLp lp(sys.g_rows, sys.h, objective_for(sys, z));
    auto sol = lp.solve();
    if (!sol)
        throw DegenerateSampleError(
            "Siciak problem unbounded: samples fail to pin the polynomial space");
    return finish_phi(*sol, sys.exponents.exponents.size(), m, directions);
}

VApproxResult v_approx(const ExponentSet& S, const WeightedSampleSet& samples,
                       const std::vector<std::int64_t>& m_list, const CVec& z,
                       int directions) {
    if (m_list.empty()) throw std::invalid_argument("m_list must be nonempty");
    VApproxResult out;
    out.value = -std::numeric_limits<double>::infinity();
    out.lower = -std::numeric_limits<double>::infinity();
    for (std::int64_t m : m_list) {
        SiciakPhiResult r = siciak_phi(S, samples, m, z, directions);
        out.value = std::max(out.value, std::log(r.upper));
        out.lower = std::max(out.lower, std::log(r.value));
    }
    // S ∩ Q^n is dense in S for all three variants, so the caveat is off.
    out.density_caveat = false;
    return out;
}

SiciakField sublevel_classify(const ExponentSet& S, const WeightedSampleSet& samples,
                              const std::vector<std::int64_t>& m_list,
                              const std::vector<CVec>& grid, double R,
                              int directions, int threads) {
    if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
    if (m_list.empty()) throw std::invalid_argument("m_list must be nonempty");
    SiciakField field;
    field.grid = grid;
    field.m_list = m_list;
    field.log_r = std::log(R);
    field.phi_upper.assign(grid.size(), std::vector<double>(m_list.size(), 0.0));
    field.v_hat.assign(grid.size(), 0.0);
    field.inside.assign(grid.size(), 0);

    // Grid points are processed in fixed-size blocks; within a block the LP
    // warm-starts from the previous target, and every block starts cold, so
    // results do not depend on the thread count.
    constexpr std::int64_t kBlock = 128;
    const std::int64_t nblocks =
        (static_cast<std::int64_t>(grid.size()) + kBlock - 1) / kBlock;

    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
        SiciakSystem sys = build_system(S, samples, m_list[mi], directions);
        parallel_for(nblocks, threads, [&](std::int64_t blk) {
            std::int64_t lo = blk * kBlock;
            std::int64_t hi = std::min<std::int64_t>(grid.size(), lo + kBlock);
            PolygonalLp lp(sys.g_rows, sys.h, objective_for(sys, grid[lo]));
            bool first = true;
            for (std::int64_t g = lo; g < hi; ++g) {
                std::optional<PolygonalLpResult> sol;
                if (first) {
                    sol = lp.solve();
                    first = false;
                } else {
                    sol = lp.resolve_objective(objective_for(sys, grid[g]));
                }
                if (!sol)
                    throw DegenerateSampleError(
                        "Siciak problem unbounded: samples fail to pin the polynomial space");
                SiciakPhiResult r = finish_phi(*sol, sys.exponents.exponents.size(),
                                               m_list[mi], directions);
                field.phi_upper[g][mi] = r.upper;
            }
        });
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double v = -std::numeric_limits<double>::infinity();
        for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
            double phi = field.phi_upper[g][mi];
            if (phi > 0.0) v = std::max(v, std::log(phi));
        }
        field.v_hat[g] = v;
        // strict sublevel test; boundary-equal values up to solver rounding
        // count as outside
        field.inside[g] = v < field.log_r - 1e-12 ? 1 : 0;
    }
    return field;
}

} // namespace spoly
