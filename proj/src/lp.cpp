#include "spoly/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

namespace spoly {

namespace {
constexpr double kPriceTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr int kRefactorEvery = 128;
} // namespace

void SimplexSolver::load(int rows, std::vector<std::vector<double>> cols,
                         std::vector<double> b, std::vector<double> c) {
    rows_ = rows;
    ncols_ = static_cast<int>(cols.size());
    cols_ = std::move(cols);
    b_ = std::move(b);
    c_ = std::move(c);
    factorized_ = false;
}

const double* SimplexSolver::column(int j, std::vector<double>& scratch) const {
    if (j < ncols_) return cols_[j].data();
    scratch.assign(rows_, 0.0);
    scratch[j - ncols_] = art_sign_[j - ncols_];
    return scratch.data();
}

void SimplexSolver::refactorize() {
    // Rebuild binv_ by Gauss-Jordan on the basis matrix.
    std::vector<double> mat(rows_ * rows_, 0.0);
    std::vector<double> scratch;
    for (int i = 0; i < rows_; ++i) {
        const double* col = column(basis_[i], scratch);
        for (int r = 0; r < rows_; ++r) mat[r * rows_ + i] = col[r];
    }
    binv_.assign(rows_ * rows_, 0.0);
    for (int i = 0; i < rows_; ++i) binv_[i * rows_ + i] = 1.0;
    for (int col = 0; col < rows_; ++col) {
        int piv = col;
        for (int r = col + 1; r < rows_; ++r)
            if (std::abs(mat[r * rows_ + col]) > std::abs(mat[piv * rows_ + col])) piv = r;
        if (piv != col) {
            for (int k = 0; k < rows_; ++k) {
                std::swap(mat[col * rows_ + k], mat[piv * rows_ + k]);
                std::swap(binv_[col * rows_ + k], binv_[piv * rows_ + k]);
            }
        }
        double d = mat[col * rows_ + col];
        if (std::abs(d) < 1e-300) d = d >= 0 ? 1e-300 : -1e-300;
        double inv = 1.0 / d;
        for (int k = 0; k < rows_; ++k) {
            mat[col * rows_ + k] *= inv;
            binv_[col * rows_ + k] *= inv;
        }
        for (int r = 0; r < rows_; ++r) {
            if (r == col) continue;
            double f = mat[r * rows_ + col];
            if (f == 0.0) continue;
            for (int k = 0; k < rows_; ++k) {
                mat[r * rows_ + k] -= f * mat[col * rows_ + k];
                binv_[r * rows_ + k] -= f * binv_[col * rows_ + k];
            }
        }
    }
    // Refresh basic values.
    xb_.assign(rows_, 0.0);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < rows_; ++k) xb_[i] += binv_[i * rows_ + k] * b_[k];
}

void SimplexSolver::pivot(int leave_row, int enter_col) {
    std::vector<double> scratch;
    const double* acol = column(enter_col, scratch);
    // direction d = binv * a
    std::vector<double> d(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int k = 0; k < rows_; ++k) s += binv_[i * rows_ + k] * acol[k];
        d[i] = s;
    }
    double drr = d[leave_row];
    double inv = 1.0 / drr;
    for (int k = 0; k < rows_; ++k) binv_[leave_row * rows_ + k] *= inv;
    xb_[leave_row] *= inv;
    for (int i = 0; i < rows_; ++i) {
        if (i == leave_row) continue;
        double f = d[i];
        if (f == 0.0) continue;
        for (int k = 0; k < rows_; ++k)
            binv_[i * rows_ + k] -= f * binv_[leave_row * rows_ + k];
        xb_[i] -= f * xb_[leave_row];
    }
    basis_[leave_row] = enter_col;
}

std::vector<double> SimplexSolver::multipliers(const std::vector<double>& cost) const {
    std::vector<double> y(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        for (int k = 0; k < rows_; ++k) y[k] += cb * binv_[i * rows_ + k];
    }
    return y;
}

double SimplexSolver::reduced_cost(int j, const std::vector<double>& y,
                                   const std::vector<double>& cost) const {
    double s = cost[j];
    if (j < ncols_) {
        const auto& col = cols_[j];
        for (int k = 0; k < rows_; ++k) s -= y[k] * col[k];
    } else {
        s -= y[j - ncols_] * art_sign_[j - ncols_];
    }
    return s;
}

SimplexSolver::Result SimplexSolver::primal_simplex(const std::vector<double>& cost,
                                                    int max_iter, int& used) {
    Result res;
    int since_refactor = 0;
    const int bland_after = 2 * (ncols_ + rows_);
    std::vector<double> scratch;
    for (int iter = 0; iter < max_iter; ++iter, ++used) {
        std::vector<double> y = multipliers(cost);
        int enter = -1;
        double best = -kPriceTol;
        bool bland = iter > bland_after;
        for (int j = 0; j < ncols_; ++j) {
            double rc = reduced_cost(j, y, cost);
            if (rc < -kPriceTol) {
                if (bland) { enter = j; break; }
                if (rc < best) { best = rc; enter = j; }
            }
        }
        if (enter == -1) {
            res.status = Status::Optimal;
            double obj = 0.0;
            for (int i = 0; i < rows_; ++i) obj += cost[basis_[i]] * xb_[i];
            res.objective = obj;
            res.multipliers = y;
            return res;
        }
        // ratio test
        const double* acol = column(enter, scratch);
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        double best_piv = 0.0;
        for (int i = 0; i < rows_; ++i) {
            double d = 0.0;
            for (int k = 0; k < rows_; ++k) d += binv_[i * rows_ + k] * acol[k];
            if (d <= kPivotTol) continue;
            double ratio = xb_[i] / d;
            bool take = false;
            if (leave == -1 || ratio < best_ratio - 1e-12) {
                take = true;
            } else if (ratio <= best_ratio + 1e-12) {
                take = bland ? basis_[i] < basis_[leave] : std::abs(d) > best_piv;
            }
            if (take) {
                best_ratio = std::min(ratio, best_ratio);
                best_piv = std::abs(d);
                leave = i;
            }
        }
        if (leave == -1) {
            res.status = Status::Unbounded;
            return res;
        }
        pivot(leave, enter);
        if (++since_refactor >= kRefactorEvery) {
            refactorize();
            since_refactor = 0;
        }
    }
    res.status = Status::IterationLimit;
    return res;
}

SimplexSolver::Result SimplexSolver::solve(int max_iter) {
    // Phase 1: artificial basis with signs matching b.
    basis_.resize(rows_);
    art_sign_.assign(rows_, 1.0);
    for (int i = 0; i < rows_; ++i) {
        basis_[i] = ncols_ + i;
        art_sign_[i] = b_[i] >= 0.0 ? 1.0 : -1.0;
    }
    refactorize();
    factorized_ = true;

    std::vector<double> phase1_cost(ncols_ + rows_, 0.0);
    for (int i = 0; i < rows_; ++i) phase1_cost[ncols_ + i] = 1.0;

    int used = 0;
    Result r1 = primal_simplex(phase1_cost, max_iter, used);
    if (r1.status == Status::IterationLimit) return r1;
    if (r1.status != Status::Optimal) return r1;
    double scale = 1.0;
    for (double v : b_) scale = std::max(scale, std::abs(v));
    if (r1.objective > 1e-7 * scale) {
        Result res;
        res.status = Status::Infeasible;
        res.iterations = used;
        return res;
    }

    // Drive basic artificials out.  A row where no structural column can
    // replace the artificial is linearly dependent: the equality system does
    // not pin the multipliers, which for the polygonal formulations means the
    // samples fail to separate the polynomial space.
    std::vector<double> scratch;
    for (int i = 0; i < rows_; ++i) {
        if (basis_[i] < ncols_) continue;
        for (int j = 0; j < ncols_; ++j) {
            bool already = false;
            for (int r = 0; r < rows_; ++r)
                if (basis_[r] == j) { already = true; break; }
            if (already) continue;
            const double* acol = column(j, scratch);
            double d = 0.0;
            for (int k = 0; k < rows_; ++k) d += binv_[i * rows_ + k] * acol[k];
            if (std::abs(d) > 1e-8) {
                pivot(i, j);
                break;
            }
        }
    }
    for (int i = 0; i < rows_; ++i) {
        if (basis_[i] >= ncols_) {
            Result res;
            res.status = Status::Infeasible;
            res.iterations = used;
            return res;
        }
    }

    std::vector<double> phase2_cost(ncols_ + rows_, 0.0);
    for (int j = 0; j < ncols_; ++j) phase2_cost[j] = c_[j];

    Result r2 = primal_simplex(phase2_cost, max_iter, used);
    r2.iterations = used;
    return r2;
}

SimplexSolver::Result SimplexSolver::resolve_with_rhs(const std::vector<double>& b,
                                                      int max_iter) {
    if (!factorized_) {
        b_ = b;
        return solve();
    }
    b_ = b;
    // New basic values under the retained basis.
    xb_.assign(rows_, 0.0);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < rows_; ++k) xb_[i] += binv_[i * rows_ + k] * b_[k];

    std::vector<double> cost(ncols_ + rows_, 0.0);
    for (int j = 0; j < ncols_; ++j) cost[j] = c_[j];

    std::vector<double> scratch;
    int used = 0;
    for (int iter = 0; iter < max_iter; ++iter, ++used) {
        // Find the most infeasible basic variable.
        int leave = -1;
        double worst = -kFeasTol;
        for (int i = 0; i < rows_; ++i) {
            if (xb_[i] < worst) {
                worst = xb_[i];
                leave = i;
            }
        }
        if (leave == -1) {
            Result res;
            res.status = Status::Optimal;
            double obj = 0.0;
            for (int i = 0; i < rows_; ++i) obj += cost[basis_[i]] * xb_[i];
            res.objective = obj;
            res.multipliers = multipliers(cost);
            res.iterations = used;
            return res;
        }
        // Dual ratio test along the leaving row.
        std::vector<double> y = multipliers(cost);
        int enter = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int j = 0; j < ncols_; ++j) {
            bool basic = false;
            for (int r = 0; r < rows_; ++r)
                if (basis_[r] == j) { basic = true; break; }
            if (basic) continue;
            const auto& col = cols_[j];
            double alpha = 0.0;
            for (int k = 0; k < rows_; ++k) alpha += binv_[leave * rows_ + k] * col[k];
            if (alpha < -kPivotTol) {
                double rc = reduced_cost(j, y, cost);
                double ratio = rc / (-alpha);
                if (ratio < best_ratio) {
                    best_ratio = ratio;
                    enter = j;
                }
            }
        }
        if (enter == -1) {
            Result res;
            res.status = Status::Infeasible;
            res.iterations = used;
            return res;
        }
        pivot(leave, enter);
        if ((iter + 1) % kRefactorEvery == 0) refactorize();
    }
    // Stalled: cold restart.
    return solve();
}

double SimplexSolver::primal_value(int j) const {
    for (int i = 0; i < rows_; ++i)
        if (basis_[i] == j) return xb_[i];
    return 0.0;
}

// ---------------------------------------------------------------------------
// PolygonalLp
// ---------------------------------------------------------------------------

PolygonalLp::PolygonalLp(std::vector<std::vector<double>> g_rows, std::vector<double> h,
                         std::vector<double> c0) {
    nvars_ = c0.size();
    const std::size_t m = g_rows.size();
    // Standard form: columns of G^T are the rows of G.
    std::vector<std::vector<double>> cols(m);
    for (std::size_t i = 0; i < m; ++i) cols[i] = std::move(g_rows[i]);
    solver_.load(static_cast<int>(nvars_), std::move(cols), std::move(c0), std::move(h));
}

std::optional<PolygonalLpResult> PolygonalLp::finish(SimplexSolver::Result r) {
    if (r.status == SimplexSolver::Status::Infeasible)
        return std::nullopt; // original problem unbounded
    if (r.status != SimplexSolver::Status::Optimal)
        throw IterationLimitError("simplex iteration limit reached");
    PolygonalLpResult out;
    out.objective = r.objective;
    out.u = std::move(r.multipliers);
    out.iterations = r.iterations;
    return out;
}

std::optional<PolygonalLpResult> PolygonalLp::solve() {
    solved_once_ = true;
    return finish(solver_.solve());
}

std::optional<PolygonalLpResult> PolygonalLp::resolve_objective(const std::vector<double>& c0) {
    solved_once_ = true;
    return finish(solver_.resolve_with_rhs(c0)); // cold-solves when no basis yet
}

} // namespace spoly
