#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace spoly {

struct IterationLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense two-phase revised simplex for standard-form problems
//
//   minimize c.x  subject to  A x = b,  x >= 0
//
// with a small row count and possibly many columns.  The basis inverse is
// kept explicitly and refactorized periodically.  After a solve, the basis
// can be reused for a new right-hand side: if the warm basic point stays
// feasible the answer is immediate (reduced costs do not depend on b),
// otherwise dual simplex steps restore feasibility.
class SimplexSolver {
public:
    enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

    struct Result {
        Status status = Status::IterationLimit;
        double objective = 0.0;
        // Simplex multipliers y at optimality; they solve the dual problem
        // max b.y subject to A^T y <= c.
        std::vector<double> multipliers;
        int iterations = 0;
    };

    // Columns are column-major: cols[j] has `rows` entries.
    void load(int rows, std::vector<std::vector<double>> cols, std::vector<double> b,
              std::vector<double> c);

    Result solve(int max_iter = 200000);
    // Re-solve with a new right-hand side, reusing the optimal basis of the
    // previous solve.  Falls back to a cold solve on an iteration stall.
    Result resolve_with_rhs(const std::vector<double>& b, int max_iter = 50000);

    bool has_basis() const { return factorized_; }
    // Value of structural variable j in the current optimal basic solution.
    double primal_value(int j) const;

private:
    int rows_ = 0;
    int ncols_ = 0;
    std::vector<std::vector<double>> cols_;
    std::vector<double> b_;
    std::vector<double> c_;

    std::vector<int> basis_;            // column index per row; >= ncols_ = artificial
    std::vector<double> binv_;          // rows_ x rows_ row-major
    std::vector<double> xb_;            // current basic values
    std::vector<double> art_sign_;      // artificial column signs from the cold solve
    bool factorized_ = false;

    const double* column(int j, std::vector<double>& scratch) const;
    void refactorize();
    void pivot(int leave_row, int enter_col);
    std::vector<double> multipliers(const std::vector<double>& cost) const;
    double reduced_cost(int j, const std::vector<double>& y,
                        const std::vector<double>& cost) const;
    Result primal_simplex(const std::vector<double>& cost, int max_iter, int& used);
};

// ---------------------------------------------------------------------------
// Polygonal (directions) formulations shared by the approximation and Siciak
// solvers.  Both problems have the shape  max c0.u  s.t.  G u <= h  with few
// variables and many constraints; they are solved through the standard-form
// equivalent  min h.lam  s.t.  G^T lam = c0, lam >= 0, whose multipliers are
// the original variables.
// ---------------------------------------------------------------------------

struct PolygonalLpResult {
    double objective = 0.0;         // optimum of max c0.u
    std::vector<double> u;          // optimizer
    int iterations = 0;
};

class PolygonalLp {
public:
    // G given row-wise; h per row; c0 over the u variables.
    PolygonalLp(std::vector<std::vector<double>> g_rows, std::vector<double> h,
                std::vector<double> c0);

    // Throws IterationLimitError on stall; returns nullopt when the problem
    // is unbounded (the standard form is infeasible).
    std::optional<PolygonalLpResult> solve();
    // Re-solve after replacing the objective c0, warm-starting from the
    // previous basis.
    std::optional<PolygonalLpResult> resolve_objective(const std::vector<double>& c0);

private:
    std::size_t nvars_ = 0;
    SimplexSolver solver_;
    bool solved_once_ = false;

    std::optional<PolygonalLpResult> finish(SimplexSolver::Result r);
};

} // namespace spoly
