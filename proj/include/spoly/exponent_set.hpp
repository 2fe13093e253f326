#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spoly/rational.hpp"

namespace spoly {

using Complex = std::complex<double>;
using Vec = std::vector<double>;
using CVec = std::vector<Complex>;
using IVec = std::vector<std::int64_t>;

// Requested an exact (tol = 0) decision on a set variant that only supports
// tolerance-based answers.
struct UnsupportedExactnessError : std::logic_error {
    using std::logic_error::logic_error;
};

// A compact convex subset S of the nonnegative orthant with 0 in S.  Three
// variants: a polytope with rational vertices, the quarter disc
// {x >= 0, |x| <= r}, and the hypograph of f(t) = 1 - exp(-c t^-b + c) on
// [0,1]^2 (requires c > 1 + 1/b for concavity).
class ExponentSet {
public:
    enum class Kind { Polytope, QuarterDisc, Hypograph };

    static ExponentSet polytope(std::vector<RatVec> vertices);
    static ExponentSet standard_simplex(int n);
    static ExponentSet quarter_disc(const Rational& radius);
    static ExponentSet hypograph(double b, double c);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    // Generating points as given (validated); polytope only.
    const std::vector<RatVec>& vertices() const { return vertices_; }
    // Extremal points of the polytope.  For n = 2 these are in counter-
    // clockwise hull order starting from the lexicographic minimum.
    const std::vector<RatVec>& extremal_points() const { return extremal_; }

    const Rational& radius() const { return radius_; }
    double hypo_b() const { return hypo_b_; }
    double hypo_c() const { return hypo_c_; }

    // Boundary function of the hypograph variant and its derivative.
    double hypo_f(double t) const;
    double hypo_fprime(double t) const;

    // max over S of the largest coordinate; edge of the bounding box.
    Rational max_coordinate() const;

private:
    ExponentSet() = default;

    Kind kind_ = Kind::Polytope;
    int dim_ = 0;
    std::vector<RatVec> vertices_;
    std::vector<RatVec> extremal_;
    Rational radius_;
    double hypo_b_ = 0.0;
    double hypo_c_ = 0.0;
};

struct MembershipResult {
    bool inside = false;
    // Signed distance to the boundary of mS: positive depth when inside,
    // negative distance to the set when outside.  Absent where no certified
    // value is computed (polytopes with n >= 3).
    std::optional<double> margin;
    bool exact = true; // false when the decision itself carries a tolerance
};

// sup over s in S of <s, xi>.
double support_function(const ExponentSet& S, const Vec& xi);
// Exact value for polytopes with rational directions.
Rational support_function_exact(const ExponentSet& S, const RatVec& xi);

// Logarithmic support H_S(z) = phi_S(log|z_1|, ..., log|z_n|), extended to
// coordinate hyperplanes through the support function of the corresponding
// face of S.
double log_support(const ExponentSet& S, const CVec& z);

// Decides x/m in S.  tol = 0 is exact and only available for the polytope
// and quarter-disc variants; the hypograph requires tol > 0 and throws
// UnsupportedExactnessError otherwise.  Positive tol widens the set by tol,
// negative tol shrinks it (used to keep near-boundary lattice points among
// gap candidates).
MembershipResult membership(const ExponentSet& S, const RatVec& x, std::int64_t m,
                            double tol = 0.0);
MembershipResult membership(const ExponentSet& S, const IVec& x, std::int64_t m,
                            double tol = 0.0);

// The integer points of mS, in lexicographic order.
struct LatticeSet {
    std::vector<IVec> exponents;
    std::int64_t m = 0;
};

LatticeSet lattice_points(const ExponentSet& S, std::int64_t m);

// Writes s in mS as t + sum of (m - n) extremal points of S with t in nS,
// by repeatedly peeling an extremal point with Caratheodory weight >= 1.
// Exact in rational arithmetic; reconstruction t + sum(summands) == s.
struct MinkowskiDecomposition {
    RatVec core;                  // t in nS
    std::vector<RatVec> summands; // m - n extremal points
};

MinkowskiDecomposition minkowski_decompose(const ExponentSet& S, const RatVec& s,
                                           std::int64_t m);

// Convex-combination weights of x over the given points (lambda >= 0 summing
// to 1 with sum lambda_j p_j = x), or nullopt when x is outside the hull.
// Exact rational phase-1 simplex; the returned solution is basic, so at most
// dim + 1 weights are positive.
std::optional<RatVec> convex_combination_weights(const std::vector<RatVec>& points,
                                                 const RatVec& x);

} // namespace spoly
