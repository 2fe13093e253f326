#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spoly/exponent_set.hpp"

namespace spoly {

// Euclidean distance from the integer point alpha to mS.  Exact feature
// selection for polytopes (n <= 2) and the quarter disc; bisection at
// absolute tolerance ~1e-10 for the hypograph; Frank-Wolfe over the vertex
// hull for polytopes with n >= 3.
double point_set_distance(const ExponentSet& S, std::int64_t m, const IVec& alpha);

struct GapResult {
    double distance = 0.0;
    // All lattice points attaining the minimum (exactly for the polytope and
    // quarter-disc variants, within 1e-12 for the hypograph).
    std::vector<IVec> minimizers;
};

// d(mS, N^n \ mS): minimum distance from mS to the exterior integer points.
GapResult gap_distance_full(const ExponentSet& S, std::int64_t m);
double gap_distance(const ExponentSet& S, std::int64_t m);

struct DeltaResult {
    double delta = 0.0;
    std::int64_t common_denominator = 1;
};

// The uniform polytope lower bound: q is the least common denominator of the
// vertex coordinates and delta = d(S, (1/(nq)) Z^n \ S).
DeltaResult polytope_delta(const ExponentSet& S);

// Closed form for the unit quarter disc: sqrt(m^2+1) - m, evaluated through
// the stable reciprocal 1 / (sqrt(m^2+1) + m).
double disc_gap_exact(std::int64_t m);

// Hypograph upper bound m (1 - f(1/m)) = m exp(c (1 - m^b)).
double hypograph_gap_bound(double b, double c, std::int64_t m);

// (1 - f(1/m))^(1/m) = exp(c (1 - m^b) / m); tends to 0 / e^-c / 1 for
// b > 1 / b = 1 / b < 1.
double hypograph_classification_root(double b, double c, std::int64_t m);

struct GapRow {
    std::int64_t m = 0;
    double d_m = 0.0;
    double root = 0.0; // d_m^(1/m)
    std::vector<IVec> minimizers;
};

struct GapReport {
    std::vector<GapRow> rows;
    // min of root over the upper half of the window [ceil(m_max/2), m_max];
    // a finite-window stand-in for the liminf.
    double a_estimate = 0.0;
    std::optional<double> delta;                    // polytopes
    std::optional<std::int64_t> common_denominator; // polytopes
    std::vector<std::pair<std::int64_t, double>> bound_rows; // hypograph
};

GapReport gap_rate_report(const ExponentSet& S, std::int64_t m_max, int threads = 1);

} // namespace spoly
