#pragma once

#include "spoly/basis.hpp"
#include "spoly/lp.hpp"

namespace spoly {

// Result of one weighted minimax solve over P^S_m on a sampled compact.
// d_sample is the optimum of the discrete problem (for the LP solver the
// relaxed optimum t*, a lower bound for the discrete minimax);
// d_validation is the max weighted residual of the returned polynomial on
// the validation points (the sample points when none are given), an upper
// certificate on the sampled sets.
struct ApproxResult {
    std::int64_t m = 0;
    double d_sample = 0.0;
    double d_validation = 0.0;
    SPolynomial p;
    std::string solver;
    int iterations = 0;
    // LP only: the polygonal sandwich t* <= discrete minimax <= t* sec(pi/J).
    double lp_upper = 0.0;
};

struct LawsonOptions {
    int max_iter = 500;
    double tol = 1e-10;       // successive max-residual change
    double weight_floor = 1e-300;
};

// Lawson iteratively reweighted least squares on the weighted residuals
// (f_k - p(z_k)) e^{-m q_k}.  Points with q = +inf are excluded (their
// weight annihilates the residual).
ApproxResult best_weighted_approx_lawson(const std::vector<Complex>& f_values,
                                         const WeightedSampleSet& samples,
                                         const ExponentSet& S, std::int64_t m,
                                         const LawsonOptions& opts = {},
                                         const std::vector<Complex>& f_validation = {});

// Polygonal relaxation: minimize t over Re(e^{i theta_j}(f_k - p(z_k)))
// e^{-m q_k} <= t for J equispaced directions.
ApproxResult best_weighted_approx_lp(const std::vector<Complex>& f_values,
                                     const WeightedSampleSet& samples,
                                     const ExponentSet& S, std::int64_t m,
                                     int directions = 32,
                                     const std::vector<Complex>& f_validation = {});

// Variants over an explicit exponent set (used by the hull comparison).
ApproxResult best_weighted_approx_lawson_on(const LatticeSet& exponents,
                                            const std::vector<Complex>& f_values,
                                            const WeightedSampleSet& samples,
                                            const ExponentSet& S,
                                            const LawsonOptions& opts = {},
                                            const std::vector<Complex>& f_validation = {});
ApproxResult best_weighted_approx_lp_on(const LatticeSet& exponents,
                                        const std::vector<Complex>& f_values,
                                        const WeightedSampleSet& samples,
                                        const ExponentSet& S, int directions = 32,
                                        const std::vector<Complex>& f_validation = {});

struct DecayRate {
    std::vector<double> roots; // d_m^(1/m), ordered by m
    double fitted_rate = 0.0;  // exp of the LS slope of log d_m over the trailing half
    bool degenerate = false;   // some d_m was zero
};

DecayRate decay_rate(std::vector<ApproxResult> results);

struct HullComparison {
    double d_S = 0.0;
    double d_hull = 0.0;
    LatticeSet hull_exponents;
    double gap = 0.0; // d_m used for the ice-cream cone
    bool heuristic = false;
};

// Approximation numbers over P^S_m and over the larger hull space whose
// exponents pass the cone-hull filter with Gamma_m built from the lattice
// gap.  d_hull <= d_S always since the hull contains S.
HullComparison hull_approx_comparison(const std::vector<Complex>& f_values,
                                      const WeightedSampleSet& samples,
                                      const ExponentSet& S, std::int64_t m,
                                      int directions = 32,
                                      const std::vector<Complex>& f_validation = {});

} // namespace spoly
