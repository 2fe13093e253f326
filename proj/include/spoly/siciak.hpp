#pragma once

#include "spoly/approx.hpp"

namespace spoly {

// One evaluation of the Siciak function proxy at z.  The LP maximizes
// Re p(z) over the polygonal relaxation of |p(z_k)| <= e^{m q_k}; with
// opt the LP optimum,
//   value = (opt / sec(pi/J))^{1/m}   is attained by the feasible rescaled
//                                     optimizer, hence a certified value of
//                                     the discrete problem, and
//   upper = opt^{1/m}                 bounds the discrete optimum above.
struct SiciakPhiResult {
    double value = 0.0;
    double upper = 0.0;
    double opt = 0.0; // raw LP optimum, m-th power scale
    int directions = 32;
    int iterations = 0;
    // Optimizer in the monomial basis, ordered like lattice_points(S, m);
    // coefficient sums certify per-instance growth bounds.
    std::vector<Complex> coefficients;
};

SiciakPhiResult siciak_phi(const ExponentSet& S, const WeightedSampleSet& samples,
                           std::int64_t m, const CVec& z, int directions = 32);

// max over m in m_list of (1/m) log Phi-hat(z; m): a finite-window proxy for
// the extremal function.  `value` uses the upper evaluations, `lower` the
// certified ones; both are finite-m lower envelopes of the polynomial proxy.
// density_caveat records that equality with the extremal function is
// conditional on S ∩ Q^n being dense in S (it holds for all three variants).
struct VApproxResult {
    double value = 0.0;
    double lower = 0.0;
    bool density_caveat = false;
};

VApproxResult v_approx(const ExponentSet& S, const WeightedSampleSet& samples,
                       const std::vector<std::int64_t>& m_list, const CVec& z,
                       int directions = 32);

// Per-grid-point classification of the sublevel set {v_hat < log R}.  Since
// v_hat is a finite-m lower envelope, the classified inside region is an
// outer approximation of the true sublevel set.
struct SiciakField {
    std::vector<CVec> grid;
    std::vector<std::int64_t> m_list;
    std::vector<std::vector<double>> phi_upper; // per point, per m
    std::vector<double> v_hat;
    std::vector<char> inside;
    double log_r = 0.0;
};

SiciakField sublevel_classify(const ExponentSet& S, const WeightedSampleSet& samples,
                              const std::vector<std::int64_t>& m_list,
                              const std::vector<CVec>& grid, double R,
                              int directions = 32, int threads = 1);

} // namespace spoly
