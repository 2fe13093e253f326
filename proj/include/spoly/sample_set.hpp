#pragma once

#include <string>
#include <vector>

#include "spoly/exponent_set.hpp"

namespace spoly {

struct InadmissibleWeightError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Discretized compact K with pointwise weight values q(z_k).  Weights may be
// +infinity; such points carry zero weight e^{-mq} in every objective.
// Lower semicontinuity of q is the provider's responsibility.
struct WeightedSampleSet {
    std::vector<CVec> points;
    std::vector<double> weights;
    std::vector<CVec> validation_points;
    std::vector<double> validation_weights;
    std::string label;

    int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
    std::size_t size() const { return points.size(); }
};

// Built-in compact sets; all weights start at zero.
WeightedSampleSet circle_samples(int count);                 // unit circle, n = 1
WeightedSampleSet torus_samples(int count1, int count2);     // product of circles, n = 2
WeightedSampleSet segment_samples(int count);                // [-1, 1], n = 1
WeightedSampleSet disc_grid_samples(double step);            // filled unit disc, n = 1

void set_constant_weight(WeightedSampleSet& s, double c);
void set_radial_weight(WeightedSampleSet& s, double alpha); // q(z) = alpha |z|^2

struct WeightReport {
    bool admissible = false;
    std::size_t finite_count = 0;
    std::vector<std::string> warnings;
};

// Checks admissibility at sample scale: at least one finite weight (throws
// InadmissibleWeightError when all are infinite), and when required_dim > 0,
// warns if the finite-weight subset cannot separate a space of that
// dimension.
WeightReport validate_weight(const WeightedSampleSet& samples, std::size_t required_dim = 0);

} // namespace spoly
