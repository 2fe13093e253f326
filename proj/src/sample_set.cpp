#include "spoly/sample_set.hpp"

#include <cmath>

namespace spoly {

WeightedSampleSet circle_samples(int count) {
    if (count < 1) throw std::invalid_argument("sample count must be positive");
    WeightedSampleSet s;
    s.label = "circle(" + std::to_string(count) + ")";
    for (int k = 0; k < count; ++k) {
        double th = 2.0 * M_PI * k / count;
        s.points.push_back(CVec{Complex(std::cos(th), std::sin(th))});
    }
    s.weights.assign(s.points.size(), 0.0);
    return s;
}

WeightedSampleSet torus_samples(int count1, int count2) {
    if (count1 < 1 || count2 < 1) throw std::invalid_argument("sample count must be positive");
    WeightedSampleSet s;
    s.label = "torus(" + std::to_string(count1) + "," + std::to_string(count2) + ")";
    for (int k1 = 0; k1 < count1; ++k1)
        for (int k2 = 0; k2 < count2; ++k2) {
            double a = 2.0 * M_PI * k1 / count1;
            double b = 2.0 * M_PI * k2 / count2;
            s.points.push_back(CVec{Complex(std::cos(a), std::sin(a)),
                                    Complex(std::cos(b), std::sin(b))});
        }
    s.weights.assign(s.points.size(), 0.0);
    return s;
}

WeightedSampleSet segment_samples(int count) {
    if (count < 2) throw std::invalid_argument("segment needs at least two points");
    WeightedSampleSet s;
    s.label = "segment(" + std::to_string(count) + ")";
    for (int k = 0; k < count; ++k) {
        double x = -1.0 + 2.0 * k / (count - 1);
        s.points.push_back(CVec{Complex(x, 0.0)});
    }
    s.weights.assign(s.points.size(), 0.0);
    return s;
}

WeightedSampleSet disc_grid_samples(double step) {
    if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("disc grid step must be in (0, 1]");
    WeightedSampleSet s;
    s.label = "disc-grid(" + std::to_string(step) + ")";
    int n = static_cast<int>(std::floor(1.0 / step));
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) {
            double x = i * step, y = j * step;
            if (x * x + y * y <= 1.0 + 1e-12)
                s.points.push_back(CVec{Complex(x, y)});
        }
    s.weights.assign(s.points.size(), 0.0);
    return s;
}

void set_constant_weight(WeightedSampleSet& s, double c) {
    for (auto& w : s.weights) w = c;
    for (auto& w : s.validation_weights) w = c;
}

void set_radial_weight(WeightedSampleSet& s, double alpha) {
    auto radial = [alpha](const CVec& z) {
        double r2 = 0.0;
        for (const auto& c : z) r2 += std::norm(c);
        return alpha * r2;
    };
    for (std::size_t k = 0; k < s.points.size(); ++k) s.weights[k] = radial(s.points[k]);
    s.validation_weights.resize(s.validation_points.size());
    for (std::size_t k = 0; k < s.validation_points.size(); ++k)
        s.validation_weights[k] = radial(s.validation_points[k]);
}

WeightReport validate_weight(const WeightedSampleSet& samples, std::size_t required_dim) {
    if (samples.points.size() != samples.weights.size())
        throw std::invalid_argument("weights and points differ in length");
    WeightReport rep;
    for (double w : samples.weights)
        if (std::isfinite(w)) ++rep.finite_count;
    if (rep.finite_count == 0)
        throw InadmissibleWeightError("all weights are infinite; the weighted norm is void");
    rep.admissible = true;
    if (required_dim > 0 && rep.finite_count < required_dim)
        rep.warnings.push_back("degenerate: only " + std::to_string(rep.finite_count) +
                               " finite-weight samples for a space of dimension " +
                               std::to_string(required_dim));
    return rep;
}

} // namespace spoly
