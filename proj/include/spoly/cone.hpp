#pragma once

#include <vector>

#include "spoly/exponent_set.hpp"

namespace spoly {

// Closed convex cone of directions for support-function hulls.  Membership
// is positively homogeneous by construction of each variant.
class Cone {
public:
    enum class Kind { FullSpace, OrthantComplement, HalfspaceIntersection, IceCream };

    static Cone full_space();
    // (R^n minus the closed negative orthant) together with the origin.
    static Cone orthant_complement();
    static Cone halfspace_intersection(std::vector<Vec> normals);
    // {xi : <1, xi> >= -gap/2 * |xi|}; always contains the diagonal ray.
    static Cone ice_cream(double gap);

    Kind kind() const { return kind_; }
    double gap() const { return gap_; }
    const std::vector<Vec>& normals() const { return normals_; }

    bool contains(const Vec& xi) const;

private:
    Cone() = default;

    Kind kind_ = Kind::FullSpace;
    double gap_ = 0.0;
    std::vector<Vec> normals_;
};

// Decision for x in the hull of S with respect to a cone of directions:
// x >= 0 and <x, xi> <= phi_S(xi) for every xi in the cone.
struct HullMembershipResult {
    bool member = false;
    // max over scanned unit directions xi in the cone of <x, xi> - phi_S(xi);
    // nonpositive (within tolerance) means member.
    double margin = 0.0;
    Vec witness;           // direction attaining the margin
    bool heuristic = false; // true when n >= 3 (sampled directions only)
};

struct HullOptions {
    int grid = 4096;         // angular resolution for n = 2
    double tolerance = 1e-9; // declared margin tolerance
    int sample_count = 100000; // quasi-random directions for n >= 3
};

HullMembershipResult cone_hull_membership(const ExponentSet& S, const Cone& gamma,
                                          const Vec& x, const HullOptions& opts = {});

} // namespace spoly
