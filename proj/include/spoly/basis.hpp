#pragma once

#include "spoly/polynomial.hpp"
#include "spoly/sample_set.hpp"

namespace spoly {

struct DegenerateSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Monomial values over a sample set, one row per point, one column per
// exponent of mS.  Optionally orthonormalized by modified Gram-Schmidt under
// the unweighted sample inner product; the triangular factor is retained so
// solver output maps back to monomial coefficients.
struct SampleBasis {
    LatticeSet exponents;
    std::vector<CVec> rows; // rows[k][i] = value of basis column i at point k
    bool orthogonalized = false;
    std::vector<CVec> r_factor; // upper triangular, original = Q * R
    bool underdetermined = false; // fewer samples than columns
};

SampleBasis build_basis(const ExponentSet& S, std::int64_t m,
                        const WeightedSampleSet& samples, bool orthogonalize);
SampleBasis build_basis_from_exponents(LatticeSet exponents,
                                       const WeightedSampleSet& samples,
                                       bool orthogonalize);

// Maps coefficients in the (possibly orthogonalized) basis back to monomial
// coefficients, ordered like exponents.
std::vector<Complex> to_monomial_coefficients(const SampleBasis& basis,
                                              std::vector<Complex> coeffs);

} // namespace spoly
