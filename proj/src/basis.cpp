#include "spoly/basis.hpp"

#include <cmath>

namespace spoly {

SampleBasis build_basis_from_exponents(LatticeSet exponents,
                                       const WeightedSampleSet& samples,
                                       bool orthogonalize) {
    SampleBasis basis;
    basis.exponents = std::move(exponents);
    const std::size_t k = samples.points.size();
    const std::size_t d = basis.exponents.exponents.size();
    basis.underdetermined = k < d;
    basis.rows.assign(k, CVec(d));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t i = 0; i < d; ++i)
            basis.rows[r][i] = monomial_value(samples.points[r], basis.exponents.exponents[i]);
    if (!orthogonalize) return basis;

    // Modified Gram-Schmidt on the columns.
    basis.r_factor.assign(d, CVec(d, Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < d; ++i) {
        double orig = 0.0;
        for (std::size_t r = 0; r < k; ++r) orig += std::norm(basis.rows[r][i]);
        orig = std::sqrt(orig);
        for (std::size_t j = 0; j < i; ++j) {
            Complex proj(0.0, 0.0);
            for (std::size_t r = 0; r < k; ++r)
                proj += std::conj(basis.rows[r][j]) * basis.rows[r][i];
            basis.r_factor[j][i] = proj;
            for (std::size_t r = 0; r < k; ++r) basis.rows[r][i] -= proj * basis.rows[r][j];
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < k; ++r) nrm += std::norm(basis.rows[r][i]);
        nrm = std::sqrt(nrm);
        if (nrm <= 1e-12 * (orig > 0.0 ? orig : 1.0))
            throw DegenerateSampleError("samples fail to separate the polynomial space");
        basis.r_factor[i][i] = Complex(nrm, 0.0);
        for (std::size_t r = 0; r < k; ++r) basis.rows[r][i] /= nrm;
    }
    basis.orthogonalized = true;
    return basis;
}

SampleBasis build_basis(const ExponentSet& S, std::int64_t m,
                        const WeightedSampleSet& samples, bool orthogonalize) {
    return build_basis_from_exponents(lattice_points(S, m), samples, orthogonalize);
}

std::vector<Complex> to_monomial_coefficients(const SampleBasis& basis,
                                              std::vector<Complex> coeffs) {
    if (!basis.orthogonalized) return coeffs;
    const std::size_t d = coeffs.size();
    // back substitution: R c_mono = c_orth
    std::vector<Complex> out(d);
    for (std::size_t ii = d; ii-- > 0;) {
        Complex s = coeffs[ii];
        for (std::size_t j = ii + 1; j < d; ++j) s -= basis.r_factor[ii][j] * out[j];
        out[ii] = s / basis.r_factor[ii][ii];
    }
    return out;
}

} // namespace spoly
