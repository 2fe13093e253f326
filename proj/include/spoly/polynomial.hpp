#pragma once

#include <complex>
#include <cstdint>
#include <map>

#include "spoly/exponent_set.hpp"

namespace spoly {

// Sparse polynomial with exponent support in mS: coefficients keyed by the
// integer exponent tuple.  Inserting an exponent outside mS throws; the zero
// polynomial (no terms) is valid for every m.
class SPolynomial {
public:
    SPolynomial(ExponentSet source, std::int64_t m);

    const ExponentSet& source() const { return source_; }
    std::int64_t degree_index() const { return m_; }
    const std::map<IVec, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Validates alpha against mS; a zero coefficient removes the term.
    void set_term(const IVec& alpha, Complex a);
    Complex coefficient(const IVec& alpha) const;

    // sum of |a_alpha|
    double coefficient_norm() const;

    // Skips support validation; for diagnostics and negative tests only.
    static SPolynomial unchecked(ExponentSet source, std::int64_t m,
                                 std::map<IVec, Complex> terms);

private:
    ExponentSet source_;
    std::int64_t m_;
    std::map<IVec, Complex> terms_;
};

// Monomial powers by repeated squaring, then the finite sum.
Complex evaluate(const SPolynomial& p, const CVec& z);

Complex monomial_value(const CVec& z, const IVec& alpha);

// Product lands in (m1 + m2) S; insertion re-validates every exponent.
SPolynomial multiply(const SPolynomial& a, const SPolynomial& b);

// Samples random points with large modulus and checks the growth bound
// log|p(z)| <= C + m H_S(z) with the certified constant C = log sum|a_alpha|.
bool growth_check(const SPolynomial& p, int trials, std::uint64_t seed = 2024);

} // namespace spoly
