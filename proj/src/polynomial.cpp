#include "spoly/polynomial.hpp"

#include <cmath>
#include <random>

namespace spoly {

namespace {
constexpr double kSupportTol = 1e-12;
}

SPolynomial::SPolynomial(ExponentSet source, std::int64_t m)
    : source_(std::move(source)), m_(m) {
    if (m < 0) throw std::invalid_argument("degree index must be nonnegative");
}

void SPolynomial::set_term(const IVec& alpha, Complex a) {
    if (static_cast<int>(alpha.size()) != source_.dim())
        throw std::invalid_argument("exponent dimension mismatch");
    for (auto v : alpha)
        if (v < 0) throw std::domain_error("negative exponent");
    double tol = source_.kind() == ExponentSet::Kind::Hypograph ? kSupportTol : 0.0;
    if (!membership(source_, alpha, m_, tol).inside)
        throw std::domain_error("exponent outside mS");
    if (a == Complex(0.0, 0.0))
        terms_.erase(alpha);
    else
        terms_[alpha] = a;
}

Complex SPolynomial::coefficient(const IVec& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

double SPolynomial::coefficient_norm() const {
    double s = 0.0;
    for (const auto& [alpha, a] : terms_) s += std::abs(a);
    return s;
}

SPolynomial SPolynomial::unchecked(ExponentSet source, std::int64_t m,
                                   std::map<IVec, Complex> terms) {
    SPolynomial p(std::move(source), m);
    p.terms_ = std::move(terms);
    return p;
}

Complex monomial_value(const CVec& z, const IVec& alpha) {
    Complex out(1.0, 0.0);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        std::int64_t e = alpha[j];
        Complex base = z[j];
        while (e > 0) {
            if (e & 1) out *= base;
            base *= base;
            e >>= 1;
        }
    }
    return out;
}

Complex evaluate(const SPolynomial& p, const CVec& z) {
    if (static_cast<int>(z.size()) != p.source().dim())
        throw std::invalid_argument("point dimension mismatch");
    Complex s(0.0, 0.0);
    for (const auto& [alpha, a] : p.terms()) s += a * monomial_value(z, alpha);
    return s;
}

SPolynomial multiply(const SPolynomial& a, const SPolynomial& b) {
    SPolynomial out(a.source(), a.degree_index() + b.degree_index());
    std::map<IVec, Complex> acc;
    for (const auto& [ae, ac] : a.terms())
        for (const auto& [be, bc] : b.terms()) {
            IVec e(ae.size());
            for (std::size_t j = 0; j < e.size(); ++j) e[j] = ae[j] + be[j];
            acc[e] += ac * bc;
        }
    for (const auto& [e, c] : acc) out.set_term(e, c);
    return out;
}

bool growth_check(const SPolynomial& p, int trials, std::uint64_t seed) {
    if (p.is_zero()) return true;
    const double c_p = std::log(p.coefficient_norm());
    const double m = static_cast<double>(p.degree_index());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    // log-moduli spread over both large and small values so separating
    // directions with mixed signs are reachable
    std::uniform_real_distribution<double> logr(-12.0, 12.0);
    const int n = p.source().dim();
    for (int t = 0; t < trials; ++t) {
        CVec z(n);
        for (int j = 0; j < n; ++j) {
            double r = std::exp(logr(rng));
            double ph = phase(rng);
            z[j] = Complex(r * std::cos(ph), r * std::sin(ph));
        }
        double lhs = std::log(std::abs(evaluate(p, z)));
        double rhs = c_p + m * log_support(p.source(), z);
        if (lhs > rhs + 1e-9) return false;
    }
    return true;
}

} // namespace spoly
