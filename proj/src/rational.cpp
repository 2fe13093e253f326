#include "spoly/rational.hpp"

#include <cstdlib>
#include <numeric>

namespace spoly {

namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num_ = n;
    den_ = d;
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

namespace {

Rational make_normalized(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    return Rational(checked_narrow(n), checked_narrow(d));
}

} // namespace

Rational operator+(const Rational& a, const Rational& b) {
    return make_normalized(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                           i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return make_normalized(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                           i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return make_normalized(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("rational division by zero");
    return make_normalized(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = text.find('/');
    auto parse_int = [](const std::string& s) {
        if (s.empty()) throw std::invalid_argument("bad rational literal");
        std::size_t pos = 0;
        long long v;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad rational literal: " + s);
        }
        if (pos != s.size()) throw std::invalid_argument("bad rational literal: " + s);
        return static_cast<std::int64_t>(v);
    };
    if (slash == std::string::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    i128 l = i128(a) / std::gcd(a, b) * b;
    if (l < 0) l = -l;
    if (l > i128(INT64_MAX)) throw std::overflow_error("lcm overflow");
    return static_cast<std::int64_t>(l);
}

} // namespace spoly
