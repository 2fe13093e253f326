#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spoly {

// Exact rational over 64-bit integers, normalized (gcd 1, positive
// denominator).  Intermediate products use 128-bit arithmetic; results that
// do not fit back into 64 bits throw std::overflow_error rather than wrap.
// All polytope decisions in the library go through this type, so membership
// of boundary lattice points is decided exactly.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Largest integer <= value / smallest integer >= value.
    std::int64_t floor() const;
    std::int64_t ceil() const;

    Rational operator-() const { return Rational(-num_, den_, already_normalized_tag{}); }
    Rational abs() const { return num_ < 0 ? -*this : *this; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& b) { *this = *this + b; return *this; }
    Rational& operator-=(const Rational& b) { *this = *this - b; return *this; }
    Rational& operator*=(const Rational& b) { *this = *this * b; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Parses "p", "-p" or "p/q".  Throws std::invalid_argument on anything else.
    static Rational parse(const std::string& text);
    // "p" when integral, "p/q" otherwise.
    std::string str() const;

private:
    struct already_normalized_tag {};
    Rational(std::int64_t n, std::int64_t d, already_normalized_tag) : num_(n), den_(d) {}

    std::int64_t num_;
    std::int64_t den_;
};

using RatVec = std::vector<Rational>;

std::int64_t lcm64(std::int64_t a, std::int64_t b);

inline RatVec rat_vec_from_ints(const std::vector<std::int64_t>& v) {
    RatVec r;
    r.reserve(v.size());
    for (auto x : v) r.emplace_back(x);
    return r;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational squared_norm(const RatVec& a) { return dot(a, a); }

} // namespace spoly
