#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dor {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational number. Always kept canonical: gcd(|num|, den) = 1,
/// den > 0, zero is 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {}
    Rational(Integer n) : num_(std::move(n)), den_(1) {}
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_canonical() const;

    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const { return Rational(raw{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        Integer l = a.num_ * b.den_, r = b.num_ * a.den_;
        return l < r ? std::strong_ordering::less
             : l > r ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    Rational inverse() const { return Rational(1) / *this; }

    /// Largest integer <= this.
    Integer floor() const;
    /// Smallest integer >= this.
    Integer ceil() const;

    /// Renders "n" for integers, "n/d" otherwise.
    std::string str() const;

    /// Parses "n" or "n/d" (optionally signed). Throws std::invalid_argument
    /// on malformed input or zero denominator.
    static Rational parse(std::string_view s);

private:
    struct raw {};
    Rational(raw, Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {}
    void reduce();

    Integer num_;
    Integer den_;
};

inline Integer gcd(Integer a, Integer b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    Integer g = gcd(a, b);
    Integer r = (a / g) * b;
    return r < 0 ? -r : r;
}

/// Floor division a / b for integers, b != 0 (rounds toward -inf).
Integer floor_div(const Integer& a, const Integer& b);
/// a mod b with result in [0, |b|).
Integer mod_floor(const Integer& a, const Integer& b);

}  // namespace dor
