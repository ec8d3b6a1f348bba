#pragma once

#include "dor/rational.hpp"

#include <string>
#include <vector>

namespace dor {

/// Univariate polynomial over the rationals, dense coefficient vector
/// indexed by degree. Trailing zero coefficients are always trimmed; the
/// zero polynomial has an empty coefficient vector and degree -1.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RatPoly constant(Rational c);
    /// The monomial c * t^k.
    static RatPoly monomial(Rational c, size_t k);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& lead() const;

    RatPoly operator-() const;
    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    RatPoly operator*(const Rational& s) const;
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

    Rational eval(const Rational& x) const;
    RatPoly derivative() const;
    /// Divides the leading coefficient out; zero polynomial stays zero.
    RatPoly monic() const;
    /// Scales by the lcm of coefficient denominators over the gcd of
    /// numerators; result has coprime integer coefficients, positive lead.
    RatPoly primitive_integer() const;

    /// Euclidean division: returns (quotient, remainder), b nonzero.
    static std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
    /// Monic gcd via the Euclidean algorithm.
    static RatPoly gcd(const RatPoly& a, const RatPoly& b);
    /// p / gcd(p, p'), monic.
    RatPoly squarefree_part() const;

    /// Composition this(g).
    RatPoly compose(const RatPoly& g) const;

    /// 1 + max |c_i| / |c_lead|; every real root lies in (-B, B).
    Rational cauchy_bound() const;

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;
};

}  // namespace dor
