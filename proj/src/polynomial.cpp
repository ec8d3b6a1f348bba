#include "dor/polynomial.hpp"

#include <stdexcept>

namespace dor {

void RatPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RatPoly RatPoly::constant(Rational c) {
    RatPoly p;
    if (!c.is_zero()) p.c_.push_back(std::move(c));
    return p;
}

RatPoly RatPoly::monomial(Rational c, size_t k) {
    RatPoly p;
    if (!c.is_zero()) {
        p.c_.assign(k + 1, Rational(0));
        p.c_[k] = std::move(c);
    }
    return p;
}

const Rational& RatPoly::lead() const {
    if (c_.empty()) throw std::domain_error("RatPoly: zero polynomial has no leading coefficient");
    return c_.back();
}

RatPoly RatPoly::operator-() const {
    RatPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.trim();
    return r;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    RatPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
}

RatPoly RatPoly::operator*(const Rational& s) const {
    RatPoly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
}

Rational RatPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPoly RatPoly::derivative() const {
    RatPoly r;
    for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * Rational(Integer(i)));
    r.trim();
    return r;
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return {};
    return *this * lead().inverse();
}

RatPoly RatPoly::primitive_integer() const {
    if (is_zero()) return {};
    Integer den_lcm(1), num_gcd(0);
    for (const auto& c : c_) den_lcm = lcm(den_lcm, c.den());
    for (const auto& c : c_) num_gcd = dor::gcd(num_gcd, Integer(c.num() * (den_lcm / c.den())));
    Rational scale(den_lcm, num_gcd);
    if (lead().sign() < 0) scale = -scale;
    return *this * scale;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::domain_error("RatPoly: division by zero polynomial");
    RatPoly q, r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        size_t k = static_cast<size_t>(r.degree() - b.degree());
        Rational f = r.lead() / b.lead();
        RatPoly t = monomial(f, k);
        q = q + t;
        r = r - t * b;
    }
    return {q, r};
}

RatPoly RatPoly::gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly u = a, v = b;
    while (!v.is_zero()) {
        RatPoly r = divmod(u, v).second;
        u = std::move(v);
        v = std::move(r);
    }
    return u.monic();
}

RatPoly RatPoly::squarefree_part() const {
    if (is_zero()) return {};
    if (degree() == 0) return constant(Rational(1));
    RatPoly g = gcd(*this, derivative());
    return divmod(*this, g).first.monic();
}

RatPoly RatPoly::compose(const RatPoly& g) const {
    RatPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
    return acc;
}

Rational RatPoly::cauchy_bound() const {
    if (is_zero()) throw std::domain_error("RatPoly: Cauchy bound of zero polynomial");
    Rational m(0);
    for (const auto& c : c_) {
        Rational a = (c / lead()).abs();
        if (a > m) m = a;
    }
    return Rational(1) + m;
}

std::string RatPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
        else if (c.sign() < 0) out += "-";
        Rational a = c.abs();
        if (i == 0 || !(a == Rational(1))) out += a.str();
        if (i > 0) {
            if (!(a == Rational(1))) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace dor
