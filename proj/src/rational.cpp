#include "dor/rational.hpp"

namespace dor {

void Rational::reduce() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Integer g = gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

bool Rational::is_canonical() const {
    if (den_ <= 0) return false;
    if (num_ == 0) return den_ == 1;
    return gcd(num_, den_) == 1;
}

Integer Rational::floor() const { return floor_div(num_, den_); }

Integer Rational::ceil() const { return -floor_div(-num_, den_); }

std::string Rational::str() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
}

Rational Rational::parse(std::string_view s) {
    auto bad = [&] { throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'"); };
    // trim
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) bad();

    auto parse_int = [&](std::string_view t) -> Integer {
        if (t.empty()) bad();
        size_t i = 0;
        if (t[0] == '+' || t[0] == '-') i = 1;
        if (i == t.size()) bad();
        for (size_t j = i; j < t.size(); ++j)
            if (t[j] < '0' || t[j] > '9') bad();
        return Integer(std::string(t));
    };

    size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    Integer n = parse_int(s.substr(0, slash));
    Integer d = parse_int(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("Rational: zero denominator in '" + std::string(s) + "'");
    return Rational(std::move(n), std::move(d));
}

Integer floor_div(const Integer& a, const Integer& b) {
    if (b == 0) throw std::domain_error("floor_div: zero divisor");
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Integer mod_floor(const Integer& a, const Integer& b) {
    Integer m = b < 0 ? -b : b;
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace dor
