#pragma once

#include "dor/numberfield.hpp"
#include "dor/polynomial.hpp"
#include "dor/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dor {

/// Customization point for Puiseux coefficient fields. Specialized for
/// Rational and FieldElement. `like` arguments supply context (e.g. which
/// number field) when constructing constants.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
    static bool is_zero(const Rational& a) { return a.is_zero(); }
    static int sign(const Rational& a) { return a.sign(); }
    static Rational from_rational(const Rational&, const Rational& q) { return q; }
    static Integer floor(const Rational& a) { return a.floor(); }
    static std::string str(const Rational& a) { return a.str(); }
    /// All roots of sum_j coeffs[j] t^j that lie in Q (rational-root theorem).
    static std::vector<Rational> real_roots(const std::vector<Rational>& coeffs);
};

template <>
struct CoeffTraits<FieldElement> {
    static bool is_zero(const FieldElement& a) { return a.is_zero(); }
    static int sign(const FieldElement& a) { return a.sign(); }
    static FieldElement from_rational(const FieldElement& like, const Rational& q) {
        return FieldElement::from_rational(like.field(), q);
    }
    static Integer floor(const FieldElement& a) { return a.floor(); }
    static std::string str(const FieldElement& a) { return a.str(); }
    /// Linear equations are solved in the field; rational-coefficient
    /// characteristic polynomials fall back to their rational roots. Roots
    /// that exist only in a larger extension are not found (their branches
    /// are dropped by newton_puiseux).
    static std::vector<FieldElement> real_roots(const std::vector<FieldElement>& coeffs);
};

enum class Sign { negative, zero, positive, unknown };

inline Sign sign_of_int(int s) {
    return s < 0 ? Sign::negative : s > 0 ? Sign::positive : Sign::zero;
}

/// Finitely supported or truncated series sum a_k x^{e_k} in descending
/// rational powers of x (x infinitely large). Stored coefficients are
/// nonzero. When `trunc` is set, terms with exponent strictly below it are
/// unknown; otherwise the series is exact.
template <class C>
struct PuiseuxSeries {
    using TermMap = std::map<Rational, C, std::greater<Rational>>;
    TermMap terms;
    std::optional<Rational> trunc;

    bool exact() const { return !trunc.has_value(); }
    bool known_zero() const { return terms.empty() && exact(); }

    /// lcm of exponent denominators (1 for the zero series).
    Integer ramification() const {
        Integer r(1);
        for (const auto& [e, c] : terms) r = lcm(r, e.den());
        return r;
    }
    std::optional<Rational> top_exponent() const {
        if (!terms.empty()) return terms.begin()->first;
        return trunc;
    }

    static PuiseuxSeries zero() { return {}; }
    static PuiseuxSeries monomial(C coeff, Rational exponent) {
        PuiseuxSeries s;
        if (!CoeffTraits<C>::is_zero(coeff)) s.terms.emplace(std::move(exponent), std::move(coeff));
        return s;
    }

    /// Drops zero coefficients and any term below the truncation cutoff.
    void normalize() {
        for (auto it = terms.begin(); it != terms.end();) {
            bool drop = CoeffTraits<C>::is_zero(it->second) || (trunc && it->first < *trunc);
            it = drop ? terms.erase(it) : std::next(it);
        }
    }

    std::string str() const {
        std::string out = "[";
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (!first) out += ", ";
            first = false;
            out += "(" + e.str() + ", " + CoeffTraits<C>::str(c) + ")";
        }
        out += "]";
        if (trunc) out += " + o(x^" + trunc->str() + ")";
        return out;
    }
};

template <class C>
PuiseuxSeries<C> operator+(const PuiseuxSeries<C>& a, const PuiseuxSeries<C>& b) {
    PuiseuxSeries<C> r;
    if (a.trunc && b.trunc) r.trunc = std::max(*a.trunc, *b.trunc);
    else if (a.trunc) r.trunc = a.trunc;
    else if (b.trunc) r.trunc = b.trunc;
    r.terms = a.terms;
    for (const auto& [e, c] : b.terms) {
        auto it = r.terms.find(e);
        if (it == r.terms.end()) r.terms.emplace(e, c);
        else it->second = it->second + c;
    }
    r.normalize();
    return r;
}

template <class C>
PuiseuxSeries<C> negate(const PuiseuxSeries<C>& a) {
    PuiseuxSeries<C> r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

template <class C>
PuiseuxSeries<C> operator-(const PuiseuxSeries<C>& a, const PuiseuxSeries<C>& b) {
    return a + negate(b);
}

template <class C>
PuiseuxSeries<C> operator*(const PuiseuxSeries<C>& a, const PuiseuxSeries<C>& b) {
    if (a.known_zero() || b.known_zero()) return {};
    PuiseuxSeries<C> r;
    // Unknown-part contributions bound the result's truncation cutoff.
    std::optional<Rational> cut;
    auto raise = [&cut](const Rational& v) {
        if (!cut || v > *cut) cut = v;
    };
    if (a.trunc) raise(*a.trunc + b.top_exponent().value_or(Rational(0)));
    if (b.trunc) raise(*b.trunc + a.top_exponent().value_or(Rational(0)));
    if (a.trunc && b.trunc) raise(*a.trunc + *b.trunc);
    r.trunc = cut;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            Rational e = ea + eb;
            if (cut && e < *cut) continue;
            C p = ca * cb;
            auto it = r.terms.find(e);
            if (it == r.terms.end()) r.terms.emplace(std::move(e), std::move(p));
            else it->second = it->second + p;
        }
    r.normalize();
    return r;
}

template <class C>
bool operator==(const PuiseuxSeries<C>& a, const PuiseuxSeries<C>& b) {
    return a.trunc == b.trunc && a.terms == b.terms;
}

/// Sign by the leading (largest-exponent) coefficient. `unknown` when no
/// term is stored but the series is inexact.
template <class C>
Sign ps_sign(const PuiseuxSeries<C>& a) {
    if (!a.terms.empty()) return sign_of_int(CoeffTraits<C>::sign(a.terms.begin()->second));
    return a.exact() ? Sign::zero : Sign::unknown;
}

template <class C>
struct FloorResult {
    PuiseuxSeries<C> integer_part;
    Sign fractional_sign = Sign::unknown;   // sign of a - b, certified in {zero, positive}
    std::optional<std::string> error;
    bool ok() const { return !error.has_value(); }
};

/// Integer-part extraction: b = (positive-exponent part of a) + floor of the
/// constant term, corrected by -1 when the infinitesimal tail drags a - b
/// below zero. Guarantees 0 <= a - b < 1, certified by ps_sign.
template <class C>
FloorResult<C> ps_floor(const PuiseuxSeries<C>& a) {
    FloorResult<C> out;
    if (a.trunc && !(*a.trunc < Rational(0))) {
        out.error = "insufficient truncation: tail not visible below exponent 0";
        return out;
    }
    if (a.terms.empty()) {  // the exact zero series: floor is 0, fractional part 0
        out.fractional_sign = Sign::zero;
        return out;
    }
    PuiseuxSeries<C> b;
    const C* proto = nullptr;
    for (const auto& [e, c] : a.terms) {
        proto = &c;
        if (e > Rational(0)) b.terms.emplace(e, c);
        else if (e == Rational(0)) {
            Integer fl = CoeffTraits<C>::floor(c);
            if (fl != 0) b.terms.emplace(e, CoeffTraits<C>::from_rational(c, Rational(fl)));
        }
    }
    b.normalize();
    auto minus_int = [&](const PuiseuxSeries<C>& s, long k) {
        if (!proto) {
            PuiseuxSeries<C> r = s;  // a had no terms at all; only valid when exact (a = 0)
            return r;
        }
        return s - PuiseuxSeries<C>::monomial(CoeffTraits<C>::from_rational(*proto, Rational(k)), Rational(0));
    };
    PuiseuxSeries<C> frac = a - b;
    Sign s = ps_sign(frac);
    if (s == Sign::unknown) {
        out.error = "insufficient truncation: sign of fractional part unknown";
        return out;
    }
    if (s == Sign::negative) {
        b = minus_int(b, 1);
        frac = a - b;
        s = ps_sign(frac);
    }
    Sign above = ps_sign(minus_int(frac, 1));
    if (s == Sign::negative || s == Sign::unknown || above != Sign::negative) {
        out.error = "floor contract could not be certified";
        return out;
    }
    out.integer_part = std::move(b);
    out.fractional_sign = s;
    return out;
}

/// Polynomial in y with Puiseux-series coefficients, indexed by degree.
template <class C>
struct SeriesPoly {
    std::vector<PuiseuxSeries<C>> coeffs;

    int degree() const {
        for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
            if (!coeffs[static_cast<size_t>(i)].terms.empty()) return i;
        return -1;
    }
    PuiseuxSeries<C> coeff(size_t j) const {
        return j < coeffs.size() ? coeffs[j] : PuiseuxSeries<C>{};
    }
    PuiseuxSeries<C> eval(const PuiseuxSeries<C>& y) const {
        PuiseuxSeries<C> acc;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * y + *it;
        return acc;
    }
};

template <class C>
struct PuiseuxRoot {
    PuiseuxSeries<C> series;
    bool exact = false;
    std::optional<Rational> residual_order;  // top exponent of f(series) when inexact
};

/// Newton-polygon root expansion for deg_y f <= p, `depth` slope iterations.
/// Coefficient series must be exact. Branches whose characteristic equation
/// has no root in the coefficient field are dropped. Roots are returned in
/// deterministic order (slopes increasing within each stage).
template <class C>
std::vector<PuiseuxRoot<C>> newton_puiseux(const SeriesPoly<C>& f, int p, int depth);

// --- implementation -------------------------------------------------------

namespace detail {

template <class C>
std::vector<PuiseuxSeries<C>> np_expand(const SeriesPoly<C>& f, int depth,
                                        const std::optional<Rational>& bound) {
    std::vector<PuiseuxSeries<C>> out;
    int deg = f.degree();
    if (deg < 1) return out;

    if (f.coeff(0).terms.empty()) out.push_back(PuiseuxSeries<C>{});  // exact root 0

    // support points (j, top exponent of c_j)
    std::vector<std::pair<int, Rational>> pts;
    for (int j = 0; j <= deg; ++j) {
        auto top = f.coeff(static_cast<size_t>(j)).top_exponent();
        if (!f.coeff(static_cast<size_t>(j)).terms.empty()) pts.emplace_back(j, *top);
    }
    // candidate slopes from all support pairs, increasing, filtered by bound
    std::vector<Rational> slopes;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            Rational mu = (pts[i].second - pts[j].second) /
                          Rational(Integer(pts[j].first - pts[i].first));
            if (bound && !(mu < *bound)) continue;
            slopes.push_back(mu);
        }
    std::sort(slopes.begin(), slopes.end());
    slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());

    for (const Rational& mu : slopes) {
        // face of the polygon at slope mu
        std::optional<Rational> peak;
        for (const auto& [j, v] : pts) {
            Rational h = v + mu * Rational(Integer(j));
            if (!peak || h > *peak) peak = h;
        }
        std::vector<std::pair<int, C>> face;
        for (const auto& [j, v] : pts)
            if (v + mu * Rational(Integer(j)) == *peak)
                face.emplace_back(j, f.coeff(static_cast<size_t>(j)).terms.begin()->second);
        if (face.size() < 2) continue;  // leading terms cannot cancel on this slope

        // characteristic polynomial over the coefficient field, c^{jmin} divided out
        int jmin = face.front().first, jmax = face.back().first;
        std::vector<C> charpoly;
        charpoly.reserve(static_cast<size_t>(jmax - jmin) + 1);
        const C& proto = face.front().second;
        for (int j = jmin; j <= jmax; ++j) {
            auto it = std::find_if(face.begin(), face.end(),
                                   [j](const auto& pr) { return pr.first == j; });
            charpoly.push_back(it != face.end() ? it->second
                                                : CoeffTraits<C>::from_rational(proto, Rational(0)));
        }
        for (C root : CoeffTraits<C>::real_roots(charpoly)) {
            if (CoeffTraits<C>::is_zero(root)) continue;
            PuiseuxSeries<C> lead = PuiseuxSeries<C>::monomial(root, mu);
            if (depth <= 1) {
                PuiseuxSeries<C> r = lead;
                r.trunc = mu;  // deeper terms not computed
                out.push_back(std::move(r));
                continue;
            }
            // shift f(y) -> f(lead + y) by binomial expansion
            SeriesPoly<C> g;
            g.coeffs.assign(f.coeffs.size(), PuiseuxSeries<C>{});
            std::vector<PuiseuxSeries<C>> lead_pow(f.coeffs.size());
            lead_pow[0] = PuiseuxSeries<C>::monomial(CoeffTraits<C>::from_rational(root, Rational(1)),
                                                     Rational(0));
            for (size_t k = 1; k < lead_pow.size(); ++k) lead_pow[k] = lead_pow[k - 1] * lead;
            for (size_t j = 0; j < f.coeffs.size(); ++j) {
                if (f.coeffs[j].terms.empty()) continue;
                Integer binom(1);
                for (size_t i = 0; i <= j; ++i) {
                    PuiseuxSeries<C> contrib =
                        f.coeffs[j] * lead_pow[j - i] *
                        PuiseuxSeries<C>::monomial(CoeffTraits<C>::from_rational(root, Rational(binom)),
                                                   Rational(0));
                    g.coeffs[i] = g.coeffs[i] + contrib;
                    binom = binom * Integer(j - i) / Integer(i + 1);
                }
            }
            for (PuiseuxSeries<C>& tail : np_expand(g, depth - 1, mu)) {
                PuiseuxSeries<C> r = lead + tail;
                if (tail.trunc) r.trunc = tail.trunc;
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

}  // namespace detail

template <class C>
std::vector<PuiseuxRoot<C>> newton_puiseux(const SeriesPoly<C>& f, int p, int depth) {
    if (f.degree() < 1) throw std::invalid_argument("newton_puiseux: polynomial must have degree >= 1 in y");
    if (f.degree() > p) throw std::invalid_argument("newton_puiseux: degree exceeds the p bound");
    if (depth < 1) throw std::invalid_argument("newton_puiseux: depth must be positive");
    for (const auto& c : f.coeffs)
        if (!c.exact()) throw std::invalid_argument("newton_puiseux: coefficient series must be exact");

    std::vector<PuiseuxRoot<C>> roots;
    for (PuiseuxSeries<C>& s : detail::np_expand(f, depth, std::nullopt)) {
        PuiseuxRoot<C> r;
        PuiseuxSeries<C> probe = s;
        probe.trunc.reset();  // plug back the computed prefix exactly
        PuiseuxSeries<C> residual = f.eval(probe);
        if (residual.terms.empty()) {
            r.exact = true;
            s.trunc.reset();
        } else {
            r.residual_order = residual.top_exponent();
        }
        r.series = std::move(s);
        roots.push_back(std::move(r));
    }
    return roots;
}

}  // namespace dor
