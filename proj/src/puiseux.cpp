#include "dor/puiseux.hpp"

#include <algorithm>

namespace dor {

std::vector<Rational> CoeffTraits<Rational>::real_roots(const std::vector<Rational>& coeffs) {
    RatPoly p{std::vector<Rational>(coeffs)};
    std::vector<Rational> roots;
    if (p.is_zero() || p.degree() == 0) return roots;
    // strip zero roots
    size_t shift = 0;
    while (p.coeff(shift).is_zero()) ++shift;
    if (shift > 0) {
        roots.emplace_back(0);
        std::vector<Rational> c(p.coeffs().begin() + static_cast<long>(shift), p.coeffs().end());
        p = RatPoly(std::move(c));
    }
    if (p.degree() >= 1) {
        RatPoly z = p.primitive_integer();
        Integer c0 = z.coeff(0).num();
        if (c0 < 0) c0 = -c0;
        Integer cl = z.lead().num();
        for (Integer a = 1; a <= c0; ++a) {
            if (c0 % a != 0) continue;
            for (Integer b = 1; b <= cl; ++b) {
                if (cl % b != 0) continue;
                for (int sgn : {1, -1}) {
                    Rational cand(sgn * a, b);
                    if (z.eval(cand).is_zero() &&
                        std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<FieldElement> CoeffTraits<FieldElement>::real_roots(const std::vector<FieldElement>& coeffs) {
    std::vector<FieldElement> trimmed = coeffs;
    while (!trimmed.empty() && trimmed.back().is_zero()) trimmed.pop_back();
    std::vector<FieldElement> roots;
    if (trimmed.size() < 2) return roots;
    const FieldPtr& fld = trimmed.front().field();
    if (trimmed.size() == 2) {
        roots.push_back(-(trimmed[0] / trimmed[1]));
        return roots;
    }
    bool all_rational = std::all_of(trimmed.begin(), trimmed.end(),
                                    [](const FieldElement& c) { return c.is_rational(); });
    if (all_rational) {
        std::vector<Rational> rc;
        for (const auto& c : trimmed) rc.push_back(c.rational_value());
        for (const auto& r : CoeffTraits<Rational>::real_roots(rc))
            roots.push_back(FieldElement::from_rational(fld, r));
    }
    // roots that live only in a proper extension of the field are not found
    return roots;
}

}  // namespace dor
