#include "dor/mb_model.hpp"

#include <stdexcept>

namespace dor {

MBConfig MBConfig::make(FieldPtr field, PrimeSet s, Integer q, size_t indeterminates,
                        MBVariant variant) {
    if (!field) throw std::invalid_argument("MBConfig: field required");
    if (variant == MBVariant::localized && s.empty())
        throw std::invalid_argument("MBConfig: S must be nonempty");
    if (!is_prime(q)) throw std::invalid_argument("MBConfig: q must be prime");
    if (s.contains(q)) throw std::invalid_argument("MBConfig: q must not lie in S");
    if (indeterminates < 1) throw std::invalid_argument("MBConfig: need at least one indeterminate");
    return MBConfig{std::move(field), std::move(s), std::move(q), indeterminates, variant};
}

MBAdmitResult mb_admit(const NFPoly& raw, const MBConfig& cfg) {
    MBAdmitResult out;
    for (const auto& [m, c] : raw.terms()) {
        if (m.size() > cfg.indeterminates) {
            out.rejection = MBRejection{"uses more indeterminates than configured", m, c, std::nullopt};
            return out;
        }
        if (m.empty()) {
            if (!c.is_rational() || !c.rational_value().is_integer()) {
                out.rejection = MBRejection{"constant coefficient not a rational integer", m, c, std::nullopt};
                return out;
            }
            continue;
        }
        if (cfg.variant == MBVariant::localized) {
            SIntegrality si = s_integrality_check(c, cfg.s);
            if (!si.member) {
                out.rejection = MBRejection{"coefficient not S-integral", m, c,
                                            si.denominator_factorization.offending_prime};
                return out;
            }
        }
    }
    out.element = MBElement{raw};
    return out;
}

int mb_sign(const NFPoly& p) {
    if (p.is_zero()) return 0;
    return p.leading_term().second.sign();
}

Ordering mb_compare(const MBElement& a, const MBElement& b) {
    int s = mb_sign(a.poly - b.poly);
    return s < 0 ? Ordering::less : s > 0 ? Ordering::greater : Ordering::equal;
}

MBElement mb_arith(const MBElement& a, const MBElement& b, RingOp op, const MBConfig& cfg) {
    NFPoly r;
    switch (op) {
        case RingOp::add: r = a.poly + b.poly; break;
        case RingOp::sub: r = a.poly - b.poly; break;
        case RingOp::mul: r = a.poly * b.poly; break;
    }
    MBAdmitResult adm = mb_admit(r, cfg);
    if (!adm.accepted())
        throw std::logic_error("mb_arith: ring closure violated: " + adm.rejection->reason);
    return *adm.element;
}

ShepAdmitResult shep_admit(const PuiseuxSeries<FieldElement>& series) {
    ShepAdmitResult out;
    if (!series.exact()) {
        out.rejection = "series must be exact";
        return out;
    }
    for (const auto& [e, c] : series.terms) {
        if (e < Rational(0)) {
            out.rejection = "negative exponent " + e.str();
            return out;
        }
        if (e == Rational(0) && !(c.is_rational() && c.rational_value().is_integer())) {
            out.rejection = "constant term not a rational integer";
            return out;
        }
    }
    out.element = ShepElement{series};
    return out;
}

}  // namespace dor
