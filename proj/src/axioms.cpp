#include "dor/axioms.hpp"

#include <stdexcept>

namespace dor {

namespace {

FieldElement fe_rational(const FieldPtr& field, Rational r) {
    return FieldElement::from_rational(field, std::move(r));
}

}  // namespace

MBDivision zr_divide(const MBConfig& cfg, const MBElement& g, const Integer& n) {
    if (n < 2) throw std::invalid_argument("zr_divide: modulus must be >= 2");
    MBDivision out;
    FieldElement inv_n = fe_rational(cfg.field, Rational(Integer(1), n));
    NFPoly q;
    Integer c0(0);
    for (const auto& [m, c] : g.poly.terms()) {
        if (m.empty()) {
            c0 = c.rational_value().num();  // admissible constants are integers
            continue;
        }
        FieldElement scaled = c * inv_n;
        if (cfg.variant == MBVariant::localized) {
            SIntegrality si = s_integrality_check(scaled, cfg.s);
            if (!si.member) {
                out.refutation = MBDivision::Refutation{
                    m, c, si.denominator_factorization.offending_prime,
                    "coefficient " + c.str() + " divided by " + n.str() +
                        " leaves the coefficient ring"};
                return out;
            }
        }
        q = q + NFPoly::term(scaled, m);
    }
    out.remainder = mod_floor(c0, n);
    q = q + NFPoly::constant(fe_rational(cfg.field, Rational(floor_div(c0, n))));

    MBAdmitResult adm = mb_admit(q, cfg);
    if (!adm.accepted()) throw std::logic_error("zr_divide: quotient not admissible");
    // re-multiplication soundness: g = n*q + r
    NFPoly back = q.scaled(fe_rational(cfg.field, Rational(n))) +
                  NFPoly::constant(fe_rational(cfg.field, Rational(out.remainder)));
    if (!(back == g.poly)) throw std::logic_error("zr_divide: witness fails to re-multiply");
    out.quotient = *adm.element;
    return out;
}

ChainDivision zr_divide(const ChainState& st, const QPoly& g, const Integer& n) {
    if (n < 2) throw std::invalid_argument("zr_divide: modulus must be >= 2");
    ChainDivision out;
    auto f = st.prime_set().factor(n);
    if (!f.ok()) {
        out.refutation = "modulus " + n.str() + " has prime factor " +
                         f.offending_prime->str() +
                         " outside S; divisibility refuted relative to the residue engine";
        return out;
    }
    auto r = st.residue_mod(g, n);
    if (!r.ok()) throw ChainError("zr_divide: " + r.error);
    out.remainder = *r.residue;
    QPoly a = g - QPoly::constant(Rational(out.remainder));
    ZhatStepResult step = st.zhat_step(a, n);
    // soundness: n*q + r = g
    if (!(step.element.expr.scaled(Rational(n)) + QPoly::constant(Rational(out.remainder)) == g))
        throw std::logic_error("zr_divide: witness fails to re-multiply");
    out.quotient = step.element;
    out.state = std::move(step.state);
    return out;
}

NormalityVerdict normality_check(const MBConfig& cfg, const MBElement& u, const MBElement& v,
                                 const std::vector<MBElement>& zs) {
    if (v.poly.is_zero()) throw std::invalid_argument("normality_check: v must be nonzero");
    if (zs.empty()) throw std::invalid_argument("normality_check: need at least one coefficient");
    size_t s = zs.size();
    // premise: u^s + z_1 u^{s-1} v + ... + z_s v^s = 0, cleared of denominators
    NFPoly acc;
    NFPoly upow = NFPoly::constant(fe_rational(cfg.field, Rational(1)));
    std::vector<NFPoly> upows{upow};
    for (size_t i = 0; i < s; ++i) upows.push_back(upows.back() * u.poly);
    NFPoly vpow = NFPoly::constant(fe_rational(cfg.field, Rational(1)));
    acc = upows[s];
    for (size_t i = 1; i <= s; ++i) {
        vpow = vpow * v.poly;
        acc = acc + zs[i - 1].poly * upows[s - i] * vpow;
    }
    if (!acc.is_zero())
        return {NormalityOutcome::premise_failure, std::nullopt,
                "the monic integral equation does not hold"};
    auto q = NFPoly::exact_divide(u.poly, v.poly);
    if (!q)
        return {NormalityOutcome::nonmember, std::nullopt, "u/v is not a polynomial"};
    if (!((*q) * v.poly == u.poly)) throw std::logic_error("normality_check: division unsound");
    MBAdmitResult adm = mb_admit(*q, cfg);
    if (!adm.accepted())
        return {NormalityOutcome::nonmember, std::nullopt,
                "quotient leaves the ring: " + adm.rejection->reason};
    return {NormalityOutcome::member, *adm.element, ""};
}

// --- univariate polynomials over Q(lambda) --------------------------------

FieldPoly fp_trim(FieldPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

FieldPoly fp_mul(const FieldPoly& a, const FieldPoly& b) {
    if (a.empty() || b.empty()) return {};
    FieldElement zero = fe_rational(a.front().field(), Rational(0));
    FieldPoly r(a.size() + b.size() - 1, zero);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return fp_trim(std::move(r));
}

FieldPoly fp_sub(const FieldPoly& a, const FieldPoly& b) {
    if (a.empty() && b.empty()) return {};
    FieldElement zero = fe_rational((a.empty() ? b : a).front().field(), Rational(0));
    FieldPoly r(std::max(a.size(), b.size()), zero);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    return fp_trim(std::move(r));
}

FieldPoly fp_rem(FieldPoly a, const FieldPoly& b) {
    if (b.empty()) throw std::invalid_argument("fp_rem: division by zero");
    a = fp_trim(std::move(a));
    FieldElement lead_inv = b.back().inverse();
    while (a.size() >= b.size()) {
        FieldElement f = a.back() * lead_inv;
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - f * b[i];
        a = fp_trim(std::move(a));
    }
    return a;
}

FieldPoly polyfield_gcd(FieldPoly a, FieldPoly b) {
    a = fp_trim(std::move(a));
    b = fp_trim(std::move(b));
    if (a.empty() && b.empty()) throw std::invalid_argument("polyfield_gcd: both zero");
    while (!b.empty()) {
        FieldPoly r = fp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    FieldElement lead_inv = a.back().inverse();
    for (auto& c : a) c = c * lead_inv;
    return a;
}

// --- Bezout assembly over the chain ----------------------------------------

namespace {

struct Identity {
    QPoly z, t;  // P*z + Q*t = 1 for the pair it was built for
};

// P^e * z^e + Q * T = 1, from P*z + Q*t = 1, by the binomial expansion of
// (Pz + Qt)^e with the single Q-free term split off.
Identity raise_first(const QPoly& P, const QPoly& Q, const Identity& id, unsigned e) {
    if (e == 1) return id;
    QPoly Pz = P * id.z;
    QPoly Qt = Q * id.t;
    QPoly zpow = QPoly::constant(Rational(1));
    for (unsigned i = 0; i < e; ++i) zpow = zpow * id.z;
    QPoly T;
    Integer binom(1);  // C(e, k)
    QPoly Pz_k = QPoly::constant(Rational(1));
    for (unsigned k = 0; k < e; ++k) {
        // C(e,k) * (Pz)^k * Q^{e-1-k} * t^{e-k}
        QPoly term = Pz_k.scaled(Rational(binom));
        for (unsigned i = 0; i < e - 1 - k; ++i) term = term * Q;
        for (unsigned i = 0; i < e - k; ++i) term = term * id.t;
        T = T + term;
        binom = binom * Integer(e - k) / Integer(k + 1);
        Pz_k = Pz_k * Pz;
    }
    return {zpow, T};
}

QPoly qpow(const QPoly& p, unsigned e) {
    QPoly r = QPoly::constant(Rational(1));
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

bool is_constant_prime(const QPoly& p, Integer& value) {
    if (!p.is_constant() || p.is_zero()) return false;
    Rational c = *p.constant_coeff();
    if (!c.is_integer() || c.num() < 2) return false;
    value = c.num();
    return is_prime(value);
}

}  // namespace

BezoutResult bezout_witness(const ChainState& st, const QPoly& a, const FactorCert& ca,
                            const QPoly& b, const FactorCert& cb) {
    BezoutResult out;
    if (a.is_zero() || b.is_zero()) {
        out.error = "inputs must be nonzero";
        return out;
    }
    auto check_cert = [&](const QPoly& elem, const FactorCert& cert) -> std::string {
        if (cert.unit != 1 && cert.unit != -1) return "unit must be +1 or -1";
        QPoly prod = QPoly::constant(Rational(cert.unit));
        for (const auto& [p, e] : cert.factors) {
            if (e == 0) return "zero exponent in certificate";
            Integer val;
            if (!is_constant_prime(p, val) && !st.find_registered(p))
                return "unregistered factor in certificate";
            prod = prod * qpow(p, e);
        }
        if (!(prod == elem)) return "certificate does not multiply back to the element";
        return "";
    };
    if (std::string e = check_cert(a, ca); !e.empty()) { out.error = e; return out; }
    if (std::string e = check_cert(b, cb); !e.empty()) { out.error = e; return out; }

    // split off the common part
    QPoly d = QPoly::constant(Rational(1));
    std::vector<std::pair<QPoly, unsigned>> ra = ca.factors, rb;
    for (const auto& [q, f] : cb.factors) {
        bool matched = false;
        for (auto& [p, e] : ra) {
            if (e > 0 && p == q) {
                unsigned m = std::min(e, f);
                d = d * qpow(p, m);
                e -= m;
                if (f > m) rb.emplace_back(q, f - m);
                matched = true;
                break;
            }
        }
        if (!matched) rb.emplace_back(q, f);
    }
    ra.erase(std::remove_if(ra.begin(), ra.end(), [](const auto& pe) { return pe.second == 0; }),
             ra.end());

    // identity A'*z0 + B'*t0 = 1 for the coprime residuals, assembled pairwise
    auto base_identity = [&](const QPoly& p, const QPoly& q) -> std::optional<Identity> {
        Integer pv, qv;
        if (is_constant_prime(p, pv) && is_constant_prime(q, qv)) {
            auto [g, s, t] = ext_gcd(pv, qv);
            if (g != 1) throw std::logic_error("bezout_witness: distinct primes not coprime");
            return Identity{QPoly::constant(Rational(s)), QPoly::constant(Rational(t))};
        }
        auto rel = st.find_relation(p, q);
        if (!rel) return std::nullopt;
        const ChainRelation& r = st.relations()[*rel];
        QPoly x = QPoly::variable(Rational(1), r.x_var);
        QPoly y = QPoly::variable(Rational(1), *r.y_var);
        return r.v == p ? Identity{x, y} : Identity{y, x};
    };

    Identity total{QPoly::constant(Rational(1)), QPoly{}};  // A'*1 + B'*0, grown below
    QPoly Bdone = QPoly::constant(Rational(1));
    QPoly Aprod = QPoly::constant(Rational(1));
    for (const auto& [p, e] : ra) Aprod = Aprod * qpow(p, e);
    bool first_b = true;
    for (const auto& [q, f] : rb) {
        // identity (A', q^f): fold the pair identities over the factors of A'
        Identity col{QPoly{}, QPoly::constant(Rational(1))};  // 1*0 + q^f * ... placeholder
        QPoly Qf = qpow(q, f);
        QPoly Adone = QPoly::constant(Rational(1));
        bool first_a = true;
        for (const auto& [p, e] : ra) {
            auto base = base_identity(p, q);
            if (!base) {
                out.pending = std::make_pair(p, q);
                return out;
            }
            Identity pe_q = raise_first(p, q, *base, e);               // p^e z + q t = 1
            Identity pair = raise_first(q, qpow(p, e), {pe_q.t, pe_q.z}, f);
            Identity cur{pair.t, pair.z};                              // p^e Z + q^f T = 1
            if (first_a) {
                col = cur;
                first_a = false;
            } else {
                // (A1 Z1 + B T1)(A2 Z2 + B T2) = 1 with B = q^f
                QPoly A2 = qpow(p, e);
                col = Identity{col.z * cur.z,
                               col.t * A2 * cur.z + Adone * col.z * cur.t + Qf * col.t * cur.t};
            }
            Adone = Adone * qpow(p, e);
        }
        if (first_a) col = Identity{QPoly::constant(Rational(1)), QPoly{}};  // A' = 1
        // fold into the running identity over the B-part
        if (first_b) {
            total = col;
            first_b = false;
        } else {
            // (A' Z1 + B1 T1)(A' Z2 + B2 T2) = 1
            total = Identity{total.z * Aprod * col.z + total.z * Qf * col.t + Bdone * total.t * col.z,
                             total.t * col.t};
        }
        Bdone = Bdone * Qf;
    }
    if (first_b) total = Identity{QPoly::constant(Rational(1)), QPoly{}};  // B' = 1

    QPoly z = total.z.scaled(Rational(ca.unit));
    QPoly t = total.t.scaled(Rational(cb.unit));
    // soundness: a*z + b*t = d in the chain (exact after normalization)
    RatFunc lhs = st.normal_form(a * z + b * t);
    RatFunc rhs = st.normal_form(d);
    if (!(lhs == rhs)) throw std::logic_error("bezout_witness: identity fails to normalize");
    out.z = std::move(z);
    out.t = std::move(t);
    out.d = std::move(d);
    return out;
}

// --- open-induction obstruction --------------------------------------------

ObstructionReport oi_obstruction(const RatPoly& P, unsigned p,
                                 const std::vector<std::optional<bool>>& certs) {
    if (P.degree() < 1 || P.degree() > static_cast<int>(p) + 1)
        throw std::invalid_argument("oi_obstruction: degree must be between 1 and p+1");
    if (!(P.lead() == Rational(1))) throw std::invalid_argument("oi_obstruction: P must be monic");
    for (int i = 0; i <= P.degree(); ++i)
        if (!P.coeff(i).is_integer())
            throw std::invalid_argument("oi_obstruction: integer coefficients required");
    if (P.eval(Rational(0)).sign() >= 0)
        throw std::invalid_argument("oi_obstruction: P(0) < 0 required");

    ObstructionReport out;
    std::vector<IsolatingInterval> roots = isolate_roots(P);
    std::vector<Rational> rat_coeffs;
    for (int i = 0; i <= P.degree(); ++i) rat_coeffs.push_back(P.coeff(i));
    std::vector<Rational> rational_roots = CoeffTraits<Rational>::real_roots(rat_coeffs);

    bool any_in = false, any_unknown = false;
    for (size_t i = 0; i < roots.size(); ++i) {
        ObstructionReport::Root r{roots[i], false, std::nullopt};
        for (const auto& q : rational_roots)
            if ((roots[i].lo < q && q < roots[i].hi) || q == roots[i].lo || q == roots[i].hi)
                r.is_rational = true;
        if (r.is_rational)
            r.in_rcp = true;  // Q sits inside RC_p for every p >= 1
        else if (i < certs.size())
            r.in_rcp = certs[i];
        if (r.in_rcp.has_value() && *r.in_rcp) any_in = true;
        if (!r.in_rcp.has_value()) any_unknown = true;
        out.roots.push_back(std::move(r));
    }
    if (any_in)
        out.conclusion = ObstructionConclusion::not_obstructed;
    else if (any_unknown) {
        out.conclusion = ObstructionConclusion::undetermined;
        out.note = "missing certificate for at least one irrational root";
    } else
        out.conclusion = ObstructionConclusion::obstructed;

    // sanity bracket Q(0) < 0 < Q(N*a) for Q(y) = a^{p+1} P(y/a), a = x infinite
    using PS = PuiseuxSeries<Rational>;
    Rational N = Rational(P.cauchy_bound().ceil() + 1);
    PS y0 = PS::monomial(N, Rational(1));
    PS at_zero, at_big;
    PS ypow = PS::monomial(Rational(1), Rational(0));
    for (int i = 0; i <= P.degree(); ++i) {
        PS apow = PS::monomial(P.coeff(i), Rational(P.degree() - i));
        if (i == 0) at_zero = apow;
        at_big = at_big + apow * ypow;
        ypow = ypow * y0;
    }
    out.sanity_bracket_ok =
        ps_sign(at_zero) == Sign::negative && ps_sign(at_big) == Sign::positive;
    return out;
}

}  // namespace dor
