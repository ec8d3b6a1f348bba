#include "dor/sturm.hpp"

#include <stdexcept>

namespace dor {

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("sturm_chain: zero polynomial");
    std::vector<RatPoly> chain;
    chain.push_back(p);
    if (p.degree() == 0) return chain;
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        RatPoly r = RatPoly::divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sturm_variations(const std::vector<RatPoly>& chain, const Rational& x) {
    int vars = 0, prev = 0;
    for (const auto& q : chain) {
        int s = q.eval(x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

RootCount count_roots_in(const RatPoly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw std::domain_error("count_roots_in: zero polynomial");
    if (!(lo < hi)) throw std::invalid_argument("count_roots_in: lo must be < hi");
    RootCount rc;
    if (p.eval(lo).is_zero() || p.eval(hi).is_zero()) {
        rc.endpoint_is_root = true;
        return rc;
    }
    auto chain = sturm_chain(p);
    rc.count = sturm_variations(chain, lo) - sturm_variations(chain, hi);
    return rc;
}

namespace {

// Moves e off the root set of p, stepping by 1/(2*den(e)*(1+deg)) in
// direction dir, halving the step on a re-hit. Roots are finite, so this
// terminates.
Rational nudge_off_root(const RatPoly& p, Rational e, int dir) {
    Rational step(Integer(dir), 2 * e.den() * Integer(p.degree() + 1));
    while (p.eval(e).is_zero()) {
        e += step;
        step = step * Rational(1, 2);
    }
    return e;
}

void bisect(const RatPoly& q, const std::vector<RatPoly>& chain,
            Rational lo, Rational hi, int nroots,
            std::vector<IsolatingInterval>& out) {
    if (nroots == 0) return;
    if (nroots == 1) {
        out.push_back({std::move(lo), std::move(hi), q});
        return;
    }
    Rational mid = (lo + hi) * Rational(1, 2);
    if (q.eval(mid).is_zero()) mid = nudge_off_root(q, mid, 1);
    int left = sturm_variations(chain, lo) - sturm_variations(chain, mid);
    bisect(q, chain, lo, mid, left, out);
    bisect(q, chain, mid, hi, nroots - left, out);
}

}  // namespace

std::vector<IsolatingInterval> isolate_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("isolate_roots: zero polynomial");
    RatPoly q = p.squarefree_part();
    if (q.degree() < 1) return {};
    Rational b = q.cauchy_bound();
    auto chain = sturm_chain(q);
    int total = sturm_variations(chain, -b) - sturm_variations(chain, b);
    std::vector<IsolatingInterval> out;
    bisect(q, chain, -b, b, total, out);
    return out;
}

IsolatingInterval refine_interval(IsolatingInterval iv, const Rational& width_bound) {
    if (!(width_bound > Rational(0)))
        throw std::invalid_argument("refine_interval: width_bound must be positive");
    const RatPoly& p = iv.polynomial;
    if (p.eval(iv.hi).is_zero()) {
        // Root sits at the closed end; shrink toward it.
        while (iv.width() > width_bound) iv.lo = (iv.lo + iv.hi) * Rational(1, 2);
        return iv;
    }
    int shi = p.eval(iv.hi).sign();
    while (iv.width() > width_bound) {
        Rational mid = (iv.lo + iv.hi) * Rational(1, 2);
        int sm = p.eval(mid).sign();
        if (sm == 0) {
            // Exact root found; collapse onto it from the left.
            iv.hi = mid;
            iv.lo = mid - width_bound * Rational(1, 2);
            return iv;
        }
        if (sm == shi) iv.hi = mid;
        else iv.lo = mid;
    }
    return iv;
}

int interval_root_sign(const IsolatingInterval& iv) {
    if (iv.contains(Rational(0)) && iv.polynomial.eval(Rational(0)).is_zero()) return 0;
    IsolatingInterval cur = iv;
    while (cur.lo.sign() != cur.hi.sign()) cur = refine_interval(cur, cur.width() * Rational(1, 2));
    return cur.hi.sign();
}

}  // namespace dor
