#pragma once

#include "dor/polynomial.hpp"

#include <vector>

namespace dor {

/// Open-closed interval (lo, hi] containing exactly one real root of
/// `polynomial`. Endpoints are exact rationals.
struct IsolatingInterval {
    Rational lo;
    Rational hi;
    RatPoly polynomial;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo < x && x <= hi; }
};

/// Sturm sequence of p: p, p', then successive negated remainders.
/// Throws on the zero polynomial.
std::vector<RatPoly> sturm_chain(const RatPoly& p);

/// Sign variations of the chain evaluated at x.
int sturm_variations(const std::vector<RatPoly>& chain, const Rational& x);

struct RootCount {
    int count = 0;
    bool endpoint_is_root = false;  // p(lo) = 0 or p(hi) = 0; count not usable
};

/// Exact number of real roots of squarefree p in the open interval (lo, hi).
/// Reports endpoint-is-root distinctly so callers can nudge endpoints.
RootCount count_roots_in(const RatPoly& p, const Rational& lo, const Rational& hi);

/// Pairwise-disjoint rational intervals, one per distinct real root of p,
/// ordered increasingly. p is made squarefree internally.
std::vector<IsolatingInterval> isolate_roots(const RatPoly& p);

/// Bisection refinement: same root, width <= width_bound.
IsolatingInterval refine_interval(IsolatingInterval iv, const Rational& width_bound);

/// Exact sign of the algebraic number described by iv, reusing bisection.
/// Convenience used by ordering decisions elsewhere.
int interval_root_sign(const IsolatingInterval& iv);

}  // namespace dor
