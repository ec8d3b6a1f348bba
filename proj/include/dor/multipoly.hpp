#pragma once

#include "dor/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace dor {

/// Exponent vector, one entry per variable, trailing zeros trimmed away.
using Monomial = std::vector<unsigned>;

void mono_trim(Monomial& m);
Monomial mono_mul(const Monomial& a, const Monomial& b);
/// a/b when b divides a componentwise.
std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b);

/// Dominance order for indeterminates where each later variable is
/// infinitely larger than anything in the earlier ones: lex from the
/// highest variable down.
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with coefficients in C (a field value
/// type with +, -, *, is_zero()). Stored coefficients are nonzero.
template <class C>
class MultiPoly {
public:
    using TermMap = std::map<Monomial, C, MonoLess>;

    MultiPoly() = default;
    static MultiPoly constant(C c) {
        MultiPoly p;
        if (!c.is_zero()) p.terms_.emplace(Monomial{}, std::move(c));
        return p;
    }
    static MultiPoly term(C c, Monomial m) {
        MultiPoly p;
        mono_trim(m);
        if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }
    /// Single variable `var` (0-based) to the first power.
    static MultiPoly variable(C one, size_t var) {
        Monomial m(var + 1, 0u);
        m[var] = 1;
        return term(std::move(one), std::move(m));
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    std::optional<C> constant_coeff() const {
        auto it = terms_.find(Monomial{});
        if (it == terms_.end()) return std::nullopt;
        return it->second;
    }
    /// Number of variables spanned (max used index + 1).
    size_t num_vars() const {
        size_t n = 0;
        for (const auto& [m, c] : terms_) n = std::max(n, m.size());
        return n;
    }
    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int t = 0;
            for (unsigned e : m) t += static_cast<int>(e);
            d = std::max(d, t);
        }
        return d;
    }
    int degree_in(size_t var) const {
        int d = is_zero() ? -1 : 0;
        for (const auto& [m, c] : terms_)
            if (var < m.size()) d = std::max(d, static_cast<int>(m[var]));
        return d;
    }
    /// Term that dominates when every later variable is infinitely large.
    const std::pair<const Monomial, C>& leading_term() const { return *terms_.rbegin(); }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) {
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) r.terms_.emplace(m, c);
            else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                C c = ca * cb;
                if (c.is_zero()) continue;
                Monomial m = mono_mul(ma, mb);
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) r.terms_.emplace(std::move(m), std::move(c));
                else {
                    it->second = it->second + c;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }
    MultiPoly scaled(const C& s) const {
        MultiPoly r;
        for (const auto& [m, c] : terms_) {
            C v = c * s;
            if (!v.is_zero()) r.terms_.emplace(m, std::move(v));
        }
        return r;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

    /// Exact single-divisor division under the dominance order; nullopt
    /// when the division leaves a remainder. C must be a field.
    static std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b) {
        if (b.is_zero()) return std::nullopt;
        MultiPoly q, r = a;
        const auto& [bm, bc] = b.leading_term();
        while (!r.is_zero()) {
            const auto& [rm, rc] = r.leading_term();
            auto m = mono_div(rm, bm);
            if (!m) return std::nullopt;
            MultiPoly t = MultiPoly::term(rc * bc.inverse(), std::move(*m));
            q = q + t;
            r = r - t * b;
        }
        return q;
    }

private:
    TermMap terms_;
};

}  // namespace dor
