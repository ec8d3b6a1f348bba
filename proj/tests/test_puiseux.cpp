#include "dor/puiseux.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace dor;

namespace {

using PS = PuiseuxSeries<Rational>;

PS mono(Rational c, Rational e) { return PS::monomial(std::move(c), std::move(e)); }

bool same_series(const PS& a, const PS& b) { return a.terms == b.terms && a.trunc == b.trunc; }

PS random_exact_series(std::mt19937& rng, bool integer_part_admissible = false) {
    static const Rational exps[] = {Rational(2),      Rational(3, 2), Rational(1),
                                    Rational(1, 2),   Rational(0),    Rational(-1, 2),
                                    Rational(-1)};
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> pick(0, 1);
    PS s;
    for (const Rational& e : exps) {
        if (pick(rng) == 0) continue;
        Rational c(Integer(coeff(rng)), Integer(den(rng)));
        if (integer_part_admissible && e > Rational(0) && c.is_zero()) continue;
        s = s + mono(c, e);
    }
    return s;
}

}  // namespace

TEST_CASE("series arithmetic examples") {
    // (x + 1) + (x^{1/2} - 1) = x + x^{1/2}
    PS a = mono(Rational(1), Rational(1)) + mono(Rational(1), Rational(0));
    PS b = mono(Rational(1), Rational(1, 2)) + mono(Rational(-1), Rational(0));
    PS sum = a + b;
    CHECK(same_series(sum, mono(Rational(1), Rational(1)) + mono(Rational(1), Rational(1, 2))));
    // x^{1/2} * x^{1/2} = x
    PS h = mono(Rational(1), Rational(1, 2));
    CHECK(same_series(h * h, mono(Rational(1), Rational(1))));
    // (x - 3)(x + 3) = x^2 - 9
    PS xm3 = mono(Rational(1), Rational(1)) + mono(Rational(-3), Rational(0));
    PS xp3 = mono(Rational(1), Rational(1)) + mono(Rational(3), Rational(0));
    CHECK(same_series(xm3 * xp3,
                      mono(Rational(1), Rational(2)) + mono(Rational(-9), Rational(0))));
}

TEST_CASE("series sign") {
    PS a = mono(Rational(1), Rational(1)) + mono(Rational(-1000000), Rational(0));
    CHECK(ps_sign(a) == Sign::positive);
    CHECK(ps_sign(PS::zero()) == Sign::zero);
    PS truncated;
    truncated.trunc = Rational(0);
    CHECK(ps_sign(truncated) == Sign::unknown);
}

TEST_CASE("ramification and truncation bookkeeping") {
    PS s = mono(Rational(1), Rational(1, 2)) + mono(Rational(1), Rational(2, 3));
    CHECK(s.ramification() == 6);
    PS t = mono(Rational(1), Rational(1));
    t.trunc = Rational(-1);
    PS u = mono(Rational(1), Rational(0));
    PS prod = t * u;
    CHECK(prod.trunc.has_value());  // the unknown tail persists through arithmetic
}

TEST_CASE("newton_puiseux on y^2 - x finds both square roots") {
    SeriesPoly<Rational> f;
    f.coeffs = {mono(Rational(-1), Rational(1)), PS::zero(), mono(Rational(1), Rational(0))};
    auto roots = newton_puiseux(f, 2, 4);
    REQUIRE(roots.size() == 2);
    bool plus = false, minus = false;
    for (const auto& r : roots) {
        CHECK(r.exact);
        if (same_series(r.series, mono(Rational(1), Rational(1, 2)))) plus = true;
        if (same_series(r.series, mono(Rational(-1), Rational(1, 2)))) minus = true;
        // zero residual
        CHECK(f.eval(r.series).known_zero());
    }
    CHECK(plus);
    CHECK(minus);
}

TEST_CASE("newton_puiseux recovers (y - x)(y - x^2)") {
    PS x = mono(Rational(1), Rational(1));
    PS x2 = mono(Rational(1), Rational(2));
    SeriesPoly<Rational> f;
    f.coeffs = {x * x2, PS::zero() - (x + x2), mono(Rational(1), Rational(0))};
    auto roots = newton_puiseux(f, 2, 6);
    REQUIRE(roots.size() == 2);
    bool found_x = false, found_x2 = false;
    for (const auto& r : roots) {
        if (r.series.terms == x.terms) found_x = true;
        if (r.series.terms == x2.terms) found_x2 = true;
    }
    CHECK(found_x);
    CHECK(found_x2);
}

TEST_CASE("newton_puiseux returns nothing for y^2 + x") {
    SeriesPoly<Rational> f;
    f.coeffs = {mono(Rational(1), Rational(1)), PS::zero(), mono(Rational(1), Rational(0))};
    CHECK(newton_puiseux(f, 2, 4).empty());
}

TEST_CASE("floor examples") {
    // x^{1/2} + 1/2
    PS a = mono(Rational(1), Rational(1, 2)) + mono(Rational(1, 2), Rational(0));
    FloorResult<Rational> fa = ps_floor(a);
    REQUIRE(fa.ok());
    CHECK(same_series(fa.integer_part, mono(Rational(1), Rational(1, 2))));
    CHECK(fa.fractional_sign == Sign::positive);
    // x + 3 - x^{-1}: integer part x + 2
    PS b = mono(Rational(1), Rational(1)) + mono(Rational(3), Rational(0)) +
           mono(Rational(-1), Rational(-1));
    FloorResult<Rational> fb = ps_floor(b);
    REQUIRE(fb.ok());
    CHECK(same_series(fb.integer_part,
                      mono(Rational(1), Rational(1)) + mono(Rational(2), Rational(0))));
    // 7/3 -> 2
    FloorResult<Rational> fc = ps_floor(mono(Rational(7, 3), Rational(0)));
    REQUIRE(fc.ok());
    CHECK(same_series(fc.integer_part, mono(Rational(2), Rational(0))));
    // truncated above 0: floor must refuse
    PS bad;
    bad.trunc = Rational(0);
    CHECK(!ps_floor(bad).ok());
}

TEST_CASE("ring axioms on random exact series") {
    std::mt19937 rng(505);
    for (int i = 0; i < 40; ++i) {
        PS a = random_exact_series(rng);
        PS b = random_exact_series(rng);
        PS c = random_exact_series(rng);
        CHECK(same_series((a + b) + c, a + (b + c)));
        CHECK(same_series((a * b) * c, a * (b * c)));
        CHECK(same_series(a * (b + c), a * b + a * c));
    }
}

TEST_CASE("sign is multiplicative on exact series") {
    auto as_int = [](Sign s) { return s == Sign::positive ? 1 : s == Sign::negative ? -1 : 0; };
    std::mt19937 rng(606);
    for (int i = 0; i < 60; ++i) {
        PS a = random_exact_series(rng);
        PS b = random_exact_series(rng);
        CHECK(as_int(ps_sign(a * b)) == as_int(ps_sign(a)) * as_int(ps_sign(b)));
    }
}

TEST_CASE("floor contract on random admissible series") {
    std::mt19937 rng(707);
    for (int i = 0; i < 100; ++i) {
        PS a = random_exact_series(rng);
        FloorResult<Rational> r = ps_floor(a);
        REQUIRE(r.ok());
        PS diff = a - r.integer_part;
        Sign below = ps_sign(diff);
        CHECK((below == Sign::zero || below == Sign::positive));
        CHECK(ps_sign(diff - mono(Rational(1), Rational(0))) == Sign::negative);
    }
}

TEST_CASE("random products of linear factors are recovered with exact plug-back") {
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> nfac(1, 3);
    static const Rational exps[] = {Rational(2), Rational(1), Rational(1, 2), Rational(0)};
    for (int trial = 0; trial < 30; ++trial) {
        int k = nfac(rng);
        std::vector<PS> roots;
        for (int i = 0; i < k; ++i) {
            PS s;
            for (const Rational& e : exps)
                if (coeff(rng) > 2) s = s + mono(Rational(coeff(rng)), e);
            if (s.terms.empty()) s = mono(Rational(coeff(rng) + 7), Rational(1));
            // keep the roots distinct so every branch separates
            bool dup = false;
            for (const auto& r : roots) dup = dup || r.terms == s.terms;
            if (dup) {
                --i;
                continue;
            }
            roots.push_back(std::move(s));
        }
        SeriesPoly<Rational> f;
        f.coeffs.assign(static_cast<size_t>(k) + 1, PS::zero());
        f.coeffs[0] = mono(Rational(1), Rational(0));
        size_t deg = 0;
        for (const PS& s : roots) {
            // multiply by (y - s)
            std::vector<PS> next(deg + 2, PS::zero());
            for (size_t j = 0; j <= deg; ++j) {
                next[j + 1] = next[j + 1] + f.coeffs[j];
                next[j] = next[j] - f.coeffs[j] * s;
            }
            for (size_t j = 0; j <= deg + 1; ++j) f.coeffs[j] = next[j];
            ++deg;
        }
        auto found = newton_puiseux(f, k, 6);
        CHECK(found.size() == roots.size());
        for (const PS& s : roots) {
            bool hit = false;
            for (const auto& r : found) {
                if (r.series.terms == s.terms) {
                    hit = true;
                    // plug-back: residual vanishes identically for exact roots
                    if (r.exact) CHECK(f.eval(r.series).known_zero());
                }
            }
            CHECK(hit);
        }
    }
}

TEST_CASE("sign changes at rational samples bracket a series root") {
    std::mt19937 rng(909);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        // product of 2 distinct linear factors with constant-series roots
        Rational r1(Integer(coeff(rng)));
        Rational r2 = r1 + Rational(Integer(1 + std::abs(coeff(rng))));
        PS s1 = mono(r1, Rational(0));
        PS s2 = mono(r2, Rational(0));
        SeriesPoly<Rational> f;
        f.coeffs = {s1 * s2, PS::zero() - (s1 + s2), mono(Rational(1), Rational(0))};
        auto roots = newton_puiseux(f, 2, 4);
        // sample at integers around the roots; every sign change brackets one
        for (Integer c = r1.floor() - 2; c < r2.ceil() + 2; ++c) {
            PS at_c = f.eval(mono(Rational(c), Rational(0)));
            PS at_c1 = f.eval(mono(Rational(c + 1), Rational(0)));
            if (ps_sign(at_c) == Sign::negative && ps_sign(at_c1) == Sign::positive) {
                bool bracketed = false;
                for (const auto& r : roots) {
                    Sign lo = ps_sign(r.series - mono(Rational(c), Rational(0)));
                    Sign hi = ps_sign(mono(Rational(c + 1), Rational(0)) - r.series);
                    bracketed = bracketed || (lo != Sign::negative && hi != Sign::negative);
                }
                CHECK(bracketed);
            }
        }
    }
}
