// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] points at the shipped scenarios directory.

#include "dor/axioms.hpp"
#include "dor/parse.hpp"
#include "dor/scenario.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

using namespace dor;

namespace {

struct Criterion {
    int number;
    std::string label;
    double limit_seconds;
    bool passed = true;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            if (failures.size() < 5) failures.push_back(what);
        }
    }
};

MBElement admit(const MBConfig& cfg, const NFPoly& p) {
    auto adm = mb_admit(p, cfg);
    if (!adm.accepted()) throw std::runtime_error("inadmissible test element");
    return *adm.element;
}

MBElement admit(const MBConfig& cfg, const std::string& text) {
    return admit(cfg, parse_nf_poly(text, cfg.field, cfg.indeterminates));
}

NFPoly random_admissible(const MBConfig& cfg, std::mt19937& rng, int max_height, unsigned max_deg) {
    std::uniform_int_distribution<int> num(-max_height, max_height);
    static const Integer dens[] = {1, 2, 3, 4, 6, 8, 9, 12};
    std::uniform_int_distribution<int> dpick(0, 7);
    NFPoly p = NFPoly::constant(FieldElement::from_rational(cfg.field, Rational(num(rng))));
    for (unsigned d = 1; d <= max_deg; ++d) {
        std::vector<Rational> coords;
        for (size_t i = 0; i < cfg.field->degree(); ++i)
            coords.emplace_back(Integer(num(rng)), dens[static_cast<size_t>(dpick(rng))]);
        p = p + NFPoly::term(FieldElement(cfg.field, std::move(coords)), Monomial{d});
    }
    return p;
}

// --- criterion 1: division and normality over the two number fields -------

void criterion1(Criterion& c, const std::string& scenario_dir) {
    MBConfig cfg = MBConfig::make(NumberField::sqrt2(), PrimeSet::make({2, 3}), 5);
    std::vector<MBElement> gs{admit(cfg, "x"), admit(cfg, "3*x + 7"),
                              admit(cfg, "[0,1/3]*x^2 + 5")};
    for (const MBElement& g : gs)
        for (Integer n : {2, 3, 4, 6, 8, 9, 12}) {
            MBDivision r = zr_divide(cfg, g, n);
            c.require(r.witness(), "expected a witness dividing by " + n.str());
        }
    for (Integer n : {5, 7, 10}) {
        MBDivision r = zr_divide(cfg, admit(cfg, "x"), n);
        c.require(!r.witness() && r.refutation.has_value(),
                  "expected a refutation certificate for n=" + n.str());
    }
    NormalityVerdict nonm = normality_check(cfg, admit(cfg, "[0,1]*x^2"), admit(cfg, "x^2"),
                                            {admit(cfg, "0"), admit(cfg, "-2")});
    c.require(nonm.outcome == NormalityOutcome::nonmember, "sqrt2*x^2 / x^2 must be nonmember");

    std::mt19937 rng(20260823);
    std::uniform_int_distribution<int> num(-6, 6);
    for (int i = 0; i < 100; ++i) {
        NFPoly h = random_admissible(cfg, rng, 6, 1);
        NFPoly v = parse_nf_poly("x^2 + " + std::to_string(1 + std::abs(num(rng))), cfg.field, 1);
        NormalityVerdict r = normality_check(cfg, admit(cfg, h * v), admit(cfg, v),
                                             {admit(cfg, -h)});
        c.require(r.outcome == NormalityOutcome::member && r.quotient->poly == h,
                  "constructed degree-1 instance must come back member");
    }

    MBConfig cbc = MBConfig::make(NumberField::cbrt2(), PrimeSet::make({2, 3}), 5);
    NormalityVerdict cb = normality_check(
        cbc, admit(cbc, "[0,1,0]*x^3"), admit(cbc, "x^3"),
        {admit(cbc, "0"), admit(cbc, "0"), admit(cbc, "-2")});
    c.require(cb.outcome == NormalityOutcome::nonmember, "cbrt2 witness must be nonmember");
    for (int i = 0; i < 100; ++i) {
        NFPoly h = random_admissible(cbc, rng, 5, 1);
        NFPoly a = random_admissible(cbc, rng, 5, 1);
        NFPoly v = parse_nf_poly("x^2 + " + std::to_string(1 + std::abs(num(rng))), cbc.field, 1);
        // roots h and a: t^2 - (h+a) t + h a
        NormalityVerdict r = normality_check(cbc, admit(cbc, h * v), admit(cbc, v),
                                             {admit(cbc, -(h + a)), admit(cbc, h * a)});
        c.require(r.outcome == NormalityOutcome::member,
                  "constructed degree-2 instance must come back member");
    }

    ScenarioResult shipped = run_scenario_file(scenario_dir + "/theorem_b_s23_q5.json");
    c.require(shipped.exit_code == 0, "shipped scenario must exit 0");
}

// --- criterion 2: brute-force oracle agreement ------------------------------

void criterion2(Criterion& c) {
    MBConfig cfg = MBConfig::make(NumberField::sqrt2(), PrimeSet::make({2, 3}), 5);
    // <S> enumerated independently of the factorization routines
    std::set<Integer> monoid;
    for (Integer a = 1; a <= 65536; a *= 2)
        for (Integer b = a; b <= 65536; b *= 3) monoid.insert(b);
    std::mt19937 rng(424242);
    int disagreements = 0, produced = 0;
    while (produced < 500) {
        NFPoly g = random_admissible(cfg, rng, 20, 3);
        auto adm = mb_admit(g, cfg);
        if (!adm.accepted()) continue;
        ++produced;
        for (Integer n = 2; n <= 30; ++n) {
            bool oracle = true;
            for (const auto& [m, coeff] : g.terms()) {
                if (m.empty()) continue;
                Integer den(1);
                FieldElement q = coeff * FieldElement::from_rational(cfg.field,
                                                                     Rational(Integer(1), n));
                for (const Rational& coord : q.coords()) den = lcm(den, coord.den());
                oracle = oracle && monoid.count(den) > 0;
            }
            MBDivision r = zr_divide(cfg, *adm.element, n);
            if (r.witness() != oracle) ++disagreements;
        }
    }
    c.require(disagreements == 0,
              std::to_string(disagreements) + " disagreements with the enumeration oracle");
}

// --- criterion 3: the eight-stage chain -------------------------------------

ChainState criterion3(Criterion& c) {
    ChainState st = ChainState::init(PrimeSet::make({2, 3}), 24);
    QPoly two = QPoly::constant(Rational(2));
    QPoly three = QPoly::constant(Rational(3));

    auto check_stage = [&c](const ChainState& s) {
        ChainState::Audit a = s.audit();
        c.require(a.ok && a.issues.empty(), "audit must stay clean after every stage");
        // every recorded Bezout identity re-evaluates to exactly 1
        for (const ChainRelation& rel : s.relations()) {
            if (!rel.y_var) continue;
            QPoly ident = QPoly::variable(Rational(1), rel.x_var) * rel.v +
                          QPoly::variable(Rational(1), *rel.y_var) * rel.w;
            c.require(s.normal_form(ident) == RatFunc::of(QPoly::constant(Rational(1))),
                      "Bezout identity must normalize to 1");
        }
    };
    auto zhat = [&](ChainState s, const QPoly& a, Integer n) {
        ZhatStepResult r = s.zhat_step(a, n);
        c.require(r.element.expr.scaled(Rational(n)) == a, "n * (a/n) must equal a exactly");
        check_stage(r.state);
        return std::move(r.state);
    };

    st = st.f_step_degenerate().state;                       // stage 1
    st = st.register_prime(two, "two");
    st = st.register_prime(three, "three");
    QPoly x1 = QPoly::variable(Rational(1), 0);
    st = st.register_prime(x1, "W1");
    check_stage(st);
    st = zhat(st, x1 + QPoly::constant(Rational(1)), 2);     // stage 2
    FStepResult f2 = st.f_step(two, x1);                     // stage 3
    st = std::move(f2.state);
    check_stage(st);

    // bezout on the stage's prime pair: exactly (x_k, y_k, 1)
    FactorCert c2{1, {{two, 1}}}, cx{1, {{x1, 1}}};
    BezoutResult bez = bezout_witness(st, two, c2, x1, cx);
    c.require(bez.witness() && *bez.z == QPoly::variable(Rational(1), f2.x_var) &&
                  *bez.t == QPoly::variable(Rational(1), *f2.y_var) &&
                  *bez.d == QPoly::constant(Rational(1)),
              "bezout_witness must return the stage's (x_k, y_k, 1)");

    st = zhat(st, x1 + QPoly::constant(Rational(2)), 3);     // stage 4
    st = std::move(st.f_step(three, x1).state);              // stage 5
    check_stage(st);
    st = zhat(st, x1 + QPoly::constant(Rational(3)), 4);     // stage 6
    QPoly x2 = QPoly::variable(Rational(1), 1);
    st = st.register_prime(x2, "W2");
    st = std::move(st.f_step(two, x2).state);                // stage 7
    check_stage(st);
    st = zhat(st, x1 + QPoly::constant(Rational(5)), 6);     // stage 8
    c.require(st.stage() == 8, "expected exactly eight stages");

    ChainDivision div5 = zr_divide(st, x1, 5);
    c.require(!div5.witness() && div5.refutation.find("5") != std::string::npos,
              "division of x1 by 5 must be refuted through the residue analysis");
    c.require(st.kill_log().empty(), "kill log must be empty");
    return st;
}

// --- criterion 4: series roots and integer parts -----------------------------

void criterion4(Criterion& c) {
    using PS = PuiseuxSeries<Rational>;
    auto mono = [](Rational v, Rational e) { return PS::monomial(std::move(v), std::move(e)); };

    SeriesPoly<Rational> sq;
    sq.coeffs = {mono(Rational(-1), Rational(1)), PS::zero(), mono(Rational(1), Rational(0))};
    auto roots = newton_puiseux(sq, 2, 4);
    c.require(roots.size() == 2, "y^2 - x must have two series roots");
    for (const auto& r : roots)
        c.require(r.exact && sq.eval(r.series).known_zero(), "square roots must plug back to zero");

    std::mt19937 rng(555);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> nfac(1, 3);
    static const Rational exps[] = {Rational(2), Rational(1), Rational(1, 2), Rational(0)};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PS> factors;
        int k = nfac(rng);
        while (static_cast<int>(factors.size()) < k) {
            PS s;
            for (const Rational& e : exps)
                if (coeff(rng) > 2) s = s + mono(Rational(coeff(rng)), e);
            if (s.terms.empty()) s = mono(Rational(coeff(rng) + 7), Rational(1));
            bool dup = false;
            for (const auto& f : factors) dup = dup || f.terms == s.terms;
            if (!dup) factors.push_back(std::move(s));
        }
        SeriesPoly<Rational> f;
        f.coeffs.assign(factors.size() + 1, PS::zero());
        std::vector<PS> acc{mono(Rational(1), Rational(0))};
        for (const PS& s : factors) {
            std::vector<PS> next(acc.size() + 1, PS::zero());
            for (size_t j = 0; j < acc.size(); ++j) {
                next[j + 1] = next[j + 1] + acc[j];
                next[j] = next[j] - acc[j] * s;
            }
            acc = std::move(next);
        }
        f.coeffs = acc;
        auto found = newton_puiseux(f, k, 6);
        c.require(found.size() == factors.size(), "all linear factors must be recovered");
        for (const PS& s : factors) {
            bool hit = false;
            for (const auto& r : found) {
                if (r.series.terms != s.terms) continue;
                hit = true;
                if (r.exact)
                    c.require(f.eval(r.series).known_zero(), "exact roots plug back to zero");
                else
                    c.require(r.residual_order.has_value(),
                              "truncated roots must report a residual order");
            }
            c.require(hit, "a constructed root went missing");
        }
    }

    std::uniform_int_distribution<int> num(-9, 9);
    static const Rational fexps[] = {Rational(2),    Rational(3, 2),  Rational(1),
                                     Rational(1, 2), Rational(0),     Rational(-1, 2),
                                     Rational(-1)};
    for (int i = 0; i < 200; ++i) {
        PS a;
        for (const Rational& e : fexps)
            if (num(rng) > 0) a = a + mono(Rational(Integer(num(rng)), Integer(2)), e);
        FloorResult<Rational> r = ps_floor(a);
        c.require(r.ok(), "floor must succeed on exact series");
        PS diff = a - r.integer_part;
        c.require(ps_sign(diff) != Sign::negative, "a - floor(a) must be >= 0");
        c.require(ps_sign(diff - mono(Rational(1), Rational(0))) == Sign::negative,
                  "a - floor(a) must be < 1");
    }
}

// --- criterion 5: open-induction obstructions --------------------------------

void criterion5(Criterion& c) {
    ObstructionReport a = oi_obstruction(RatPoly({Rational(-2), Rational(0), Rational(1)}), 1,
                                         {false, false});
    c.require(a.conclusion == ObstructionConclusion::obstructed && a.sanity_bracket_ok,
              "t^2-2 at p=1 must be obstructed with a verified bracket");
    ObstructionReport b = oi_obstruction(RatPoly({Rational(-4), Rational(0), Rational(1)}), 2, {});
    c.require(b.conclusion == ObstructionConclusion::not_obstructed && b.sanity_bracket_ok,
              "t^2-4 at p=2 must not be obstructed");
    ObstructionReport d = oi_obstruction(
        RatPoly({Rational(-2), Rational(0), Rational(0), Rational(1)}), 2, {false});
    c.require(d.conclusion == ObstructionConclusion::obstructed && d.sanity_bracket_ok,
              "t^3-2 at p=2 with an outside certificate must be obstructed");
}

// --- criterion 6: invariant regression under a fixed seed ---------------------

void criterion6(Criterion& c, const ChainState& chain) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 50);
    for (int i = 0; i < 200; ++i) {
        Rational a(Integer(num(rng)), Integer(den(rng)));
        Rational b(Integer(num(rng)), Integer(den(rng)));
        c.require((a + b).is_canonical() && (a * b).is_canonical() && (a - b).is_canonical(),
                  "rational arithmetic must stay gcd-reduced");
    }
    MBConfig cfg = MBConfig::make(NumberField::sqrt2(), PrimeSet::make({2, 3}), 5);
    for (int i = 0; i < 50; ++i) {
        MBElement a = admit(cfg, random_admissible(cfg, rng, 9, 2));
        MBElement b = admit(cfg, random_admissible(cfg, rng, 9, 2));
        for (RingOp op : {RingOp::add, RingOp::sub, RingOp::mul})
            c.require(mb_admit(mb_arith(a, b, op, cfg).poly, cfg).accepted(),
                      "ring results must re-admit");
        for (Integer n : {2, 3, 6, 12}) {
            MBDivision r = zr_divide(cfg, a, n);  // member-soundness is asserted inside
            if (r.witness()) {
                NFPoly back =
                    r.quotient->poly.scaled(FieldElement::from_rational(cfg.field, Rational(n))) +
                    NFPoly::constant(
                        FieldElement::from_rational(cfg.field, Rational(r.remainder)));
                c.require(back == a.poly, "witness must re-multiply to the dividend");
            }
        }
    }
    // residue coherence of the final chain state, re-derived here
    for (size_t g = 0; g < chain.generators().size(); ++g)
        for (const Integer& n : chain.tracked_moduli())
            for (const Integer& m : chain.tracked_moduli())
                if (m < n && n % m == 0)
                    c.require(chain.generator_residue(g, m) ==
                                  mod_floor(chain.generator_residue(g, n), m),
                              "final residue table must be CRT-coherent");
}

}  // namespace

int main(int argc, char** argv) {
    std::string scenario_dir = argc > 1 ? argv[1] : "scenarios";
    std::vector<Criterion> criteria{
        {1, "division and normality witnesses over Q(sqrt2) and Q(cbrt2)", 10.0},
        {2, "oracle agreement on 500 random divisions", 120.0},
        {3, "eight-stage chain with clean audits", 30.0},
        {4, "series roots and integer parts", 30.0},
        {5, "open-induction obstruction verdicts", 5.0},
        {6, "invariant regression under a fixed seed", 120.0},
    };
    ChainState chain = ChainState::init(PrimeSet::make({2}), 2);
    bool all_ok = true;
    for (Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            switch (c.number) {
                case 1: criterion1(c, scenario_dir); break;
                case 2: criterion2(c); break;
                case 3: chain = criterion3(c); break;
                case 4: criterion4(c); break;
                case 5: criterion5(c); break;
                case 6: criterion6(c, chain); break;
            }
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.require(secs < c.limit_seconds,
                  "runtime " + std::to_string(secs) + "s exceeds " +
                      std::to_string(c.limit_seconds) + "s");
        std::ostringstream line;
        line << (c.passed ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.label
             << " (" << secs << "s)";
        std::cout << line.str() << "\n";
        for (const std::string& f : c.failures) std::cout << "    - " << f << "\n";
        all_ok = all_ok && c.passed;
    }
    return all_ok ? 0 : 1;
}
