#include "dor/chain.hpp"
#include "dor/mb_model.hpp"
#include "dor/parse.hpp"

#include <doctest.h>

#include <random>

using namespace dor;

namespace {

MBConfig sqrt2_config(std::vector<Integer> s = {2, 3}, Integer q = 5) {
    return MBConfig::make(NumberField::sqrt2(), PrimeSet::make(std::move(s)), std::move(q));
}

NFPoly nf(const std::string& text, const MBConfig& cfg) {
    return parse_nf_poly(text, cfg.field, cfg.indeterminates);
}

MBElement elem(const std::string& text, const MBConfig& cfg) {
    auto adm = mb_admit(nf(text, cfg), cfg);
    REQUIRE(adm.accepted());
    return *adm.element;
}

MBElement random_mb(const MBConfig& cfg, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den_pick(0, 3);
    static const Integer dens[] = {1, 2, 3, 4};
    NFPoly p = NFPoly::constant(FieldElement::from_rational(cfg.field, Rational(num(rng))));
    for (unsigned d = 1; d <= 3; ++d) {
        std::vector<Rational> coords;
        for (size_t i = 0; i < cfg.field->degree(); ++i)
            coords.emplace_back(Integer(num(rng)), dens[den_pick(rng)]);
        p = p + NFPoly::term(FieldElement(cfg.field, std::move(coords)), Monomial{d});
    }
    auto adm = mb_admit(p, cfg);
    REQUIRE(adm.accepted());
    return *adm.element;
}

}  // namespace

TEST_CASE("mb_admit examples") {
    MBConfig with3 = sqrt2_config({3}, 5);
    CHECK(mb_admit(nf("[0,1/3]*x", with3), with3).accepted());
    MBConfig with2 = sqrt2_config({2}, 5);
    auto rej = mb_admit(nf("[0,1/3]*x", with2), with2);
    CHECK(!rej.accepted());
    CHECK(*rej.rejection->offending_prime == 3);
    auto cst = mb_admit(nf("[0,1]", with2), with2);
    CHECK(!cst.accepted());
    CHECK(cst.rejection->reason == "constant coefficient not a rational integer");
}

TEST_CASE("mb_compare examples") {
    MBConfig cfg = sqrt2_config();
    CHECK(mb_compare(elem("x", cfg), elem("1000000000", cfg)) == Ordering::greater);
    CHECK(mb_compare(elem("2*x + 1", cfg), elem("2*x", cfg)) == Ordering::greater);
    CHECK(mb_compare(elem("[0,1]*x", cfg), elem("x", cfg)) == Ordering::greater);
}

TEST_CASE("mb_arith examples") {
    MBConfig cfg = sqrt2_config();
    CHECK(mb_arith(elem("x", cfg), elem("x", cfg), RingOp::mul, cfg).poly == nf("x^2", cfg));
    CHECK(mb_arith(elem("[0,1/3]*x + 1", cfg), elem("3", cfg), RingOp::mul, cfg).poly ==
          nf("[0,1]*x + 3", cfg));
    CHECK(mb_arith(elem("[0,1]*x + 1", cfg), elem("[0,1]*x - 1", cfg), RingOp::mul, cfg).poly ==
          nf("2*x^2 - 1", cfg));
}

TEST_CASE("mb closure and discreteness on random elements") {
    MBConfig cfg = sqrt2_config();
    std::mt19937 rng(111);
    MBElement one = elem("1", cfg);
    MBElement zero = elem("0", cfg);
    for (int i = 0; i < 50; ++i) {
        MBElement a = random_mb(cfg, rng);
        MBElement b = random_mb(cfg, rng);
        for (RingOp op : {RingOp::add, RingOp::sub, RingOp::mul})
            CHECK(mb_admit(mb_arith(a, b, op, cfg).poly, cfg).accepted());
        // discreteness: nothing strictly between 0 and 1
        if (mb_compare(a, zero) == Ordering::greater)
            CHECK(mb_compare(a, one) != Ordering::less);
    }
}

TEST_CASE("multi-indeterminate variant admits field coefficients") {
    MBConfig cfg = MBConfig::make(NumberField::sqrt2(), PrimeSet::make({2}), 5, 2,
                                  MBVariant::full_field);
    // coefficient sqrt2/3 fine here, and x2 dominates any power of x1
    CHECK(mb_admit(nf("[0,1/3]*x1^4", cfg), cfg).accepted());
    CHECK(mb_compare(elem("x2", cfg), elem("x1^4", cfg)) == Ordering::greater);
    auto rej = mb_admit(nf("[0,1]", cfg), cfg);
    CHECK(!rej.accepted());  // the integer-constant invariant still applies
}

TEST_CASE("shep_admit examples") {
    FieldPtr f = NumberField::sqrt2();
    auto fe = [&](Rational r) { return FieldElement::from_rational(f, std::move(r)); };
    using FS = PuiseuxSeries<FieldElement>;
    FS good = FS::monomial(fe(Rational(1)), Rational(1, 2)) +
              FS::monomial(fe(Rational(5)), Rational(0));
    CHECK(shep_admit(good).accepted());
    FS half = FS::monomial(fe(Rational(1)), Rational(1, 2)) +
              FS::monomial(fe(Rational(1, 2)), Rational(0));
    CHECK(!shep_admit(half).accepted());
    FS neg = FS::monomial(fe(Rational(1)), Rational(-1)) + FS::monomial(fe(Rational(1)), Rational(0));
    CHECK(!shep_admit(neg).accepted());
}

TEST_CASE("shepherdson integer-part law") {
    FieldPtr f = NumberField::sqrt2();
    std::mt19937 rng(222);
    std::uniform_int_distribution<int> num(-6, 6);
    static const Rational exps[] = {Rational(3, 2), Rational(1), Rational(1, 2), Rational(0),
                                    Rational(-1, 2)};
    using FS = PuiseuxSeries<FieldElement>;
    for (int i = 0; i < 60; ++i) {
        FS a;
        for (const Rational& e : exps) {
            std::vector<Rational> coords{Rational(num(rng)), Rational(num(rng))};
            a = a + FS::monomial(FieldElement(f, std::move(coords)), e);
        }
        FloorResult<FieldElement> r = ps_floor(a);
        REQUIRE(r.ok());
        CHECK(shep_admit(r.integer_part).accepted());
        FS diff = a - r.integer_part;
        CHECK(ps_sign(diff) != Sign::negative);
        CHECK(ps_sign(diff - FS::monomial(FieldElement::from_rational(f, Rational(1)),
                                          Rational(0))) == Sign::negative);
    }
}

TEST_CASE("chain_init residue table") {
    ChainState st = ChainState::init(PrimeSet::make({2, 3}), 12);
    std::vector<Integer> expected{2, 3, 4, 6, 8, 9, 12};
    CHECK(st.tracked_moduli() == expected);
    // integers carry their natural residues
    auto r = st.residue_mod(QPoly::constant(Rational(7)), 6);
    REQUIRE(r.ok());
    CHECK(*r.residue == 1);

    ChainState five = ChainState::init(PrimeSet::make({5}), 30);
    std::vector<Integer> exp5{5, 25};
    CHECK(five.tracked_moduli() == exp5);

    CHECK_THROWS_AS(ChainState::init(PrimeSet(), 10), ChainError);
}

TEST_CASE("residue extension choices match exhaustive search") {
    // modulus 2: v=1, w=1 -> x=1, y=0
    auto [x2, y2] = chain_residue_extend_at(2, 2, 1, 1);
    CHECK(x2 == 1);
    CHECK(y2 == 0);
    // modulus 3: v=2, w=1 -> smallest unit x=1, y = 1-2 = -1 = 2
    auto [x3, y3] = chain_residue_extend_at(3, 3, 2, 1);
    CHECK(x3 == 1);
    CHECK(y3 == 2);
    // oracle: exhaustive search over small prime-power moduli
    for (Integer pk : {Integer(4), Integer(9), Integer(8)}) {
        Integer p = pk % 2 == 0 ? 2 : 3;
        for (Integer v = 0; v < pk; ++v)
            for (Integer w = 0; w < pk; ++w) {
                std::optional<std::pair<Integer, Integer>> best;
                for (Integer xi = 1; !best && xi < pk; ++xi) {
                    if (gcd(xi, p) != 1) continue;
                    for (Integer eta = 0; eta < pk; ++eta)
                        if (mod_floor(eta * w, pk) == mod_floor(1 - xi * v, pk)) {
                            best = {xi, eta};
                            break;
                        }
                }
                if (best) {
                    auto got = chain_residue_extend_at(pk, p, v, w);
                    CHECK(got == *best);
                } else {
                    CHECK_THROWS_AS(chain_residue_extend_at(pk, p, v, w), ChainError);
                }
            }
    }
    // w = 0 with 1 - x*v never zero: infeasible
    CHECK_THROWS_AS(chain_residue_extend_at(4, 2, 2, 0), ChainError);
}

TEST_CASE("degenerate first step and a full F-stage") {
    ChainState st = ChainState::init(PrimeSet::make({2, 3}), 12);
    FStepResult first = st.f_step_degenerate();
    st = std::move(first.state);
    CHECK(st.generators().size() == 1);
    CHECK(st.generators()[0].name == "x1");
    CHECK(st.generator_residue(0, 12) == 1);

    st = st.register_prime(QPoly::constant(Rational(2)), "two");
    st = st.register_prime(QPoly::variable(Rational(1), 0), "W");
    QPoly two = QPoly::constant(Rational(2));
    QPoly w = QPoly::variable(Rational(1), 0);
    FStepResult r = st.f_step(two, w);
    st = std::move(r.state);
    REQUIRE(r.y_var.has_value());
    // identity x2*2 + y2*x1 = 1 normalizes to exactly 1
    QPoly ident = QPoly::variable(Rational(1), r.x_var) * two +
                  QPoly::variable(Rational(1), *r.y_var) * w;
    CHECK(st.normal_form(ident) == RatFunc::of(QPoly::constant(Rational(1))));
    // v = w is rejected
    CHECK_THROWS_AS(st.f_step(two, two), ChainError);
    // audit stays clean
    ChainState::Audit audit = st.audit();
    CHECK(audit.ok);
    CHECK(audit.issues.empty());
    CHECK(audit.parsimony.size() == st.generators().size());
}

TEST_CASE("zhat step examples") {
    ChainState st = ChainState::init(PrimeSet::make({2, 3}), 12);
    st = st.f_step_degenerate().state;
    QPoly x1 = QPoly::variable(Rational(1), 0);
    // x1 = 1 mod 2, so x1 + 1 divides by 2
    ZhatStepResult r = st.zhat_step(x1 + QPoly::constant(Rational(1)), 2);
    CHECK(r.element.expr.scaled(Rational(2)) == x1 + QPoly::constant(Rational(1)));
    // integers: 6/3 = 2
    ZhatStepResult s = r.state.zhat_step(QPoly::constant(Rational(6)), 3);
    CHECK(s.element.expr == QPoly::constant(Rational(2)));
    // x1 itself is a unit: dividing by 2 is the refutation path
    CHECK_THROWS_AS(st.zhat_step(x1, 2), ChainError);
    // untracked modulus
    CHECK_THROWS_AS(st.zhat_step(x1 + QPoly::constant(Rational(1)), 32), ChainError);
}

TEST_CASE("residue coherence after every step") {
    ChainState st = ChainState::init(PrimeSet::make({2, 3}), 24);
    st = st.f_step_degenerate().state;
    st = st.register_prime(QPoly::constant(Rational(2)), "two");
    st = st.register_prime(QPoly::constant(Rational(3)), "three");
    st = st.register_prime(QPoly::variable(Rational(1), 0), "W1");
    auto coherent = [](const ChainState& s) {
        for (size_t g = 0; g < s.generators().size(); ++g)
            for (const Integer& n : s.tracked_moduli())
                for (const Integer& m : s.tracked_moduli())
                    if (m < n && n % m == 0 &&
                        s.generator_residue(g, m) != mod_floor(s.generator_residue(g, n), m))
                        return false;
        return true;
    };
    CHECK(coherent(st));
    st = st.f_step(QPoly::constant(Rational(2)), QPoly::variable(Rational(1), 0)).state;
    CHECK(coherent(st));
    st = st.zhat_step(QPoly::variable(Rational(1), 0) + QPoly::constant(Rational(1)), 2).state;
    CHECK(coherent(st));
    st = st.f_step(QPoly::constant(Rational(3)), QPoly::variable(Rational(1), 0)).state;
    CHECK(coherent(st));
    CHECK(st.audit().ok);
    CHECK(st.kill_log().empty());
}

TEST_CASE("chain state serialization round-trips") {
    ChainState st = ChainState::init(PrimeSet::make({2, 3}), 24);
    st = st.f_step_degenerate().state;
    st = st.register_prime(QPoly::constant(Rational(2)), "two");
    st = st.register_prime(QPoly::variable(Rational(1), 0), "W1");
    st = st.f_step(QPoly::constant(Rational(2)), QPoly::variable(Rational(1), 0)).state;
    std::string blob = st.to_json();
    ChainState back = ChainState::from_json(blob);
    CHECK(back.to_json() == blob);
    // replay: a reloaded state continues identically
    QPoly a = QPoly::variable(Rational(1), 0) + QPoly::constant(Rational(1));
    CHECK(st.zhat_step(a, 2).state.to_json() == back.zhat_step(a, 2).state.to_json());
}
