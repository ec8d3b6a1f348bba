#include "dor/chain.hpp"

#include <json.hpp>

#include <algorithm>

namespace dor {

namespace {

int qpoly_sign(const QPoly& p) {
    if (p.is_zero()) return 0;
    return p.leading_term().second.sign();
}

Integer int_pow(const Integer& b, unsigned e) {
    Integer r(1);
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

int RatFunc::sign() const {
    int d = qpoly_sign(den);
    if (d == 0) throw std::domain_error("RatFunc: zero denominator");
    return qpoly_sign(num) * d;
}

std::pair<Integer, Integer> chain_residue_extend_at(const Integer& pk, const Integer& p,
                                                    const Integer& v_res, const Integer& w_res) {
    for (Integer xi = 1; xi < pk; ++xi) {
        if (xi % p == 0) continue;  // x must stay a unit
        Integer target = mod_floor(Integer(1) - xi * v_res, pk);
        Integer g = gcd(w_res == 0 ? pk : w_res, pk);
        if (target % g != 0) continue;
        Integer eta;
        if (w_res == 0) {
            eta = 0;  // any value satisfies 0 * eta = 0
        } else {
            Integer m = pk / g;
            auto [gg, s, t] = ext_gcd(w_res / g, m);
            (void)gg; (void)t;
            eta = mod_floor(s * (target / g), m);
        }
        return {xi, eta};
    }
    throw ChainError("chain_residue_extend: no unit residue admissible mod " + pk.str());
}

ChainState ChainState::init(PrimeSet s, Integer nmax) {
    if (s.empty()) throw ChainError("chain_init: S must be nonempty");
    if (nmax < s.primes().back()) throw ChainError("chain_init: nmax must be >= max(S)");
    ChainState st;
    st.s_ = std::move(s);
    st.nmax_ = std::move(nmax);
    return st;
}

std::vector<Integer> ChainState::tracked_moduli() const {
    std::vector<Integer> out{Integer(1)};
    for (const auto& p : s_.primes()) {
        size_t end = out.size();
        for (size_t i = 0; i < end; ++i) {
            Integer v = out[i] * p;
            while (v <= nmax_) {
                out.push_back(v);
                v *= p;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(out.begin());  // drop 1
    return out;
}

Integer ChainState::max_power(const Integer& p) const {
    Integer v = p;
    while (v * p <= nmax_) v *= p;
    return v;
}

Integer ChainState::generator_residue(size_t var, const Integer& n) const {
    auto f = s_.factor(n);
    if (!f.ok()) throw ChainError("generator_residue: modulus not in <S>");
    std::vector<ResiduePair> parts;
    const auto& primes = s_.primes();
    for (const auto& [p, e] : f.exponents) {
        Integer pe = int_pow(p, e);
        if (pe > max_power(p)) throw ChainError("generator_residue: modulus out of tracked range");
        size_t idx = static_cast<size_t>(std::find(primes.begin(), primes.end(), p) - primes.begin());
        parts.push_back({mod_floor(residues_.at(var).at(idx), pe), pe});
    }
    if (parts.empty()) return 0;  // n = 1
    auto r = crt_combine(parts);
    return r.combined->residue;
}

ChainState::ResidueResult ChainState::residue_mod(const QPoly& e, const Integer& n) const {
    ResidueResult out;
    auto nf = s_.factor(n);
    if (!nf.ok()) {
        out.error = "modulus " + n.str() + " has prime factor " +
                    nf.offending_prime->str() + " outside S";
        return out;
    }
    Integer k(1);
    for (const auto& [m, c] : e.terms()) k = lcm(k, c.den());
    auto kf = s_.factor(k);
    if (!kf.ok()) {
        out.error = "coefficient denominator " + k.str() + " not in <S>";
        return out;
    }
    Integer m = k * n;
    auto mf = s_.factor(m);
    for (const auto& [p, ex] : mf.exponents) {
        if (int_pow(p, ex) > max_power(p)) {
            out.error = "modulus out of tracked range: needs " + p.str() + "^" +
                        std::to_string(ex) + " > " + max_power(p).str();
            return out;
        }
    }
    // evaluate k*e (integer coefficients) at the generator residues mod m
    Integer acc(0);
    for (const auto& [mono, c] : e.terms()) {
        Integer t = mod_floor(c.num() * (k / c.den()), m);
        for (size_t v = 0; v < mono.size(); ++v) {
            if (mono[v] == 0) continue;
            Integer gr = generator_residue(v, m);
            for (unsigned i = 0; i < mono[v]; ++i) t = mod_floor(t * gr, m);
        }
        acc = mod_floor(acc + t, m);
    }
    if (acc % k != 0) {
        out.error = "element is not integral against the residue table";
        return out;
    }
    out.residue = mod_floor(acc / k, n);
    return out;
}

namespace {

// Evaluates a polynomial over a table of already-normalized generator values.
RatFunc eval_over(const QPoly& e, const std::vector<std::optional<RatFunc>>& values) {
    RatFunc acc = RatFunc::of(QPoly{});
    for (const auto& [mono, c] : e.terms()) {
        RatFunc t = RatFunc::of(QPoly::constant(c));
        for (size_t v = 0; v < mono.size(); ++v)
            for (unsigned i = 0; i < mono[v]; ++i) {
                if (v >= values.size() || !values[v])
                    throw ChainError("normal_form: unknown generator value");
                t = t * *values[v];
            }
        acc = acc + t;
    }
    return acc;
}

}  // namespace

RatFunc ChainState::normal_form(const QPoly& e) const {
    std::vector<std::optional<RatFunc>> values(gens_.size());
    // x-generators map to themselves
    for (size_t i = 0; i < gens_.size(); ++i)
        if (!gens_[i].is_y)
            values[i] = RatFunc::of(QPoly::variable(Rational(1), i));
    // y-generators in birth order; relations only reference earlier vars,
    // whose values are already filled in by the time each one is reached
    for (const auto& rel : relations_) {
        if (!rel.y_var) continue;
        RatFunc v = eval_over(rel.v, values);
        RatFunc w = eval_over(rel.w, values);
        RatFunc x = *values[rel.x_var];
        RatFunc one = RatFunc::of(QPoly::constant(Rational(1)));
        RatFunc num = one - x * v;
        values[*rel.y_var] = RatFunc{num.num * w.den, num.den * w.num};
    }
    return eval_over(e, values);
}

bool ChainState::coefficients_admissible(const QPoly& e) const {
    for (const auto& [m, c] : e.terms())
        if (!s_.generates(c.den())) return false;
    return true;
}

std::optional<size_t> ChainState::find_registered(const QPoly& elem) const {
    for (size_t i = 0; i < registry_.size(); ++i)
        if (registry_[i].elem == elem) return i;
    return std::nullopt;
}

std::optional<size_t> ChainState::find_relation(const QPoly& v, const QPoly& w) const {
    for (size_t i = 0; i < relations_.size(); ++i) {
        if (!relations_[i].y_var) continue;
        if ((relations_[i].v == v && relations_[i].w == w) ||
            (relations_[i].v == w && relations_[i].w == v))
            return i;
    }
    return std::nullopt;
}

ChainState ChainState::register_prime(const QPoly& elem, const std::string& name,
                                      const std::string& external_certificate) const {
    if (elem.is_zero()) throw ChainError("register_prime: zero element");
    if (find_registered(elem)) throw ChainError("register_prime: already registered");
    ChainState st = *this;
    PrimeCert cert;
    cert.elem = elem;
    cert.name = name;
    cert.birth_stage = stage_;
    if (elem.is_constant()) {
        Integer v = elem.constant_coeff()->num();
        if (!elem.constant_coeff()->is_integer() || !is_prime(v < 0 ? -v : v))
            throw ChainError("register_prime: constant " + elem.constant_coeff()->str() +
                             " is not a rational prime");
        cert.standard = true;
        cert.certificate = "trial division";
    } else {
        if (!coefficients_admissible(elem))
            throw ChainError("register_prime: coefficients not in Z<S>");
        if (elem.total_degree() != 1 && external_certificate.empty())
            throw ChainError("register_prime: nonlinear candidate needs an external certificate");
        cert.standard = false;
        cert.certificate = elem.total_degree() == 1 ? "linear at birth stage"
                                                    : external_certificate;
        // unit residue at every tracked prime power (Lemma-style preservation premise)
        for (const auto& p : s_.primes()) {
            Integer pk = max_power(p);
            auto r = residue_mod(elem, pk);
            if (!r.ok()) throw ChainError("register_prime: " + r.error);
            if (gcd(*r.residue, p) != 1)
                throw ChainError("register_prime: residue " + r.residue->str() + " mod " +
                                 pk.str() + " is not a unit");
        }
    }
    st.registry_.push_back(std::move(cert));
    return st;
}

FStepResult ChainState::f_step_degenerate() const {
    if (!gens_.empty()) throw ChainError("f_step_degenerate: only valid as the first step");
    ChainState st = *this;
    ++st.stage_;
    size_t x = st.gens_.size();
    st.gens_.push_back({"x1", st.stage_, false});
    std::vector<Integer> res;
    for (const auto& p : s_.primes()) { (void)p; res.emplace_back(1); }  // smallest unit
    st.residues_.push_back(std::move(res));
    st.relations_.push_back({x, std::nullopt, QPoly{}, QPoly{}, st.stage_});
    return {std::move(st), x, std::nullopt};
}

FStepResult ChainState::f_step(const QPoly& v, const QPoly& w) const {
    if (gens_.empty())
        throw ChainError("f_step: no nonstandard prime exists yet; use the degenerate first step");
    if (v == w) throw ChainError("f_step: v and w must be distinct primes");
    auto iv = find_registered(v), iw = find_registered(w);
    if (!iv || !iw) throw ChainError("f_step: v and w must be registered primes");
    if (registry_[*iw].standard || w.total_degree() < 1)
        throw ChainError("f_step: w must be a nonstandard prime");

    ChainState st = *this;
    ++st.stage_;
    size_t k = 1;
    for (const auto& g : gens_)
        if (!g.is_y) ++k;
    size_t xv = st.gens_.size();
    st.gens_.push_back({"x" + std::to_string(k), st.stage_, false});
    size_t yv = st.gens_.size();
    st.gens_.push_back({"y" + std::to_string(k), st.stage_, true});

    std::vector<Integer> xres, yres;
    for (const auto& p : s_.primes()) {
        Integer pk = max_power(p);
        auto rv = residue_mod(v, pk);
        auto rw = residue_mod(w, pk);
        if (!rv.ok()) throw ChainError("f_step: residue of v: " + rv.error);
        if (!rw.ok()) throw ChainError("f_step: residue of w: " + rw.error);
        auto [xi, eta] = chain_residue_extend_at(pk, p, *rv.residue, *rw.residue);
        xres.push_back(xi);
        yres.push_back(eta);
    }
    st.residues_.push_back(std::move(xres));
    st.residues_.push_back(std::move(yres));
    st.relations_.push_back({xv, yv, v, w, st.stage_});

    // Bezout identity x_k v + y_k w = 1, checked exactly as rational functions.
    QPoly ident = QPoly::variable(Rational(1), xv) * v + QPoly::variable(Rational(1), yv) * w;
    if (!(st.normal_form(ident) == RatFunc::of(QPoly::constant(Rational(1)))))
        throw std::logic_error("f_step: Bezout identity failed to normalize to 1");
    return {std::move(st), xv, yv};
}

ZhatStepResult ChainState::zhat_step(const QPoly& a, const Integer& n) const {
    if (n < 2) throw ChainError("zhat_step: modulus must be >= 2");
    if (n > nmax_) throw ChainError("zhat_step: modulus above the tracking horizon");
    if (!coefficients_admissible(a)) throw ChainError("zhat_step: coefficients not in Z<S>");
    auto r = residue_mod(a, n);
    if (!r.ok()) throw ChainError("zhat_step: " + r.error);
    if (*r.residue != 0)
        throw ChainError("zhat_step: divisibility fails, residue " + r.residue->str() +
                         " mod " + n.str());
    ChainState st = *this;
    ++st.stage_;
    QPoly q = a.scaled(Rational(Integer(1), n));
    if (!(q.scaled(Rational(n)) == a)) throw std::logic_error("zhat_step: n * (a/n) != a");
    st.adjoined_.push_back({a, n, st.stage_});
    ChainElement el{q, "zhat stage " + std::to_string(st.stage_) + ": /" + n.str()};
    return {std::move(st), std::move(el)};
}

ChainState::Audit ChainState::audit() const {
    Audit a;
    auto note = [&a](std::string s) {
        a.ok = false;
        a.issues.push_back(std::move(s));
    };
    std::vector<Integer> moduli = tracked_moduli();
    // CRT coherence of the derived residue table
    for (size_t g = 0; g < gens_.size(); ++g) {
        std::string zeros;
        for (const auto& n : moduli) {
            Integer rn = generator_residue(g, n);
            if (rn == 0) zeros += (zeros.empty() ? "" : ",") + n.str();
            for (const auto& m : moduli)
                if (m < n && n % m == 0 && generator_residue(g, m) != mod_floor(rn, m))
                    note("residue incoherence: " + gens_[g].name + " mod " + m.str() +
                         " vs mod " + n.str());
        }
        a.parsimony.push_back(gens_[g].name + ": divisible by {" + zeros + "}");
    }
    // relations hold at every tracked modulus
    for (const auto& rel : relations_) {
        if (!rel.y_var) continue;
        for (const auto& n : moduli) {
            auto rv = residue_mod(rel.v, n);
            auto rw = residue_mod(rel.w, n);
            if (!rv.ok() || !rw.ok()) {
                note("relation stage " + std::to_string(rel.stage) + ": residues unavailable mod " +
                     n.str());
                continue;
            }
            Integer lhs = mod_floor(generator_residue(*rel.y_var, n) * *rw.residue, n);
            Integer rhs = mod_floor(Integer(1) - generator_residue(rel.x_var, n) * *rv.residue, n);
            if (lhs != rhs)
                note("relation stage " + std::to_string(rel.stage) + " violated mod " + n.str());
        }
    }
    // registered nonstandard primes keep unit residues
    for (const auto& cert : registry_) {
        if (cert.standard) continue;
        for (const auto& p : s_.primes()) {
            auto r = residue_mod(cert.elem, max_power(p));
            if (!r.ok() || gcd(*r.residue, p) != 1)
                note("kill-check: " + cert.name + " lost unit residue at prime " + p.str());
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

using nlohmann::json;

json qpoly_to_json_impl(const QPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        t["m"] = m;
        t["c"] = c.str();
        terms.push_back(std::move(t));
    }
    return terms;
}

QPoly qpoly_from_json_impl(const json& j) {
    QPoly p;
    for (const auto& t : j) {
        Monomial m = t.at("m").get<Monomial>();
        p = p + QPoly::term(Rational::parse(t.at("c").get<std::string>()), std::move(m));
    }
    return p;
}

}  // namespace

std::string ChainState::to_json() const {
    json j;
    j["s"] = json::array();
    for (const auto& p : s_.primes()) j["s"].push_back(p.str());
    j["nmax"] = nmax_.str();
    j["stage"] = stage_;
    j["generators"] = json::array();
    for (size_t i = 0; i < gens_.size(); ++i) {
        json g;
        g["name"] = gens_[i].name;
        g["stage"] = gens_[i].stage;
        g["is_y"] = gens_[i].is_y;
        g["residues"] = json::array();
        for (const auto& r : residues_[i]) g["residues"].push_back(r.str());
        j["generators"].push_back(std::move(g));
    }
    j["relations"] = json::array();
    for (const auto& r : relations_) {
        json rel;
        rel["x"] = r.x_var;
        if (r.y_var) rel["y"] = *r.y_var;
        rel["v"] = qpoly_to_json_impl(r.v);
        rel["w"] = qpoly_to_json_impl(r.w);
        rel["stage"] = r.stage;
        j["relations"].push_back(std::move(rel));
    }
    j["adjoined"] = json::array();
    for (const auto& f : adjoined_) {
        json a;
        a["a"] = qpoly_to_json_impl(f.numerator);
        a["n"] = f.n.str();
        a["stage"] = f.stage;
        j["adjoined"].push_back(std::move(a));
    }
    j["registry"] = json::array();
    for (const auto& c : registry_) {
        json r;
        r["elem"] = qpoly_to_json_impl(c.elem);
        r["name"] = c.name;
        r["standard"] = c.standard;
        r["birth_stage"] = c.birth_stage;
        r["certificate"] = c.certificate;
        j["registry"].push_back(std::move(r));
    }
    j["kill_log"] = kill_log_;
    // derived full residue table, for the audit appendix
    json table = json::array();
    for (size_t g = 0; g < gens_.size(); ++g) {
        json row;
        row["gen"] = gens_[g].name;
        row["residues"] = json::array();
        for (const auto& n : tracked_moduli()) {
            json e;
            e["mod"] = n.str();
            e["res"] = generator_residue(g, n).str();
            row["residues"].push_back(std::move(e));
        }
        table.push_back(std::move(row));
    }
    j["residue_table"] = std::move(table);
    return j.dump(2);
}

ChainState ChainState::from_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<Integer> primes;
    for (const auto& p : j.at("s")) primes.emplace_back(p.get<std::string>());
    ChainState st = init(PrimeSet::make(std::move(primes)), Integer(j.at("nmax").get<std::string>()));
    st.stage_ = j.at("stage").get<size_t>();
    for (const auto& g : j.at("generators")) {
        st.gens_.push_back({g.at("name").get<std::string>(), g.at("stage").get<size_t>(),
                            g.at("is_y").get<bool>()});
        std::vector<Integer> res;
        for (const auto& r : g.at("residues")) res.emplace_back(r.get<std::string>());
        st.residues_.push_back(std::move(res));
    }
    for (const auto& r : j.at("relations")) {
        ChainRelation rel;
        rel.x_var = r.at("x").get<size_t>();
        if (r.contains("y")) rel.y_var = r.at("y").get<size_t>();
        rel.v = qpoly_from_json_impl(r.at("v"));
        rel.w = qpoly_from_json_impl(r.at("w"));
        rel.stage = r.at("stage").get<size_t>();
        st.relations_.push_back(std::move(rel));
    }
    for (const auto& a : j.at("adjoined"))
        st.adjoined_.push_back({qpoly_from_json_impl(a.at("a")),
                                Integer(a.at("n").get<std::string>()), a.at("stage").get<size_t>()});
    for (const auto& c : j.at("registry"))
        st.registry_.push_back({qpoly_from_json_impl(c.at("elem")), c.at("name").get<std::string>(),
                                c.at("standard").get<bool>(), c.at("birth_stage").get<size_t>(),
                                c.at("certificate").get<std::string>()});
    st.kill_log_ = j.at("kill_log").get<std::vector<std::string>>();
    return st;
}

}  // namespace dor
