#include "dor/scenario.hpp"

#include "dor/parse.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

namespace dor {

using nlohmann::json;

namespace {

std::string fe_str(const FieldElement& c) {
    if (c.is_rational()) return c.rational_value().str();
    std::string out = "[";
    for (size_t i = 0; i < c.coords().size(); ++i) {
        if (i) out += ",";
        out += c.coords()[i].str();
    }
    return out + "]";
}

template <class C, class CoeffStr, class VarName>
std::string mp_str(const MultiPoly<C>& p, CoeffStr coeff_str, VarName var_name) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = coeff_str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (out.empty()) {
            if (neg) out += "-", cs = cs.substr(1);
        } else {
            out += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
        }
        std::string vars;
        for (size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += var_name(v);
            if (m[v] > 1) vars += "^" + std::to_string(m[v]);
        }
        if (vars.empty()) out += cs;
        else if (cs == "1") out += vars;
        else out += cs + "*" + vars;
    }
    return out;
}

template <class C, class CoeffStr>
std::string series_literal_impl(const PuiseuxSeries<C>& s, CoeffStr coeff_str) {
    std::string out = "[";
    bool first = true;
    for (const auto& [e, c] : s.terms) {
        if (!first) out += ",";
        first = false;
        out += "(" + e.str() + "," + coeff_str(c) + ")";
    }
    return out + "]";
}

}  // namespace

std::string qpoly_str(const QPoly& p, const ChainState& st) {
    return mp_str(
        p, [](const Rational& c) { return c.str(); },
        [&st](size_t v) { return st.generators().at(v).name; });
}

std::string nfpoly_str(const NFPoly& p, size_t indeterminates) {
    return mp_str(p, fe_str, [indeterminates](size_t v) {
        return indeterminates == 1 ? std::string("x") : "x" + std::to_string(v + 1);
    });
}

std::string series_literal(const PuiseuxSeries<Rational>& s) {
    return series_literal_impl(s, [](const Rational& c) { return c.str(); });
}

std::string series_literal(const PuiseuxSeries<FieldElement>& s) {
    return series_literal_impl(s, fe_str);
}

namespace {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

FieldPtr field_from_json(const json& model) {
    if (model.contains("field")) {
        std::string preset = model.at("field").get<std::string>();
        if (preset == "sqrt2") return NumberField::sqrt2();
        if (preset == "cbrt2") return NumberField::cbrt2();
        throw ScenarioError("unknown field preset \"" + preset + "\"");
    }
    if (!model.contains("min_poly")) throw ScenarioError("model needs field or min_poly");
    std::vector<Rational> coeffs;
    for (const auto& c : model.at("min_poly")) coeffs.push_back(Rational::parse(c.get<std::string>()));
    RatPoly mp(coeffs);
    Rational lo = Rational::parse(model.at("embedding").at(0).get<std::string>());
    Rational hi = Rational::parse(model.at("embedding").at(1).get<std::string>());
    if (model.contains("integral_basis")) {
        Matrix basis;
        for (const auto& row : model.at("integral_basis")) {
            std::vector<Rational> r;
            for (const auto& c : row) r.push_back(Rational::parse(c.get<std::string>()));
            basis.push_back(std::move(r));
        }
        return NumberField::create(std::move(mp), std::move(lo), std::move(hi), std::move(basis));
    }
    return NumberField::create(std::move(mp), std::move(lo), std::move(hi));
}

PrimeSet primes_from_json(const json& model) {
    std::vector<Integer> primes;
    for (const auto& p : model.at("s")) primes.emplace_back(p.get<std::string>());
    return PrimeSet::make(std::move(primes));
}

PuiseuxSeries<FieldElement> parse_field_series(const std::string& text, const FieldPtr& field) {
    // "[(e, c), ...]" with c a rational or a power-basis bracket
    PuiseuxSeries<FieldElement> s;
    NFPoly probe = parse_nf_poly("0", field, 1);
    (void)probe;
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    auto expect = [&](char c) {
        skip();
        if (i >= text.size() || text[i] != c) throw ParseError("bad series literal");
        ++i;
    };
    expect('[');
    skip();
    if (i < text.size() && text[i] == ']') return s;
    for (;;) {
        expect('(');
        size_t start = i;
        int depth = 0;
        while (i < text.size() && (depth > 0 || text[i] != ',')) {
            if (text[i] == '[') ++depth;
            if (text[i] == ']') --depth;
            ++i;
        }
        Rational e = Rational::parse(text.substr(start, i - start));
        expect(',');
        skip();
        start = i;
        while (i < text.size() && text[i] != ')') ++i;
        std::string ctext = text.substr(start, i - start);
        expect(')');
        NFPoly cp = parse_nf_poly(ctext, field, 1);
        FieldElement c = cp.is_zero() ? FieldElement::from_rational(field, Rational(0))
                                      : *cp.constant_coeff();
        s = s + PuiseuxSeries<FieldElement>::monomial(std::move(c), std::move(e));
        skip();
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        break;
    }
    expect(']');
    return s;
}

const char* sign_name(Sign s) {
    switch (s) {
        case Sign::negative: return "negative";
        case Sign::zero: return "zero";
        case Sign::positive: return "positive";
        default: return "unknown";
    }
}

/// Every key of `expect` must match `actual` (recursively for objects).
bool subset_match(const json& expect, const json& actual) {
    if (expect.is_object()) {
        if (!actual.is_object()) return false;
        for (auto it = expect.begin(); it != expect.end(); ++it) {
            if (!actual.contains(it.key())) return false;
            if (!subset_match(it.value(), actual.at(it.key()))) return false;
        }
        return true;
    }
    return expect == actual;
}

struct Runner {
    json scenario;
    std::string kind;
    std::optional<MBConfig> mb;
    std::optional<ChainState> chain;
    FieldPtr field;
    int depth = 6;

    void setup() {
        const json& model = scenario.at("model");
        kind = model.at("kind").get<std::string>();
        if (kind == "mb" || kind == "mb_multi") {
            field = field_from_json(model);
            PrimeSet s = kind == "mb" || model.contains("s") ? primes_from_json(model) : PrimeSet();
            Integer q(model.at("q").get<std::string>());
            size_t ind = model.value("indeterminates", kind == "mb" ? 1 : 2);
            mb = MBConfig::make(field, std::move(s), std::move(q), ind,
                                kind == "mb" ? MBVariant::localized : MBVariant::full_field);
        } else if (kind == "chain") {
            chain = ChainState::init(primes_from_json(model),
                                     Integer(model.at("nmax").get<std::string>()));
        } else if (kind == "shepherdson") {
            field = field_from_json(model);
        } else if (kind == "puiseux") {
            // nothing to prepare
        } else {
            throw ScenarioError("unknown model kind \"" + kind + "\"");
        }
        if (model.contains("depth")) depth = model.at("depth").get<int>();
    }

    MBElement admit_or_throw(const std::string& text) {
        NFPoly p = parse_nf_poly(text, field, mb->indeterminates);
        MBAdmitResult adm = mb_admit(p, *mb);
        if (!adm.accepted())
            throw ChainError("element \"" + text + "\" not admissible: " + adm.rejection->reason);
        return *adm.element;
    }

    json run_step(const json& step) {
        std::string op = step.at("op").get<std::string>();
        json out;
        if ((kind == "mb" || kind == "mb_multi") && op == "check-div") {
            MBElement g = admit_or_throw(step.at("g").get<std::string>());
            Integer n(step.at("n").get<std::string>());
            MBDivision r = zr_divide(*mb, g, n);
            if (r.witness()) {
                out["outcome"] = "witness";
                out["q"] = nfpoly_str(r.quotient->poly, mb->indeterminates);
                out["r"] = r.remainder.str();
            } else {
                out["outcome"] = "refuted";
                out["coefficient"] = fe_str(r.refutation->coefficient);
                if (r.refutation->offending_prime)
                    out["offending_prime"] = r.refutation->offending_prime->str();
                out["reason"] = r.refutation->reason;
            }
        } else if ((kind == "mb" || kind == "mb_multi") && op == "check-normality") {
            MBElement u = admit_or_throw(step.at("u").get<std::string>());
            MBElement v = admit_or_throw(step.at("v").get<std::string>());
            std::vector<MBElement> zs;
            for (const auto& z : step.at("zs")) zs.push_back(admit_or_throw(z.get<std::string>()));
            NormalityVerdict r = normality_check(*mb, u, v, zs);
            out["outcome"] = r.outcome == NormalityOutcome::member      ? "member"
                             : r.outcome == NormalityOutcome::nonmember ? "nonmember"
                                                                        : "premise_failure";
            if (r.quotient) out["quotient"] = nfpoly_str(r.quotient->poly, mb->indeterminates);
            if (!r.reason.empty()) out["reason"] = r.reason;
        } else if ((kind == "mb" || kind == "mb_multi") && op == "compare") {
            MBElement a = admit_or_throw(step.at("a").get<std::string>());
            MBElement b = admit_or_throw(step.at("b").get<std::string>());
            Ordering o = mb_compare(a, b);
            out["ordering"] = o == Ordering::less ? "less" : o == Ordering::greater ? "greater" : "equal";
        } else if ((kind == "mb" || kind == "mb_multi") && op == "admit") {
            NFPoly p = parse_nf_poly(step.at("e").get<std::string>(), field, mb->indeterminates);
            MBAdmitResult adm = mb_admit(p, *mb);
            out["accepted"] = adm.accepted();
            if (!adm.accepted()) out["reason"] = adm.rejection->reason;
        } else if ((kind == "mb" || kind == "mb_multi") && op == "gcd") {
            auto to_fp = [&](const std::string& text) {
                NFPoly p = parse_nf_poly(text, field, 1);
                FieldPoly fp;
                for (int i = 0; i <= p.degree_in(0); ++i) {
                    Monomial m;
                    if (i > 0) m = Monomial{static_cast<unsigned>(i)};
                    auto it = p.terms().find(m);
                    fp.push_back(it == p.terms().end()
                                     ? FieldElement::from_rational(field, Rational(0))
                                     : it->second);
                }
                return fp_trim(std::move(fp));
            };
            FieldPoly g = polyfield_gcd(to_fp(step.at("a").get<std::string>()),
                                        to_fp(step.at("b").get<std::string>()));
            NFPoly gp;
            for (size_t i = 0; i < g.size(); ++i)
                gp = gp + NFPoly::term(g[i], i ? Monomial{static_cast<unsigned>(i)} : Monomial{});
            out["gcd"] = nfpoly_str(gp, 1);
        } else if (kind == "chain" && op == "f-step-degenerate") {
            FStepResult r = chain->f_step_degenerate();
            chain = std::move(r.state);
            out["x"] = chain->generators()[r.x_var].name;
        } else if (kind == "chain" && op == "register-prime") {
            QPoly e = parse_chain_poly(step.at("elem").get<std::string>(), *chain);
            chain = chain->register_prime(e, step.at("name").get<std::string>(),
                                          step.value("certificate", ""));
            out["registered"] = step.at("name").get<std::string>();
        } else if (kind == "chain" && op == "f-step") {
            QPoly v = parse_chain_poly(step.at("v").get<std::string>(), *chain);
            QPoly w = parse_chain_poly(step.at("w").get<std::string>(), *chain);
            FStepResult r = chain->f_step(v, w);
            chain = std::move(r.state);
            out["x"] = chain->generators()[r.x_var].name;
            out["y"] = chain->generators()[*r.y_var].name;
            QPoly ident = QPoly::variable(Rational(1), r.x_var) * v +
                          QPoly::variable(Rational(1), *r.y_var) * w;
            RatFunc nf = chain->normal_form(ident);
            out["identity"] = (nf == RatFunc::of(QPoly::constant(Rational(1)))) ? "1" : "not 1";
        } else if (kind == "chain" && op == "zhat-step") {
            QPoly a = parse_chain_poly(step.at("a").get<std::string>(), *chain);
            Integer n(step.at("n").get<std::string>());
            ZhatStepResult r = chain->zhat_step(a, n);
            chain = std::move(r.state);
            out["outcome"] = "witness";
            out["element"] = qpoly_str(r.element.expr, *chain);
            out["exact"] = r.element.expr.scaled(Rational(n)) == a;
        } else if (kind == "chain" && op == "check-div") {
            QPoly g = parse_chain_poly(step.at("g").get<std::string>(), *chain);
            Integer n(step.at("n").get<std::string>());
            ChainDivision r = zr_divide(*chain, g, n);
            if (r.witness()) {
                out["outcome"] = "witness";
                out["r"] = r.remainder.str();
                chain = std::move(*r.state);
                out["q"] = qpoly_str(r.quotient->expr, *chain);
            } else {
                out["outcome"] = "refuted";
                out["reason"] = r.refutation;
            }
        } else if (kind == "chain" && op == "bezout") {
            auto cert = [&](const json& j) {
                FactorCert c;
                c.unit = j.value("unit", 1);
                for (const auto& f : j.at("factors"))
                    c.factors.emplace_back(parse_chain_poly(f.at(0).get<std::string>(), *chain),
                                           f.at(1).get<unsigned>());
                return c;
            };
            QPoly a = parse_chain_poly(step.at("a").get<std::string>(), *chain);
            QPoly b = parse_chain_poly(step.at("b").get<std::string>(), *chain);
            BezoutResult r = bezout_witness(*chain, a, cert(step.at("a_factors")), b,
                                            cert(step.at("b_factors")));
            if (r.witness()) {
                out["outcome"] = "witness";
                out["z"] = qpoly_str(*r.z, *chain);
                out["t"] = qpoly_str(*r.t, *chain);
                out["d"] = qpoly_str(*r.d, *chain);
            } else if (r.pending) {
                out["outcome"] = "pending";
                out["pair"] = json::array({qpoly_str(r.pending->first, *chain),
                                           qpoly_str(r.pending->second, *chain)});
            } else {
                out["outcome"] = "error";
                out["error"] = r.error;
            }
        } else if (kind == "chain" && op == "audit") {
            ChainState::Audit a = chain->audit();
            out["ok"] = a.ok;
            out["issues"] = a.issues;
            out["parsimony"] = a.parsimony;
        } else if (kind == "puiseux" && op == "roots") {
            SeriesPoly<Rational> f;
            for (const auto& c : step.at("poly"))
                f.coeffs.push_back(parse_rat_series(c.get<std::string>()));
            int p = step.value("p", f.degree());
            int d = step.value("depth", depth);
            auto roots = newton_puiseux(f, p, d);
            out["roots"] = json::array();
            for (const auto& r : roots) {
                json jr;
                jr["series"] = series_literal(r.series);
                jr["exact"] = r.exact;
                if (r.residual_order) jr["residual_order"] = r.residual_order->str();
                out["roots"].push_back(std::move(jr));
            }
        } else if (kind == "puiseux" && op == "floor") {
            PuiseuxSeries<Rational> s = parse_rat_series(step.at("series").get<std::string>());
            FloorResult<Rational> r = ps_floor(s);
            out["floor"] = series_literal(r.integer_part);
            out["fractional_sign"] = sign_name(r.fractional_sign);
        } else if (kind == "puiseux" && op == "sign") {
            PuiseuxSeries<Rational> s = parse_rat_series(step.at("series").get<std::string>());
            out["sign"] = sign_name(ps_sign(s));
        } else if (kind == "puiseux" && op == "oi-obstruct") {
            std::vector<Rational> coeffs;
            for (const auto& c : step.at("P")) coeffs.push_back(Rational::parse(c.get<std::string>()));
            std::vector<std::optional<bool>> certs;
            if (step.contains("certs"))
                for (const auto& c : step.at("certs"))
                    certs.push_back(c.is_null() ? std::optional<bool>() : c.get<bool>());
            ObstructionReport r = oi_obstruction(RatPoly(coeffs),
                                                 step.at("p").get<unsigned>(), certs);
            out["conclusion"] = r.conclusion == ObstructionConclusion::obstructed ? "obstructed"
                                : r.conclusion == ObstructionConclusion::not_obstructed
                                    ? "not_obstructed"
                                    : "undetermined";
            out["sanity_bracket"] = r.sanity_bracket_ok;
            out["roots"] = json::array();
            for (const auto& root : r.roots) {
                json jr;
                jr["interval"] = json::array({root.interval.lo.str(), root.interval.hi.str()});
                jr["rational"] = root.is_rational;
                if (root.in_rcp) jr["in_rcp"] = *root.in_rcp;
                out["roots"].push_back(std::move(jr));
            }
            if (!r.note.empty()) out["note"] = r.note;
        } else if (kind == "shepherdson" && op == "admit") {
            auto s = parse_field_series(step.at("series").get<std::string>(), field);
            ShepAdmitResult r = shep_admit(s);
            out["accepted"] = r.accepted();
            if (r.rejection) out["reason"] = *r.rejection;
        } else if (kind == "shepherdson" && op == "floor") {
            auto s = parse_field_series(step.at("series").get<std::string>(), field);
            FloorResult<FieldElement> r = ps_floor(s);
            out["floor"] = series_literal(r.integer_part);
            out["fractional_sign"] = sign_name(r.fractional_sign);
        } else {
            throw ScenarioError("unknown op \"" + op + "\" for model kind \"" + kind + "\"");
        }
        return out;
    }

    json run() {
        setup();
        json report;
        report["scenario"] = scenario.value("name", "");
        report["steps"] = json::array();
        size_t passed = 0, failed = 0;
        size_t index = 0;
        for (const auto& step : scenario.at("script")) {
            json rec;
            rec["index"] = index++;
            rec["op"] = step.at("op").get<std::string>();
            json inputs = step;
            inputs.erase("op");
            if (inputs.contains("expect")) inputs.erase("expect");
            rec["inputs"] = std::move(inputs);
            auto t0 = std::chrono::steady_clock::now();
            json outcome;
            try {
                outcome = run_step(step);
            } catch (const ChainError& e) {
                outcome["outcome"] = "error";
                outcome["error"] = e.what();
            } catch (const std::domain_error& e) {
                outcome["outcome"] = "error";
                outcome["error"] = e.what();
            }
            auto t1 = std::chrono::steady_clock::now();
            rec["outcome"] = outcome;
            rec["wall_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
            if (step.contains("expect")) {
                bool ok = subset_match(step.at("expect"), outcome);
                rec["expected_ok"] = ok;
                (ok ? passed : failed) += 1;
            }
            report["steps"].push_back(std::move(rec));
        }
        report["summary"] = {{"passed", passed}, {"failed", failed}, {"ok", failed == 0}};
        if (chain) {
            json audit;
            ChainState::Audit a = chain->audit();
            audit["ok"] = a.ok;
            audit["issues"] = a.issues;
            audit["parsimony"] = a.parsimony;
            audit["kill_log"] = chain->kill_log();
            audit["state"] = json::parse(chain->to_json());
            report["audit"] = std::move(audit);
        }
        return report;
    }
};

}  // namespace

ScenarioResult run_scenario_text(const std::string& text) {
    json report;
    try {
        Runner runner;
        runner.scenario = json::parse(text);
        report = runner.run();
    } catch (const ParseError& e) {
        report["error"] = e.what();
        return {report.dump(2) + "\n", 2};
    } catch (const std::invalid_argument& e) {
        report["error"] = e.what();
        return {report.dump(2) + "\n", 2};
    } catch (const std::logic_error& e) {
        report["error"] = std::string("invariant breach: ") + e.what();
        return {report.dump(2) + "\n", 3};
    } catch (const std::exception& e) {
        report["error"] = e.what();
        return {report.dump(2) + "\n", 2};
    }
    bool ok = report.at("summary").at("ok").get<bool>();
    return {report.dump(2) + "\n", ok ? 0 : 1};
}

ScenarioResult run_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        json report;
        report["error"] = "cannot open scenario file: " + path;
        return {report.dump(2) + "\n", 2};
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return run_scenario_text(buf.str());
}

}  // namespace dor
