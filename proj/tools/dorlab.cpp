#include "dor/parse.hpp"
#include "dor/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using nlohmann::json;

namespace {

int emit(const dor::ScenarioResult& r, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << r.report_json;
    } else {
        std::ofstream out(out_path);
        out << r.report_json;
    }
    return r.exit_code;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

/// Wraps a single operation as a one-step scenario so ad-hoc checks share
/// the scenario runner's semantics and report format.
int run_single(json model, json step, const std::string& out_path) {
    json scenario;
    scenario["name"] = "adhoc";
    scenario["model"] = std::move(model);
    scenario["script"] = json::array({std::move(step)});
    return emit(dor::run_scenario_text(scenario.dump()), out_path);
}

dor::ChainState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return dor::ChainState::from_json(buf.str());
}

void save_state(const dor::ChainState& st, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write state file " + path);
    out << st.to_json() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic over nonstandard models of weak arithmetic"};
    app.require_subcommand(1);

    std::string out_path;
    int depth = 6;
    std::string nmax = "24";
    unsigned seed = 0;
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--depth", depth, "series truncation depth");
    app.add_option("--nmax", nmax, "residue tracking horizon for chain states");
    app.add_option("--seed", seed, "seed for property-test sampling (core arithmetic is deterministic)");

    // run <scenario>
    auto* run = app.add_subcommand("run", "run a scenario file");
    std::string scenario_path;
    run->add_option("scenario", scenario_path, "scenario JSON")->required();

    // mb check-div / check-normality
    auto* mb = app.add_subcommand("mb", "single checks over the polynomial model");
    std::string mb_config, mb_g, mb_n, mb_u, mb_v;
    std::vector<std::string> mb_zs;
    auto* mb_div = mb->add_subcommand("check-div", "Euclidean division by a standard integer");
    mb_div->add_option("--config", mb_config, "model config JSON file")->required();
    mb_div->add_option("--g", mb_g, "element")->required();
    mb_div->add_option("--n", mb_n, "modulus")->required();
    auto* mb_norm = mb->add_subcommand("check-normality", "integral-closedness instance");
    mb_norm->add_option("--config", mb_config, "model config JSON file")->required();
    mb_norm->add_option("--u", mb_u, "numerator")->required();
    mb_norm->add_option("--v", mb_v, "denominator")->required();
    mb_norm->add_option("--zs", mb_zs, "equation coefficients z1..zs")->required()->delimiter(',');

    // chain subcommands over a serialized state
    auto* chain = app.add_subcommand("chain", "stepwise chain construction");
    std::string st_path, st_out, ch_v, ch_w, ch_a, ch_nstr, ch_elem, ch_name, ch_cert;
    std::string bz_a, bz_b, bz_af, bz_bf;
    std::vector<std::string> ch_s;
    auto* ch_init = chain->add_subcommand("init", "fresh state");
    ch_init->add_option("--s", ch_s, "primes of S")->required()->delimiter(',');
    ch_init->add_option("--state", st_out, "output state file")->required();
    auto* ch_f = chain->add_subcommand("f-step", "adjoin x_k, y_k for a prime pair");
    ch_f->add_option("--state", st_path)->required();
    ch_f->add_option("--v", ch_v, "first prime (empty for the degenerate first step)");
    ch_f->add_option("--w", ch_w, "second prime, nonstandard");
    ch_f->add_option("--state-out", st_out, "defaults to --state");
    auto* ch_z = chain->add_subcommand("zhat-step", "adjoin a/n when n | a");
    ch_z->add_option("--state", st_path)->required();
    ch_z->add_option("--a", ch_a)->required();
    ch_z->add_option("--n", ch_nstr)->required();
    ch_z->add_option("--state-out", st_out, "defaults to --state");
    auto* ch_r = chain->add_subcommand("register-prime", "add an irreducibility certificate");
    ch_r->add_option("--state", st_path)->required();
    ch_r->add_option("--elem", ch_elem)->required();
    ch_r->add_option("--name", ch_name)->required();
    ch_r->add_option("--cert", ch_cert, "external certificate note for nonlinear candidates");
    ch_r->add_option("--state-out", st_out, "defaults to --state");
    auto* ch_b = chain->add_subcommand("bezout", "gcd witness from factorization certificates");
    ch_b->add_option("--state", st_path)->required();
    ch_b->add_option("--a", bz_a)->required();
    ch_b->add_option("--a-factors", bz_af, "JSON {\"unit\":1,\"factors\":[[\"2\",1],...]}")->required();
    ch_b->add_option("--b", bz_b)->required();
    ch_b->add_option("--b-factors", bz_bf)->required();
    auto* ch_audit = chain->add_subcommand("audit", "re-verify relations and residue coherence");
    ch_audit->add_option("--state", st_path)->required();

    // puiseux roots / floor
    auto* pu = app.add_subcommand("puiseux", "series-model operations");
    std::vector<std::string> pu_poly;
    std::string pu_series;
    int pu_p = 0;
    auto* pu_roots = pu->add_subcommand("roots", "series roots of a polynomial with series coefficients");
    pu_roots->add_option("--poly", pu_poly, "coefficient series literals, constant first")->required();
    pu_roots->add_option("--p", pu_p, "degree cap (defaults to the polynomial degree)");
    auto* pu_floor = pu->add_subcommand("floor", "integer part of a series");
    pu_floor->add_option("--series", pu_series)->required();

    // oi obstruct
    auto* oi = app.add_subcommand("oi", "open-induction obstruction analysis");
    std::string oi_pc;
    int oi_p = 1;
    std::vector<std::string> oi_certs;
    auto* oi_ob = oi->add_subcommand("obstruct", "decide the degree-(p+1) obstruction");
    oi_ob->add_option("-P,--P", oi_pc, "coefficients, constant first, e.g. \"-2,0,1\"")->required();
    oi_ob->add_option("-p,--p", oi_p, "degree parameter")->required();
    oi_ob->add_option("--certs", oi_certs, "per-root flags: in | out | unknown")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) return emit(dor::run_scenario_file(scenario_path), out_path);

        if (*mb_div || *mb_norm) {
            json model = load_json_file(mb_config);
            if (!model.contains("kind")) model["kind"] = "mb";
            json step;
            if (*mb_div) {
                step = {{"op", "check-div"}, {"g", mb_g}, {"n", mb_n}};
            } else {
                step = {{"op", "check-normality"}, {"u", mb_u}, {"v", mb_v}, {"zs", mb_zs}};
            }
            return run_single(std::move(model), std::move(step), out_path);
        }

        if (*ch_init) {
            std::vector<dor::Integer> primes;
            for (const auto& p : ch_s) primes.emplace_back(p);
            auto st = dor::ChainState::init(dor::PrimeSet::make(std::move(primes)),
                                            dor::Integer(nmax));
            save_state(st, st_out);
            std::cout << "{\"state\": \"" << st_out << "\"}\n";
            return 0;
        }
        if (*ch_f || *ch_z || *ch_r) {
            dor::ChainState st = load_state(st_path);
            if (st_out.empty()) st_out = st_path;
            json out;
            if (*ch_f) {
                dor::FStepResult r = ch_v.empty() ? st.f_step_degenerate()
                                                  : st.f_step(dor::parse_chain_poly(ch_v, st),
                                                              dor::parse_chain_poly(ch_w, st));
                st = std::move(r.state);
                out["x"] = st.generators()[r.x_var].name;
                if (r.y_var) {
                    out["y"] = st.generators()[*r.y_var].name;
                    out["identity"] = out["x"].get<std::string>() + "*(" + ch_v + ") + " +
                                      out["y"].get<std::string>() + "*(" + ch_w + ") = 1";
                }
            } else if (*ch_z) {
                dor::ZhatStepResult r = st.zhat_step(dor::parse_chain_poly(ch_a, st),
                                                     dor::Integer(ch_nstr));
                st = std::move(r.state);
                out["element"] = dor::qpoly_str(r.element.expr, st);
                out["provenance"] = r.element.provenance;
            } else {
                st = st.register_prime(dor::parse_chain_poly(ch_elem, st), ch_name, ch_cert);
                out["registered"] = ch_name;
            }
            save_state(st, st_out);
            out["state"] = st_out;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*ch_b) {
            dor::ChainState st = load_state(st_path);
            auto cert = [&st](const std::string& text) {
                json j = json::parse(text);
                dor::FactorCert c;
                c.unit = j.value("unit", 1);
                for (const auto& f : j.at("factors"))
                    c.factors.emplace_back(dor::parse_chain_poly(f.at(0).get<std::string>(), st),
                                           f.at(1).get<unsigned>());
                return c;
            };
            dor::BezoutResult r = dor::bezout_witness(st, dor::parse_chain_poly(bz_a, st),
                                                      cert(bz_af), dor::parse_chain_poly(bz_b, st),
                                                      cert(bz_bf));
            json out;
            if (r.witness()) {
                out["outcome"] = "witness";
                out["z"] = dor::qpoly_str(*r.z, st);
                out["t"] = dor::qpoly_str(*r.t, st);
                out["d"] = dor::qpoly_str(*r.d, st);
            } else if (r.pending) {
                out["outcome"] = "pending";
                out["pair"] = json::array({dor::qpoly_str(r.pending->first, st),
                                           dor::qpoly_str(r.pending->second, st)});
            } else {
                out["outcome"] = "error";
                out["error"] = r.error;
            }
            std::cout << out.dump(2) << "\n";
            return r.error.empty() ? 0 : 2;
        }
        if (*ch_audit) {
            dor::ChainState st = load_state(st_path);
            dor::ChainState::Audit a = st.audit();
            json out;
            out["ok"] = a.ok;
            out["issues"] = a.issues;
            out["parsimony"] = a.parsimony;
            out["kill_log"] = st.kill_log();
            std::cout << out.dump(2) << "\n";
            return a.ok ? 0 : 1;
        }

        if (*pu_roots) {
            json step;
            step["op"] = "roots";
            step["poly"] = pu_poly;
            if (pu_p > 0) step["p"] = pu_p;
            step["depth"] = depth;
            return run_single(json{{"kind", "puiseux"}}, std::move(step), out_path);
        }
        if (*pu_floor) {
            json step = {{"op", "floor"}, {"series", pu_series}};
            return run_single(json{{"kind", "puiseux"}}, std::move(step), out_path);
        }

        if (*oi_ob) {
            json step;
            step["op"] = "oi-obstruct";
            json coeffs = json::array();
            for (const auto& c : dor::parse_rational_list(oi_pc)) coeffs.push_back(c.str());
            step["P"] = std::move(coeffs);
            step["p"] = oi_p;
            json certs = json::array();
            for (const auto& c : oi_certs) {
                if (c == "in") certs.push_back(true);
                else if (c == "out") certs.push_back(false);
                else certs.push_back(nullptr);
            }
            step["certs"] = std::move(certs);
            return run_single(json{{"kind", "puiseux"}}, std::move(step), out_path);
        }
    } catch (const std::logic_error& e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no operation selected\n";
    return 2;
}
