/*
 * Copyright 2026 The xvaengine authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "xva/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "xva/errors.hpp"

namespace xva {

using nlohmann::json;

std::string to_string(RunMode m) {
    switch (m) {
    case RunMode::value: return "value";
    case RunMode::incremental: return "incremental";
    case RunMode::validate_g: return "validate-g";
    case RunMode::exposure: return "exposure";
    }
    return "value";
}

RunMode parse_mode(const std::string& s) {
    if (s == "value") return RunMode::value;
    if (s == "incremental") return RunMode::incremental;
    if (s == "validate-g") return RunMode::validate_g;
    if (s == "exposure") return RunMode::exposure;
    throw ConfigError("unknown mode '" + s + "' (value|incremental|validate-g|exposure)");
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown field '" + it.key() + "'");
}

double get_num(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    if (!obj[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

double get_num_or(const json& obj, const char* key, double dflt) {
    return obj.contains(key) ? obj[key].get<double>() : dflt;
}

std::string get_str(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string())
        throw ConfigError(where + ": missing or non-string field '" + key + "'");
    return obj[key].get<std::string>();
}

// a curve is either a flat number or [[t, rate], ...]
Curve parse_curve(const json& v, const std::string& where) {
    if (v.is_number()) return Curve::flat(v.get<double>());
    if (!v.is_array()) throw ConfigError(where + ": expected a number or [[t,rate],...]");
    std::vector<double> t, r;
    for (const auto& p : v) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ConfigError(where + ": each pillar must be [time, rate]");
        t.push_back(p[0].get<double>());
        r.push_back(p[1].get<double>());
    }
    return Curve(std::move(t), std::move(r), where);
}

Curve curve_or_default(const json& obj, const char* key, const Curve& dflt,
                       const std::string& where, std::vector<std::string>* defaults) {
    if (obj.contains(key)) return parse_curve(obj[key], where + "." + std::string(key));
    if (defaults) defaults->push_back(where + "." + std::string(key));
    return dflt;
}

json curve_json(const Curve& c) {
    json arr = json::array();
    for (std::size_t i = 0; i < c.times().size(); ++i)
        arr.push_back(json::array({c.times()[i], c.rates()[i]}));
    return arr;
}

RateEnvironment parse_environment(const json& e, std::vector<std::string>* defaults) {
    check_keys(e,
               {"r", "rfl", "rfb", "rcl", "rcb", "ril", "rib", "rrepo", "lambda_b", "lambda_c",
                "recovery_b", "recovery_c"},
               "environment");
    RateEnvironment env;
    if (!e.contains("r")) throw ConfigError("environment: missing field 'r'");
    env.r = parse_curve(e["r"], "environment.r");
    env.rfl = curve_or_default(e, "rfl", env.r, "environment", defaults);
    env.rfb = curve_or_default(e, "rfb", env.r, "environment", defaults);
    env.rcl = curve_or_default(e, "rcl", env.r, "environment", defaults);
    env.rcb = curve_or_default(e, "rcb", env.r, "environment", defaults);
    env.ril = curve_or_default(e, "ril", env.r, "environment", defaults);
    env.rib = curve_or_default(e, "rib", Curve::flat(0.0), "environment", defaults);
    env.rrepo = curve_or_default(e, "rrepo", env.r, "environment", defaults);
    env.lambda_b = curve_or_default(e, "lambda_b", Curve::flat(0.0), "environment", defaults);
    env.lambda_c = curve_or_default(e, "lambda_c", Curve::flat(0.0), "environment", defaults);
    env.recovery_b = get_num_or(e, "recovery_b", 0.4);
    env.recovery_c = get_num_or(e, "recovery_c", 0.4);
    env.validate();
    return env;
}

AssetSpec parse_asset(const json& a, const RateEnvironment& env,
                      std::vector<std::string>* defaults) {
    check_keys(a, {"id", "s0", "sigma", "dividend", "repo"}, "asset");
    AssetSpec spec;
    spec.id = get_str(a, "id", "asset");
    spec.s0 = get_num(a, "s0", "asset " + spec.id);
    spec.sigma = a.contains("sigma") ? parse_curve(a["sigma"], "asset.sigma") : Curve::flat(0.0);
    spec.dividend = curve_or_default(a, "dividend", Curve::flat(0.0), "asset." + spec.id, defaults);
    spec.repo = curve_or_default(a, "repo", env.rrepo, "asset." + spec.id, defaults);
    spec.validate();
    return spec;
}

Claim parse_claim(const json& c, const RateEnvironment& env, std::vector<std::string>* defaults) {
    check_keys(c,
               {"id", "type", "direction", "strike", "maturity", "option", "legs", "notional",
                "asset", "csa_rate"},
               "claim");
    Claim cl;
    cl.id = get_str(c, "id", "claim");
    const std::string where = "claim " + cl.id;
    cl.notional = get_num_or(c, "notional", 1.0);
    cl.asset_id = get_str(c, "asset", where);
    cl.csa_rate = curve_or_default(c, "csa_rate", env.r, where, defaults);
    const std::string type = get_str(c, "type", where);
    if (type == "forward") {
        Forward f;
        const std::string dir = c.contains("direction") ? c["direction"].get<std::string>() : "long";
        if (dir != "long" && dir != "short")
            throw ConfigError(where + ".direction: expected 'long' or 'short'");
        f.direction = dir == "long" ? 1 : -1;
        f.strike = get_num(c, "strike", where);
        f.maturity = get_num(c, "maturity", where);
        cl.payoff = f;
    } else if (type == "european_option") {
        EuropeanOption o;
        const std::string kind = get_str(c, "option", where);
        if (kind != "call" && kind != "put")
            throw ConfigError(where + ".option: expected 'call' or 'put'");
        o.call = kind == "call";
        o.strike = get_num(c, "strike", where);
        o.maturity = get_num(c, "maturity", where);
        cl.payoff = o;
    } else if (type == "cashflow_schedule") {
        CashflowSchedule s;
        if (!c.contains("legs") || !c["legs"].is_array())
            throw ConfigError(where + ": cashflow_schedule needs a 'legs' array");
        for (const auto& lj : c["legs"]) {
            check_keys(lj,
                       {"time", "fixed", "spot", "call_weight", "call_strike", "put_weight",
                        "put_strike"},
                       where + ".legs");
            ScheduleLeg leg;
            leg.time = get_num(lj, "time", where + ".legs");
            leg.fixed = get_num_or(lj, "fixed", 0.0);
            leg.spot = get_num_or(lj, "spot", 0.0);
            leg.call_weight = get_num_or(lj, "call_weight", 0.0);
            leg.call_strike = get_num_or(lj, "call_strike", 0.0);
            leg.put_weight = get_num_or(lj, "put_weight", 0.0);
            leg.put_strike = get_num_or(lj, "put_strike", 0.0);
            s.legs.push_back(leg);
        }
        cl.payoff = s;
    } else {
        throw ConfigError(where + ".type: unknown payoff type '" + type + "'");
    }
    return cl;
}

CollateralSpec parse_collateral(const json& j, const std::string& where) {
    check_keys(j, {"kind", "fraction", "threshold"}, where);
    CollateralSpec s;
    const std::string kind = get_str(j, "kind", where);
    if (kind == "none") s.kind = CollateralSpec::Kind::none;
    else if (kind == "perfect") s.kind = CollateralSpec::Kind::perfect;
    else if (kind == "fraction") {
        s.kind = CollateralSpec::Kind::fraction;
        s.param = get_num(j, "fraction", where);
    } else if (kind == "threshold") {
        s.kind = CollateralSpec::Kind::threshold;
        s.param = get_num(j, "threshold", where);
    } else {
        throw ConfigError(where + ".kind: unknown collateral kind '" + kind + "'");
    }
    s.validate();
    return s;
}

InitialMarginSpec parse_im(const json& j, const std::string& where) {
    check_keys(j, {"kind", "amount", "alpha", "delta"}, where);
    InitialMarginSpec s;
    const std::string kind = get_str(j, "kind", where);
    if (kind == "none") s.kind = InitialMarginSpec::Kind::none;
    else if (kind == "constant") {
        s.kind = InitialMarginSpec::Kind::constant;
        s.amount = get_num(j, "amount", where);
    } else if (kind == "var_quantile") {
        s.kind = InitialMarginSpec::Kind::var_quantile;
        s.alpha = get_num_or(j, "alpha", 0.99);
        s.delta = get_num_or(j, "delta", 10.0 / 252.0);
    } else {
        throw ConfigError(where + ".kind: unknown initial margin kind '" + kind + "'");
    }
    s.validate();
    return s;
}

MarginSetSpec parse_margin_set(const json& j, std::vector<std::string>* defaults) {
    check_keys(j, {"id", "claims", "collateral", "initial_margin", "rcl", "rcb", "ril", "rib"},
               "margin_set");
    MarginSetSpec ms;
    ms.id = get_str(j, "id", "margin_set");
    const std::string where = "margin_set " + ms.id;
    if (j.contains("claims")) {
        if (!j["claims"].is_array()) throw ConfigError(where + ": 'claims' must be an array");
        for (const auto& c : j["claims"]) ms.claim_ids.push_back(c.get<std::string>());
    }
    ms.collateral =
        j.contains("collateral") ? parse_collateral(j["collateral"], where + ".collateral")
                                 : CollateralSpec{};
    ms.initial_margin =
        j.contains("initial_margin") ? parse_im(j["initial_margin"], where + ".initial_margin")
                                     : InitialMarginSpec{};
    if (!j.contains("collateral") && defaults) defaults->push_back(where + ".collateral=none");
    if (!j.contains("initial_margin") && defaults)
        defaults->push_back(where + ".initial_margin=none");
    if (j.contains("rcl")) ms.rcl = parse_curve(j["rcl"], where + ".rcl");
    if (j.contains("rcb")) ms.rcb = parse_curve(j["rcb"], where + ".rcb");
    if (j.contains("ril")) ms.ril = parse_curve(j["ril"], where + ".ril");
    if (j.contains("rib")) ms.rib = parse_curve(j["rib"], where + ".rib");
    return ms;
}

json claim_json(const Claim& c) {
    json j;
    j["id"] = c.id;
    j["notional"] = c.notional;
    j["asset"] = c.asset_id;
    j["csa_rate"] = curve_json(c.csa_rate);
    if (const auto* f = std::get_if<Forward>(&c.payoff)) {
        j["type"] = "forward";
        j["direction"] = f->direction > 0 ? "long" : "short";
        j["strike"] = f->strike;
        j["maturity"] = f->maturity;
    } else if (const auto* o = std::get_if<EuropeanOption>(&c.payoff)) {
        j["type"] = "european_option";
        j["option"] = o->call ? "call" : "put";
        j["strike"] = o->strike;
        j["maturity"] = o->maturity;
    } else {
        const auto& s = std::get<CashflowSchedule>(c.payoff);
        j["type"] = "cashflow_schedule";
        json legs = json::array();
        for (const auto& l : s.legs) {
            json lj;
            lj["time"] = l.time;
            lj["fixed"] = l.fixed;
            lj["spot"] = l.spot;
            lj["call_weight"] = l.call_weight;
            lj["call_strike"] = l.call_strike;
            lj["put_weight"] = l.put_weight;
            lj["put_strike"] = l.put_strike;
            legs.push_back(lj);
        }
        j["legs"] = legs;
    }
    return j;
}

json collateral_json(const CollateralSpec& s) {
    json j;
    switch (s.kind) {
    case CollateralSpec::Kind::none: j["kind"] = "none"; break;
    case CollateralSpec::Kind::perfect: j["kind"] = "perfect"; break;
    case CollateralSpec::Kind::fraction:
        j["kind"] = "fraction";
        j["fraction"] = s.param;
        break;
    case CollateralSpec::Kind::threshold:
        j["kind"] = "threshold";
        j["threshold"] = s.param;
        break;
    }
    return j;
}

json im_json(const InitialMarginSpec& s) {
    json j;
    switch (s.kind) {
    case InitialMarginSpec::Kind::none: j["kind"] = "none"; break;
    case InitialMarginSpec::Kind::constant:
        j["kind"] = "constant";
        j["amount"] = s.amount;
        break;
    case InitialMarginSpec::Kind::var_quantile:
        j["kind"] = "var_quantile";
        j["alpha"] = s.alpha;
        j["delta"] = s.delta;
        break;
    }
    return j;
}

json margin_set_json(const MarginSetSpec& ms) {
    json j;
    j["id"] = ms.id;
    j["claims"] = ms.claim_ids;
    j["collateral"] = collateral_json(ms.collateral);
    j["initial_margin"] = im_json(ms.initial_margin);
    if (ms.rcl) j["rcl"] = curve_json(*ms.rcl);
    if (ms.rcb) j["rcb"] = curve_json(*ms.rcb);
    if (ms.ril) j["ril"] = curve_json(*ms.ril);
    if (ms.rib) j["rib"] = curve_json(*ms.rib);
    return j;
}

} // namespace

void RunConfig::validate() const {
    if (n_paths < 1) throw ConfigError("n_paths must be >= 1");
    if (n_steps < 1) throw ConfigError("n_steps must be >= 1");
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    if (!(pfe_quantile > 0.0 && pfe_quantile <= 1.0))
        throw ConfigError("pfe_quantile must lie in (0,1]");
    env.validate();
    portfolio.validate();
    for (const auto& c : portfolio.claims) {
        c.validate(horizon);
        bool found = false;
        for (const auto& a : assets) found = found || a.id == c.asset_id;
        if (!found) throw ConfigError("claim " + c.id + " references unknown asset " + c.asset_id);
    }
    if (mode == RunMode::incremental && !candidate)
        throw ConfigError("incremental mode requires a 'candidate' block");
    if (candidate) {
        bool found = false;
        for (const auto& a : assets) found = found || a.id == candidate->claim.asset_id;
        if (!found)
            throw ConfigError("candidate claim references unknown asset " +
                              candidate->claim.asset_id);
    }
    solver.regression.validate();
}

RunConfig parse_config_text(const std::string& text, std::vector<std::string>* defaults) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(root,
               {"environment", "assets", "claims", "margin_sets", "netting_sets", "solver",
                "n_paths", "n_steps", "seed", "horizon", "mode", "output_dir", "pfe_quantile",
                "undeflated_exposure", "gnuplot_exposure", "dump_paths", "candidate"},
               "config");
    RunConfig cfg;
    if (!root.contains("environment")) throw ConfigError("config: missing 'environment'");
    cfg.env = parse_environment(root["environment"], defaults);

    if (!root.contains("assets") || !root["assets"].is_array() || root["assets"].empty())
        throw ConfigError("config: missing non-empty 'assets' array");
    for (const auto& a : root["assets"]) cfg.assets.push_back(parse_asset(a, cfg.env, defaults));

    if (root.contains("claims"))
        for (const auto& c : root["claims"])
            cfg.portfolio.claims.push_back(parse_claim(c, cfg.env, defaults));
    if (root.contains("margin_sets"))
        for (const auto& m : root["margin_sets"])
            cfg.portfolio.margin_sets.push_back(parse_margin_set(m, defaults));
    if (root.contains("netting_sets"))
        for (const auto& nj : root["netting_sets"]) {
            check_keys(nj, {"id", "margin_sets"}, "netting_set");
            NettingSetSpec ns;
            ns.id = get_str(nj, "id", "netting_set");
            for (const auto& m : nj["margin_sets"]) ns.margin_set_ids.push_back(m.get<std::string>());
            cfg.portfolio.netting_sets.push_back(ns);
        }

    if (root.contains("solver")) {
        const json& s = root["solver"];
        check_keys(s,
                   {"max_picard", "picard_tol", "regression_degree", "fit_subsample",
                    "csa_exposure_mode"},
                   "solver");
        cfg.solver.max_picard = (int)get_num_or(s, "max_picard", 20);
        cfg.solver.picard_tol = get_num_or(s, "picard_tol", 1e-8);
        cfg.solver.regression.degree = (int)get_num_or(s, "regression_degree", 3);
        cfg.solver.regression.fit_subsample = (std::size_t)get_num_or(s, "fit_subsample", 0);
        cfg.solver.csa_exposure_mode =
            s.contains("csa_exposure_mode") && s["csa_exposure_mode"].get<bool>();
    }

    cfg.n_paths = (std::size_t)get_num_or(root, "n_paths", 100000);
    cfg.n_steps = (std::size_t)get_num_or(root, "n_steps", 100);
    cfg.seed = (std::uint64_t)get_num_or(root, "seed", 42);
    cfg.horizon = get_num_or(root, "horizon", 1.0);
    if (root.contains("mode")) cfg.mode = parse_mode(root["mode"].get<std::string>());
    if (root.contains("output_dir")) cfg.output_dir = root["output_dir"].get<std::string>();
    cfg.pfe_quantile = get_num_or(root, "pfe_quantile", 0.95);
    cfg.undeflated_exposure =
        root.contains("undeflated_exposure") && root["undeflated_exposure"].get<bool>();
    cfg.gnuplot_exposure =
        root.contains("gnuplot_exposure") && root["gnuplot_exposure"].get<bool>();
    cfg.dump_paths = root.contains("dump_paths") && root["dump_paths"].get<bool>();

    if (root.contains("candidate")) {
        const json& cj = root["candidate"];
        check_keys(cj, {"claim", "margin_set", "netting_set"}, "candidate");
        CandidatePlacement cp;
        if (!cj.contains("claim")) throw ConfigError("candidate: missing 'claim'");
        cp.claim = parse_claim(cj["claim"], cfg.env, defaults);
        if (cj.contains("margin_set")) {
            if (cj["margin_set"].is_string()) {
                cp.margin_set.id = cj["margin_set"].get<std::string>();
            } else {
                cp.margin_set = parse_margin_set(cj["margin_set"], defaults);
            }
        } else {
            cp.margin_set.id = cp.claim.id + ".ms";
        }
        cp.netting_set_id = cj.contains("netting_set") ? cj["netting_set"].get<std::string>()
                                                       : cp.claim.id + ".ns";
        cfg.candidate = std::move(cp);
    }

    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path, std::vector<std::string>* defaults) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), defaults);
}

std::string serialize_config(const RunConfig& cfg) {
    json root;
    json e;
    e["r"] = curve_json(cfg.env.r);
    e["rfl"] = curve_json(cfg.env.rfl);
    e["rfb"] = curve_json(cfg.env.rfb);
    e["rcl"] = curve_json(cfg.env.rcl);
    e["rcb"] = curve_json(cfg.env.rcb);
    e["ril"] = curve_json(cfg.env.ril);
    e["rib"] = curve_json(cfg.env.rib);
    e["rrepo"] = curve_json(cfg.env.rrepo);
    e["lambda_b"] = curve_json(cfg.env.lambda_b);
    e["lambda_c"] = curve_json(cfg.env.lambda_c);
    e["recovery_b"] = cfg.env.recovery_b;
    e["recovery_c"] = cfg.env.recovery_c;
    root["environment"] = e;

    json assets = json::array();
    for (const auto& a : cfg.assets) {
        json aj;
        aj["id"] = a.id;
        aj["s0"] = a.s0;
        aj["sigma"] = curve_json(a.sigma);
        aj["dividend"] = curve_json(a.dividend);
        aj["repo"] = curve_json(a.repo);
        assets.push_back(aj);
    }
    root["assets"] = assets;

    json claims = json::array();
    for (const auto& c : cfg.portfolio.claims) claims.push_back(claim_json(c));
    root["claims"] = claims;

    json mss = json::array();
    for (const auto& ms : cfg.portfolio.margin_sets) mss.push_back(margin_set_json(ms));
    root["margin_sets"] = mss;

    json nss = json::array();
    for (const auto& ns : cfg.portfolio.netting_sets) {
        json nj;
        nj["id"] = ns.id;
        nj["margin_sets"] = ns.margin_set_ids;
        nss.push_back(nj);
    }
    root["netting_sets"] = nss;

    json s;
    s["max_picard"] = cfg.solver.max_picard;
    s["picard_tol"] = cfg.solver.picard_tol;
    s["regression_degree"] = cfg.solver.regression.degree;
    s["fit_subsample"] = cfg.solver.regression.fit_subsample;
    s["csa_exposure_mode"] = cfg.solver.csa_exposure_mode;
    root["solver"] = s;

    root["n_paths"] = cfg.n_paths;
    root["n_steps"] = cfg.n_steps;
    root["seed"] = cfg.seed;
    root["horizon"] = cfg.horizon;
    root["mode"] = to_string(cfg.mode);
    root["output_dir"] = cfg.output_dir;
    root["pfe_quantile"] = cfg.pfe_quantile;
    root["undeflated_exposure"] = cfg.undeflated_exposure;
    root["gnuplot_exposure"] = cfg.gnuplot_exposure;
    root["dump_paths"] = cfg.dump_paths;

    if (cfg.candidate) {
        json cj;
        cj["claim"] = claim_json(cfg.candidate->claim);
        cj["margin_set"] = margin_set_json(cfg.candidate->margin_set);
        cj["netting_set"] = cfg.candidate->netting_set_id;
        root["candidate"] = cj;
    }
    return root.dump(2);
}

namespace {

const char* kPresetDiscva = R"json({
  "environment": {
    "r": 0.01,
    "lambda_b": 0.0,
    "lambda_c": 0.0,
    "recovery_b": 0.4,
    "recovery_c": 0.4
  },
  "assets": [ { "id": "S", "s0": 100.0, "sigma": 0.25, "dividend": 0.0, "repo": 0.01 } ],
  "claims": [
    { "id": "fwd80", "type": "forward", "direction": "long", "strike": 80.0,
      "maturity": 1.0, "notional": 1000.0, "asset": "S", "csa_rate": 0.05 }
  ],
  "margin_sets": [
    { "id": "ms1", "claims": ["fwd80"],
      "collateral": { "kind": "none" }, "initial_margin": { "kind": "none" } }
  ],
  "netting_sets": [ { "id": "ns1", "margin_sets": ["ms1"] } ],
  "solver": { "max_picard": 20, "picard_tol": 1e-8, "regression_degree": 3 },
  "n_paths": 100000, "n_steps": 100, "seed": 20260809, "horizon": 1.0,
  "mode": "value", "output_dir": "out", "pfe_quantile": 0.95
})json";

const char* kPresetIncrementalCva = R"json({
  "environment": {
    "r": 0.01,
    "lambda_b": 0.0,
    "lambda_c": 0.04,
    "recovery_b": 0.4,
    "recovery_c": 0.4
  },
  "assets": [ { "id": "S", "s0": 100.0, "sigma": 0.25, "dividend": 0.0, "repo": 0.01 } ],
  "claims": [
    { "id": "fwd100", "type": "forward", "direction": "long", "strike": 100.0,
      "maturity": 1.0, "notional": 1000.0, "asset": "S", "csa_rate": 0.01 }
  ],
  "margin_sets": [
    { "id": "ms1", "claims": ["fwd100"],
      "collateral": { "kind": "none" }, "initial_margin": { "kind": "none" } }
  ],
  "netting_sets": [ { "id": "ns1", "margin_sets": ["ms1"] } ],
  "solver": { "max_picard": 20, "picard_tol": 1e-8, "regression_degree": 3 },
  "n_paths": 100000, "n_steps": 100, "seed": 20260809, "horizon": 1.0,
  "mode": "incremental", "output_dir": "out", "pfe_quantile": 0.95,
  "candidate": {
    "claim": { "id": "fwd90s", "type": "forward", "direction": "short", "strike": 90.0,
               "maturity": 1.0, "notional": 1000.0, "asset": "S", "csa_rate": 0.01 },
    "margin_set": "ms1",
    "netting_set": "ns1"
  }
})json";

} // namespace

std::vector<std::string> preset_names() {
    return {"paper_sec4_discva", "paper_sec4_incremental_cva"};
}

bool is_preset(const std::string& name) {
    for (const auto& n : preset_names())
        if (n == name) return true;
    return false;
}

RunConfig preset_config(const std::string& name) {
    if (name == "paper_sec4_discva") return parse_config_text(kPresetDiscva);
    if (name == "paper_sec4_incremental_cva") return parse_config_text(kPresetIncrementalCva);
    throw ConfigError("unknown preset '" + name + "'");
}

} // namespace xva
