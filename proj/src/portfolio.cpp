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

#include "xva/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "xva/errors.hpp"
#include "xva/kernels/kernels.hpp"
#include "xva/kernels/parallel.hpp"

namespace xva {

void PortfolioDef::validate() const {
    std::set<std::string> claim_ids;
    for (const auto& c : claims)
        if (!claim_ids.insert(c.id).second) throw ConfigError("duplicate claim id " + c.id);

    std::map<std::string, int> claim_use;
    std::set<std::string> ms_ids;
    for (const auto& ms : margin_sets) {
        if (!ms_ids.insert(ms.id).second) throw ConfigError("duplicate margin set id " + ms.id);
        ms.collateral.validate();
        ms.initial_margin.validate();
        std::set<std::string> seen;
        for (const auto& cid : ms.claim_ids) {
            if (!claim_ids.count(cid))
                throw ConfigError("margin set " + ms.id + " references unknown claim " + cid);
            if (!seen.insert(cid).second)
                throw ConfigError("margin set " + ms.id + " lists claim " + cid + " twice");
            ++claim_use[cid];
        }
    }
    for (const auto& c : claims) {
        auto it = claim_use.find(c.id);
        if (it == claim_use.end())
            throw ConfigError("claim " + c.id + " belongs to no margin set");
        if (it->second > 1) throw ConfigError("claim " + c.id + " belongs to several margin sets");
    }

    std::map<std::string, int> ms_use;
    std::set<std::string> ns_ids;
    for (const auto& ns : netting_sets) {
        if (!ns_ids.insert(ns.id).second) throw ConfigError("duplicate netting set id " + ns.id);
        for (const auto& mid : ns.margin_set_ids) {
            if (!ms_ids.count(mid))
                throw ConfigError("netting set " + ns.id + " references unknown margin set " + mid);
            ++ms_use[mid];
        }
    }
    for (const auto& ms : margin_sets) {
        auto it = ms_use.find(ms.id);
        if (it == ms_use.end())
            throw ConfigError("margin set " + ms.id + " belongs to no netting set");
        if (it->second > 1)
            throw ConfigError("margin set " + ms.id + " belongs to several netting sets");
    }

    // one underlying per netting set (scalar regression basis)
    for (const auto& ns : netting_sets) {
        std::set<std::string> assets;
        for (const auto& mid : ns.margin_set_ids)
            for (const auto& ms : margin_sets)
                if (ms.id == mid)
                    for (const auto& cid : ms.claim_ids) assets.insert(claim(cid).asset_id);
        if (assets.size() > 1)
            throw ConfigError("netting set " + ns.id + " mixes underlyings; one asset per netting set");
    }
}

const Claim& PortfolioDef::claim(const std::string& id) const {
    for (const auto& c : claims)
        if (c.id == id) return c;
    throw ConfigError("unknown claim id " + id);
}

const PathSet& Market::paths_for(const std::string& asset_id) const {
    for (std::size_t i = 0; i < assets.size(); ++i)
        if (assets[i].id == asset_id) return paths[i];
    throw ConfigError("unknown asset id " + asset_id);
}

const AssetSpec& Market::asset_for(const std::string& asset_id) const {
    for (const auto& a : assets)
        if (a.id == asset_id) return a;
    throw ConfigError("unknown asset id " + asset_id);
}

Market build_market(const RateEnvironment& env, std::vector<AssetSpec> assets,
                    const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed) {
    env.validate();
    Market m;
    m.env = env;
    m.assets = std::move(assets);
    for (std::size_t i = 0; i < m.assets.size(); ++i)
        m.paths.push_back(simulate_paths(m.assets[i], grid, n_paths, seed, (std::uint32_t)i));
    return m;
}

namespace {

ComponentEstimate estimate_from_samples(const std::vector<double>& acc) {
    const std::size_t n = acc.size();
    ComponentEstimate e;
    e.value = kernels::blocked_sum(acc.data(), n) / (double)n;
    const double m2 = kernels::blocked_dot(acc.data(), acc.data(), n) / (double)n;
    e.se = std::sqrt(std::max(m2 - e.value * e.value, 0.0) / (double)n);
    return e;
}

} // namespace

NettingAssembly assemble_netting_state(const NettingSetSpec& ns, const PortfolioDef& portfolio,
                                       const Market& market, const SolverConfig& cfg) {
    std::vector<const MarginSetSpec*> members;
    for (const auto& mid : ns.margin_set_ids)
        for (const auto& ms : portfolio.margin_sets)
            if (ms.id == mid) members.push_back(&ms);
    if (members.size() != ns.margin_set_ids.size())
        throw ConfigError("netting set " + ns.id + ": unresolved margin set reference");

    std::string asset_id;
    for (const auto* ms : members)
        for (const auto& cid : ms->claim_ids) asset_id = portfolio.claim(cid).asset_id;
    const AssetSpec& asset = market.asset_for(asset_id);
    const PathSet& paths = market.paths_for(asset_id);
    const RateEnvironment& env = market.env;
    const TimeGrid& grid = paths.grid();
    const std::size_t n = paths.n_paths();
    const auto& k = kernels::active();

    NettingAssembly out;
    out.asset_id = asset_id;
    out.discva_acc.assign(n, 0.0);
    NettingState& st = out.state;
    st.id = ns.id;
    st.clean_total = ValueSurface(grid, n, ns.id + ".clean");
    ValueSurface credit(grid, n, ns.id + ".credit");

    for (const auto* msp : members) {
        MarginBlock b;
        b.collateral_spec = msp->collateral;
        b.im_spec = msp->initial_margin;
        b.rcl = msp->rcl.value_or(env.rcl);
        b.rcb = msp->rcb.value_or(env.rcb);
        b.ril = msp->ril.value_or(env.ril);
        b.rib = msp->rib.value_or(env.rib);
        b.clean = ValueSurface(grid, n, msp->id + ".clean");

        for (const auto& cid : msp->claim_ids) {
            const Claim& cl = portfolio.claim(cid);
            cl.validate(grid.horizon());
            ValueSurface vhat =
                clean_value_surface(cl, asset, paths, env.r, cfg.regression, &out.build_diag);
            out.clean0 += vhat.value(0, 0);

            if (cl.is_forward() && !cfg.csa_exposure_mode) {
                out.front0 += forward_value_closed_form(cl, asset, cl.csa_rate, 0.0, asset.s0);
            } else {
                ValueSurface phat = clean_value_surface(cl, asset, paths, cl.csa_rate,
                                                        cfg.regression, &out.build_diag);
                out.front0 += phat.value(0, 0);
                if (cfg.csa_exposure_mode) credit.add(phat);
            }
            std::vector<double> raw0 = discva_raw0(cl, env, paths, vhat);
            kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
                k.axpy(1.0, raw0.data() + lo, out.discva_acc.data() + lo, hi - lo);
            });
            if (cfg.csa_exposure_mode) {
                ValueSurface dsurf =
                    discva_surface(cl, env, paths, vhat, cfg.regression, &out.build_diag);
                for (std::size_t i = 0; i < grid.size(); ++i)
                    kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
                        k.axpy(-1.0, dsurf.slice(i) + lo, credit.slice(i) + lo, hi - lo);
                    });
            }
            b.clean.add(vhat);
        }

        b.coll = collateral_surface(msp->collateral, b.clean);
        InitialMarginDiag imd;
        auto im = initial_margin_surfaces(msp->initial_margin, b.clean, paths, cfg.regression, &imd);
        out.build_diag.degree_degrades += imd.degree_degrades;
        b.im_tc = std::move(im.first);
        b.im_fc = std::move(im.second);
        st.clean_total.add(b.clean);
        st.blocks.push_back(std::move(b));
    }

    st.credit_exposure = cfg.csa_exposure_mode ? std::move(credit) : st.clean_total;
    return out;
}

NettingSolveOutput solve_netting_set(const NettingSetSpec& ns, const PortfolioDef& portfolio,
                                     const Market& market, const SolverConfig& cfg) {
    bool any_claim = false;
    for (const auto& mid : ns.margin_set_ids)
        for (const auto& ms : portfolio.margin_sets)
            if (ms.id == mid && !ms.claim_ids.empty()) any_claim = true;
    if (!any_claim) {
        NettingSolveOutput empty;
        empty.report.id = ns.id;
        empty.report.converged = true;
        const TimeGrid& grid = market.paths.front().grid();
        empty.exposure = ValueSurface(grid, market.paths.front().n_paths(), ns.id + ".exposure");
        empty.xva_surface = ValueSurface(grid, market.paths.front().n_paths());
        return empty;
    }

    NettingAssembly asmb = assemble_netting_state(ns, portfolio, market, cfg);
    NettingState& st = asmb.state;
    const PathSet& paths = market.paths_for(asmb.asset_id);
    const RateEnvironment& env = market.env;
    const TimeGrid& grid = paths.grid();
    const std::size_t n = paths.n_paths();

    NettingSolveOutput out;
    out.report.id = ns.id;
    out.build_diag = asmb.build_diag;
    const double clean0 = asmb.clean0, front0 = asmb.front0;
    const std::vector<double>& discva_acc = asmb.discva_acc;

    SolveResult solved = solve_predefault_xva(st, env, paths, cfg);
    XvaComponents comps = decompose_xva(st, solved.xva, env, paths, cfg);

    XvaReport& r = out.report;
    r.cva = comps.cva;
    r.dva = comps.dva;
    r.fva = comps.fva;
    r.colva = comps.colva;
    r.mva = comps.mva;
    r.xva = comps.xva;
    r.discva = estimate_from_samples(discva_acc);
    r.xva_hat = r.xva.value + r.discva.value;
    r.bsde_xva0 = solved.xva.value(0, 0);
    r.clean_value = clean0;
    r.front_office_value = front0;
    r.full_value = front0 - r.xva_hat;
    r.picard_iterations = solved.diag.picard_iterations;
    r.converged = solved.diag.converged;
    r.last_delta = solved.diag.last_delta;
    r.dt_bound = solved.diag.dt_bound;

    // residual exposure net of variation margin, used for profiles
    out.exposure = st.credit_exposure;
    out.exposure.set_label(ns.id + ".exposure");
    const auto& k = kernels::active();
    for (const auto& b : st.blocks)
        for (std::size_t i = 0; i < grid.size(); ++i)
            kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
                k.axpy(-1.0, b.coll.slice(i) + lo, out.exposure.slice(i) + lo, hi - lo);
            });
    out.xva_surface = std::move(solved.xva);
    return out;
}

PortfolioReport portfolio_value(std::vector<XvaReport> reports) {
    PortfolioReport out;
    out.totals.id = "portfolio";
    out.totals.converged = true;
    auto add = [](ComponentEstimate& tot, const ComponentEstimate& x) {
        tot.value += x.value;
        tot.se = std::sqrt(tot.se * tot.se + x.se * x.se);
    };
    for (auto& r : reports) {
        add(out.totals.cva, r.cva);
        add(out.totals.dva, r.dva);
        add(out.totals.fva, r.fva);
        add(out.totals.colva, r.colva);
        add(out.totals.mva, r.mva);
        add(out.totals.xva, r.xva);
        add(out.totals.discva, r.discva);
        out.totals.xva_hat += r.xva_hat;
        out.totals.bsde_xva0 += r.bsde_xva0;
        out.totals.clean_value += r.clean_value;
        out.totals.front_office_value += r.front_office_value;
        out.totals.picard_iterations = std::max(out.totals.picard_iterations, r.picard_iterations);
        out.totals.converged = out.totals.converged && r.converged;
        out.totals.last_delta = std::max(out.totals.last_delta, r.last_delta);
        out.totals.dt_bound += r.dt_bound;
    }
    out.totals.full_value = out.totals.front_office_value - out.totals.xva_hat;
    out.netting_sets = std::move(reports);
    return out;
}

PortfolioReport solve_portfolio(const PortfolioDef& portfolio, const Market& market,
                                const SolverConfig& cfg) {
    portfolio.validate();
    std::vector<XvaReport> reports;
    for (const auto& ns : portfolio.netting_sets)
        reports.push_back(solve_netting_set(ns, portfolio, market, cfg).report);
    return portfolio_value(std::move(reports));
}

IncrementalResult incremental_charge(const PortfolioDef& base, const CandidatePlacement& cand,
                                     const Market& market, const SolverConfig& cfg) {
    base.validate();
    IncrementalResult out;
    out.base = solve_portfolio(base, market, cfg);

    // full scenario: candidate added at its placement
    PortfolioDef full = base;
    full.claims.push_back(cand.claim);
    const MarginSetSpec* placed = nullptr;
    for (auto& ms : full.margin_sets)
        if (ms.id == cand.margin_set.id) {
            ms.claim_ids.push_back(cand.claim.id);
            placed = &ms;
        }
    if (!placed) {
        MarginSetSpec fresh = cand.margin_set;
        fresh.claim_ids = {cand.claim.id};
        full.margin_sets.push_back(fresh);
        bool attached = false;
        for (auto& nsspec : full.netting_sets)
            if (nsspec.id == cand.netting_set_id) {
                nsspec.margin_set_ids.push_back(fresh.id);
                attached = true;
            }
        if (!attached)
            full.netting_sets.push_back(NettingSetSpec{cand.netting_set_id, {fresh.id}});
    }
    out.full = solve_portfolio(full, market, cfg);

    // standalone: the candidate alone under its own CSA terms
    PortfolioDef alone;
    alone.claims = {cand.claim};
    MarginSetSpec ams = placed ? *placed : cand.margin_set;
    ams.claim_ids = {cand.claim.id};
    alone.margin_sets = {ams};
    alone.netting_sets = {NettingSetSpec{cand.netting_set_id, {ams.id}}};
    PortfolioReport alone_rep = solve_portfolio(alone, market, cfg);

    IncrementalRecord& rec = out.record;
    rec.standalone = alone_rep.totals;
    rec.standalone.id = cand.claim.id + ".standalone";
    rec.delta_xva = out.full.totals.xva.value - out.base.totals.xva.value;
    rec.delta_cva = out.full.totals.cva.value - out.base.totals.cva.value;
    rec.candidate_front0 = alone_rep.totals.front_office_value;
    rec.candidate_discva0 = alone_rep.totals.discva.value;
    rec.delta_v = rec.candidate_front0 - rec.delta_xva - rec.candidate_discva0;
    rec.nl = rec.delta_xva - rec.standalone.xva.value;
    rec.nl_paper = out.full.totals.xva.value - rec.delta_xva;
    out.full.incremental = rec;
    return out;
}

} // namespace xva
