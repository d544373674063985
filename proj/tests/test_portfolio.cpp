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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "xva/errors.hpp"
#include "xva/portfolio.hpp"

using namespace xva;

namespace {

AssetSpec sec4_asset(double sigma = 0.25) {
    AssetSpec a;
    a.id = "S";
    a.s0 = 100.0;
    a.sigma = Curve::flat(sigma);
    a.dividend = Curve::flat(0.0);
    a.repo = Curve::flat(0.01);
    return a;
}

RateEnvironment cva_env() {
    RateEnvironment env;
    env.r = Curve::flat(0.01);
    env.rfl = env.rfb = env.rcl = env.rcb = env.ril = env.rrepo = env.r;
    env.rib = Curve::flat(0.0);
    env.lambda_c = Curve::flat(0.04);
    env.lambda_b = Curve::flat(0.0);
    return env;
}

Claim forward_claim(const char* id, double strike, int direction, double notional = 1000.0) {
    Claim c;
    c.id = id;
    c.payoff = Forward{direction, strike, 1.0};
    c.notional = notional;
    c.asset_id = "S";
    c.csa_rate = Curve::flat(0.01);
    return c;
}

PortfolioDef one_claim(const Claim& c, const char* ms = "ms1", const char* ns = "ns1") {
    PortfolioDef p;
    p.claims = {c};
    MarginSetSpec m;
    m.id = ms;
    m.claim_ids = {c.id};
    p.margin_sets = {m};
    p.netting_sets = {NettingSetSpec{ns, {std::string(ms)}}};
    return p;
}

} // namespace

TEST_CASE("hierarchy validation rejects broken structures") {
    PortfolioDef p = one_claim(forward_claim("f1", 100.0, 1));
    CHECK_NOTHROW(p.validate());

    PortfolioDef dangling = p;
    dangling.margin_sets[0].claim_ids = {"ghost"};
    CHECK_THROWS_WITH_AS(dangling.validate(),
                         doctest::Contains("unknown claim ghost"), ConfigError);

    PortfolioDef uncovered = p;
    uncovered.claims.push_back(forward_claim("f2", 90.0, -1));
    CHECK_THROWS_WITH_AS(uncovered.validate(), doctest::Contains("belongs to no margin set"),
                         ConfigError);

    PortfolioDef twice = p;
    twice.margin_sets.push_back(twice.margin_sets[0]);
    twice.margin_sets[1].id = "ms2";
    twice.netting_sets[0].margin_set_ids.push_back("ms2");
    CHECK_THROWS_WITH_AS(twice.validate(), doctest::Contains("several margin sets"), ConfigError);

    PortfolioDef orphan_ms = p;
    orphan_ms.netting_sets.clear();
    CHECK_THROWS_WITH_AS(orphan_ms.validate(), doctest::Contains("belongs to no netting set"),
                         ConfigError);
}

TEST_CASE("degenerate hierarchy equals the single-claim solve") {
    Market market = build_market(cva_env(), {sec4_asset()}, TimeGrid::uniform(1.0, 40), 20000, 21);
    SolverConfig cfg;
    PortfolioDef p = one_claim(forward_claim("f1", 100.0, 1));
    PortfolioReport rep = solve_portfolio(p, market, cfg);
    NettingSolveOutput direct = solve_netting_set(p.netting_sets[0], p, market, cfg);
    CHECK(rep.totals.cva.value == direct.report.cva.value);
    CHECK(rep.totals.xva.value == direct.report.xva.value);
    CHECK(rep.netting_sets.size() == 1);
}

TEST_CASE("two-forward netting set reproduces the deterministic portfolio CVA") {
    Market market = build_market(cva_env(), {sec4_asset()}, TimeGrid::uniform(1.0, 100), 50000, 23);
    SolverConfig cfg;
    PortfolioDef p = one_claim(forward_claim("f1", 100.0, 1));
    p.claims.push_back(forward_claim("f2", 90.0, -1));
    p.margin_sets[0].claim_ids.push_back("f2");
    PortfolioReport rep = solve_portfolio(p, market, cfg);

    oracle::FlatMarket m;
    const double cva_oracle = oracle::cva_two_forwards(m, 100.0, 90.0, 1000.0);
    CHECK(cva_oracle == doctest::Approx(232.9225).epsilon(1e-5));
    // the netted exposure is deterministic, so only the trapezoid error remains
    CHECK(std::abs(rep.totals.cva.value - cva_oracle) <= 0.01);
    CHECK(rep.totals.cva.se <= 1e-10);
}

TEST_CASE("fully collateralized margin sets produce zero netting-set XVA") {
    Market market = build_market(cva_env(), {sec4_asset()}, TimeGrid::uniform(1.0, 20), 4000, 29);
    SolverConfig cfg;
    PortfolioDef p = one_claim(forward_claim("f1", 100.0, 1));
    p.claims.push_back(forward_claim("f2", 90.0, -1));
    MarginSetSpec ms2;
    ms2.id = "ms2";
    ms2.claim_ids = {"f2"};
    p.margin_sets.push_back(ms2);
    p.netting_sets[0].margin_set_ids.push_back("ms2");
    for (auto& ms : p.margin_sets) ms.collateral.kind = CollateralSpec::Kind::perfect;
    PortfolioReport rep = solve_portfolio(p, market, cfg);
    CHECK(std::abs(rep.totals.xva.value) <= 1e-9);
    CHECK(rep.totals.cva.value == 0.0);
}

TEST_CASE("netting sets add exactly; duplicated standalone doubles the portfolio") {
    Market market = build_market(cva_env(), {sec4_asset()}, TimeGrid::uniform(1.0, 30), 10000, 31);
    SolverConfig cfg;
    PortfolioDef p = one_claim(forward_claim("f1", 100.0, 1));
    // an identical claim in a second, separate netting set
    Claim f2 = forward_claim("f2", 100.0, 1);
    p.claims.push_back(f2);
    MarginSetSpec ms2;
    ms2.id = "ms2";
    ms2.claim_ids = {"f2"};
    p.margin_sets.push_back(ms2);
    p.netting_sets.push_back(NettingSetSpec{"ns2", {"ms2"}});
    PortfolioReport rep = solve_portfolio(p, market, cfg);
    CHECK(rep.netting_sets.size() == 2);
    CHECK(rep.netting_sets[0].cva.value == rep.netting_sets[1].cva.value);
    CHECK(rep.totals.cva.value ==
          doctest::Approx(2.0 * rep.netting_sets[0].cva.value).epsilon(1e-14));
    CHECK(rep.totals.xva.value ==
          doctest::Approx(rep.netting_sets[0].xva.value + rep.netting_sets[1].xva.value)
              .epsilon(1e-14));
}

TEST_CASE("empty portfolio values to zero") {
    Market market = build_market(cva_env(), {sec4_asset()}, TimeGrid::uniform(1.0, 10), 500, 3);
    SolverConfig cfg;
    PortfolioDef p;
    PortfolioReport rep = solve_portfolio(p, market, cfg);
    CHECK(rep.totals.xva.value == 0.0);
    CHECK(rep.totals.clean_value == 0.0);
    CHECK(rep.totals.full_value == 0.0);
}

TEST_CASE("incremental charge on the section-4 pair") {
    Market market = build_market(cva_env(), {sec4_asset()}, TimeGrid::uniform(1.0, 100), 50000,
                                 20260809);
    SolverConfig cfg;
    PortfolioDef base = one_claim(forward_claim("f1", 100.0, 1));
    CandidatePlacement cand;
    cand.claim = forward_claim("f2", 90.0, -1);
    cand.margin_set.id = "ms1"; // existing margin set
    cand.netting_set_id = "ns1";
    IncrementalResult inc = incremental_charge(base, cand, market, cfg);

    oracle::FlatMarket m;
    const double cva1 = oracle::cva_forward(m, 100.0, 1, 1000.0);
    const double cva2 = oracle::cva_forward(m, 90.0, -1, 1000.0);
    const double cva_ptf = oracle::cva_two_forwards(m, 100.0, 90.0, 1000.0);
    CHECK(cva2 == doctest::Approx(314.2224).epsilon(1e-4));

    CHECK(std::abs(inc.base.totals.cva.value - cva1) <= 3.0 * inc.base.totals.cva.se + 0.05);
    CHECK(std::abs(inc.record.standalone.cva.value - cva2) <=
          3.0 * inc.record.standalone.cva.se + 0.05);
    CHECK(std::abs(inc.full.totals.cva.value - cva_ptf) <= 0.05);
    CHECK(inc.record.delta_cva ==
          doctest::Approx(inc.full.totals.cva.value - inc.base.totals.cva.value).epsilon(1e-12));
    // XVA sign convention: delta_xva = -delta_cva in a CVA-only setup
    CHECK(inc.record.delta_xva == doctest::Approx(-inc.record.delta_cva).epsilon(1e-12));
    // nl per the derivation, nl_paper per the published arithmetic (= base XVA)
    CHECK(inc.record.nl ==
          doctest::Approx(inc.record.delta_xva - inc.record.standalone.xva.value).epsilon(1e-12));
    CHECK(inc.record.nl_paper ==
          doctest::Approx(inc.base.totals.xva.value).epsilon(1e-9));
    // naive standalone sum dominates the netted portfolio CVA in this configuration
    CHECK(inc.base.totals.cva.value + inc.record.standalone.cva.value >=
          inc.full.totals.cva.value);
    // delta_v identity
    CHECK(inc.record.delta_v ==
          doctest::Approx(inc.record.candidate_front0 - inc.record.delta_xva -
                          inc.record.candidate_discva0)
              .epsilon(1e-12));
}

TEST_CASE("incremental edge cases: empty base and separate netting set") {
    Market market = build_market(cva_env(), {sec4_asset()}, TimeGrid::uniform(1.0, 40), 20000, 37);
    SolverConfig cfg;

    // empty base: the increment IS the standalone, so NL = 0 identically
    PortfolioDef empty;
    CandidatePlacement cand;
    cand.claim = forward_claim("solo", 90.0, -1);
    cand.margin_set.id = "msX";
    cand.netting_set_id = "nsX";
    IncrementalResult inc = incremental_charge(empty, cand, market, cfg);
    CHECK(inc.record.delta_xva ==
          doctest::Approx(inc.record.standalone.xva.value).epsilon(1e-12));
    CHECK(inc.record.nl == doctest::Approx(0.0).epsilon(1e-12));

    // candidate in its own netting set: no cross-netting, NL = 0 up to noise
    PortfolioDef base = one_claim(forward_claim("f1", 100.0, 1));
    CandidatePlacement sep;
    sep.claim = forward_claim("f2", 90.0, -1);
    sep.margin_set.id = "ms2";
    sep.netting_set_id = "ns2";
    IncrementalResult inc2 = incremental_charge(base, sep, market, cfg);
    CHECK(std::abs(inc2.record.nl) <= 1e-9);

    // common random numbers: an exactly offsetting candidate cancels the
    // full-portfolio exposure path by path
    CandidatePlacement mirror;
    mirror.claim = forward_claim("f1neg", 100.0, -1);
    mirror.margin_set.id = "ms1";
    mirror.netting_set_id = "ns1";
    IncrementalResult inc3 = incremental_charge(base, mirror, market, cfg);
    CHECK(inc3.full.totals.cva.value == 0.0);
    CHECK(inc3.record.delta_xva ==
          doctest::Approx(-inc3.base.totals.xva.value).epsilon(1e-12));
}
