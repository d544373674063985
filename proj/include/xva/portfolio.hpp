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
#ifndef XVA_PORTFOLIO_HPP
#define XVA_PORTFOLIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "xva/claims.hpp"
#include "xva/solver.hpp"

namespace xva {

/// Claims sharing one CSA. Collateral/IM rates default to the environment
/// curves unless overridden per margin set.
struct MarginSetSpec {
    std::string id;
    std::vector<std::string> claim_ids;
    CollateralSpec collateral;
    InitialMarginSpec initial_margin;
    std::optional<Curve> rcl, rcb, ril, rib;
};

/// Margin sets whose post-margin residual exposures legally net.
struct NettingSetSpec {
    std::string id;
    std::vector<std::string> margin_set_ids;
};

struct PortfolioDef {
    std::vector<Claim> claims;
    std::vector<MarginSetSpec> margin_sets;
    std::vector<NettingSetSpec> netting_sets;

    /// Margin sets partition the claims; netting sets partition the margin
    /// sets; every reference resolves; claims inside one netting set share
    /// the underlying. Throws ConfigError otherwise.
    void validate() const;
    const Claim& claim(const std::string& id) const;
};

/// Simulated market shared by every scenario of a run (common random numbers).
struct Market {
    RateEnvironment env;
    std::vector<AssetSpec> assets;
    std::vector<PathSet> paths; // parallel to assets
    const PathSet& paths_for(const std::string& asset_id) const;
    const AssetSpec& asset_for(const std::string& asset_id) const;
};

Market build_market(const RateEnvironment& env, std::vector<AssetSpec> assets,
                    const TimeGrid& grid, std::size_t n_paths, std::uint64_t seed);

/// Time-0 valuation summary of one netting set (or of the whole portfolio
/// in `totals`). xva = -cva + dva + fva + colva + mva; xva_hat = xva +
/// discva; full_value = front_office_value - xva_hat.
struct XvaReport {
    std::string id;
    ComponentEstimate cva, dva, fva, colva, mva, discva, xva;
    double xva_hat = 0.0;
    double bsde_xva0 = 0.0; // backward-induction value at t=0 (identity check)
    double clean_value = 0.0;
    double front_office_value = 0.0;
    double full_value = 0.0;
    int picard_iterations = 0;
    bool converged = true;
    double last_delta = 0.0;
    double dt_bound = 0.0;
};

struct NettingSolveOutput {
    XvaReport report;
    ValueSurface xva_surface;
    ValueSurface exposure; // credit exposure net of variation margin, for profiles
    BuildDiagnostics build_diag;
};

/// Margin-set aggregation of one netting set realized on the lattice, plus
/// the time-0 clean/front-office/DiscVA figures collected along the way.
struct NettingAssembly {
    NettingState state;
    double clean0 = 0.0;
    double front0 = 0.0;
    std::vector<double> discva_acc; // per-path portfolio DiscVA samples
    BuildDiagnostics build_diag;
    std::string asset_id;
};

NettingAssembly assemble_netting_state(const NettingSetSpec& ns, const PortfolioDef& portfolio,
                                       const Market& market, const SolverConfig& cfg);

NettingSolveOutput solve_netting_set(const NettingSetSpec& ns, const PortfolioDef& portfolio,
                                     const Market& market, const SolverConfig& cfg);

struct IncrementalRecord {
    XvaReport standalone; // candidate claim alone in its placement
    double delta_xva = 0.0;
    double delta_v = 0.0;
    double nl = 0.0;       // delta_xva - standalone xva
    double nl_paper = 0.0; // xva_full - delta_xva (the paper's published arithmetic)
    double delta_cva = 0.0;
    double candidate_front0 = 0.0;
    double candidate_discva0 = 0.0;
};

struct PortfolioReport {
    std::vector<XvaReport> netting_sets;
    XvaReport totals;
    std::optional<IncrementalRecord> incremental;
};

/// Merge per-netting-set reports: XVA^K = sum over netting sets, DiscVA
/// summed over all claims, full value = sum Phat - XVAhat^K.
PortfolioReport portfolio_value(std::vector<XvaReport> reports);

PortfolioReport solve_portfolio(const PortfolioDef& portfolio, const Market& market,
                                const SolverConfig& cfg);

/// Placement of a candidate claim: an existing margin/netting set by id, or
/// fresh sets created from the given specs.
struct CandidatePlacement {
    Claim claim;
    MarginSetSpec margin_set;   // used if margin_set.id not found in the base
    std::string netting_set_id; // existing netting set, or a new one if unknown
};

/// Base (K claims) and full (K+1) scenarios on the same PathSet, plus the
/// standalone solve of the candidate. delta_v = Phat^{K+1} - delta_xva -
/// DiscVA^{K+1} and nl = delta_xva - xva_standalone.
struct IncrementalResult {
    PortfolioReport base, full;
    IncrementalRecord record;
};

IncrementalResult incremental_charge(const PortfolioDef& base, const CandidatePlacement& cand,
                                     const Market& market, const SolverConfig& cfg);

} // namespace xva

#endif
