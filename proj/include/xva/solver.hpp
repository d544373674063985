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
#ifndef XVA_SOLVER_HPP
#define XVA_SOLVER_HPP

#include <string>
#include <vector>

#include "xva/csa.hpp"
#include "xva/paths.hpp"
#include "xva/surface.hpp"

namespace xva {

struct SolverConfig {
    int max_picard = 20;
    double picard_tol = 1e-8; // sup-norm tolerance relative to the exposure scale
    RegressionSpec regression;
    bool csa_exposure_mode = false; // credit exposure from Phat - DiscVA instead of Vhat
};

struct ComponentEstimate {
    double value = 0.0;
    double se = 0.0;
};

/// One margin set realized on the lattice: aggregated member clean values,
/// the collateral/IM surfaces derived from them, and the remuneration rates
/// that price those balances in the driver.
struct MarginBlock {
    CollateralSpec collateral_spec;
    InitialMarginSpec im_spec;
    Curve rcl, rcb, ril, rib;
    ValueSurface clean;  // aggregate member clean value of this margin set
    ValueSurface coll;   // C = f(clean), fixed across Picard iterations
    ValueSurface im_tc, im_fc;
};

/// The state one netting-set BSDE solve runs on.
struct NettingState {
    std::string id;
    ValueSurface clean_total;     // sum of margin-set clean aggregates
    ValueSurface credit_exposure; // clean_total, or sum of (Phat - DiscVA) in CSA mode
    std::vector<MarginBlock> blocks;
};

struct SolveDiagnostics {
    int picard_iterations = 0;
    bool converged = false;
    double last_delta = 0.0;
    double prev_delta = 0.0;
    int degree_degrades = 0;
    double dt_bound = 0.0; // declared O(dt^2) quadrature bound on the time integrals
};

struct SolveResult {
    ValueSurface xva; // converged pre-default XVA surface
    SolveDiagnostics diag;
};

/// Scalar driver of the full G-BSDE, f(t, V, C, I^TC, I^FC). Rates are the
/// levels at time t.
struct DriverRates {
    double r, rfl, rfb, rcl, rcb, ril, rib;
};
double full_driver(const DriverRates& rates, double v, double c, double itc, double ifc);

/// Scalar pre-default driver fbar = -f(t, Vhat - XVA, ...) -
/// (r + lambda^C + lambda^B) XVA - lambda^C theta^C + lambda^B theta^B.
double predefault_driver(const DriverRates& rates, double lambda_b, double lambda_c,
                         double recovery_b, double recovery_c, double vhat, double xva, double c,
                         double itc, double ifc);

/// Kernel-composed driver of one slice, as used by the backward solve. The
/// (r + lambda^B + lambda^C) XVA term of the scalar driver is omitted here:
/// the per-step r~ discount factor carries it, so
/// g[p] = predefault_driver(...) + r~(t_i) * xva_iter[p].
void build_predefault_driver_slice(const NettingState& state, const RateEnvironment& env,
                                   std::size_t slice, const double* xva_iter, double* g,
                                   std::size_t n);

/// Backward induction with Picard iteration over the recursive FVA/IM
/// dependence; per-step discounting at r~ = r + lambda^B + lambda^C, driver
/// integrated with the trapezoidal rule, conditional expectations by
/// per-slice polynomial regression. Terminal condition XVA_T = 0. The
/// iteration starts from zero unless a warm-start surface is supplied.
/// Non-convergence is flagged in the diagnostics, never thrown.
SolveResult solve_predefault_xva(NettingState& state, const RateEnvironment& env,
                                 const PathSet& paths, const SolverConfig& cfg,
                                 const ValueSurface* warm_start = nullptr);

struct XvaComponents {
    ComponentEstimate cva, dva, fva, colva, mva;
    ComponentEstimate xva; // -cva + dva + fva + colva + mva, path-level SE
};

/// Deflated time-integral Monte Carlo averages of the five component
/// integrands (trapezoidal in time, standard errors from the per-path
/// integral samples).
XvaComponents decompose_xva(const NettingState& state, const ValueSurface& xva_surface,
                            const RateEnvironment& env, const PathSet& paths,
                            const SolverConfig& cfg);

/// Cross-check of the pre-default (F-level) credit terms against an
/// explicit default-time simulation of the close-out shortfall (G-level).
/// Valid for configurations without recursive funding (zero spreads).
struct GLevelComparison {
    ComponentEstimate cva_f, dva_f;
    ComponentEstimate cva_g, dva_g;
    double diff = 0.0;        // (cva_f - dva_f) - (cva_g - dva_g)
    double combined_se = 0.0; // quadrature of the four standard errors
};

GLevelComparison validate_g_level(const NettingState& state, const RateEnvironment& env,
                                  const PathSet& paths, const SolverConfig& cfg,
                                  std::uint64_t seed);

} // namespace xva

#endif
