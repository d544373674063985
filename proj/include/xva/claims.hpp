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
#ifndef XVA_CLAIMS_HPP
#define XVA_CLAIMS_HPP

#include <string>
#include <variant>
#include <vector>

#include "xva/curve.hpp"
#include "xva/paths.hpp"
#include "xva/surface.hpp"

namespace xva {

struct Forward {
    int direction = 1; // +1 long (receives S_T - K), -1 short
    double strike = 0.0;
    double maturity = 0.0;
};

struct EuropeanOption {
    bool call = true;
    double strike = 0.0;
    double maturity = 0.0;
};

/// One dated cashflow, amount(S) = fixed + spot*S
///                              + call_weight*(S-call_strike)^+ + put_weight*(put_strike-S)^+.
struct ScheduleLeg {
    double time = 0.0;
    double fixed = 0.0;
    double spot = 0.0;
    double call_weight = 0.0, call_strike = 0.0;
    double put_weight = 0.0, put_strike = 0.0;
};

struct CashflowSchedule {
    std::vector<ScheduleLeg> legs;
};

/// A claim in the trade hierarchy. csa_rate is the front-office discount
/// curve for this claim (CSA discounting); the clean value always uses the
/// environment reference rate r.
struct Claim {
    std::string id;
    std::variant<Forward, EuropeanOption, CashflowSchedule> payoff;
    double notional = 1.0;
    Curve csa_rate;
    std::string asset_id;

    double maturity() const;
    void validate(double horizon) const;
    bool is_forward() const { return std::holds_alternative<Forward>(payoff); }
};

/// Counters filled while building surfaces (snapped off-grid cashflows,
/// regression degree degradations). Logged by the runner.
struct BuildDiagnostics {
    int snapped_cashflows = 0;
    int degree_degrades = 0;
};

/// Closed-form forward value at time t given spot s_t, discounted at
/// `rate`: direction * notional * (s * exp(-I[kappa + rate - repo]) -
/// K * exp(-I[rate])) with integrals over [t, maturity]. With rate = env.r
/// this is the xVA-desk clean value; with rate = claim.csa_rate it is the
/// front-office value.
double forward_value_closed_form(const Claim& claim, const AssetSpec& asset, const Curve& rate,
                                 double t, double s_t);

double clean_value_forward_closed_form(const Claim& claim, const RateEnvironment& env,
                                       const AssetSpec& asset, double t, double s_t);
double front_office_value_forward(const Claim& claim, const RateEnvironment& env,
                                  const AssetSpec& asset, double t, double s_t);

/// Per-path value surface of the claim discounted at `rate`. Forwards fill
/// from the closed form; options and schedules run backward-induction least
/// squares Monte Carlo. The column at a payment date carries the left-limit
/// value (cashflow included); columns after the last payment are zero.
ValueSurface clean_value_surface(const Claim& claim, const AssetSpec& asset, const PathSet& paths,
                                 const Curve& rate, const RegressionSpec& reg,
                                 BuildDiagnostics* diag = nullptr);

/// DiscVA_t = B^rhat_t E[ int_t^T (r_u - rhat_u) Vhat_u / B^rhat_u du | F_t ],
/// accumulated backward with per-step rhat discounting and the trapezoidal
/// rule, regressed per slice. Satisfies Vhat = Phat - DiscVA within
/// estimator tolerance.
ValueSurface discva_surface(const Claim& claim, const RateEnvironment& env, const PathSet& paths,
                            const ValueSurface& clean, const RegressionSpec& reg,
                            BuildDiagnostics* diag = nullptr);

/// Per-path accumulated DiscVA integrand at t=0 (the unregressed slice-0
/// regressand): mean is DiscVA_0, sd/sqrt(n) its standard error.
std::vector<double> discva_raw0(const Claim& claim, const RateEnvironment& env,
                                const PathSet& paths, const ValueSurface& clean);

} // namespace xva

#endif
