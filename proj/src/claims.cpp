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

#include "xva/claims.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "xva/errors.hpp"
#include "xva/kernels/kernels.hpp"
#include "xva/kernels/parallel.hpp"

namespace xva {

double Claim::maturity() const {
    if (auto* f = std::get_if<Forward>(&payoff)) return f->maturity;
    if (auto* o = std::get_if<EuropeanOption>(&payoff)) return o->maturity;
    const auto& legs = std::get<CashflowSchedule>(payoff).legs;
    double m = 0.0;
    for (const auto& l : legs) m = std::max(m, l.time);
    return m;
}

void Claim::validate(double horizon) const {
    if (!std::isfinite(notional)) throw ConfigError("claim " + id + ": non-finite notional");
    if (maturity() > horizon + 1e-12)
        throw ConfigError("claim " + id + ": maturity beyond portfolio horizon");
    if (auto* f = std::get_if<Forward>(&payoff)) {
        if (f->direction != 1 && f->direction != -1)
            throw ConfigError("claim " + id + ": forward direction must be +1 or -1");
        if (!(f->maturity > 0.0)) throw ConfigError("claim " + id + ": non-positive maturity");
    }
    if (auto* s = std::get_if<CashflowSchedule>(&payoff)) {
        if (s->legs.empty()) throw ConfigError("claim " + id + ": empty cashflow schedule");
        for (const auto& l : s->legs)
            if (l.time < 0.0) throw ConfigError("claim " + id + ": negative cashflow time");
    }
}

double forward_value_closed_form(const Claim& claim, const AssetSpec& asset, const Curve& rate,
                                 double t, double s_t) {
    const auto* fwd = std::get_if<Forward>(&claim.payoff);
    if (!fwd) throw ConfigError("claim " + claim.id + ": closed form requires a forward payoff");
    if (t > fwd->maturity)
        return 0.0;
    const double carry = asset.dividend.integral(t, fwd->maturity) + rate.integral(t, fwd->maturity)
                       - asset.repo.integral(t, fwd->maturity);
    const double df = discount_factor(rate, t, fwd->maturity);
    return fwd->direction * claim.notional * (s_t * std::exp(-carry) - fwd->strike * df);
}

double clean_value_forward_closed_form(const Claim& claim, const RateEnvironment& env,
                                       const AssetSpec& asset, double t, double s_t) {
    return forward_value_closed_form(claim, asset, env.r, t, s_t);
}

double front_office_value_forward(const Claim& claim, const RateEnvironment& env,
                                  const AssetSpec& asset, double t, double s_t) {
    (void)env;
    return forward_value_closed_form(claim, asset, claim.csa_rate, t, s_t);
}

namespace {

// legs snapped to grid nodes; several legs can share a node
std::multimap<std::size_t, ScheduleLeg> snap_legs(const CashflowSchedule& sched,
                                                  const TimeGrid& grid, BuildDiagnostics* diag) {
    std::multimap<std::size_t, ScheduleLeg> out;
    for (const auto& leg : sched.legs) {
        std::size_t idx = grid.nearest_index(leg.time);
        if (std::abs(grid[idx] - leg.time) > 1e-12 && diag) ++diag->snapped_cashflows;
        out.emplace(idx, leg);
    }
    return out;
}

CashflowSchedule to_schedule(const Claim& claim) {
    if (auto* o = std::get_if<EuropeanOption>(&claim.payoff)) {
        ScheduleLeg leg;
        leg.time = o->maturity;
        if (o->call) {
            leg.call_weight = 1.0;
            leg.call_strike = o->strike;
        } else {
            leg.put_weight = 1.0;
            leg.put_strike = o->strike;
        }
        return CashflowSchedule{{leg}};
    }
    return std::get<CashflowSchedule>(claim.payoff);
}

void add_leg_amounts(const ScheduleLeg& leg, double notional, const double* spot, double* acc,
                     std::size_t n) {
    for (std::size_t p = 0; p < n; ++p) {
        double s = spot[p];
        double amt = leg.fixed + leg.spot * s;
        if (leg.call_weight != 0.0) amt += leg.call_weight * std::max(s - leg.call_strike, 0.0);
        if (leg.put_weight != 0.0) amt += leg.put_weight * std::max(leg.put_strike - s, 0.0);
        acc[p] += notional * amt;
    }
}

} // namespace

ValueSurface clean_value_surface(const Claim& claim, const AssetSpec& asset, const PathSet& paths,
                                 const Curve& rate, const RegressionSpec& reg,
                                 BuildDiagnostics* diag) {
    const TimeGrid& grid = paths.grid();
    const std::size_t n = paths.n_paths();
    ValueSurface surf(grid, n, claim.id);

    if (const auto* fwd = std::get_if<Forward>(&claim.payoff)) {
        const auto& k = kernels::active();
        const std::size_t mat = grid.nearest_index(fwd->maturity);
        if (diag && std::abs(grid[mat] - fwd->maturity) > 1e-12) ++diag->snapped_cashflows;
        for (std::size_t i = 0; i <= mat; ++i) {
            const double tmat = grid[mat];
            const double carry = asset.dividend.integral(grid[i], tmat)
                               + rate.integral(grid[i], tmat) - asset.repo.integral(grid[i], tmat);
            const double a = fwd->direction * claim.notional * std::exp(-carry);
            const double b = -fwd->direction * claim.notional * fwd->strike
                           * discount_factor(rate, grid[i], tmat);
            const double coef[2] = {b, a}; // affine in spot: b + a*s
            const double* s = paths.slice(i);
            double* out = surf.slice(i);
            kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
                k.poly_eval(coef, 1, 0.0, 1.0, s + lo, out + lo, hi - lo);
            });
        }
        return surf;
    }

    // generic payoff: backward-induction LSMC on the schedule
    const auto legs = snap_legs(to_schedule(claim), grid, diag);
    std::vector<double> raw(n, 0.0), future_fit(n, 0.0);
    std::vector<double> cf(n, 0.0);
    for (std::size_t ii = grid.size(); ii-- > 0;) {
        const std::size_t i = ii;
        if (i + 1 < grid.size()) {
            const double df = discount_factor(rate, grid[i], grid[i + 1]);
            for (double& v : raw) v *= df;
        }
        auto range = legs.equal_range(i);
        const bool has_future = std::any_of(raw.begin(), raw.end(), [](double v) { return v != 0.0; });
        if (has_future) {
            SliceRegression::fit_predict(reg, paths.slice(i), raw.data(), n, future_fit.data(),
                                         diag ? &diag->degree_degrades : nullptr);
        } else {
            std::fill(future_fit.begin(), future_fit.end(), 0.0);
        }
        if (range.first != range.second) {
            std::fill(cf.begin(), cf.end(), 0.0);
            for (auto it = range.first; it != range.second; ++it)
                add_leg_amounts(it->second, claim.notional, paths.slice(i), cf.data(), n);
            for (std::size_t p = 0; p < n; ++p) raw[p] += cf[p];
            double* out = surf.slice(i);
            for (std::size_t p = 0; p < n; ++p) out[p] = cf[p] + future_fit[p];
        } else {
            std::copy(future_fit.begin(), future_fit.end(), surf.slice(i));
        }
    }
    return surf;
}

namespace {

// shared backward accumulation of the (r - rhat) Vhat integrand with
// per-step rhat discounting; fit_slice == nullptr skips the regression
void discva_backward(const Claim& claim, const RateEnvironment& env, const PathSet& paths,
                     const ValueSurface& clean, std::vector<double>& raw, ValueSurface* surf,
                     const RegressionSpec* reg, BuildDiagnostics* diag) {
    const TimeGrid& grid = paths.grid();
    const std::size_t n = paths.n_paths();
    if (clean.n_paths() != n || clean.n_slices() != grid.size())
        throw ConfigError("discva: clean surface does not match the path set");
    const Curve& rhat = claim.csa_rate;
    raw.assign(n, 0.0);
    for (std::size_t ii = grid.steps(); ii-- > 0;) {
        const std::size_t i = ii;
        const double dt = grid.dt(i);
        const double df = discount_factor(rhat, grid[i], grid[i + 1]);
        const double spr0 = env.r.value(grid[i]) - rhat.value(grid[i]);
        const double spr1 = env.r.value(grid[i + 1]) - rhat.value(grid[i + 1]);
        const double* v0 = clean.slice(i);
        const double* v1 = clean.slice(i + 1);
        for (std::size_t p = 0; p < n; ++p)
            raw[p] = df * raw[p] + 0.5 * dt * (spr0 * v0[p] + df * spr1 * v1[p]);
        if (surf)
            SliceRegression::fit_predict(*reg, paths.slice(i), raw.data(), n, surf->slice(i),
                                         diag ? &diag->degree_degrades : nullptr);
    }
}

} // namespace

ValueSurface discva_surface(const Claim& claim, const RateEnvironment& env, const PathSet& paths,
                            const ValueSurface& clean, const RegressionSpec& reg,
                            BuildDiagnostics* diag) {
    ValueSurface surf(paths.grid(), paths.n_paths(), claim.id + ".discva");
    std::vector<double> raw;
    discva_backward(claim, env, paths, clean, raw, &surf, &reg, diag);
    return surf;
}

std::vector<double> discva_raw0(const Claim& claim, const RateEnvironment& env,
                                const PathSet& paths, const ValueSurface& clean) {
    std::vector<double> raw;
    discva_backward(claim, env, paths, clean, raw, nullptr, nullptr, nullptr);
    return raw;
}

} // namespace xva
