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
#ifndef XVA_CURVE_HPP
#define XVA_CURVE_HPP

#include <string>
#include <vector>

namespace xva {

/// Deterministic piecewise-constant-left rate curve: the level quoted at
/// pillar time t_k applies on [t_k, t_{k+1}), and flat beyond the last
/// pillar. Pillar times are strictly increasing and start at 0, so every
/// accrual integral is exact. Immutable after construction; safe to share
/// across workers.
class Curve {
public:
    Curve() : times_{0.0}, rates_{0.0} {}
    Curve(std::vector<double> times, std::vector<double> rates, const std::string& name = "curve");
    static Curve flat(double rate) { return Curve({0.0}, {rate}); }

    double value(double t) const;
    /// Exact integral of the step function over [t1, t2], t1 <= t2.
    double integral(double t1, double t2) const;

    /// Pointwise sum with pillar union (still piecewise constant).
    Curve plus(const Curve& other) const;

    bool is_zero() const;
    double max_value() const;
    double min_value() const;

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& rates() const { return rates_; }

private:
    std::vector<double> times_;
    std::vector<double> rates_;
};

/// exp(-integral of curve over [t1, t2]) = B_{t1} / B_{t2}.
double discount_factor(const Curve& curve, double t1, double t2);

/// Discretization of [0, T]: strictly increasing times with t_0 = 0.
class TimeGrid {
public:
    TimeGrid() = default;
    explicit TimeGrid(std::vector<double> times);
    static TimeGrid uniform(double horizon, std::size_t steps);

    std::size_t steps() const { return times_.empty() ? 0 : times_.size() - 1; }
    std::size_t size() const { return times_.size(); }
    double operator[](std::size_t i) const { return times_[i]; }
    double horizon() const { return times_.back(); }
    double dt(std::size_t i) const { return times_[i + 1] - times_[i]; }
    const std::vector<double>& times() const { return times_; }

    /// Index of the grid time nearest to t (ties resolve to the later node).
    std::size_t nearest_index(double t) const;

private:
    std::vector<double> times_;
};

/// Full deterministic rate/credit input set: xVA-desk reference rate r,
/// funding lend/borrow, collateral lend/borrow, initial-margin lend/borrow,
/// repo rate, risk-neutral default intensities and recoveries.
struct RateEnvironment {
    Curve r;
    Curve rfl, rfb; // funding, r^{f,l} <= r^{f,b}
    Curve rcl, rcb; // collateral remuneration
    Curve ril, rib; // initial margin
    Curve rrepo;
    Curve lambda_b, lambda_c; // risk-neutral intensities, non-negative
    double recovery_b = 0.4;
    double recovery_c = 0.4;

    /// Throws ConfigError on violated invariants (rfl > rfb somewhere,
    /// negative intensity, recovery outside (0,1)).
    void validate() const;

    /// r~ = r + lambda^B + lambda^C (survival-adjusted discount rate).
    Curve effective_rate_tilde() const;
};

} // namespace xva

#endif
