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

#include "xva/curve.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "xva/errors.hpp"

namespace xva {

Curve::Curve(std::vector<double> times, std::vector<double> rates, const std::string& name)
    : times_(std::move(times)), rates_(std::move(rates)) {
    if (times_.empty() || times_.size() != rates_.size())
        throw ConfigError(name + ": pillar times and rates must be non-empty and equal-sized");
    if (times_.front() != 0.0)
        throw ConfigError(name + ": first pillar must be at t=0");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i]) || !std::isfinite(rates_[i]))
            throw ConfigError(name + ": non-finite pillar");
        if (i > 0 && times_[i] <= times_[i - 1])
            throw ConfigError(name + ": pillar times must be strictly increasing");
    }
}

double Curve::value(double t) const {
    // level of the last pillar with pillar time <= t; flat beyond the ends
    if (t <= times_.front()) return rates_.front();
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return rates_[(std::size_t)(it - times_.begin()) - 1];
}

double Curve::integral(double t1, double t2) const {
    if (!(t1 <= t2)) throw ConfigError("curve integral: t1 > t2");
    if (t1 < 0.0) throw ConfigError("curve integral: negative time");
    double acc = 0.0;
    std::size_t i = 0;
    double lo = t1;
    while (lo < t2) {
        while (i + 1 < times_.size() && times_[i + 1] <= lo) ++i;
        double hi = (i + 1 < times_.size() && times_[i + 1] < t2) ? times_[i + 1] : t2;
        acc += rates_[i] * (hi - lo);
        lo = hi;
    }
    return acc;
}

Curve Curve::plus(const Curve& other) const {
    std::set<double> pillars(times_.begin(), times_.end());
    pillars.insert(other.times_.begin(), other.times_.end());
    std::vector<double> t(pillars.begin(), pillars.end());
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = value(t[i]) + other.value(t[i]);
    return Curve(std::move(t), std::move(v));
}

bool Curve::is_zero() const {
    return std::all_of(rates_.begin(), rates_.end(), [](double r) { return r == 0.0; });
}

double Curve::max_value() const { return *std::max_element(rates_.begin(), rates_.end()); }
double Curve::min_value() const { return *std::min_element(rates_.begin(), rates_.end()); }

double discount_factor(const Curve& curve, double t1, double t2) {
    return std::exp(-curve.integral(t1, t2));
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) throw ConfigError("time grid needs at least two nodes");
    if (times_.front() != 0.0) throw ConfigError("time grid must start at 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1])) throw ConfigError("time grid must be strictly increasing");
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t steps) {
    if (!(horizon > 0.0) || steps == 0) throw ConfigError("time grid: horizon and steps must be positive");
    std::vector<double> t(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) t[i] = horizon * (double)i / (double)steps;
    t[steps] = horizon;
    return TimeGrid(std::move(t));
}

std::size_t TimeGrid::nearest_index(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it == times_.end()) return times_.size() - 1;
    if (it == times_.begin()) return 0;
    std::size_t hi = (std::size_t)(it - times_.begin());
    return (times_[hi] - t < t - times_[hi - 1]) ? hi : (t - times_[hi - 1] < times_[hi] - t ? hi - 1 : hi);
}

void RateEnvironment::validate() const {
    // bid-offer ordering checked on the pillar union (piecewise constant)
    std::set<double> pts(rfl.times().begin(), rfl.times().end());
    pts.insert(rfb.times().begin(), rfb.times().end());
    for (double t : pts)
        if (rfl.value(t) > rfb.value(t) + 1e-15)
            throw ConfigError("rate environment: r_fl > r_fb at t=" + std::to_string(t));
    for (const Curve* lam : {&lambda_b, &lambda_c})
        if (lam->min_value() < 0.0)
            throw ConfigError("rate environment: negative default intensity");
    for (double rec : {recovery_b, recovery_c})
        if (!(rec > 0.0 && rec < 1.0))
            throw ConfigError("rate environment: recovery must lie in (0,1)");
}

Curve RateEnvironment::effective_rate_tilde() const { return r.plus(lambda_b).plus(lambda_c); }

} // namespace xva
