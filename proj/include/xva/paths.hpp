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
#ifndef XVA_PATHS_HPP
#define XVA_PATHS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "xva/curve.hpp"

namespace xva {

/// Lognormal risky asset under the pricing measure:
/// dS = S ((r_repo - dividend) dt + sigma dW).
struct AssetSpec {
    std::string id = "asset";
    double s0 = 100.0;
    Curve sigma;    // lognormal volatility
    Curve dividend; // continuous dividend yield kappa
    Curve repo;     // repo rate r^r driving the risk-neutral drift

    void validate() const;
};

// Philox stream allocation. Asset drivers and default thresholds never share
// a stream, which encodes the independence of the Brownian driver from the
// default times.
namespace streams {
inline constexpr std::uint32_t kAsset0 = 16;      // asset k uses kAsset0 + k
inline constexpr std::uint32_t kDefaultB = 1;
inline constexpr std::uint32_t kDefaultC = 2;
} // namespace streams

/// Simulated risk-factor lattice, slice-major: slice(k)[p] = S_{t_k} on path p.
/// Regeneration from (seed, grid, n_paths, asset) is bit-identical regardless
/// of worker count or SIMD backend.
class PathSet {
public:
    PathSet(TimeGrid grid, std::size_t n_paths, std::uint64_t seed);

    const TimeGrid& grid() const { return grid_; }
    std::size_t n_paths() const { return n_paths_; }
    std::size_t n_slices() const { return grid_.size(); }
    std::uint64_t seed() const { return seed_; }

    double* slice(std::size_t k) { return data_.data() + k * n_paths_; }
    const double* slice(std::size_t k) const { return data_.data() + k * n_paths_; }
    double value(std::size_t k, std::size_t path) const { return data_[k * n_paths_ + path]; }

private:
    TimeGrid grid_;
    std::size_t n_paths_;
    std::uint64_t seed_;
    std::vector<double> data_;
};

/// Exact lognormal stepping with per-step exact integrals of the
/// piecewise-constant coefficients; no Euler bias.
PathSet simulate_paths(const AssetSpec& asset, const TimeGrid& grid, std::size_t n_paths,
                       std::uint64_t seed, std::uint32_t asset_index = 0);

/// Survival weights exp(-int_0^{t_k} (lambda^B + lambda^C) ds) per grid node.
std::vector<double> survival_weights(const RateEnvironment& env, const TimeGrid& grid);

/// Explicit default-time sample for the G-level validator. Times are +inf
/// when the integrated hazard over the capped horizon never reaches the
/// exponential threshold.
struct DefaultSample {
    std::vector<double> tau_b, tau_c;
    double horizon_cap; // hazard integrated over [0, cap]

    enum class First { none, bank, counterparty };
    /// who defaulted first strictly before the horizon; ties count as none
    First first(std::size_t path) const {
        const double tb = tau_b[path], tc = tau_c[path];
        const double tau = tb < tc ? tb : tc;
        if (!(tau < horizon_cap) || tb == tc) return First::none;
        return tb < tc ? First::bank : First::counterparty;
    }
};

DefaultSample sample_default_times(const RateEnvironment& env, std::size_t n_paths,
                                   std::uint64_t seed, double horizon);

/// Debug CSV: one row per path, columns are the grid times.
void dump_paths_csv(const PathSet& paths, const std::string& filename);

} // namespace xva

#endif
