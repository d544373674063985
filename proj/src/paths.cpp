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

#include "xva/paths.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "xva/errors.hpp"
#include "xva/kernels/kernels.hpp"
#include "xva/kernels/parallel.hpp"

namespace xva {

void AssetSpec::validate() const {
    if (!(s0 > 0.0)) throw ConfigError("asset " + id + ": s0 must be positive");
    if (sigma.min_value() < 0.0) throw ConfigError("asset " + id + ": negative volatility");
}

PathSet::PathSet(TimeGrid grid, std::size_t n_paths, std::uint64_t seed)
    : grid_(std::move(grid)), n_paths_(n_paths), seed_(seed),
      data_(grid_.size() * n_paths, 0.0) {
    if (n_paths == 0) throw ConfigError("path set: n_paths must be >= 1");
}

PathSet simulate_paths(const AssetSpec& asset, const TimeGrid& grid, std::size_t n_paths,
                       std::uint64_t seed, std::uint32_t asset_index) {
    asset.validate();
    PathSet out(grid, n_paths, seed);
    const auto& k = kernels::active();
    const std::uint32_t stream = streams::kAsset0 + asset_index;

    // sigma^2 shares the pillars of sigma (piecewise constant)
    Curve sigma2(std::vector<double>(asset.sigma.times()), [&] {
        std::vector<double> sq(asset.sigma.rates());
        for (double& v : sq) v = v * v;
        return sq;
    }());

    double* s0_slice = out.slice(0);
    for (std::size_t p = 0; p < n_paths; ++p) s0_slice[p] = asset.s0;

    std::vector<double> z(n_paths);
    for (std::size_t step = 0; step < grid.steps(); ++step) {
        const double t0 = grid[step], t1 = grid[step + 1];
        const double var = sigma2.integral(t0, t1);
        const double drift = asset.repo.integral(t0, t1) - asset.dividend.integral(t0, t1)
                           - 0.5 * var;
        const double vol = std::sqrt(var);
        const double* prev = out.slice(step);
        double* next = out.slice(step + 1);
        kernels::for_blocks(n_paths, [&](std::size_t, std::size_t lo, std::size_t hi) {
            k.fill_normals(seed, stream, (std::uint32_t)step, lo, z.data() + lo, hi - lo);
            k.path_step(prev + lo, z.data() + lo, drift, vol, next + lo, hi - lo);
        });
        for (std::size_t p = 0; p < n_paths; ++p) {
            if (!std::isfinite(next[p]) || next[p] <= 0.0)
                throw NumericalError("path simulation produced non-positive level at path " +
                                     std::to_string(p) + ", step " + std::to_string(step + 1));
        }
    }
    return out;
}

std::vector<double> survival_weights(const RateEnvironment& env, const TimeGrid& grid) {
    Curve hazard = env.lambda_b.plus(env.lambda_c);
    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        w[i] = std::exp(-hazard.integral(0.0, grid[i]));
    return w;
}

namespace {

// inverse-transform sampling against the integrated piecewise-constant hazard
void invert_hazard(const Curve& lambda, const std::vector<double>& expo, double horizon,
                   std::vector<double>& tau) {
    const auto& times = lambda.times();
    const std::size_t n = expo.size();
    tau.assign(n, std::numeric_limits<double>::infinity());
    // segment boundaries clipped to [0, horizon]
    std::vector<double> seg_t{0.0};
    for (double t : times)
        if (t > 0.0 && t < horizon) seg_t.push_back(t);
    seg_t.push_back(horizon);
    std::vector<double> cumulative(seg_t.size(), 0.0);
    for (std::size_t i = 1; i < seg_t.size(); ++i)
        cumulative[i] = cumulative[i - 1] + lambda.value(seg_t[i - 1]) * (seg_t[i] - seg_t[i - 1]);
    for (std::size_t p = 0; p < n; ++p) {
        const double e = expo[p];
        if (e > cumulative.back()) continue; // survives the capped horizon
        for (std::size_t i = 1; i < seg_t.size(); ++i) {
            if (e <= cumulative[i]) {
                const double lam = lambda.value(seg_t[i - 1]);
                tau[p] = lam > 0.0 ? seg_t[i - 1] + (e - cumulative[i - 1]) / lam : seg_t[i];
                break;
            }
        }
    }
}

} // namespace

DefaultSample sample_default_times(const RateEnvironment& env, std::size_t n_paths,
                                   std::uint64_t seed, double horizon) {
    const auto& k = kernels::active();
    DefaultSample s;
    s.horizon_cap = horizon;
    std::vector<double> u(n_paths), e(n_paths);

    k.fill_uniforms(seed, streams::kDefaultB, 0, 0, u.data(), n_paths);
    k.vlog(u.data(), e.data(), n_paths);
    for (double& x : e) x = -x;
    invert_hazard(env.lambda_b, e, horizon, s.tau_b);

    k.fill_uniforms(seed, streams::kDefaultC, 0, 0, u.data(), n_paths);
    k.vlog(u.data(), e.data(), n_paths);
    for (double& x : e) x = -x;
    invert_hazard(env.lambda_c, e, horizon, s.tau_c);
    return s;
}

void dump_paths_csv(const PathSet& paths, const std::string& filename) {
    std::FILE* f = std::fopen(filename.c_str(), "w");
    if (!f) throw ConfigError("cannot open " + filename + " for writing");
    for (std::size_t i = 0; i < paths.n_slices(); ++i)
        std::fprintf(f, "%s%.6f", i ? "," : "", paths.grid()[i]);
    std::fprintf(f, "\n");
    for (std::size_t p = 0; p < paths.n_paths(); ++p) {
        for (std::size_t i = 0; i < paths.n_slices(); ++i)
            std::fprintf(f, "%s%.8f", i ? "," : "", paths.value(i, p));
        std::fprintf(f, "\n");
    }
    std::fclose(f);
}

} // namespace xva
