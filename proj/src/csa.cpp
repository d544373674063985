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

#include "xva/csa.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "xva/errors.hpp"
#include "xva/kernels/kernels.hpp"
#include "xva/kernels/parallel.hpp"

namespace xva {

void CollateralSpec::validate() const {
    if (kind == Kind::fraction && !(param >= 0.0 && param <= 1.0))
        throw ConfigError("collateral fraction must lie in [0,1]");
    if (kind == Kind::threshold && !(param >= 0.0))
        throw ConfigError("collateral threshold must be non-negative");
}

double CollateralSpec::apply(double v) const {
    switch (kind) {
    case Kind::none: return 0.0;
    case Kind::perfect: return v;
    case Kind::fraction: return param * v;
    case Kind::threshold: {
        double up = std::max(v - param, 0.0);
        double dn = std::max(-v - param, 0.0);
        return up - dn;
    }
    }
    return 0.0;
}

ValueSurface collateral_surface(const CollateralSpec& spec, const ValueSurface& vhat) {
    spec.validate();
    ValueSurface out(vhat.grid(), vhat.n_paths(), "collateral");
    const auto& k = kernels::active();
    kernels::CollateralParams cp{static_cast<int>(spec.kind), spec.param};
    for (std::size_t i = 0; i < vhat.n_slices(); ++i) {
        const double* v = vhat.slice(i);
        double* c = out.slice(i);
        kernels::for_blocks(vhat.n_paths(), [&](std::size_t, std::size_t lo, std::size_t hi) {
            k.collateral_map(cp, v + lo, c + lo, hi - lo);
        });
    }
    return out;
}

void InitialMarginSpec::validate() const {
    if (kind == Kind::constant && !(amount >= 0.0))
        throw ConfigError("constant initial margin must be non-negative");
    if (kind == Kind::var_quantile) {
        if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("IM quantile level must lie in (0,1)");
        if (!(delta > 0.0)) throw ConfigError("IM margin period must be positive");
    }
}

double quantile_lower(const double* sorted, std::size_t n, double q) {
    if (n == 0) throw ConfigError("quantile of an empty sample");
    const double k = std::ceil(q * (double)n);
    std::size_t idx = k <= 1.0 ? 0 : (std::size_t)k - 1;
    if (idx >= n) idx = n - 1;
    return sorted[idx];
}

namespace {

// k-th smallest (1-indexed) in the union of two ascending sequences given
// by accessors; classic two-array selection in O(log k)
template <class A, class B>
double kth_of_two(A a, std::size_t na, B b, std::size_t nb, std::size_t k) {
    std::size_t lo_a = 0, lo_b = 0;
    while (true) {
        if (lo_a == na) return b(lo_b + k - 1);
        if (lo_b == nb) return a(lo_a + k - 1);
        if (k == 1) return std::min(a(lo_a), b(lo_b));
        std::size_t ia = std::min(na - lo_a, k / 2);
        std::size_t ib = std::min(nb - lo_b, k - ia);
        double va = a(lo_a + ia - 1), vb = b(lo_b + ib - 1);
        if (va <= vb) {
            lo_a += ia;
            k -= ia;
        } else {
            lo_b += ib;
            k -= ib;
        }
    }
}

// alpha-quantile of |center + e| over the sorted residual sample e
double abs_shift_quantile(const std::vector<double>& e_sorted, double center, double alpha) {
    const std::size_t n = e_sorted.size();
    const double kk = std::ceil(alpha * (double)n);
    std::size_t k = kk <= 1.0 ? 1 : (std::size_t)kk;
    if (k > n) k = n;
    // fold point: first residual with center + e >= 0
    auto it = std::lower_bound(e_sorted.begin(), e_sorted.end(), -center);
    const std::size_t f = (std::size_t)(it - e_sorted.begin());
    auto left = [&](std::size_t j) { return -(center + e_sorted[f - 1 - j]); };
    auto right = [&](std::size_t j) { return center + e_sorted[f + j]; };
    return kth_of_two(left, f, right, n - f, k);
}

} // namespace

std::pair<ValueSurface, ValueSurface> initial_margin_surfaces(const InitialMarginSpec& spec,
                                                              const ValueSurface& net,
                                                              const PathSet& paths,
                                                              const RegressionSpec& reg,
                                                              InitialMarginDiag* diag) {
    spec.validate();
    const TimeGrid& grid = net.grid();
    const std::size_t n = net.n_paths();
    ValueSurface itc(grid, n, "im_tc"), ifc(grid, n, "im_fc");
    if (spec.kind == InitialMarginSpec::Kind::none) return {std::move(itc), std::move(ifc)};
    if (spec.kind == InitialMarginSpec::Kind::constant) {
        itc.fill(spec.amount);
        ifc.fill(spec.amount);
        return {std::move(itc), std::move(ifc)};
    }

    std::vector<double> incr(n), fitted(n), resid(n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::size_t j = grid.nearest_index(grid[i] + spec.delta);
        if (grid[i] + spec.delta > grid.horizon() + 1e-12 && diag) ++diag->truncated_slices;
        if (j <= i) {
            if (i + 1 < grid.size()) j = i + 1; // margin period shorter than one step
            else { continue; }                  // final slice: no forward move, IM stays 0
        }
        const double* v0 = net.slice(i);
        const double* v1 = net.slice(j);
        for (std::size_t p = 0; p < n; ++p) incr[p] = v1[p] - v0[p];
        SliceRegression::fit_predict(reg, paths.slice(i), incr.data(), n, fitted.data(),
                                     diag ? &diag->degree_degrades : nullptr);
        for (std::size_t p = 0; p < n; ++p) resid[p] = incr[p] - fitted[p];
        std::sort(resid.begin(), resid.end());
        double* out_tc = itc.slice(i);
        double* out_fc = ifc.slice(i);
        kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                double q = abs_shift_quantile(resid, fitted[p], spec.alpha);
                out_tc[p] = q;
                out_fc[p] = q;
            }
        });
    }
    return {std::move(itc), std::move(ifc)};
}

double close_out(const CloseOutInputs& in) {
    double theta = in.value;
    if (in.first == CloseOutInputs::Defaulter::counterparty_first) {
        double shortfall = std::max(-(in.value - in.collateral + in.im_fc), 0.0);
        theta += (1.0 - in.recovery_c) * shortfall;
    } else if (in.first == CloseOutInputs::Defaulter::bank_first) {
        double windfall = std::max(in.value - in.collateral - in.im_tc, 0.0);
        theta -= (1.0 - in.recovery_b) * windfall;
    }
    return theta;
}

std::pair<ValueSurface, ValueSurface> theta_exposures(const ValueSurface& vhat,
                                                      const ValueSurface& collateral,
                                                      const ValueSurface& im_tc,
                                                      const ValueSurface& im_fc, double recovery_b,
                                                      double recovery_c) {
    const std::size_t n = vhat.n_paths();
    ValueSurface tb(vhat.grid(), n, "theta_b"), tc(vhat.grid(), n, "theta_c");
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < vhat.n_slices(); ++i) {
        const double* v = vhat.slice(i);
        const double* c = collateral.slice(i);
        const double* mtc = im_tc.slice(i);
        const double* mfc = im_fc.slice(i);
        double* ob = tb.slice(i);
        double* oc = tc.slice(i);
        kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
            k.theta_pair(v + lo, c + lo, mtc + lo, mfc + lo, 1.0 - recovery_b, 1.0 - recovery_c,
                         ob + lo, oc + lo, hi - lo);
        });
    }
    return {std::move(tb), std::move(tc)};
}

} // namespace xva
