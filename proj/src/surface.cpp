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

#include "xva/surface.hpp"

#include <algorithm>
#include <cmath>

#include "xva/errors.hpp"
#include "xva/kernels/kernels.hpp"
#include "xva/kernels/parallel.hpp"

namespace xva {

ValueSurface::ValueSurface(TimeGrid grid, std::size_t n_paths, std::string label)
    : grid_(std::move(grid)), n_paths_(n_paths), label_(std::move(label)),
      data_(grid_.size() * n_paths, 0.0) {}

void ValueSurface::add(const ValueSurface& other) {
    if (other.n_paths_ != n_paths_ || other.grid_.size() != grid_.size())
        throw ConfigError("surface add: mismatched dimensions");
    const auto& k = kernels::active();
    kernels::for_blocks(data_.size(), [&](std::size_t, std::size_t lo, std::size_t hi) {
        k.axpy(1.0, other.data_.data() + lo, data_.data() + lo, hi - lo);
    });
}

void ValueSurface::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

double ValueSurface::slice_mean(std::size_t k) const {
    return kernels::blocked_sum(slice(k), n_paths_) / (double)n_paths_;
}

double ValueSurface::max_abs_diff(const ValueSurface& other) const {
    if (other.data_.size() != data_.size()) throw ConfigError("surface diff: mismatched dimensions");
    return kernels::blocked_max_abs_diff(data_.data(), other.data_.data(), data_.size());
}

void RegressionSpec::validate() const {
    if (degree < 0 || degree > 5) throw ConfigError("regression degree must be in [0, 5]");
}

namespace {

// Cholesky solve of the (d+1)x(d+1) normal equations built from power
// moments of the standardized spot. Returns false if a pivot collapses.
bool solve_normal_equations(const double* xmom, const double* xty, int degree, double* coef) {
    const int m = degree + 1;
    double a[36], b[6];
    for (int i = 0; i < m; ++i) {
        b[i] = xty[i];
        for (int j = 0; j < m; ++j) a[i * m + j] = xmom[i + j];
    }
    const double tol = 1e-10 * std::max(1.0, a[0]);
    double l[36] = {0};
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i * m + j];
            for (int q = 0; q < j; ++q) s -= l[i * m + q] * l[j * m + q];
            if (i == j) {
                if (s <= tol) return false;
                l[i * m + i] = std::sqrt(s);
            } else {
                l[i * m + j] = s / l[j * m + j];
            }
        }
    }
    double y[6];
    for (int i = 0; i < m; ++i) {
        double s = b[i];
        for (int q = 0; q < i; ++q) s -= l[i * m + q] * y[q];
        y[i] = s / l[i * m + i];
    }
    for (int i = m - 1; i >= 0; --i) {
        double s = y[i];
        for (int q = i + 1; q < m; ++q) s -= l[q * m + i] * coef[q];
        coef[i] = s / l[i * m + i];
    }
    return true;
}

} // namespace

SliceRegression::Fit SliceRegression::fit(const RegressionSpec& spec, const double* spot,
                                          const double* y, std::size_t n, int* degrade_count) {
    spec.validate();
    std::vector<double> sub_x, sub_y;
    if (spec.fit_subsample > 0 && spec.fit_subsample < n) {
        const std::size_t stride = n / spec.fit_subsample;
        for (std::size_t i = 0; i < n; i += stride) {
            sub_x.push_back(spot[i]);
            sub_y.push_back(y[i]);
        }
        spot = sub_x.data();
        y = sub_y.data();
        n = sub_x.size();
    }
    Fit f;
    const double mean = kernels::blocked_sum(spot, n) / (double)n;
    double var = 0.0;
    {
        // second moment about the mean via the moments kernel (k = 0..2)
        double xm[3], xty[2];
        kernels::blocked_moments(spot, y, n, 1, mean, 1.0, xm, xty);
        var = xm[2] / (double)n;
    }
    const double sd = std::sqrt(std::max(var, 0.0));
    f.shift = mean;
    f.scale = sd > 1e-12 * std::max(1.0, std::abs(mean)) ? 1.0 / sd : 0.0;

    int degree = spec.degree;
    if (f.scale == 0.0) degree = 0; // point-mass cross-section

    while (degree > 0) {
        double xmom[11], xty[6];
        kernels::blocked_moments(spot, y, n, degree, f.shift, f.scale, xmom, xty);
        if (solve_normal_equations(xmom, xty, degree, f.coef)) {
            f.degree = degree;
            return f;
        }
        if (degrade_count) ++*degrade_count;
        --degree;
    }
    f.degree = 0;
    f.coef[0] = kernels::blocked_sum(y, n) / (double)n;
    f.scale = f.scale == 0.0 ? 1.0 : f.scale;
    return f;
}

void SliceRegression::predict(const Fit& f, const double* spot, double* out, std::size_t n) {
    const auto& k = kernels::active();
    kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
        k.poly_eval(f.coef, f.degree, f.shift, f.scale, spot + lo, out + lo, hi - lo);
    });
}

int SliceRegression::fit_predict(const RegressionSpec& spec, const double* spot, const double* y,
                                 std::size_t n, double* out, int* degrade_count) {
    Fit f = fit(spec, spot, y, n, degrade_count);
    predict(f, spot, out, n);
    return f.degree;
}

} // namespace xva
