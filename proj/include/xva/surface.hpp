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
#ifndef XVA_SURFACE_HPP
#define XVA_SURFACE_HPP

#include <string>
#include <vector>

#include "xva/curve.hpp"

namespace xva {

class PathSet;

/// Per-path, per-time process values on the simulation lattice, slice-major
/// like PathSet. Used for clean values, collateral, margins and XVA iterates.
class ValueSurface {
public:
    ValueSurface() = default;
    ValueSurface(TimeGrid grid, std::size_t n_paths, std::string label = "");

    const TimeGrid& grid() const { return grid_; }
    std::size_t n_paths() const { return n_paths_; }
    std::size_t n_slices() const { return grid_.size(); }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }
    bool empty() const { return data_.empty(); }

    double* slice(std::size_t k) { return data_.data() + k * n_paths_; }
    const double* slice(std::size_t k) const { return data_.data() + k * n_paths_; }
    double value(std::size_t k, std::size_t path) const { return data_[k * n_paths_ + path]; }

    /// this += other, slice by slice (dimensions must match).
    void add(const ValueSurface& other);
    void fill(double v);
    double slice_mean(std::size_t k) const;
    /// sup over all slices and paths of |this - other|.
    double max_abs_diff(const ValueSurface& other) const;

private:
    TimeGrid grid_;
    std::size_t n_paths_ = 0;
    std::string label_;
    std::vector<double> data_;
};

/// Cross-sectional least squares in a polynomial basis of the spot,
/// centred and scaled per slice. Degree degrades (with a warning counter)
/// when the normal equations lose rank, which also covers the sigma = 0
/// point-mass cross-section.
struct RegressionSpec {
    int degree = 3;
    /// fit on every path when 0, otherwise on a strided subsample of
    /// roughly this many paths (prediction always covers every path)
    std::size_t fit_subsample = 0;
    void validate() const;
};

class SliceRegression {
public:
    /// Fit E[y | spot] on one slice and write fitted values into `out`
    /// (out may alias y). Returns the degree actually used.
    static int fit_predict(const RegressionSpec& spec, const double* spot, const double* y,
                           std::size_t n, double* out, int* degrade_count = nullptr);

    /// Coefficient form used where the fitted function itself is needed.
    struct Fit {
        int degree = 0;
        double shift = 0.0, scale = 1.0;
        double coef[6] = {0, 0, 0, 0, 0, 0};
    };
    static Fit fit(const RegressionSpec& spec, const double* spot, const double* y, std::size_t n,
                   int* degrade_count = nullptr);
    static void predict(const Fit& f, const double* spot, double* out, std::size_t n);
};

} // namespace xva

#endif
