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
#ifndef XVA_EXPOSURE_HPP
#define XVA_EXPOSURE_HPP

#include <string>
#include <vector>

#include "xva/surface.hpp"

namespace xva {

/// Expected positive/negative exposure and potential-future-exposure
/// profiles per grid slice. pfe is the lower-order-statistic empirical
/// quantile of the raw slice values (q = 1 gives the slice maximum).
struct ExposureProfile {
    std::vector<double> times;
    std::vector<double> epe, ene, pfe;
    std::vector<double> se_epe, se_ene;
    double quantile = 0.95;
    std::size_t n_paths = 0;
};

ExposureProfile profile(const ValueSurface& exposure, double q);

/// Multiply every slice by a per-slice factor (e.g. deflate at B^r).
ValueSurface deflate(const ValueSurface& surface, const std::vector<double>& factors);

/// CSV with header t,epe,ene,pfe,se_epe,se_ene and fixed 10-decimal
/// formatting; one row per slice. The gnuplot layout writes the same
/// columns space-separated under a '#' comment header.
void emit_csv(const ExposureProfile& profile, const std::string& destination,
              bool gnuplot_layout = false);

ExposureProfile read_profile_csv(const std::string& path);

} // namespace xva

#endif
