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

#include "xva/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "xva/csa.hpp"
#include "xva/errors.hpp"
#include "xva/kernels/kernels.hpp"
#include "xva/kernels/parallel.hpp"

namespace xva {

ExposureProfile profile(const ValueSurface& exposure, double q) {
    if (exposure.empty()) throw ConfigError("exposure profile: empty surface");
    if (!(q > 0.0 && q <= 1.0)) throw ConfigError("exposure profile: quantile must be in (0,1]");
    const std::size_t n = exposure.n_paths();
    const std::size_t ns = exposure.n_slices();
    ExposureProfile out;
    out.quantile = q;
    out.n_paths = n;
    out.times = exposure.grid().times();
    out.epe.resize(ns);
    out.ene.resize(ns);
    out.pfe.resize(ns);
    out.se_epe.resize(ns);
    out.se_ene.resize(ns);

    std::vector<double> scratch(n);
    for (std::size_t i = 0; i < ns; ++i) {
        double st[4];
        kernels::blocked_pos_neg_stats(exposure.slice(i), n, st);
        const double mp = st[0] / (double)n, mn = st[2] / (double)n;
        out.epe[i] = mp;
        out.ene[i] = mn;
        out.se_epe[i] = std::sqrt(std::max(st[1] / (double)n - mp * mp, 0.0) / (double)n);
        out.se_ene[i] = std::sqrt(std::max(st[3] / (double)n - mn * mn, 0.0) / (double)n);

        std::memcpy(scratch.data(), exposure.slice(i), 8 * n);
        const double kk = std::ceil(q * (double)n);
        std::size_t idx = kk <= 1.0 ? 0 : (std::size_t)kk - 1;
        if (idx >= n) idx = n - 1;
        std::nth_element(scratch.begin(), scratch.begin() + (std::ptrdiff_t)idx, scratch.end());
        out.pfe[i] = scratch[idx];
    }
    return out;
}

ValueSurface deflate(const ValueSurface& surface, const std::vector<double>& factors) {
    if (factors.size() != surface.n_slices())
        throw ConfigError("deflate: factor count does not match slices");
    ValueSurface out(surface.grid(), surface.n_paths(), surface.label() + ".deflated");
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < surface.n_slices(); ++i) {
        const double coef[2] = {0.0, factors[i]};
        const double* in = surface.slice(i);
        double* o = out.slice(i);
        kernels::for_blocks(surface.n_paths(), [&](std::size_t, std::size_t lo, std::size_t hi) {
            k.poly_eval(coef, 1, 0.0, 1.0, in + lo, o + lo, hi - lo);
        });
    }
    return out;
}

void emit_csv(const ExposureProfile& p, const std::string& destination, bool gnuplot_layout) {
    std::FILE* f = std::fopen(destination.c_str(), "w");
    if (!f) throw ConfigError("cannot open " + destination + " for writing");
    const char sep = gnuplot_layout ? ' ' : ',';
    std::fprintf(f, "%st%cepe%cene%cpfe%cse_epe%cse_ene\n", gnuplot_layout ? "# " : "", sep, sep,
                 sep, sep, sep);
    for (std::size_t i = 0; i < p.times.size(); ++i)
        std::fprintf(f, "%.10f%c%.10f%c%.10f%c%.10f%c%.10f%c%.10f\n", p.times[i], sep, p.epe[i],
                     sep, p.ene[i], sep, p.pfe[i], sep, p.se_epe[i], sep, p.se_ene[i]);
    if (std::fclose(f) != 0) throw ConfigError("failed writing " + destination);
}

ExposureProfile read_profile_csv(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "r");
    if (!f) throw ConfigError("cannot open " + path);
    ExposureProfile p;
    char line[512];
    if (!std::fgets(line, sizeof line, f)) {
        std::fclose(f);
        throw ConfigError(path + ": empty profile file");
    }
    while (std::fgets(line, sizeof line, f)) {
        double t, epe, ene, pfe, s1, s2;
        if (std::sscanf(line, "%lf,%lf,%lf,%lf,%lf,%lf", &t, &epe, &ene, &pfe, &s1, &s2) == 6) {
            p.times.push_back(t);
            p.epe.push_back(epe);
            p.ene.push_back(ene);
            p.pfe.push_back(pfe);
            p.se_epe.push_back(s1);
            p.se_ene.push_back(s2);
        }
    }
    std::fclose(f);
    return p;
}

} // namespace xva
