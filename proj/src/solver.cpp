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

#include "xva/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "xva/errors.hpp"
#include "xva/kernels/kernels.hpp"
#include "xva/kernels/parallel.hpp"

namespace xva {

double full_driver(const DriverRates& rates, double v, double c, double itc, double ifc) {
    const double x = v - c - itc;
    const double xp = std::max(x, 0.0), xn = std::max(-x, 0.0);
    const double cp = std::max(c, 0.0), cn = std::max(-c, 0.0);
    return -((rates.rfl - rates.r) * xp - (rates.rfb - rates.r) * xn + (rates.rcl - rates.r) * cp -
             (rates.rcb - rates.r) * cn + (rates.ril - rates.r) * itc - rates.rib * ifc);
}

double predefault_driver(const DriverRates& rates, double lambda_b, double lambda_c,
                         double recovery_b, double recovery_c, double vhat, double xva, double c,
                         double itc, double ifc) {
    const double theta_c = (1.0 - recovery_c) * std::max(-(vhat - c + ifc), 0.0);
    const double theta_b = (1.0 - recovery_b) * std::max(vhat - c - itc, 0.0);
    const double f = full_driver(rates, vhat - xva, c, itc, ifc);
    return -f - (rates.r + lambda_c + lambda_b) * xva - lambda_c * theta_c + lambda_b * theta_b;
}

namespace {

struct SliceRates {
    double r, sfl, sfb, lam_b, lam_c;
    std::vector<double> scl, scb, sil, rib; // per margin block
};

SliceRates slice_rates(const RateEnvironment& env, const std::vector<MarginBlock>& blocks,
                       double t) {
    SliceRates s;
    s.r = env.r.value(t);
    s.sfl = env.rfl.value(t) - s.r;
    s.sfb = env.rfb.value(t) - s.r;
    s.lam_b = env.lambda_b.value(t);
    s.lam_c = env.lambda_c.value(t);
    for (const auto& b : blocks) {
        s.scl.push_back(b.rcl.value(t) - s.r);
        s.scb.push_back(b.rcb.value(t) - s.r);
        s.sil.push_back(b.ril.value(t) - s.r);
        s.rib.push_back(b.rib.value(t));
    }
    return s;
}

// Scratch for one slice of the driver g = -f - lambda^C theta^C + lambda^B theta^B,
// the r~X term being carried by the per-step discount factor instead.
struct DriverScratch {
    std::vector<double> x_fund;          // V - C_tot - I^TC_tot (V = Vhat - XVA)
    std::vector<double> c_tot, itc_tot, ifc_tot;
    std::vector<double> theta_b, theta_c;
    explicit DriverScratch(std::size_t n)
        : x_fund(n), c_tot(n), itc_tot(n), ifc_tot(n), theta_b(n), theta_c(n) {}
};

// fills g for slice i; xva_iter may be null for a zero iterate
void build_driver_slice(const NettingState& st, const RateEnvironment& env, std::size_t i,
                        const double* xva_iter, DriverScratch& ws, double* g, std::size_t n) {
    const auto& k = kernels::active();
    const double t = st.clean_total.grid()[i];
    const SliceRates sr = slice_rates(env, st.blocks, t);

    std::fill(ws.c_tot.begin(), ws.c_tot.end(), 0.0);
    std::fill(ws.itc_tot.begin(), ws.itc_tot.end(), 0.0);
    std::fill(ws.ifc_tot.begin(), ws.ifc_tot.end(), 0.0);
    for (const auto& b : st.blocks) {
        kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
            k.axpy(1.0, b.coll.slice(i) + lo, ws.c_tot.data() + lo, hi - lo);
            k.axpy(1.0, b.im_tc.slice(i) + lo, ws.itc_tot.data() + lo, hi - lo);
            k.axpy(1.0, b.im_fc.slice(i) + lo, ws.ifc_tot.data() + lo, hi - lo);
        });
    }

    const double* vhat = st.clean_total.slice(i);
    kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
        const std::size_t m = hi - lo;
        double* xf = ws.x_fund.data() + lo;
        for (std::size_t p = 0; p < m; ++p) xf[p] = vhat[lo + p];
        if (xva_iter) k.axpy(-1.0, xva_iter + lo, xf, m);
        k.axpy(-1.0, ws.c_tot.data() + lo, xf, m);
        k.axpy(-1.0, ws.itc_tot.data() + lo, xf, m);

        k.theta_pair(st.credit_exposure.slice(i) + lo, ws.c_tot.data() + lo,
                     ws.itc_tot.data() + lo, ws.ifc_tot.data() + lo, 1.0 - env.recovery_b,
                     1.0 - env.recovery_c, ws.theta_b.data() + lo, ws.theta_c.data() + lo, m);

        double* gg = g + lo;
        for (std::size_t p = 0; p < m; ++p) gg[p] = 0.0;
        k.accum_spread_posneg(sr.sfl, sr.sfb, xf, gg, m);
        for (std::size_t bi = 0; bi < st.blocks.size(); ++bi) {
            k.accum_spread_posneg(sr.scl[bi], sr.scb[bi], st.blocks[bi].coll.slice(i) + lo, gg, m);
            k.axpy(sr.sil[bi], st.blocks[bi].im_tc.slice(i) + lo, gg, m);
            k.axpy(-sr.rib[bi], st.blocks[bi].im_fc.slice(i) + lo, gg, m);
        }
        k.axpy(sr.lam_b, ws.theta_b.data() + lo, gg, m);
        k.axpy(-sr.lam_c, ws.theta_c.data() + lo, gg, m);
    });
}

} // namespace

void build_predefault_driver_slice(const NettingState& state, const RateEnvironment& env,
                                   std::size_t slice, const double* xva_iter, double* g,
                                   std::size_t n) {
    DriverScratch ws(n);
    build_driver_slice(state, env, slice, xva_iter, ws, g, n);
}

namespace {

bool im_depends_on_xva(const NettingState& st) {
    return st.blocks.size() == 1 &&
           st.blocks[0].im_spec.kind == InitialMarginSpec::Kind::var_quantile;
}

void rebuild_im(NettingState& st, const PathSet& paths, const SolverConfig& cfg,
                const ValueSurface* xva_iter, SolveDiagnostics& diag) {
    for (auto& b : st.blocks) {
        if (b.im_spec.kind != InitialMarginSpec::Kind::var_quantile) continue;
        InitialMarginDiag imd;
        if (st.blocks.size() == 1 && xva_iter) {
            ValueSurface net = b.clean;
            // net = Vhat - XVA iterate
            const auto& k = kernels::active();
            for (std::size_t i = 0; i < net.n_slices(); ++i) {
                kernels::for_blocks(net.n_paths(), [&](std::size_t, std::size_t lo, std::size_t hi) {
                    k.axpy(-1.0, xva_iter->slice(i) + lo, net.slice(i) + lo, hi - lo);
                });
            }
            auto im = initial_margin_surfaces(b.im_spec, net, paths, cfg.regression, &imd);
            b.im_tc = std::move(im.first);
            b.im_fc = std::move(im.second);
        } else {
            auto im = initial_margin_surfaces(b.im_spec, b.clean, paths, cfg.regression, &imd);
            b.im_tc = std::move(im.first);
            b.im_fc = std::move(im.second);
        }
        diag.degree_degrades += imd.degree_degrades;
    }
}

double surface_abs_scale(const ValueSurface& s) {
    double m = 1.0;
    for (std::size_t i = 0; i < s.n_slices(); ++i) {
        const double* v = s.slice(i);
        for (std::size_t p = 0; p < s.n_paths(); ++p) {
            double a = std::abs(v[p]);
            if (a > m) m = a;
        }
    }
    return m;
}

} // namespace

SolveResult solve_predefault_xva(NettingState& state, const RateEnvironment& env,
                                 const PathSet& paths, const SolverConfig& cfg,
                                 const ValueSurface* warm_start) {
    const TimeGrid& grid = paths.grid();
    const std::size_t n = paths.n_paths();
    const std::size_t ns = grid.size();
    const Curve rtilde = env.effective_rate_tilde();

    SolveResult res;
    res.xva = ValueSurface(grid, n, state.id + ".xva");
    SolveDiagnostics& diag = res.diag;

    const double scale = surface_abs_scale(state.clean_total);
    const bool recursive_im = im_depends_on_xva(state);

    // step discount factors at r~ and mean-driver track for the dt bound
    std::vector<double> dftilde(grid.steps());
    for (std::size_t i = 0; i < grid.steps(); ++i)
        dftilde[i] = discount_factor(rtilde, grid[i], grid[i + 1]);

    ValueSurface prev = warm_start ? *warm_start : ValueSurface(grid, n);
    DriverScratch ws(n);
    std::vector<double> g_next(n), g_here(n), y(n);
    std::vector<double> gmean(ns, 0.0);

    for (int iter = 1; iter <= cfg.max_picard; ++iter) {
        if (recursive_im) rebuild_im(state, paths, cfg, iter == 1 && !warm_start ? nullptr : &prev, diag);

        std::fill(y.begin(), y.end(), 0.0);
        build_driver_slice(state, env, ns - 1, prev.slice(ns - 1), ws, g_next.data(), n);
        gmean[ns - 1] = kernels::blocked_sum(g_next.data(), n) / (double)n;

        for (std::size_t ii = grid.steps(); ii-- > 0;) {
            const std::size_t i = ii;
            build_driver_slice(state, env, i, prev.slice(i), ws, g_here.data(), n);
            gmean[i] = kernels::blocked_sum(g_here.data(), n) / (double)n;
            const double df = dftilde[i];
            const double half_dt = 0.5 * grid.dt(i);
            const auto& k = kernels::active();
            kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
                const std::size_t m = hi - lo;
                double* yy = y.data() + lo;
                for (std::size_t p = 0; p < m; ++p) yy[p] *= df;
                k.axpy(half_dt, g_here.data() + lo, yy, m);
                k.axpy(half_dt * df, g_next.data() + lo, yy, m);
            });
            SliceRegression::fit_predict(cfg.regression, paths.slice(i), y.data(), n,
                                         res.xva.slice(i), &diag.degree_degrades);
            std::swap(g_here, g_next);
        }

        for (std::size_t p = 0; p < n; ++p) {
            if (!std::isfinite(res.xva.slice(0)[p]))
                throw NumericalError("XVA solve: non-finite iterate at slice 0 (netting set " +
                                     state.id + ")");
        }

        diag.prev_delta = diag.last_delta;
        diag.last_delta = res.xva.max_abs_diff(prev);
        diag.picard_iterations = iter;
        if (diag.last_delta <= cfg.picard_tol * scale) {
            diag.converged = true;
            break;
        }
        prev = res.xva;
    }

    // declared trapezoid bound: (dt/12) * sum |second difference of slice means|
    double bound = 0.0;
    for (std::size_t i = 1; i + 1 < ns; ++i)
        bound += std::abs(gmean[i + 1] - 2.0 * gmean[i] + gmean[i - 1]);
    diag.dt_bound = bound * grid.dt(0) / 12.0;
    return res;
}

XvaComponents decompose_xva(const NettingState& state, const ValueSurface& xva_surface,
                            const RateEnvironment& env, const PathSet& paths,
                            const SolverConfig& cfg) {
    (void)cfg;
    const TimeGrid& grid = paths.grid();
    const std::size_t n = paths.n_paths();
    const std::size_t ns = grid.size();
    const Curve rtilde = env.effective_rate_tilde();
    const auto& k = kernels::active();

    std::vector<double> acc_cva(n, 0.0), acc_dva(n, 0.0), acc_fva(n, 0.0), acc_colva(n, 0.0),
        acc_mva(n, 0.0);
    DriverScratch ws(n);

    for (std::size_t i = 0; i < ns; ++i) {
        const double t = grid[i];
        double w = (i == 0 ? grid.dt(0) : (i + 1 == ns ? grid.dt(ns - 2) : grid.dt(i - 1) + grid.dt(i))) * 0.5;
        w *= std::exp(-rtilde.integral(0.0, t));
        const SliceRates sr = slice_rates(env, state.blocks, t);

        std::fill(ws.c_tot.begin(), ws.c_tot.end(), 0.0);
        std::fill(ws.itc_tot.begin(), ws.itc_tot.end(), 0.0);
        std::fill(ws.ifc_tot.begin(), ws.ifc_tot.end(), 0.0);
        for (const auto& b : state.blocks) {
            kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
                k.axpy(1.0, b.coll.slice(i) + lo, ws.c_tot.data() + lo, hi - lo);
                k.axpy(1.0, b.im_tc.slice(i) + lo, ws.itc_tot.data() + lo, hi - lo);
                k.axpy(1.0, b.im_fc.slice(i) + lo, ws.ifc_tot.data() + lo, hi - lo);
            });
        }
        kernels::for_blocks(n, [&](std::size_t, std::size_t lo, std::size_t hi) {
            const std::size_t m = hi - lo;
            k.theta_pair(state.credit_exposure.slice(i) + lo, ws.c_tot.data() + lo,
                         ws.itc_tot.data() + lo, ws.ifc_tot.data() + lo, 1.0 - env.recovery_b,
                         1.0 - env.recovery_c, ws.theta_b.data() + lo, ws.theta_c.data() + lo, m);
            k.axpy(w * sr.lam_c, ws.theta_c.data() + lo, acc_cva.data() + lo, m);
            k.axpy(w * sr.lam_b, ws.theta_b.data() + lo, acc_dva.data() + lo, m);

            double* xf = ws.x_fund.data() + lo;
            const double* vhat = state.clean_total.slice(i) + lo;
            for (std::size_t p = 0; p < m; ++p) xf[p] = vhat[p];
            k.axpy(-1.0, xva_surface.slice(i) + lo, xf, m);
            k.axpy(-1.0, ws.c_tot.data() + lo, xf, m);
            k.axpy(-1.0, ws.itc_tot.data() + lo, xf, m);
            k.accum_spread_posneg(w * sr.sfl, w * sr.sfb, xf, acc_fva.data() + lo, m);

            for (std::size_t bi = 0; bi < state.blocks.size(); ++bi) {
                k.accum_spread_posneg(w * sr.scl[bi], w * sr.scb[bi],
                                      state.blocks[bi].coll.slice(i) + lo, acc_colva.data() + lo, m);
                k.axpy(w * sr.sil[bi], state.blocks[bi].im_tc.slice(i) + lo, acc_mva.data() + lo, m);
                k.axpy(-w * sr.rib[bi], state.blocks[bi].im_fc.slice(i) + lo, acc_mva.data() + lo, m);
            }
        });
    }

    auto estimate = [n](const std::vector<double>& acc) {
        ComponentEstimate e;
        e.value = kernels::blocked_sum(acc.data(), n) / (double)n;
        const double m2 = kernels::blocked_dot(acc.data(), acc.data(), n) / (double)n;
        const double var = std::max(m2 - e.value * e.value, 0.0);
        e.se = std::sqrt(var / (double)n);
        return e;
    };

    XvaComponents out;
    out.cva = estimate(acc_cva);
    out.dva = estimate(acc_dva);
    out.fva = estimate(acc_fva);
    out.colva = estimate(acc_colva);
    out.mva = estimate(acc_mva);
    std::vector<double> acc_x(n);
    for (std::size_t p = 0; p < n; ++p)
        acc_x[p] = -acc_cva[p] + acc_dva[p] + acc_fva[p] + acc_colva[p] + acc_mva[p];
    out.xva = estimate(acc_x);
    return out;
}

GLevelComparison validate_g_level(const NettingState& state, const RateEnvironment& env,
                                  const PathSet& paths, const SolverConfig& cfg,
                                  std::uint64_t seed) {
    const TimeGrid& grid = paths.grid();
    const std::size_t n = paths.n_paths();
    const double horizon = grid.horizon();

    // F-level credit terms with a zero XVA surface (no funding recursion here)
    ValueSurface zero(grid, n);
    XvaComponents f_level = decompose_xva(state, zero, env, paths, cfg);

    DefaultSample ds = sample_default_times(env, n, seed, horizon);

    std::vector<double> samp_cva(n, 0.0), samp_dva(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        const DefaultSample::First who = ds.first(p);
        if (who == DefaultSample::First::none) continue;
        const double tau = std::min(ds.tau_b[p], ds.tau_c[p]);
        const std::size_t i = grid.nearest_index(tau);
        double c = 0.0, itc = 0.0, ifc = 0.0;
        for (const auto& b : state.blocks) {
            c += b.coll.value(i, p);
            itc += b.im_tc.value(i, p);
            ifc += b.im_fc.value(i, p);
        }
        const double v = state.credit_exposure.value(i, p);
        const double df = std::exp(-env.r.integral(0.0, tau));
        if (who == DefaultSample::First::counterparty)
            samp_cva[p] = df * (1.0 - env.recovery_c) * std::max(-(v - c + ifc), 0.0);
        else
            samp_dva[p] = df * (1.0 - env.recovery_b) * std::max(v - c - itc, 0.0);
    }

    auto estimate = [n](const std::vector<double>& acc) {
        ComponentEstimate e;
        e.value = kernels::blocked_sum(acc.data(), n) / (double)n;
        const double m2 = kernels::blocked_dot(acc.data(), acc.data(), n) / (double)n;
        e.se = std::sqrt(std::max(m2 - e.value * e.value, 0.0) / (double)n);
        return e;
    };

    GLevelComparison out;
    out.cva_f = f_level.cva;
    out.dva_f = f_level.dva;
    out.cva_g = estimate(samp_cva);
    out.dva_g = estimate(samp_dva);
    out.diff = (out.cva_f.value - out.dva_f.value) - (out.cva_g.value - out.dva_g.value);
    out.combined_se = std::sqrt(out.cva_f.se * out.cva_f.se + out.dva_f.se * out.dva_f.se +
                                out.cva_g.se * out.cva_g.se + out.dva_g.se * out.dva_g.se);
    return out;
}

} // namespace xva
