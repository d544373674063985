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
#ifndef XVA_KERNELS_KERNELS_HPP
#define XVA_KERNELS_KERNELS_HPP

#include <cstddef>
#include <cstdint>

namespace xva::kernels {

/// Scalar parameters of one collateral map f(v).
/// kind: 0 none, 1 perfect, 2 fraction(param), 3 threshold(param).
struct CollateralParams {
    int kind = 0;
    double param = 0.0;
};

/// Table of array kernels. Two interchangeable backends are provided: a
/// scalar reference and an AVX2 variant. Both implement the identical
/// arithmetic (same polynomial approximations, explicit FMA, reductions
/// blocked over four interleaved accumulators combined in a fixed order),
/// so for equal inputs the two backends return bit-identical outputs.
/// Equivalence is enforced by tests; everything above this layer is
/// backend-agnostic.
struct Kernels {
    const char* name;

    // elementwise transcendentals
    void (*vexp)(const double* x, double* y, std::size_t n);
    void (*vlog)(const double* x, double* y, std::size_t n);
    // inverse standard normal CDF (AS241), u in (0,1)
    void (*vnorminv)(const double* u, double* z, std::size_t n);

    // counter-based random streams (Philox4x32-10). Element i is a pure
    // function of (seed, stream, tag, idx0 + i); no state is carried.
    void (*fill_uniforms)(std::uint64_t seed, std::uint32_t stream, std::uint32_t tag,
                          std::uint64_t idx0, double* u, std::size_t n);
    void (*fill_normals)(std::uint64_t seed, std::uint32_t stream, std::uint32_t tag,
                         std::uint64_t idx0, double* z, std::size_t n);

    // s_out[i] = s_in[i] * exp(drift + vol * z[i])
    void (*path_step)(const double* s_in, const double* z, double drift, double vol,
                      double* s_out, std::size_t n);

    // y[i] = Horner(coef[0..degree]) evaluated at t = (x[i] - shift) * scale
    void (*poly_eval)(const double* coef, int degree, double shift, double scale,
                      const double* x, double* y, std::size_t n);

    // blocked reductions (mod-4 lane accumulators, fixed combine order)
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    // out[0..3] = { sum x+, sum (x+)^2, sum x-, sum (x-)^2 }
    void (*pos_neg_stats)(const double* x, std::size_t n, double* out);
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
    // power moments of t = (x-shift)*scale: xmom[k] = sum t^k, k = 0..2*degree,
    // and xty[k] = sum t^k * y[i], k = 0..degree
    void (*moments)(const double* x, const double* y, std::size_t n, int degree,
                    double shift, double scale, double* xmom, double* xty);

    // pointwise finance transforms
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // acc[i] += a_pos * x[i]^+ - a_neg * x[i]^-
    void (*accum_spread_posneg)(double a_pos, double a_neg, const double* x, double* acc,
                                std::size_t n);
    void (*collateral_map)(CollateralParams p, const double* v, double* c, std::size_t n);
    // theta_b[i] = lgd_b * (vhat - c - itc)^+, theta_c[i] = lgd_c * (vhat - c + ifc)^-
    void (*theta_pair)(const double* vhat, const double* c, const double* itc,
                       const double* ifc, double lgd_b, double lgd_c,
                       double* theta_b, double* theta_c, std::size_t n);
};

enum class Backend { auto_detect, scalar, avx2 };

const Kernels& scalar_kernels();
bool avx2_available();
const Kernels* avx2_kernels(); // nullptr when unsupported on this host

/// Active table used by the engine. Selection happens once (auto picks AVX2
/// when the CPU supports it) and can be overridden for reproducibility
/// studies or equivalence tests.
const Kernels& active();
void set_backend(Backend b);
Backend backend();

/// Worker count used by the block-parallel helpers in parallel.hpp.
/// Results are independent of this setting by construction.
void set_threads(unsigned n);
unsigned threads();

} // namespace xva::kernels

#endif
