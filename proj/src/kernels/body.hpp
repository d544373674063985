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
#ifndef XVA_KERNELS_BODY_HPP
#define XVA_KERNELS_BODY_HPP

// Backend-independent kernel bodies, templated over a 4-lane pack P.
// Every operation below maps to one IEEE-754 double operation per lane
// (add/sub/mul/div/sqrt/fma/min/max/round/select/bit ops), so the scalar
// and AVX2 instantiations produce bit-identical results element for
// element. Reductions interleave four accumulators (lane j collects
// elements with index == j mod 4) and combine them as (l0+l2)+(l1+l3);
// the tail is folded into the same lanes. Do not "simplify" an a*b+c
// into an implicit contraction here: only P::fma is fused.

#include <cstddef>
#include <cstdint>

#include "xva/kernels/kernels.hpp"

namespace xva::kernels::body {

// ---------------------------------------------------------------------
// exp: argument clamped to [-746, 710], split x = n*ln2 + r, e^r by a
// degree-13 Taylor polynomial, scaled by 2^n in two factors so the full
// double range (including gradual underflow to 0) is covered.
// ---------------------------------------------------------------------

template <class P>
inline typename P::dv exp_v(typename P::dv x) {
    using dv = typename P::dv;
    const dv nan_in = x;
    x = P::min(P::max(x, P::set1(-746.0)), P::set1(710.0));

    const dv log2e = P::set1(1.44269504088896340736);
    dv n = P::rint(P::mul(x, log2e));
    // two-part Cephes split of ln2
    dv r = P::fma(n, P::set1(-6.93145751953125e-1), x);
    r = P::fma(n, P::set1(-1.42860682030941723212e-6), r);

    // e^r on |r| <= ln2/2, Taylor coefficients 1/k!
    dv p = P::set1(1.6059043836821614599e-10); // 1/13!
    p = P::fma(p, r, P::set1(2.0876756987868098979e-9));  // 1/12!
    p = P::fma(p, r, P::set1(2.5052108385441718775e-8));  // 1/11!
    p = P::fma(p, r, P::set1(2.7557319223985890653e-7));  // 1/10!
    p = P::fma(p, r, P::set1(2.7557319223985892511e-6));  // 1/9!
    p = P::fma(p, r, P::set1(2.4801587301587301566e-5));  // 1/8!
    p = P::fma(p, r, P::set1(1.9841269841269841253e-4));  // 1/7!
    p = P::fma(p, r, P::set1(1.3888888888888889418e-3));  // 1/6!
    p = P::fma(p, r, P::set1(8.3333333333333332177e-3));  // 1/5!
    p = P::fma(p, r, P::set1(4.1666666666666664354e-2));  // 1/4!
    p = P::fma(p, r, P::set1(1.6666666666666665741e-1));  // 1/3!
    p = P::fma(p, r, P::set1(5.0e-1));
    p = P::fma(p, r, P::set1(1.0));
    p = P::fma(p, r, P::set1(1.0));

    // 2^n = 2^k1 * 2^k2 with k1 = ((n+2048)>>1) - 1024 (n in [-1075, 1025])
    typename P::iv k = P::toint(n);
    typename P::iv k1 = P::isub(P::ishr1(P::iadd(k, P::iset1(2048))), P::iset1(1024));
    typename P::iv k2 = P::isub(k, k1);
    dv res = P::mul(P::mul(p, P::pow2(k1)), P::pow2(k2));
    return P::select(P::isnan(nan_in), nan_in, res);
}

// ---------------------------------------------------------------------
// log: x = m * 2^e with m in [sqrt(1/2), sqrt(2)); log m via the atanh
// series in t = (m-1)/(m+1). Valid for normal positive inputs; x <= 0
// yields -inf/NaN through the select at the end.
// ---------------------------------------------------------------------

template <class P>
inline typename P::dv log_v(typename P::dv x) {
    using dv = typename P::dv;
    using iv = typename P::iv;
    const dv in = x;

    iv bits = P::bits(x);
    iv expo = P::isub(P::ishr52(bits), P::iset1(1023));
    // mantissa with exponent forced to 0 -> m0 in [1, 2)
    iv mbits = P::ior(P::iand(bits, P::iset1(0x000FFFFFFFFFFFFFll)),
                      P::iset1(0x3FF0000000000000ll));
    dv m = P::frombits(mbits);
    // fold m >= sqrt(2) down one octave
    typename P::mk fold = P::ge(m, P::set1(1.4142135623730951));
    m = P::select(fold, P::mul(m, P::set1(0.5)), m);
    dv e = P::toflt(P::iadd(expo, P::iand_mask1(fold)));

    dv t = P::div(P::sub(m, P::set1(1.0)), P::add(m, P::set1(1.0)));
    dv w = P::mul(t, t);
    dv q = P::set1(2.0 / 19.0);
    q = P::fma(q, w, P::set1(2.0 / 17.0));
    q = P::fma(q, w, P::set1(2.0 / 15.0));
    q = P::fma(q, w, P::set1(2.0 / 13.0));
    q = P::fma(q, w, P::set1(2.0 / 11.0));
    q = P::fma(q, w, P::set1(2.0 / 9.0));
    q = P::fma(q, w, P::set1(2.0 / 7.0));
    q = P::fma(q, w, P::set1(2.0 / 5.0));
    q = P::fma(q, w, P::set1(2.0 / 3.0));
    dv lm = P::fma(P::mul(t, w), q, P::add(t, t));

    const dv ln2_hi = P::set1(6.93147180559890330187e-01); // 20 zero low bits
    const dv ln2_lo = P::set1(5.49792301870837115524e-14);
    dv res = P::add(P::mul(e, ln2_hi), P::fma(e, ln2_lo, lm));

    // domain edges: log(+0) = -inf, log(neg) = NaN, log(inf) = inf
    res = P::select(P::le(in, P::set1(0.0)), P::set1(-1.0 / 0.0), res);
    res = P::select(P::lt(in, P::set1(0.0)), P::set1(0.0 / 0.0), res);
    res = P::select(P::eq(in, P::set1(1.0 / 0.0)), in, res);
    return res;
}

// ---------------------------------------------------------------------
// inverse normal CDF, AS241 PPND16 (Wichura 1988), evaluated branchless:
// both tail rationals are always computed and the result selected, so
// the lanes of a pack never diverge.
// ---------------------------------------------------------------------

template <class P>
inline typename P::dv norminv_v(typename P::dv u) {
    using dv = typename P::dv;
    dv q = P::sub(u, P::set1(0.5));

    // central: |q| <= 0.425
    dv r = P::fma(q, P::neg(q), P::set1(0.180625)); // 0.180625 - q^2
    dv num = P::set1(2.5090809287301226727e+3);
    num = P::fma(num, r, P::set1(3.3430575583588128105e+4));
    num = P::fma(num, r, P::set1(6.7265770927008700853e+4));
    num = P::fma(num, r, P::set1(4.5921953931549871457e+4));
    num = P::fma(num, r, P::set1(1.3731693765509461125e+4));
    num = P::fma(num, r, P::set1(1.9715909503065514427e+3));
    num = P::fma(num, r, P::set1(1.3314166789178437745e+2));
    num = P::fma(num, r, P::set1(3.3871328727963666080e+0));
    dv den = P::set1(5.2264952788528545610e+3);
    den = P::fma(den, r, P::set1(2.8729085735721942674e+4));
    den = P::fma(den, r, P::set1(3.9307895800092710610e+4));
    den = P::fma(den, r, P::set1(2.1213794301586595867e+4));
    den = P::fma(den, r, P::set1(5.3941960214247511077e+3));
    den = P::fma(den, r, P::set1(6.8718700749205790830e+2));
    den = P::fma(den, r, P::set1(4.2313330701600911252e+1));
    den = P::fma(den, r, P::set1(1.0));
    dv z_central = P::mul(q, P::div(num, den));

    // tails: s = sqrt(-log(min(u, 1-u)))
    dv pmin = P::min(u, P::sub(P::set1(1.0), u));
    dv s = P::sqrt(P::neg(log_v<P>(pmin)));

    dv s1 = P::sub(s, P::set1(1.6)); // 1.6 < s <= 5
    dv n1 = P::set1(7.74545014278341407640e-4);
    n1 = P::fma(n1, s1, P::set1(2.27238449892691845833e-2));
    n1 = P::fma(n1, s1, P::set1(2.41780725177450611770e-1));
    n1 = P::fma(n1, s1, P::set1(1.27045825245236838258e+0));
    n1 = P::fma(n1, s1, P::set1(3.64784832476320460504e+0));
    n1 = P::fma(n1, s1, P::set1(5.76949722146069140550e+0));
    n1 = P::fma(n1, s1, P::set1(4.63033784615654529590e+0));
    n1 = P::fma(n1, s1, P::set1(1.42343711074968357734e+0));
    dv d1 = P::set1(1.05075007164441684324e-9);
    d1 = P::fma(d1, s1, P::set1(5.47593808499534494600e-4));
    d1 = P::fma(d1, s1, P::set1(1.51986665636164571966e-2));
    d1 = P::fma(d1, s1, P::set1(1.48103976427480074590e-1));
    d1 = P::fma(d1, s1, P::set1(6.89767334985100004550e-1));
    d1 = P::fma(d1, s1, P::set1(1.67638483018380384940e+0));
    d1 = P::fma(d1, s1, P::set1(2.05319162663775882187e+0));
    d1 = P::fma(d1, s1, P::set1(1.0));
    dv z_mid = P::div(n1, d1);

    dv s2 = P::sub(s, P::set1(5.0)); // s > 5
    dv n2 = P::set1(2.01033439929228813265e-7);
    n2 = P::fma(n2, s2, P::set1(2.71155556874348757815e-5));
    n2 = P::fma(n2, s2, P::set1(1.24266094738807843860e-3));
    n2 = P::fma(n2, s2, P::set1(2.65321895265761230930e-2));
    n2 = P::fma(n2, s2, P::set1(2.96560571828504891230e-1));
    n2 = P::fma(n2, s2, P::set1(1.78482653991729133580e+0));
    n2 = P::fma(n2, s2, P::set1(5.46378491116411436990e+0));
    n2 = P::fma(n2, s2, P::set1(6.65790464350110377720e+0));
    dv d2 = P::set1(2.04426310338993978564e-15);
    d2 = P::fma(d2, s2, P::set1(1.42151175831644588870e-7));
    d2 = P::fma(d2, s2, P::set1(1.84631831751005468180e-5));
    d2 = P::fma(d2, s2, P::set1(7.86869131145613259100e-4));
    d2 = P::fma(d2, s2, P::set1(1.48753612908506148525e-2));
    d2 = P::fma(d2, s2, P::set1(1.36929880922735805310e-1));
    d2 = P::fma(d2, s2, P::set1(5.99832206555887937690e-1));
    d2 = P::fma(d2, s2, P::set1(1.0));
    dv z_far = P::div(n2, d2);

    dv z_tail = P::select(P::le(s, P::set1(5.0)), z_mid, z_far);
    z_tail = P::copysign(z_tail, q);

    return P::select(P::le(P::abs(q), P::set1(0.425)), z_central, z_tail);
}

// ---------------------------------------------------------------------
// Philox4x32-10 on 4 parallel counters held in 64-bit lanes (values kept
// to 32 bits). Returns the first two output words packed as one u64 lane.
// ---------------------------------------------------------------------

template <class P>
inline typename P::iv philox_hi64(typename P::iv c0, typename P::iv c1,
                                  typename P::iv c2, typename P::iv c3,
                                  typename P::iv k0, typename P::iv k1) {
    using iv = typename P::iv;
    const iv M0 = P::iset1(0xD2511F53ll);
    const iv M1 = P::iset1(0xCD9E8D57ll);
    const iv W0 = P::iset1(0x9E3779B9ll);
    const iv W1 = P::iset1(0xBB67AE85ll);
    const iv mask = P::iset1(0xFFFFFFFFll);
    for (int round = 0; round < 10; ++round) {
        iv p0 = P::mul32x32(c0, M0);
        iv p1 = P::mul32x32(c2, M1);
        iv n0 = P::ixor(P::ixor(P::ishr32(p1), c1), k0);
        iv n1 = P::iand(p1, mask);
        iv n2 = P::ixor(P::ixor(P::ishr32(p0), c3), k1);
        iv n3 = P::iand(p0, mask);
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 = P::iand(P::iadd(k0, W0), mask);
        k1 = P::iand(P::iadd(k1, W1), mask);
    }
    return P::ior(P::ishl32(c0), c1);
}

// (v >> 12) * 2^-52 + 2^-53, strictly inside (0,1)
template <class P>
inline typename P::dv u64_to_u01(typename P::iv v) {
    typename P::dv d = P::u52_to_double(P::ishr12(v));
    return P::fma(d, P::set1(0x1.0p-52), P::set1(0x1.0p-53));
}

template <class P>
inline typename P::dv uniforms4(std::uint64_t seed, std::uint32_t stream, std::uint32_t tag,
                                std::uint64_t idx0) {
    using iv = typename P::iv;
    iv idx = P::iota_add(P::iset1((long long)idx0));
    iv c0 = P::iand(idx, P::iset1(0xFFFFFFFFll));
    iv c1 = P::ishr32(idx);
    iv c2 = P::iset1((long long)tag);
    iv c3 = P::iset1((long long)stream);
    iv k0 = P::iset1((long long)(seed & 0xFFFFFFFFull));
    iv k1 = P::iset1((long long)(seed >> 32));
    return u64_to_u01<P>(philox_hi64<P>(c0, c1, c2, c3, k0, k1));
}

// ---------------------------------------------------------------------
// array drivers
// ---------------------------------------------------------------------

template <class P, class F>
inline void map1(const double* x, double* y, std::size_t n, F&& f) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) P::store(y + i, f(P::load(x + i)));
    if (i < n) {
        double xb[4] = {0.5, 0.5, 0.5, 0.5}; // benign filler for partial packs
        double yb[4];
        for (std::size_t j = i; j < n; ++j) xb[j - i] = x[j];
        P::store(yb, f(P::load(xb)));
        for (std::size_t j = i; j < n; ++j) y[j] = yb[j - i];
    }
}

template <class P>
inline void vexp_impl(const double* x, double* y, std::size_t n) {
    map1<P>(x, y, n, [](typename P::dv v) { return exp_v<P>(v); });
}

template <class P>
inline void vlog_impl(const double* x, double* y, std::size_t n) {
    map1<P>(x, y, n, [](typename P::dv v) { return log_v<P>(v); });
}

template <class P>
inline void vnorminv_impl(const double* u, double* z, std::size_t n) {
    map1<P>(u, z, n, [](typename P::dv v) { return norminv_v<P>(v); });
}

template <class P>
inline void fill_uniforms_impl(std::uint64_t seed, std::uint32_t stream, std::uint32_t tag,
                               std::uint64_t idx0, double* u, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) P::store(u + i, uniforms4<P>(seed, stream, tag, idx0 + i));
    if (i < n) {
        double ub[4];
        P::store(ub, uniforms4<P>(seed, stream, tag, idx0 + i));
        for (std::size_t j = i; j < n; ++j) u[j] = ub[j - i];
    }
}

template <class P>
inline void fill_normals_impl(std::uint64_t seed, std::uint32_t stream, std::uint32_t tag,
                              std::uint64_t idx0, double* z, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        P::store(z + i, norminv_v<P>(uniforms4<P>(seed, stream, tag, idx0 + i)));
    if (i < n) {
        double zb[4];
        P::store(zb, norminv_v<P>(uniforms4<P>(seed, stream, tag, idx0 + i)));
        for (std::size_t j = i; j < n; ++j) z[j] = zb[j - i];
    }
}

template <class P>
inline void path_step_impl(const double* s_in, const double* z, double drift, double vol,
                           double* s_out, std::size_t n) {
    const auto dr = P::set1(drift);
    const auto vo = P::set1(vol);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        auto g = exp_v<P>(P::fma(vo, P::load(z + i), dr));
        P::store(s_out + i, P::mul(P::load(s_in + i), g));
    }
    if (i < n) {
        double zb[4] = {0, 0, 0, 0}, sb[4] = {1, 1, 1, 1}, ob[4];
        for (std::size_t j = i; j < n; ++j) { zb[j - i] = z[j]; sb[j - i] = s_in[j]; }
        auto g = exp_v<P>(P::fma(vo, P::load(zb), dr));
        P::store(ob, P::mul(P::load(sb), g));
        for (std::size_t j = i; j < n; ++j) s_out[j] = ob[j - i];
    }
}

template <class P>
inline void poly_eval_impl(const double* coef, int degree, double shift, double scale,
                           const double* x, double* y, std::size_t n) {
    map1<P>(x, y, n, [&](typename P::dv v) {
        auto t = P::mul(P::sub(v, P::set1(shift)), P::set1(scale));
        auto acc = P::set1(coef[degree]);
        for (int k = degree - 1; k >= 0; --k) acc = P::fma(acc, t, P::set1(coef[k]));
        return acc;
    });
}

// Reductions. One pack accumulator per stream; tail folded into lane i&3;
// lanes combined as (l0+l2)+(l1+l3) to match the AVX2 128-bit halves.

template <class P>
inline double reduce_lanes_add(typename P::dv acc) {
    double l[4];
    P::store(l, acc);
    return (l[0] + l[2]) + (l[1] + l[3]);
}

template <class P>
inline double sum_impl(const double* x, std::size_t n) {
    auto acc = P::set1(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = P::add(acc, P::load(x + i));
    double l[4];
    P::store(l, acc);
    for (; i < n; ++i) l[i & 3] += x[i];
    return (l[0] + l[2]) + (l[1] + l[3]);
}

template <class P>
inline double dot_impl(const double* x, const double* y, std::size_t n) {
    auto acc = P::set1(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = P::fma(P::load(x + i), P::load(y + i), acc);
    double l[4];
    P::store(l, acc);
    for (; i < n; ++i) l[i & 3] = __builtin_fma(x[i], y[i], l[i & 3]);
    return (l[0] + l[2]) + (l[1] + l[3]);
}

template <class P>
inline void pos_neg_stats_impl(const double* x, std::size_t n, double* out) {
    auto zero = P::set1(0.0);
    auto sp = zero, sp2 = zero, sn = zero, sn2 = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        auto v = P::load(x + i);
        auto p = P::max(v, zero);
        auto m = P::max(P::neg(v), zero);
        sp = P::add(sp, p);
        sp2 = P::fma(p, p, sp2);
        sn = P::add(sn, m);
        sn2 = P::fma(m, m, sn2);
    }
    double lp[4], lp2[4], ln[4], ln2[4];
    P::store(lp, sp); P::store(lp2, sp2); P::store(ln, sn); P::store(ln2, sn2);
    for (; i < n; ++i) {
        double p = x[i] > 0.0 ? x[i] : 0.0;
        double m = -x[i] > 0.0 ? -x[i] : 0.0;
        lp[i & 3] += p;
        lp2[i & 3] = __builtin_fma(p, p, lp2[i & 3]);
        ln[i & 3] += m;
        ln2[i & 3] = __builtin_fma(m, m, ln2[i & 3]);
    }
    out[0] = (lp[0] + lp[2]) + (lp[1] + lp[3]);
    out[1] = (lp2[0] + lp2[2]) + (lp2[1] + lp2[3]);
    out[2] = (ln[0] + ln[2]) + (ln[1] + ln[3]);
    out[3] = (ln2[0] + ln2[2]) + (ln2[1] + ln2[3]);
}

template <class P>
inline double max_abs_diff_impl(const double* a, const double* b, std::size_t n) {
    auto acc = P::set1(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = P::max(acc, P::abs(P::sub(P::load(a + i), P::load(b + i))));
    double l[4];
    P::store(l, acc);
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        if (d < 0) d = -d;
        if (d > l[i & 3]) l[i & 3] = d;
    }
    double m01 = l[0] > l[1] ? l[0] : l[1];
    double m23 = l[2] > l[3] ? l[2] : l[3];
    return m01 > m23 ? m01 : m23;
}

template <class P>
inline void moments_impl(const double* x, const double* y, std::size_t n, int degree,
                         double shift, double scale, double* xmom, double* xty) {
    using dv = typename P::dv;
    const int nm = 2 * degree + 1;
    dv accm[11]; // degree <= 5
    dv accb[6];
    for (int k = 0; k < nm; ++k) accm[k] = P::set1(0.0);
    for (int k = 0; k <= degree; ++k) accb[k] = P::set1(0.0);
    const dv sh = P::set1(shift), sc = P::set1(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        dv t = P::mul(P::sub(P::load(x + i), sh), sc);
        dv yv = P::load(y + i);
        dv pw = P::set1(1.0);
        for (int k = 0; k < nm; ++k) {
            accm[k] = P::add(accm[k], pw);
            if (k <= degree) accb[k] = P::fma(pw, yv, accb[k]);
            if (k + 1 < nm) pw = P::mul(pw, t);
        }
    }
    double lm[11][4], lb[6][4];
    for (int k = 0; k < nm; ++k) P::store(lm[k], accm[k]);
    for (int k = 0; k <= degree; ++k) P::store(lb[k], accb[k]);
    for (; i < n; ++i) {
        double t = (x[i] - shift) * scale;
        double pw = 1.0;
        for (int k = 0; k < nm; ++k) {
            lm[k][i & 3] += pw;
            if (k <= degree) lb[k][i & 3] = __builtin_fma(pw, y[i], lb[k][i & 3]);
            if (k + 1 < nm) pw = pw * t;
        }
    }
    for (int k = 0; k < nm; ++k) xmom[k] = (lm[k][0] + lm[k][2]) + (lm[k][1] + lm[k][3]);
    for (int k = 0; k <= degree; ++k) xty[k] = (lb[k][0] + lb[k][2]) + (lb[k][1] + lb[k][3]);
}

template <class P>
inline void axpy_impl(double a, const double* x, double* y, std::size_t n) {
    const auto av = P::set1(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) P::store(y + i, P::fma(av, P::load(x + i), P::load(y + i)));
    for (; i < n; ++i) y[i] = __builtin_fma(a, x[i], y[i]);
}

template <class P>
inline void accum_spread_posneg_impl(double a_pos, double a_neg, const double* x, double* acc,
                                     std::size_t n) {
    const auto ap = P::set1(a_pos), an = P::set1(a_neg), zero = P::set1(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        auto v = P::load(x + i);
        auto t = P::mul(ap, P::max(v, zero));
        t = P::fma(P::neg(an), P::max(P::neg(v), zero), t);
        P::store(acc + i, P::add(P::load(acc + i), t));
    }
    for (; i < n; ++i) {
        double p = x[i] > 0.0 ? x[i] : 0.0;
        double m = -x[i] > 0.0 ? -x[i] : 0.0;
        acc[i] = acc[i] + __builtin_fma(-a_neg, m, a_pos * p);
    }
}

template <class P>
inline void collateral_map_impl(CollateralParams cp, const double* v, double* c, std::size_t n) {
    const auto zero = P::set1(0.0);
    switch (cp.kind) {
    case 0:
        for (std::size_t i = 0; i < n; ++i) c[i] = 0.0;
        break;
    case 1:
        for (std::size_t i = 0; i < n; ++i) c[i] = v[i];
        break;
    case 2: {
        const auto a = P::set1(cp.param);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) P::store(c + i, P::mul(a, P::load(v + i)));
        for (; i < n; ++i) c[i] = cp.param * v[i];
        break;
    }
    default: { // threshold h: sign(v) * max(|v|-h, 0) = (v-h)^+ - (-v-h)^+
        const auto h = P::set1(cp.param);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            auto x = P::load(v + i);
            auto up = P::max(P::sub(x, h), zero);
            auto dn = P::max(P::sub(P::neg(x), h), zero);
            P::store(c + i, P::sub(up, dn));
        }
        for (; i < n; ++i) {
            double up = v[i] - cp.param; if (up < 0) up = 0;
            double dn = -v[i] - cp.param; if (dn < 0) dn = 0;
            c[i] = up - dn;
        }
        break;
    }
    }
}

template <class P>
inline void theta_pair_impl(const double* vhat, const double* c, const double* itc,
                            const double* ifc, double lgd_b, double lgd_c,
                            double* theta_b, double* theta_c, std::size_t n) {
    const auto zero = P::set1(0.0);
    const auto lb = P::set1(lgd_b), lc = P::set1(lgd_c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        auto base = P::sub(P::load(vhat + i), P::load(c + i));
        auto eb = P::sub(base, P::load(itc + i));
        auto ec = P::add(base, P::load(ifc + i));
        P::store(theta_b + i, P::mul(lb, P::max(eb, zero)));
        P::store(theta_c + i, P::mul(lc, P::max(P::neg(ec), zero)));
    }
    for (; i < n; ++i) {
        double base = vhat[i] - c[i];
        double eb = base - itc[i];
        double ec = base + ifc[i];
        theta_b[i] = lgd_b * (eb > 0.0 ? eb : 0.0);
        theta_c[i] = lgd_c * (-ec > 0.0 ? -ec : 0.0);
    }
}

template <class P>
inline Kernels make_table(const char* name) {
    Kernels k;
    k.name = name;
    k.vexp = &vexp_impl<P>;
    k.vlog = &vlog_impl<P>;
    k.vnorminv = &vnorminv_impl<P>;
    k.fill_uniforms = &fill_uniforms_impl<P>;
    k.fill_normals = &fill_normals_impl<P>;
    k.path_step = &path_step_impl<P>;
    k.poly_eval = &poly_eval_impl<P>;
    k.sum = &sum_impl<P>;
    k.dot = &dot_impl<P>;
    k.pos_neg_stats = &pos_neg_stats_impl<P>;
    k.max_abs_diff = &max_abs_diff_impl<P>;
    k.moments = &moments_impl<P>;
    k.axpy = &axpy_impl<P>;
    k.accum_spread_posneg = &accum_spread_posneg_impl<P>;
    k.collateral_map = &collateral_map_impl<P>;
    k.theta_pair = &theta_pair_impl<P>;
    return k;
}

} // namespace xva::kernels::body

#endif
