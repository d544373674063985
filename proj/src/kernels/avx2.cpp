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

// AVX2/FMA backend. This translation unit is the only one compiled with
// -mavx2 -mfma; it is reached through the dispatch table only after a
// runtime CPU check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "body.hpp"

namespace xva::kernels {
namespace {

struct APack {
    using dv = __m256d;
    using iv = __m256i;
    using mk = __m256d; // compare result

    static dv load(const double* p) { return _mm256_loadu_pd(p); }
    static void store(double* p, dv a) { _mm256_storeu_pd(p, a); }
    static dv set1(double x) { return _mm256_set1_pd(x); }

    static dv add(dv a, dv b) { return _mm256_add_pd(a, b); }
    static dv sub(dv a, dv b) { return _mm256_sub_pd(a, b); }
    static dv mul(dv a, dv b) { return _mm256_mul_pd(a, b); }
    static dv div(dv a, dv b) { return _mm256_div_pd(a, b); }
    static dv fma(dv a, dv b, dv c) { return _mm256_fmadd_pd(a, b, c); }
    static dv min(dv a, dv b) { return _mm256_min_pd(a, b); }
    static dv max(dv a, dv b) { return _mm256_max_pd(a, b); }
    static dv sqrt(dv a) { return _mm256_sqrt_pd(a); }
    static dv rint(dv a) {
        return _mm256_round_pd(a, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    }
    static dv neg(dv a) { return _mm256_xor_pd(a, _mm256_set1_pd(-0.0)); }
    static dv abs(dv a) {
        return _mm256_andnot_pd(_mm256_set1_pd(-0.0), a);
    }
    static dv copysign(dv a, dv s) {
        const dv sm = _mm256_set1_pd(-0.0);
        return _mm256_or_pd(_mm256_andnot_pd(sm, a), _mm256_and_pd(sm, s));
    }

    static mk lt(dv a, dv b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }
    static mk le(dv a, dv b) { return _mm256_cmp_pd(a, b, _CMP_LE_OQ); }
    static mk ge(dv a, dv b) { return _mm256_cmp_pd(a, b, _CMP_GE_OQ); }
    static mk eq(dv a, dv b) { return _mm256_cmp_pd(a, b, _CMP_EQ_OQ); }
    static mk isnan(dv a) { return _mm256_cmp_pd(a, a, _CMP_UNORD_Q); }
    static dv select(mk m, dv a, dv b) { return _mm256_blendv_pd(b, a, m); }
    static iv iand_mask1(mk m) {
        return _mm256_and_si256(_mm256_castpd_si256(m), _mm256_set1_epi64x(1));
    }

    static iv iset1(long long x) { return _mm256_set1_epi64x(x); }
    static iv iadd(iv a, iv b) { return _mm256_add_epi64(a, b); }
    static iv isub(iv a, iv b) { return _mm256_sub_epi64(a, b); }
    static iv iand(iv a, iv b) { return _mm256_and_si256(a, b); }
    static iv ior(iv a, iv b) { return _mm256_or_si256(a, b); }
    static iv ixor(iv a, iv b) { return _mm256_xor_si256(a, b); }
    static iv ishr1(iv a) { return _mm256_srli_epi64(a, 1); }
    static iv ishr12(iv a) { return _mm256_srli_epi64(a, 12); }
    static iv ishr32(iv a) { return _mm256_srli_epi64(a, 32); }
    static iv ishr52(iv a) { return _mm256_srli_epi64(a, 52); }
    static iv ishl32(iv a) { return _mm256_slli_epi64(a, 32); }
    static iv mul32x32(iv a, iv b) { return _mm256_mul_epu32(a, b); }
    static iv iota_add(iv a) { return _mm256_add_epi64(a, _mm256_set_epi64x(3, 2, 1, 0)); }

    static iv toint(dv a) { // integral values within int32 range
        return _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(a));
    }
    static dv toflt(iv a) { // signed values well inside 2^51
        iv magic = _mm256_set1_epi64x(0x4338000000000000ll);
        dv d = _mm256_castsi256_pd(_mm256_add_epi64(a, magic));
        return _mm256_sub_pd(d, _mm256_set1_pd(0x1.8p52));
    }
    static dv pow2(iv k) {
        iv bits = _mm256_slli_epi64(_mm256_add_epi64(k, _mm256_set1_epi64x(1023)), 52);
        return _mm256_castsi256_pd(bits);
    }
    static iv bits(dv a) { return _mm256_castpd_si256(a); }
    static dv frombits(iv a) { return _mm256_castsi256_pd(a); }
    static dv u52_to_double(iv a) { // a < 2^52
        dv d = _mm256_castsi256_pd(_mm256_or_si256(a, _mm256_set1_epi64x(0x4330000000000000ll)));
        return _mm256_sub_pd(d, _mm256_set1_pd(0x1.0p52));
    }
};

} // namespace

const Kernels* avx2_kernels() {
    static const Kernels table = body::make_table<APack>("avx2");
    return &table;
}

} // namespace xva::kernels

#else

#include "xva/kernels/kernels.hpp"

namespace xva::kernels {
const Kernels* avx2_kernels() { return nullptr; }
} // namespace xva::kernels

#endif
