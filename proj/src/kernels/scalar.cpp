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

// Scalar reference backend: a four-lane pack emulated with plain doubles.
// Each lane op is a single IEEE double operation, mirroring the AVX2 lanes.

#include <cmath>
#include <cstring>

#include "body.hpp"

namespace xva::kernels {
namespace {

struct SPack {
    struct dv { double v[4]; };
    struct iv { std::uint64_t v[4]; };
    struct mk { bool v[4]; };

    static dv load(const double* p) { return {p[0], p[1], p[2], p[3]}; }
    static void store(double* p, dv a) { std::memcpy(p, a.v, 32); }
    static dv set1(double x) { return {x, x, x, x}; }

#define XVA_LANES(expr)                                                                    \
    dv r;                                                                                  \
    for (int l = 0; l < 4; ++l) r.v[l] = (expr);                                           \
    return r

    static dv add(dv a, dv b) { XVA_LANES(a.v[l] + b.v[l]); }
    static dv sub(dv a, dv b) { XVA_LANES(a.v[l] - b.v[l]); }
    static dv mul(dv a, dv b) { XVA_LANES(a.v[l] * b.v[l]); }
    static dv div(dv a, dv b) { XVA_LANES(a.v[l] / b.v[l]); }
    static dv fma(dv a, dv b, dv c) { XVA_LANES(__builtin_fma(a.v[l], b.v[l], c.v[l])); }
    // vminpd/vmaxpd semantics: second operand wins on NaN or equality
    static dv min(dv a, dv b) { XVA_LANES(a.v[l] < b.v[l] ? a.v[l] : b.v[l]); }
    static dv max(dv a, dv b) { XVA_LANES(a.v[l] > b.v[l] ? a.v[l] : b.v[l]); }
    static dv sqrt(dv a) { XVA_LANES(std::sqrt(a.v[l])); }
    static dv rint(dv a) { XVA_LANES(std::nearbyint(a.v[l])); }
#undef XVA_LANES

    static std::uint64_t b64(double x) {
        std::uint64_t u;
        std::memcpy(&u, &x, 8);
        return u;
    }
    static double d64(std::uint64_t u) {
        double x;
        std::memcpy(&x, &u, 8);
        return x;
    }
    static dv neg(dv a) {
        dv r;
        for (int l = 0; l < 4; ++l) r.v[l] = d64(b64(a.v[l]) ^ 0x8000000000000000ull);
        return r;
    }
    static dv abs(dv a) {
        dv r;
        for (int l = 0; l < 4; ++l) r.v[l] = d64(b64(a.v[l]) & 0x7FFFFFFFFFFFFFFFull);
        return r;
    }
    static dv copysign(dv a, dv s) {
        dv r;
        for (int l = 0; l < 4; ++l)
            r.v[l] = d64((b64(a.v[l]) & 0x7FFFFFFFFFFFFFFFull) |
                         (b64(s.v[l]) & 0x8000000000000000ull));
        return r;
    }

    static mk lt(dv a, dv b) { mk m; for (int l = 0; l < 4; ++l) m.v[l] = a.v[l] < b.v[l]; return m; }
    static mk le(dv a, dv b) { mk m; for (int l = 0; l < 4; ++l) m.v[l] = a.v[l] <= b.v[l]; return m; }
    static mk ge(dv a, dv b) { mk m; for (int l = 0; l < 4; ++l) m.v[l] = a.v[l] >= b.v[l]; return m; }
    static mk eq(dv a, dv b) { mk m; for (int l = 0; l < 4; ++l) m.v[l] = a.v[l] == b.v[l]; return m; }
    static mk isnan(dv a) { mk m; for (int l = 0; l < 4; ++l) m.v[l] = a.v[l] != a.v[l]; return m; }
    static dv select(mk m, dv a, dv b) {
        dv r;
        for (int l = 0; l < 4; ++l) r.v[l] = m.v[l] ? a.v[l] : b.v[l];
        return r;
    }
    static iv iand_mask1(mk m) {
        iv r;
        for (int l = 0; l < 4; ++l) r.v[l] = m.v[l] ? 1u : 0u;
        return r;
    }

    static iv iset1(long long x) {
        iv r;
        for (int l = 0; l < 4; ++l) r.v[l] = (std::uint64_t)x;
        return r;
    }
#define XVA_ILANES(expr)                                                                   \
    iv r;                                                                                  \
    for (int l = 0; l < 4; ++l) r.v[l] = (expr);                                           \
    return r
    static iv iadd(iv a, iv b) { XVA_ILANES(a.v[l] + b.v[l]); }
    static iv isub(iv a, iv b) { XVA_ILANES(a.v[l] - b.v[l]); }
    static iv iand(iv a, iv b) { XVA_ILANES(a.v[l] & b.v[l]); }
    static iv ior(iv a, iv b) { XVA_ILANES(a.v[l] | b.v[l]); }
    static iv ixor(iv a, iv b) { XVA_ILANES(a.v[l] ^ b.v[l]); }
    static iv ishr1(iv a) { XVA_ILANES(a.v[l] >> 1); }
    static iv ishr12(iv a) { XVA_ILANES(a.v[l] >> 12); }
    static iv ishr32(iv a) { XVA_ILANES(a.v[l] >> 32); }
    static iv ishr52(iv a) { XVA_ILANES(a.v[l] >> 52); }
    static iv ishl32(iv a) { XVA_ILANES(a.v[l] << 32); }
    static iv mul32x32(iv a, iv b) {
        XVA_ILANES((std::uint64_t)(std::uint32_t)a.v[l] * (std::uint64_t)(std::uint32_t)b.v[l]);
    }
    static iv iota_add(iv a) {
        iv r;
        for (int l = 0; l < 4; ++l) r.v[l] = a.v[l] + (std::uint64_t)l;
        return r;
    }
#undef XVA_ILANES

    static iv toint(dv a) { // values integral and within int32 range
        iv r;
        for (int l = 0; l < 4; ++l) r.v[l] = (std::uint64_t)(long long)a.v[l];
        return r;
    }
    static dv toflt(iv a) {
        dv r;
        for (int l = 0; l < 4; ++l) r.v[l] = (double)(long long)a.v[l];
        return r;
    }
    static dv pow2(iv k) {
        dv r;
        for (int l = 0; l < 4; ++l) r.v[l] = d64(((std::uint64_t)(k.v[l] + 1023)) << 52);
        return r;
    }
    static iv bits(dv a) {
        iv r;
        for (int l = 0; l < 4; ++l) r.v[l] = b64(a.v[l]);
        return r;
    }
    static dv frombits(iv a) {
        dv r;
        for (int l = 0; l < 4; ++l) r.v[l] = d64(a.v[l]);
        return r;
    }
    static dv u52_to_double(iv a) {
        dv r;
        for (int l = 0; l < 4; ++l) r.v[l] = (double)a.v[l];
        return r;
    }
};

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels table = body::make_table<SPack>("scalar");
    return table;
}

} // namespace xva::kernels
