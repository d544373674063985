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
#ifndef XVA_KERNELS_PARALLEL_HPP
#define XVA_KERNELS_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

#include "xva/kernels/kernels.hpp"

namespace xva::kernels {

// Work is always partitioned into fixed 16384-element blocks (a multiple of
// the pack width), whatever the worker count, and block-level results are
// combined in block order. Outputs are therefore a pure function of the
// inputs, not of the scheduling.
inline constexpr std::size_t kBlock = 16384;

inline std::size_t block_count(std::size_t n) { return n == 0 ? 0 : (n - 1) / kBlock + 1; }

/// fn(block_index, begin, end) over disjoint ranges.
template <class Fn>
void for_blocks(std::size_t n, Fn&& fn) {
    const std::size_t nb = block_count(n);
    const unsigned nw = threads();
    if (nw <= 1 || nb <= 1) {
        for (std::size_t b = 0; b < nb; ++b)
            fn(b, b * kBlock, b + 1 == nb ? n : (b + 1) * kBlock);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned used = (unsigned)(nb < nw ? nb : nw);
    pool.reserve(used);
    for (unsigned w = 0; w < used; ++w) {
        pool.emplace_back([=, &fn] {
            for (std::size_t b = w; b < nb; b += used)
                fn(b, b * kBlock, b + 1 == nb ? n : (b + 1) * kBlock);
        });
    }
    for (auto& t : pool) t.join();
}

inline double blocked_sum(const double* x, std::size_t n) {
    const Kernels& k = active();
    std::vector<double> part(block_count(n), 0.0);
    for_blocks(n, [&](std::size_t b, std::size_t lo, std::size_t hi) {
        part[b] = k.sum(x + lo, hi - lo);
    });
    double s = 0.0;
    for (double p : part) s += p;
    return s;
}

inline double blocked_dot(const double* x, const double* y, std::size_t n) {
    const Kernels& k = active();
    std::vector<double> part(block_count(n), 0.0);
    for_blocks(n, [&](std::size_t b, std::size_t lo, std::size_t hi) {
        part[b] = k.dot(x + lo, y + lo, hi - lo);
    });
    double s = 0.0;
    for (double p : part) s += p;
    return s;
}

/// out = { sum x+, sum (x+)^2, sum x-, sum (x-)^2 }
inline void blocked_pos_neg_stats(const double* x, std::size_t n, double out[4]) {
    const Kernels& k = active();
    std::vector<double> part(4 * block_count(n), 0.0);
    for_blocks(n, [&](std::size_t b, std::size_t lo, std::size_t hi) {
        k.pos_neg_stats(x + lo, hi - lo, part.data() + 4 * b);
    });
    out[0] = out[1] = out[2] = out[3] = 0.0;
    for (std::size_t b = 0; b < block_count(n); ++b)
        for (int j = 0; j < 4; ++j) out[j] += part[4 * b + j];
}

inline double blocked_max_abs_diff(const double* a, const double* b, std::size_t n) {
    const Kernels& k = active();
    std::vector<double> part(block_count(n), 0.0);
    for_blocks(n, [&](std::size_t blk, std::size_t lo, std::size_t hi) {
        part[blk] = k.max_abs_diff(a + lo, b + lo, hi - lo);
    });
    double m = 0.0;
    for (double p : part)
        if (p > m) m = p;
    return m;
}

inline void blocked_moments(const double* x, const double* y, std::size_t n, int degree,
                            double shift, double scale, double* xmom, double* xty) {
    const Kernels& k = active();
    const int nm = 2 * degree + 1;
    const std::size_t nb = block_count(n);
    std::vector<double> pm(nb * (std::size_t)nm, 0.0), pb(nb * (std::size_t)(degree + 1), 0.0);
    for_blocks(n, [&](std::size_t b, std::size_t lo, std::size_t hi) {
        k.moments(x + lo, y + lo, hi - lo, degree, shift, scale, pm.data() + b * nm,
                  pb.data() + b * (degree + 1));
    });
    for (int j = 0; j < nm; ++j) xmom[j] = 0.0;
    for (int j = 0; j <= degree; ++j) xty[j] = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        for (int j = 0; j < nm; ++j) xmom[j] += pm[b * nm + j];
        for (int j = 0; j <= degree; ++j) xty[j] += pb[b * (degree + 1) + j];
    }
}

} // namespace xva::kernels

#endif
