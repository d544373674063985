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

#include <atomic>

#include "xva/kernels/kernels.hpp"

namespace xva::kernels {

namespace {
std::atomic<Backend> g_backend{Backend::auto_detect};
std::atomic<unsigned> g_threads{1};
} // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Kernels& active() {
    Backend b = g_backend.load(std::memory_order_relaxed);
    if (b == Backend::avx2 || (b == Backend::auto_detect && avx2_available())) {
        if (const Kernels* t = avx2_available() ? avx2_kernels() : nullptr) return *t;
    }
    return scalar_kernels();
}

void set_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }
Backend backend() { return g_backend.load(std::memory_order_relaxed); }

void set_threads(unsigned n) { g_threads.store(n == 0 ? 1 : n, std::memory_order_relaxed); }
unsigned threads() { return g_threads.load(std::memory_order_relaxed); }

} // namespace xva::kernels
