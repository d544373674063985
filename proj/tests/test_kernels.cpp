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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "xva/kernels/kernels.hpp"
#include "xva/kernels/parallel.hpp"

using namespace xva;

namespace {

std::vector<double> random_vec(std::size_t n, double lo, double hi, unsigned tag) {
    std::mt19937_64 gen(991 + tag);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(gen);
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), 8 * a.size()) == 0;
}

double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

TEST_CASE("vexp matches std::exp to a few ulp") {
    const auto& k = kernels::active();
    auto x = random_vec(20001, -700.0, 700.0, 1);
    auto xs = random_vec(20001, -2.0, 2.0, 2);
    x.insert(x.end(), xs.begin(), xs.end());
    x.insert(x.end(), {0.0, -0.0, 1.0, -1.0, 709.7, -745.0, 710.0, -746.0, -800.0, 800.0});
    std::vector<double> y(x.size());
    k.vexp(x.data(), y.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double ref = std::exp(x[i]);
        if (ref == 0.0 || std::isinf(ref)) {
            // saturation edges: allow the clamped result
            CHECK(((y[i] == ref) || std::abs(x[i]) > 709.0));
        } else {
            CHECK(std::abs(y[i] - ref) <= 4.0 * std::abs(ref) * 1.1102230246251565e-16);
        }
    }
    std::vector<double> nanv{std::nan("")}, nano(1);
    k.vexp(nanv.data(), nano.data(), 1);
    CHECK(std::isnan(nano[0]));
}

TEST_CASE("vlog matches std::log to a few ulp") {
    const auto& k = kernels::active();
    auto x = random_vec(20001, 1e-12, 1e12, 3);
    auto xn = random_vec(5001, 0.5, 2.0, 4);
    x.insert(x.end(), xn.begin(), xn.end());
    x.push_back(1.0);
    std::vector<double> y(x.size());
    k.vlog(x.data(), y.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double ref = std::log(x[i]);
        double tol = 4.0 * 1.1102230246251565e-16 * std::max(1.0, std::abs(ref));
        CHECK(std::abs(y[i] - ref) <= tol);
    }
    double edge[3] = {0.0, -1.0, 1.0 / 0.0};
    double out[3];
    k.vlog(edge, out, 3);
    CHECK(std::isinf(out[0]));
    CHECK(out[0] < 0);
    CHECK(std::isnan(out[1]));
    CHECK(std::isinf(out[2]));
}

TEST_CASE("vnorminv hits reference quantiles and round-trips through Phi") {
    const auto& k = kernels::active();
    double u[6] = {0.5, 0.975, 0.99, 0.0013498980316300945, 1e-10, 1 - 1e-12};
    double z[6];
    k.vnorminv(u, z, 6);
    CHECK(z[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(z[1] == doctest::Approx(1.959963984540054).epsilon(1e-13));
    CHECK(z[2] == doctest::Approx(2.3263478740408408).epsilon(1e-13));
    CHECK(z[3] == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(z[4] == doctest::Approx(-6.361340902404056).epsilon(1e-12));

    auto uu = random_vec(40000, 1e-15, 1.0 - 1e-15, 5);
    std::vector<double> zz(uu.size());
    k.vnorminv(uu.data(), zz.data(), uu.size());
    for (std::size_t i = 0; i < uu.size(); ++i) {
        // Newton residual against erfc-based Phi
        double pdf = std::exp(-0.5 * zz[i] * zz[i]) / std::sqrt(2.0 * 3.14159265358979323846);
        double err = (phi(zz[i]) - uu[i]) / std::max(pdf, 1e-300);
        CHECK(std::abs(err) <= 1e-12 * (1.0 + std::abs(zz[i])));
    }
}

TEST_CASE("philox streams are deterministic, stream-disjoint and uniform") {
    const auto& k = kernels::active();
    std::vector<double> a(1000), b(1000), c(1000);
    k.fill_uniforms(42, 0, 7, 0, a.data(), 1000);
    k.fill_uniforms(42, 0, 7, 0, b.data(), 1000);
    CHECK(bitwise_equal(a, b));
    k.fill_uniforms(42, 1, 7, 0, c.data(), 1000);
    CHECK(!bitwise_equal(a, c));
    // offset consistency: element i of (idx0=0) equals element 0 of (idx0=i)
    double one;
    k.fill_uniforms(42, 0, 7, 500, &one, 1);
    CHECK(one == a[500]);

    std::vector<double> u(200000);
    k.fill_uniforms(7, 3, 1, 0, u.data(), u.size());
    double mean = kernels::blocked_sum(u.data(), u.size()) / (double)u.size();
    CHECK(mean == doctest::Approx(0.5).epsilon(0.005));
    for (double x : u) {
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("fill_normals has standard-normal moments") {
    const auto& k = kernels::active();
    const std::size_t n = 400000;
    std::vector<double> z(n);
    k.fill_normals(2024, 16, 3, 0, z.data(), n);
    double m1 = kernels::blocked_sum(z.data(), n) / (double)n;
    double m2 = kernels::blocked_dot(z.data(), z.data(), n) / (double)n;
    CHECK(std::abs(m1) < 3.0 / std::sqrt((double)n));
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("scalar and avx2 backends agree bit for bit") {
    if (!kernels::avx2_available()) {
        MESSAGE("AVX2 not available on this host; equivalence tested trivially");
        return;
    }
    const auto& ks = kernels::scalar_kernels();
    const auto& ka = *kernels::avx2_kernels();

    for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 257u, 10000u}) {
        auto x = random_vec(n, -30.0, 30.0, (unsigned)n);
        auto xp = random_vec(n, 1e-8, 1e8, (unsigned)n + 50);
        auto u = random_vec(n, 1e-14, 1.0 - 1e-14, (unsigned)n + 100);
        auto y = random_vec(n, -5.0, 5.0, (unsigned)n + 150);
        std::vector<double> r1(n), r2(n);

        ks.vexp(x.data(), r1.data(), n);
        ka.vexp(x.data(), r2.data(), n);
        CHECK(bitwise_equal(r1, r2));

        ks.vlog(xp.data(), r1.data(), n);
        ka.vlog(xp.data(), r2.data(), n);
        CHECK(bitwise_equal(r1, r2));

        ks.vnorminv(u.data(), r1.data(), n);
        ka.vnorminv(u.data(), r2.data(), n);
        CHECK(bitwise_equal(r1, r2));

        ks.fill_uniforms(99, 2, 5, 13, r1.data(), n);
        ka.fill_uniforms(99, 2, 5, 13, r2.data(), n);
        CHECK(bitwise_equal(r1, r2));

        ks.fill_normals(99, 2, 5, 13, r1.data(), n);
        ka.fill_normals(99, 2, 5, 13, r2.data(), n);
        CHECK(bitwise_equal(r1, r2));

        ks.path_step(xp.data(), y.data(), 0.001, 0.02, r1.data(), n);
        ka.path_step(xp.data(), y.data(), 0.001, 0.02, r2.data(), n);
        CHECK(bitwise_equal(r1, r2));

        double coef[4] = {0.3, -1.2, 0.01, 2.0};
        ks.poly_eval(coef, 3, 100.0, 0.01, xp.data(), r1.data(), n);
        ka.poly_eval(coef, 3, 100.0, 0.01, xp.data(), r2.data(), n);
        CHECK(bitwise_equal(r1, r2));

        CHECK(ks.sum(x.data(), n) == ka.sum(x.data(), n));
        CHECK(ks.dot(x.data(), y.data(), n) == ka.dot(x.data(), y.data(), n));
        CHECK(ks.max_abs_diff(x.data(), y.data(), n) == ka.max_abs_diff(x.data(), y.data(), n));

        double s1[4], s2[4];
        ks.pos_neg_stats(x.data(), n, s1);
        ka.pos_neg_stats(x.data(), n, s2);
        CHECK(std::memcmp(s1, s2, 32) == 0);

        double m1[7], m2[7], b1[4], b2[4];
        ks.moments(xp.data(), y.data(), n, 3, 100.0, 0.02, m1, b1);
        ka.moments(xp.data(), y.data(), n, 3, 100.0, 0.02, m2, b2);
        CHECK(std::memcmp(m1, m2, sizeof m1) == 0);
        CHECK(std::memcmp(b1, b2, sizeof b1) == 0);

        r1 = y; r2 = y;
        ks.axpy(0.37, x.data(), r1.data(), n);
        ka.axpy(0.37, x.data(), r2.data(), n);
        CHECK(bitwise_equal(r1, r2));

        r1 = y; r2 = y;
        ks.accum_spread_posneg(0.04, 0.07, x.data(), r1.data(), n);
        ka.accum_spread_posneg(0.04, 0.07, x.data(), r2.data(), n);
        CHECK(bitwise_equal(r1, r2));

        for (int kind = 0; kind <= 3; ++kind) {
            kernels::CollateralParams cp{kind, kind == 2 ? 0.5 : 2.0};
            ks.collateral_map(cp, x.data(), r1.data(), n);
            ka.collateral_map(cp, x.data(), r2.data(), n);
            CHECK(bitwise_equal(r1, r2));
        }

        std::vector<double> tb1(n), tc1(n), tb2(n), tc2(n);
        ks.theta_pair(x.data(), y.data(), u.data(), u.data(), 0.6, 0.6, tb1.data(), tc1.data(), n);
        ka.theta_pair(x.data(), y.data(), u.data(), u.data(), 0.6, 0.6, tb2.data(), tc2.data(), n);
        CHECK(bitwise_equal(tb1, tb2));
        CHECK(bitwise_equal(tc1, tc2));
    }
}

TEST_CASE("blocked reductions are independent of the worker count") {
    auto x = random_vec(100003, -1.0, 1.0, 77);
    kernels::set_threads(1);
    double s1 = kernels::blocked_sum(x.data(), x.size());
    kernels::set_threads(4);
    double s4 = kernels::blocked_sum(x.data(), x.size());
    kernels::set_threads(1);
    CHECK(s1 == s4);
}

TEST_CASE("reduction kernels match a compensated reference") {
    const auto& k = kernels::active();
    auto x = random_vec(50000, -100.0, 100.0, 11);
    long double ref = 0.0L;
    for (double v : x) ref += (long double)v;
    CHECK((double)ref == doctest::Approx(k.sum(x.data(), x.size())).epsilon(1e-12));

    double st[4];
    k.pos_neg_stats(x.data(), x.size(), st);
    long double rp = 0, rp2 = 0, rn = 0, rn2 = 0;
    for (double v : x) {
        if (v > 0) { rp += v; rp2 += (long double)v * v; }
        else { rn += -v; rn2 += (long double)v * v; }
    }
    CHECK(st[0] == doctest::Approx((double)rp).epsilon(1e-12));
    CHECK(st[1] == doctest::Approx((double)rp2).epsilon(1e-12));
    CHECK(st[2] == doctest::Approx((double)rn).epsilon(1e-12));
    CHECK(st[3] == doctest::Approx((double)rn2).epsilon(1e-12));
}
