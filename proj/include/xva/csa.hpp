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
#ifndef XVA_CSA_HPP
#define XVA_CSA_HPP

#include <cstddef>
#include <utility>

#include "xva/paths.hpp"
#include "xva/surface.hpp"

namespace xva {

/// Variation margin map C = f(V), Lipschitz with constant <= 1.
struct CollateralSpec {
    enum class Kind { none, perfect, fraction, threshold };
    Kind kind = Kind::none;
    double param = 0.0; // fraction alpha in [0,1] or threshold h >= 0

    void validate() const;
    double apply(double v) const;
};

ValueSurface collateral_surface(const CollateralSpec& spec, const ValueSurface& vhat);

/// Initial margin risk measure rho. var_quantile is a conditional
/// value-at-risk of the net-value move over the margin period delta:
/// per slice the move distribution is centred by a regression on the spot
/// basis and the alpha-quantile of the absolute move is taken around each
/// path's conditional mean. Both I^TC and I^FC are set to the same
/// non-negative amount (the two margins do not net).
struct InitialMarginSpec {
    enum class Kind { none, constant, var_quantile };
    Kind kind = Kind::none;
    double amount = 0.0;         // constant
    double alpha = 0.99;         // var_quantile level
    double delta = 10.0 / 252.0; // margin period of risk, years

    void validate() const;
};

struct InitialMarginDiag {
    int truncated_slices = 0;
    int degree_degrades = 0;
};

std::pair<ValueSurface, ValueSurface> initial_margin_surfaces(const InitialMarginSpec& spec,
                                                              const ValueSurface& net,
                                                              const PathSet& paths,
                                                              const RegressionSpec& reg,
                                                              InitialMarginDiag* diag = nullptr);

/// Close-out settlement from the bank's perspective at the first default.
struct CloseOutInputs {
    double value = 0.0; // exposure value at tau (clean or CSA-consistent)
    double collateral = 0.0;
    double im_tc = 0.0, im_fc = 0.0;
    enum class Defaulter { none, bank_first, counterparty_first };
    Defaulter first = Defaulter::none;
    double recovery_b = 0.4, recovery_c = 0.4;
};

double close_out(const CloseOutInputs& in);

/// theta^B = (1-R^B)(Vhat - C - I^TC)^+ and theta^C = (1-R^C)(Vhat - C + I^FC)^-,
/// pointwise over the lattice.
std::pair<ValueSurface, ValueSurface> theta_exposures(const ValueSurface& vhat,
                                                      const ValueSurface& collateral,
                                                      const ValueSurface& im_tc,
                                                      const ValueSurface& im_fc, double recovery_b,
                                                      double recovery_c);

/// Lower-order-statistic empirical quantile: sorted[ceil(q*n) - 1].
double quantile_lower(const double* sorted, std::size_t n, double q);

} // namespace xva

#endif
