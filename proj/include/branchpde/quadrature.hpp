// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace branchpde {

struct GaussHermiteRule
{
    std::vector<double> nodes;   ///< roots of the physicists' Hermite polynomial H_n
    std::vector<double> weights; ///< for the weight e^{-y^2}; sum to √π
};

/// n-point Gauss–Hermite rule by Newton iteration on the orthonormal recurrence.
GaussHermiteRule gauss_hermite(int n);

/// (S(t) v)(x) = E[v(x + √t Z)], Z standard normal in R^d: the heat semigroup
/// with generator Δ/2, by tensor-product Gauss–Hermite quadrature with
/// `order` nodes per coordinate. t = 0 returns v(x).
double heat_apply(const std::function<double(std::span<const double>)>& v, double t,
                  std::span<const double> x, int order = 64);

/// Composite Simpson rule on [a, b] with `intervals` (even) subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 32);

} // namespace branchpde
