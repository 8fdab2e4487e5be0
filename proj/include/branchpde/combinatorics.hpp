// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "branchpde/multiindex.hpp"

namespace branchpde {

/// Stirling number of the second kind S(m, k), exact.
/// Requires m >= 0 and 0 <= k <= m; throws std::domain_error otherwise.
BigInt stirling2(int m, int k);

/// Partial exponential Bell polynomial B_{m,k}(x_1, ..., x_{m-k+1}).
/// `x[0]` holds x_1. Requires 1 <= k <= m and x.size() >= m-k+1.
double bell_partial(int m, int k, std::span<const double> x);

/// Complete exponential Bell polynomial B_m = Σ_k B_{m,k}. Requires m >= 1, x.size() >= m.
double bell_complete(int m, std::span<const double> x);

/// Generalized binomial coefficient binom(s, k) for real s and integer k >= 0.
///
/// Evaluated as the falling product s(s-1)...(s-k+1)/k!, which agrees with
/// Γ(s+1)/(Γ(k+1)Γ(s-k+1)) wherever the Gamma form is finite and extends it to
/// negative integer s.
double generalized_binomial(double s, int k);

/// Fuss–Catalan number F_k(p, r) = (r/k) binom(kp + r - 1, k - 1). Requires k >= 1.
double fuss_catalan(int k, double p, double r);

/// Li_{-m}(1/2), computed both as Σ_{k=0}^m k! S(m+1,k+1) and 2 Σ_{k=1}^m k! S(m,k).
/// Throws std::logic_error if the two routes disagree.
BigInt polylog_neg_half(int m);

/// Checks Σ_l binom(k,l)(l+1)^{l-1}(k-l+1)^{k-l-1} = 2(k+2)^{k-1} in exact rationals.
bool tree_identity_check(int k);

/// log Γ(a) - log Γ(b) for a, b > 0. Throws std::domain_error on non-positive input.
double log_gamma_ratio(double a, double b);

/// Rising factorial r(r+1)...(r+n-1); equal to the falling factorial (n+r-1)_n.
template <class Num>
Num pochhammer_rising(const Num& r, int n)
{
    Num p = 1;
    for (int l = 0; l < n; ++l)
        p *= r + Num(l);
    return p;
}

} // namespace branchpde
