// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Template definitions for progeny.hpp.

#include <map>
#include <stdexcept>
#include <tuple>

#include "branchpde/combinatorics.hpp"

namespace branchpde {

namespace detail {

template <class Num>
Num int_power(const Num& base, int n)
{
    Num p = 1;
    for (int l = 0; l < n; ++l)
        p *= base;
    return p;
}

template <class Num>
Num to_num(const BigInt& v)
{
    if constexpr (std::is_same_v<Num, Rational>)
        return Num(v);
    else
        return v.template convert_to<Num>();
}

inline std::int64_t box(const MultiIndex& a)
{
    return mi_box_size(a);
}

/// q^{(0)}_α = 1/((d+1)∏(1+α_k)).
template <class Num>
Num q_split(const MultiIndex& alpha, int d)
{
    return Num(1) / Num(static_cast<long long>(d + 1) * box(alpha));
}

/// q^{(i)}_α(β) = 6(1+β_i)(1+α_i-β_i)/((d+1)(2+α_i)(3+α_i)∏(1+α_k)), i 1-based.
template <class Num>
Num q_directional(const MultiIndex& alpha, const MultiIndex& beta, int i, int d)
{
    const long long ai = alpha[i - 1];
    const long long bi = beta[i - 1];
    return Num(6 * (1 + bi) * (1 + ai - bi))
           / Num(static_cast<long long>(d + 1) * (2 + ai) * (3 + ai) * box(alpha));
}

/// Memoized evaluator for the weighted-progeny recursion.
template <class Num>
class ARecursion
{
  public:
    ARecursion(const BasicWeightSpec<Num>& w, int d, bool collapse) : w_(w), d_(d), collapse_(collapse) {}

    const Num& value(const MultiIndex& alpha, int j, int k)
    {
        if (collapse_)
            j = 0;
        const auto key = std::make_tuple(alpha, j, k);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Num v = k == 0 ? w_.sigma_boundary(alpha, j) : step(alpha, j, k - 1);
        return memo_.emplace(key, std::move(v)).first->second;
    }

  private:
    // A_{α,j}(k+1)
    Num step(const MultiIndex& alpha, int j, int k)
    {
        const Num c0 = w_.sigma_inner(alpha, j, 0) * q_split<Num>(alpha, d_);
        std::vector<Num> ci;
        for (int i = 1; i <= d_; ++i)
            ci.push_back(w_.sigma_inner(alpha, j, i));
        Num total = 0;
        mi_for_each_below(alpha, [&](const MultiIndex& beta) {
            const MultiIndex gamma = alpha - beta;
            for (int l1 = 0; l1 <= k; ++l1) {
                const int l2 = k - l1;
                total += c0 * value(gamma, 0, l1) * value(beta, j + 1, l2);
                for (int i = 1; i <= d_; ++i) {
                    const Num& a = value(mi_add_unit(gamma, i), 0, l1);
                    if (a == 0)
                        continue;
                    total += ci[static_cast<std::size_t>(i - 1)] * q_directional<Num>(alpha, beta, i, d_) * a
                             * value(mi_add_unit(beta, i), j + 1, l2);
                }
            }
        });
        return total / Num(k + 1);
    }

    const BasicWeightSpec<Num>& w_;
    int d_;
    bool collapse_;
    std::map<std::tuple<MultiIndex, int, int>, Num> memo_;
};

template <class Num>
class AhatRecursion
{
  public:
    AhatRecursion(const std::function<Num(const MultiIndex&)>& g, int d) : g_(g), d_(d) {}

    const Num& value(const MultiIndex& alpha, int k)
    {
        const auto key = std::make_pair(alpha, k);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Num v = k == 0 ? g_(alpha) : step(alpha, k - 1);
        return memo_.emplace(key, std::move(v)).first->second;
    }

  private:
    Num step(const MultiIndex& alpha, int k)
    {
        Num total = 0;
        mi_for_each_below(alpha, [&](const MultiIndex& beta) {
            const MultiIndex gamma = alpha - beta;
            for (int i = 1; i <= d_; ++i) {
                const Num weight = Num((1 + gamma[i - 1]) * (1 + beta[i - 1]));
                const MultiIndex gi = mi_add_unit(gamma, i);
                const MultiIndex bi = mi_add_unit(beta, i);
                for (int l1 = 0; l1 <= k; ++l1)
                    total += weight * value(gi, l1) * value(bi, k - l1);
            }
        });
        return total / Num(k + 1);
    }

    const std::function<Num(const MultiIndex&)>& g_;
    int d_;
    std::map<std::pair<MultiIndex, int>, Num> memo_;
};

} // namespace detail

template <class Num>
Num factorial_g(const MultiIndex& alpha, const Num& theta, const Num& r)
{
    const int m = mi_abs(alpha);
    return pochhammer_rising(r, m) * detail::int_power(theta, m) / detail::to_num<Num>(mi_factorial(alpha));
}

template <class Num>
Num exponential_g(const MultiIndex& alpha, const Num& theta)
{
    return detail::int_power(theta, mi_abs(alpha)) / detail::to_num<Num>(mi_factorial(alpha));
}

template <class Num>
std::vector<Num> a_recursion(const BasicWeightSpec<Num>& w, int d, const MultiIndex& alpha, int j,
                             int kmax, bool collapse_j)
{
    if (kmax < 0)
        throw std::invalid_argument("kmax must be >= 0");
    if (j < 0)
        throw std::invalid_argument("the dominating chain starts from j >= 0");
    if (alpha.dim() != d)
        throw std::invalid_argument("alpha dimension does not match d");
    detail::ARecursion<Num> rec(w, d, collapse_j);
    std::vector<Num> out;
    for (int k = 0; k <= kmax; ++k)
        out.push_back(rec.value(alpha, j, k));
    return out;
}

template <class Num>
BasicSeriesTable<Num> a_table(const BasicWeightSpec<Num>& w, int d, int alpha_max, int kmax)
{
    detail::ARecursion<Num> rec(w, d, true);
    BasicSeriesTable<Num> t;
    t.d = d;
    for (const auto& a : mi_enumerate_up_to(d, alpha_max))
        for (int k = 0; k <= kmax; ++k)
            t.values.emplace(std::make_pair(a, k), rec.value(a, 0, k));
    return t;
}

template <class Num>
BasicSeriesTable<Num> ahat_recursion(const std::function<Num(const MultiIndex&)>& g, int d,
                                     int alpha_max, int kmax)
{
    if (kmax < 0 || alpha_max < 0)
        throw std::invalid_argument("kmax and alpha_max must be >= 0");
    detail::AhatRecursion<Num> rec(g, d);
    BasicSeriesTable<Num> t;
    t.d = d;
    for (const auto& a : mi_enumerate_up_to(d, alpha_max))
        for (int k = 0; k <= kmax; ++k)
            t.values.emplace(std::make_pair(a, k), rec.value(a, k));
    return t;
}

template <class Num>
std::vector<Num> ahat_sequence(const std::function<Num(const MultiIndex&)>& g, int d,
                               const MultiIndex& alpha, int kmax)
{
    if (alpha.dim() != d)
        throw std::invalid_argument("alpha dimension does not match d");
    detail::AhatRecursion<Num> rec(g, d);
    std::vector<Num> out;
    for (int k = 0; k <= kmax; ++k)
        out.push_back(rec.value(alpha, k));
    return out;
}

} // namespace branchpde
