// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/combinatorics.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace branchpde {

namespace {

// Stirling triangle rows 0..m.
std::vector<std::vector<BigInt>> stirling_rows(int m)
{
    std::vector<std::vector<BigInt>> s(static_cast<std::size_t>(m + 1));
    s[0] = {1};
    for (int n = 1; n <= m; ++n) {
        auto& row = s[static_cast<std::size_t>(n)];
        const auto& prev = s[static_cast<std::size_t>(n - 1)];
        row.assign(static_cast<std::size_t>(n + 1), 0);
        for (int k = 1; k <= n; ++k) {
            BigInt v = prev.size() > static_cast<std::size_t>(k - 1) ? prev[static_cast<std::size_t>(k - 1)] : BigInt(0);
            if (k < n)
                v += k * prev[static_cast<std::size_t>(k)];
            row[static_cast<std::size_t>(k)] = v;
        }
    }
    return s;
}

Rational int_pow(const Rational& base, int e)
{
    if (e < 0)
        return int_pow(1 / base, -e);
    Rational p = 1;
    for (int i = 0; i < e; ++i)
        p *= base;
    return p;
}

} // namespace

BigInt stirling2(int m, int k)
{
    if (m < 0 || k < 0 || k > m)
        throw std::domain_error("stirling2 requires 0 <= k <= m");
    return stirling_rows(m)[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
}

double bell_partial(int m, int k, std::span<const double> x)
{
    if (k < 1 || k > m)
        throw std::domain_error("bell_partial requires 1 <= k <= m");
    if (x.size() < static_cast<std::size_t>(m - k + 1))
        throw std::domain_error("bell_partial needs at least m-k+1 arguments");
    // B_{n,q} = Σ_{i=1}^{n-q+1} binom(n-1, i-1) x_i B_{n-i,q-1}, B_{0,0} = 1.
    std::vector<std::vector<double>> b(static_cast<std::size_t>(m + 1),
                                       std::vector<double>(static_cast<std::size_t>(k + 1), 0.0));
    b[0][0] = 1.0;
    for (int n = 1; n <= m; ++n) {
        for (int q = 1; q <= std::min(n, k); ++q) {
            double acc = 0.0;
            for (int i = 1; i <= n - q + 1; ++i) {
                if (static_cast<std::size_t>(i) > x.size())
                    break;
                acc += binomial(n - 1, i - 1).convert_to<double>() * x[static_cast<std::size_t>(i - 1)]
                       * b[static_cast<std::size_t>(n - i)][static_cast<std::size_t>(q - 1)];
            }
            b[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)] = acc;
        }
    }
    return b[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
}

double bell_complete(int m, std::span<const double> x)
{
    if (m < 1)
        throw std::domain_error("bell_complete requires m >= 1");
    if (x.size() < static_cast<std::size_t>(m))
        throw std::domain_error("bell_complete needs m arguments");
    double s = 0.0;
    for (int k = 1; k <= m; ++k)
        s += bell_partial(m, k, x);
    return s;
}

double generalized_binomial(double s, int k)
{
    if (k < 0)
        return 0.0;
    double b = 1.0;
    for (int i = 1; i <= k; ++i)
        b *= (s - k + i) / i;
    return b;
}

double fuss_catalan(int k, double p, double r)
{
    if (k < 1)
        throw std::domain_error("fuss_catalan requires k >= 1");
    return r / k * generalized_binomial(k * p + r - 1.0, k - 1);
}

BigInt polylog_neg_half(int m)
{
    if (m < 1)
        throw std::domain_error("polylog_neg_half requires m >= 1");
    auto s = stirling_rows(m + 1);
    BigInt lhs = 0;
    for (int k = 0; k <= m; ++k)
        lhs += factorial(k) * s[static_cast<std::size_t>(m + 1)][static_cast<std::size_t>(k + 1)];
    BigInt rhs = 0;
    for (int k = 1; k <= m; ++k)
        rhs += factorial(k) * s[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
    rhs *= 2;
    if (lhs != rhs)
        throw std::logic_error("Li_{-" + std::to_string(m) + "}(1/2): Stirling routes disagree");
    return lhs;
}

bool tree_identity_check(int k)
{
    if (k < 0)
        throw std::domain_error("tree_identity_check requires k >= 0");
    Rational lhs = 0;
    for (int l = 0; l <= k; ++l) {
        lhs += Rational(binomial(k, l)) * int_pow(Rational(l + 1), l - 1)
               * int_pow(Rational(k - l + 1), k - l - 1);
    }
    Rational rhs = 2 * int_pow(Rational(k + 2), k - 1);
    return lhs == rhs;
}

double log_gamma_ratio(double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("log_gamma_ratio requires positive arguments");
    if (a == b)
        return 0.0;
    return boost::math::lgamma(a) - boost::math::lgamma(b);
}

} // namespace branchpde
