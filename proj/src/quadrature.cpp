// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <map>
#include <numbers>
#include <stdexcept>

namespace branchpde {

GaussHermiteRule gauss_hermite(int n)
{
    if (n < 1)
        throw std::invalid_argument("Gauss-Hermite order must be >= 1");
    GaussHermiteRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        // initial guesses for the largest roots, then extrapolate from previous roots
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.nodes[1];
        else
            z = 2.0 * z - rule.nodes[static_cast<std::size_t>(i - 2)];
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z)))
                break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / (pp * pp);
    }
    return rule;
}

namespace {

const GaussHermiteRule& cached_rule(int n)
{
    static std::mutex mu;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, gauss_hermite(n)).first;
    return it->second;
}

} // namespace

double heat_apply(const std::function<double(std::span<const double>)>& v, double t,
                  std::span<const double> x, int order)
{
    if (t < 0.0)
        throw std::invalid_argument("heat_apply needs t >= 0");
    if (t == 0.0)
        return v(x);
    const int d = static_cast<int>(x.size());
    if (d > 4)
        throw std::invalid_argument("tensor Gauss-Hermite limited to d <= 4");
    const GaussHermiteRule& rule = cached_rule(order);
    const double scale = std::sqrt(2.0 * t);
    const double norm = std::pow(std::numbers::pi, -0.5 * d);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> y(x.begin(), x.end());
    double total = 0.0;
    while (true) {
        double w = 1.0;
        for (int k = 0; k < d; ++k) {
            const auto i = static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]);
            y[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + scale * rule.nodes[i];
            w *= rule.weights[i];
        }
        total += w * v(y);
        int k = d - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == order) {
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0)
            break;
    }
    return norm * total;
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals)
{
    if (intervals < 2 || intervals % 2 != 0)
        throw std::invalid_argument("Simpson needs an even number of intervals");
    if (a == b)
        return 0.0;
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

} // namespace branchpde
