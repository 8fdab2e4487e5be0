// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/progeny.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "branchpde/errors.hpp"

namespace branchpde {

namespace {

double log_mi_factorial(const MultiIndex& a)
{
    double s = 0.0;
    for (int v : a.components())
        s += std::lgamma(v + 1.0);
    return s;
}

void require_positive_alpha(const MultiIndex& alpha, const char* what)
{
    if (mi_abs(alpha) < 1)
        throw std::domain_error(std::string(what) + " needs |alpha| >= 1");
}

Rational rat_pow(const Rational& b, int n)
{
    if (n >= 0)
        return detail::int_power(b, n);
    return Rational(1) / detail::int_power(b, -n);
}

/// The most balanced α of dimension d with |α| = m; it has the smallest α!.
MultiIndex balanced(int d, int m)
{
    MultiIndex a(d);
    for (int k = 0; k < d; ++k)
        a.set(k, m / d + (k < m % d ? 1 : 0));
    return a;
}

double log_ahat(Regime regime, double theta, double r, int d, const MultiIndex& alpha, int k)
{
    return regime == Regime::Factorial ? log_ahat_closed_factorial(theta, r, d, alpha, k)
                                       : log_ahat_closed_exponential(theta, d, alpha, k);
}

double regime_radius(Regime regime, double theta, double r, int d)
{
    return regime == Regime::Factorial ? radius_factorial(theta, r, d) : radius_exponential(theta, d);
}

// Σ_k Â_α(k) s^k for |α| >= 1 and 0 < |s| < R, until the terms are negligible.
// `terms` receives the signed summands Â_α(k) s^k.
double closed_series(Regime regime, double theta, double r, int d, const MultiIndex& alpha, double s,
                     std::vector<double>* terms, int kcap)
{
    const double ls = std::log(std::abs(s));
    double sum = 0.0, mag = 0.0;
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= kcap; ++k) {
        const double la = log_ahat(regime, theta, r, d, alpha, k);
        const double lt = la + k * ls;
        const double term = std::exp(lt);
        const double signed_term = (s < 0.0 && k % 2 == 1) ? -term : term;
        if (terms)
            terms->push_back(signed_term);
        sum += signed_term;
        mag += term;
        if (k > 8 && lt < prev && term < 1e-17 * mag)
            break;
        prev = lt;
    }
    return sum;
}

} // namespace

double progeny_pmf(double lambda, double horizon, long n)
{
    if (n < 1 || n % 2 == 0)
        return 0.0;
    const long m = (n - 1) / 2;
    const double lh = lambda * horizon;
    return std::exp(-lh) * std::pow(-std::expm1(-lh), static_cast<double>(m));
}

std::vector<Rational> factorial_g_star(const Rational& theta, const Rational& r, int m_max)
{
    std::vector<Rational> g;
    Rational v = 1;
    for (int m = 0; m <= m_max; ++m) {
        g.push_back(v);
        v = v * (r + m) * theta / (m + 1);
    }
    return g;
}

std::vector<Rational> exponential_g_star(const Rational& theta, int m_max)
{
    std::vector<Rational> g;
    Rational v = 1;
    for (int m = 0; m <= m_max; ++m) {
        g.push_back(v);
        v = v * theta / (m + 1);
    }
    return g;
}

double log_ahat_closed_factorial(double theta, double r, int d, const MultiIndex& alpha, int k)
{
    require_positive_alpha(alpha, "ahat_closed_factorial");
    const int a = mi_abs(alpha);
    return k * std::log(2.0 * d) + (k + 1) * std::log(r) + (2 * k + a) * std::log(theta)
           - log_mi_factorial(alpha) + std::lgamma((r + 2) * k + r + a) - std::lgamma(k + 2.0)
           - std::lgamma((r + 1) * (k + 1));
}

double ahat_closed_factorial(double theta, double r, int d, const MultiIndex& alpha, int k)
{
    return std::exp(log_ahat_closed_factorial(theta, r, d, alpha, k));
}

Rational ahat_closed_factorial_exact(const Rational& theta, int r, int d, const MultiIndex& alpha, int k)
{
    require_positive_alpha(alpha, "ahat_closed_factorial_exact");
    if (r < 1)
        throw std::domain_error("exact factorial closed form needs integer r >= 1");
    const int a = mi_abs(alpha);
    Rational v = rat_pow(Rational(2 * d), k) * rat_pow(Rational(r), k + 1) * rat_pow(theta, 2 * k + a);
    v /= Rational(mi_factorial(alpha));
    v *= Rational(factorial((r + 2) * k + r + a - 1));
    v /= Rational(factorial(k + 1) * factorial((r + 1) * (k + 1) - 1));
    return v;
}

double log_ahat_closed_exponential(double theta, int d, const MultiIndex& alpha, int k)
{
    require_positive_alpha(alpha, "ahat_closed_exponential");
    const int a = mi_abs(alpha);
    return k * std::log(2.0 * d) + (2 * k + a) * std::log(theta) - log_mi_factorial(alpha)
           - std::lgamma(k + 1.0) + (k + a - 2) * std::log(k + 1.0);
}

double ahat_closed_exponential(double theta, int d, const MultiIndex& alpha, int k)
{
    return std::exp(log_ahat_closed_exponential(theta, d, alpha, k));
}

Rational ahat_closed_exponential_exact(const Rational& theta, int d, const MultiIndex& alpha, int k)
{
    require_positive_alpha(alpha, "ahat_closed_exponential_exact");
    const int a = mi_abs(alpha);
    Rational v = rat_pow(Rational(2 * d), k) * rat_pow(theta, 2 * k + a);
    v /= Rational(mi_factorial(alpha) * factorial(k));
    return v * rat_pow(Rational(k + 1), k + a - 2);
}

Rational ahat_composition_form(const std::vector<Rational>& g_star, int d, const MultiIndex& alpha, int k)
{
    require_positive_alpha(alpha, "ahat_composition_form");
    const int a = mi_abs(alpha);
    if (static_cast<int>(g_star.size()) <= k + a)
        throw std::invalid_argument("g_star must provide g_*(m) for m <= k + |alpha|");
    Rational sum = 0;
    for_each_composition(k + a - 1, k + 1, [&](std::span<const int> m) {
        Rational p = 1;
        for (int mj : m)
            p *= Rational(1 + mj) * g_star[static_cast<std::size_t>(1 + mj)];
        sum += p;
    });
    Rational v = rat_pow(Rational(2 * d), k) * Rational(factorial(k + a - 1));
    v /= Rational(mi_factorial(alpha) * factorial(k + 1));
    return v * sum;
}

double radius_factorial(double theta, double r, int d)
{
    return std::pow(r + 1, r + 1) / (2.0 * theta * theta * r * std::pow(r + 2, r + 2) * d);
}

double radius_exponential(double theta, int d)
{
    return 1.0 / (2.0 * std::numbers::e * theta * theta * d);
}

DominationReport check_domination_condition(Regime regime, double theta, double r, int d)
{
    DominationReport rep;
    rep.threshold = std::sqrt(2.0 / d);
    rep.min_ratio = regime == Regime::Factorial ? r * theta : theta;
    rep.pass = rep.min_ratio >= rep.threshold * (1.0 - 1e-14);
    return rep;
}

ProgenyValue expected_weighted_progeny(const MultiIndex& alpha, int j, double horizon,
                                       const GrowthParams& p, int ktrunc)
{
    if (!(horizon >= 0.0))
        throw std::invalid_argument("horizon must be >= 0");
    if (ktrunc < 0)
        throw std::invalid_argument("ktrunc must be >= 0");
    const double x = -std::expm1(-p.lambda * horizon);
    const double s = x * p.delta1 * p.delta2;
    const double R = regime_radius(p.regime, p.theta, p.r, p.d);
    if (!(s < R))
        throw OutsideRadius("(1-e^{-lambda h}) delta1 delta2 = " + std::to_string(s)
                            + " is not below the radius " + std::to_string(R));
    const WeightSpec w = dominating_weights(build_weights(p));
    const auto A = a_recursion<double>(w, p.d, alpha, j, ktrunc, true);
    const double damp = std::exp(-p.lambda * horizon);

    ProgenyValue out;
    out.terms = ktrunc + 1;
    std::vector<double> terms;
    double xk = 1.0;
    for (double a : A) {
        terms.push_back(xk * a);
        xk *= x;
    }
    out.value = damp * std::accumulate(terms.begin(), terms.end(), 0.0);
    if (ktrunc >= 1 && terms[terms.size() - 2] > 0.0) {
        const double q = std::max(terms.back() / terms[terms.size() - 2], s / R);
        out.tail_bound = q < 1.0 ? damp * terms.back() * q / (1.0 - q) : std::numeric_limits<double>::infinity();
    } else if (x > 0.0) {
        out.tail_bound = std::numeric_limits<double>::infinity();
    }
    return out;
}

double ghat_series(Regime regime, double theta, double r, int d, const MultiIndex& alpha, double s)
{
    const double R = regime_radius(regime, theta, r, d);
    if (!(std::abs(s) < R))
        throw OutsideRadius("series argument outside the radius of convergence");
    if (s == 0.0) {
        if (mi_abs(alpha) > 0)
            return regime == Regime::Factorial ? factorial_g<double>(alpha, theta, r)
                                               : exponential_g<double>(alpha, theta);
        return 1.0;
    }
    if (mi_abs(alpha) > 0)
        return closed_series(regime, theta, r, d, alpha, s, nullptr, 200000);

    // Â_0(k+1) = (1/(k+1)) Σ_i Σ_l Â_{1_i}(l) Â_{1_i}(k-l), and Â_{1_i} does not depend on i;
    // b holds Â_{1_1}(l) s^l so nothing overflows near the radius.
    std::vector<double> b;
    closed_series(regime, theta, r, d, MultiIndex::unit(d, 1), s, &b, 20000);
    double sum = 1.0; // Â_0(0) = g(0) = 1
    for (std::size_t k = 0; k < b.size(); ++k) {
        double conv = 0.0;
        for (std::size_t l = 0; l <= k; ++l)
            conv += b[l] * b[k - l];
        sum += s * d * conv / static_cast<double>(k + 1);
    }
    return sum;
}

double factorial_tracked_constant(double theta, double r, int d, int m_track)
{
    const double Rp = std::pow(2.0, -(r + 2)) * radius_factorial(theta, r, d);
    const double lRp = std::log(Rp);
    double best = std::log(0.5 * std::pow((r + 2) / (r + 1), r + 1) * Rp);
    for (int m = 1; m <= m_track; ++m) {
        const MultiIndex a = balanced(d, m);
        const double shift = -m * std::log(2.0 * theta * d);
        double peak = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < 100000; ++k) {
            const double v = log_ahat_closed_factorial(theta, r, d, a, k) + (k + 1) * lRp + shift;
            peak = std::max(peak, v);
            if (k > 16 && v < peak - 60.0)
                break;
        }
        best = std::max(best, peak);
    }
    return std::exp(best);
}

double exponential_tracked_constant(double theta, int d, double s, int m_track)
{
    const double R = radius_exponential(theta, d);
    if (!(s > 0.0 && s < R))
        throw OutsideRadius("exponential tracked constant needs 0 < s < R_theta");
    const double lL = std::log(d / std::log(R / s));
    double best = -std::numeric_limits<double>::infinity();
    for (int m = 1; m <= m_track; ++m) {
        const double G = ghat_series(Regime::Exponential, theta, 1.0, d, balanced(d, m), s);
        best = std::max(best, std::log(G) - (m - 1) * lL);
    }
    return std::exp(best);
}

BoundReport bound_report(const MultiIndex& alpha, const GrowthParams& p)
{
    if (!(p.T > 0.0))
        throw std::invalid_argument("bound_report needs T > 0");
    BoundReport rep;
    const double x = -std::expm1(-p.lambda * p.T);
    const double damp = std::exp(-p.lambda * p.T);
    rep.s = x * p.delta1 * p.delta2;
    const int a = mi_abs(alpha);
    auto outside = [&] {
        return OutsideRadius("(1-e^{-lambda T}) delta1 delta2 = " + std::to_string(rep.s)
                             + " is not below " + std::to_string(rep.radius));
    };
    if (p.regime == Regime::Factorial) {
        const double R = radius_factorial(p.theta, p.r, p.d);
        if (a == 0) {
            rep.radius = R;
            if (!(rep.s < R))
                throw outside();
            rep.constant = 1.0;
            rep.bound = 0.5 * p.delta1 * std::pow((p.r + 2) / (p.r + 1), p.r + 1) * damp;
            rep.form = "factorial-alpha0";
            return rep;
        }
        rep.radius = std::pow(2.0, -(p.r + 2)) * R;
        if (!(rep.s < rep.radius))
            throw outside();
        rep.constant = factorial_tracked_constant(p.theta, p.r, p.d);
        rep.bound = rep.constant * std::pow(2.0 * p.theta * p.d, a) * p.delta1 * damp / (rep.radius - rep.s);
        rep.form = "factorial";
        return rep;
    }
    rep.radius = radius_exponential(p.theta, p.d);
    if (!(rep.s < rep.radius))
        throw outside();
    if (a == 0) {
        rep.constant = 1.0;
        rep.bound = p.delta1 * std::numbers::e / 2.0 * damp;
        rep.form = "exponential-alpha0";
        return rep;
    }
    rep.constant = exponential_tracked_constant(p.theta, p.d, rep.s, std::max(a, 8));
    rep.bound = rep.constant * p.delta1 * damp * std::pow(p.d / std::log(rep.radius / rep.s), a - 1);
    rep.form = "exponential";
    return rep;
}

ExactWeightSpec unit_preset_weights(const std::function<Rational(const MultiIndex&)>& g, int d)
{
    ExactWeightSpec w;
    w.sigma_boundary = [g](const MultiIndex& a, int) { return g(a); };
    w.sigma_inner = [d](const MultiIndex& a, int j, int kind) -> Rational {
        if (kind == 0)
            return j < 0 ? Rational(1) : Rational((d + 1) * mi_box_size(a));
        const long long ai = a[kind - 1];
        return Rational((d + 1) * (2 + ai) * (3 + ai) * mi_box_size(a), 12);
    };
    w.kappa = 1;
    return w;
}

bool contact_hj_consistency(const std::function<Rational(const MultiIndex&)>& g, int d, int kmax,
                            int alpha_max)
{
    const ExactWeightSpec w = unit_preset_weights(g, d);
    detail::ARecursion<Rational> rec(w, d, false);
    auto A = [&](const MultiIndex& a, int k) { return rec.value(a, 0, k); };
    for (const auto& alpha : mi_enumerate_up_to(d, alpha_max)) {
        for (int k = 0; k < kmax; ++k) {
            Rational rhs = 0;
            mi_for_each_below(alpha, [&](const MultiIndex& beta) {
                const MultiIndex gamma = alpha - beta;
                for (int l1 = 0; l1 <= k; ++l1) {
                    const int l2 = k - l1;
                    rhs += A(gamma, l1) * A(beta, l2);
                    for (int i = 1; i <= d; ++i)
                        rhs += Rational((1 + gamma[i - 1]) * (1 + beta[i - 1]), 2)
                               * A(mi_add_unit(gamma, i), l1) * A(mi_add_unit(beta, i), l2);
                }
            });
            if (Rational(k + 1) * A(alpha, k + 1) != rhs)
                return false;
        }
    }
    return true;
}

} // namespace branchpde
