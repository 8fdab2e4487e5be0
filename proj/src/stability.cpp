// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "branchpde/combinatorics.hpp"
#include "branchpde/progeny.hpp"

namespace branchpde {

// ---- growth parameters and presets ----------------------------------------

std::string to_string(Regime r)
{
    return r == Regime::Factorial ? "factorial" : "exponential";
}

Regime regime_from_string(const std::string& s)
{
    if (s == "factorial")
        return Regime::Factorial;
    if (s == "exponential")
        return Regime::Exponential;
    throw std::invalid_argument("unknown regime '" + s + "'");
}

double growth_g(const GrowthParams& p, const MultiIndex& alpha)
{
    return p.regime == Regime::Factorial ? factorial_g<double>(alpha, p.theta, p.r)
                                         : exponential_g<double>(alpha, p.theta);
}

namespace {

template <class Num>
BasicWeightSpec<Num> preset(Regime regime, Num theta, Num r, Num delta1, Num delta2, int d)
{
    const Num kappa = delta2 > Num(1) ? delta2 : Num(1);
    auto g = [=](const MultiIndex& a) {
        return regime == Regime::Factorial ? factorial_g<Num>(a, theta, r) : exponential_g<Num>(a, theta);
    };
    BasicWeightSpec<Num> w;
    w.sigma_boundary = [=](const MultiIndex& a, int j) -> Num {
        const Num v = delta1 * g(a);
        return j < 0 ? v : v / kappa;
    };
    w.sigma_inner = [=](const MultiIndex& a, int j, int kind) -> Num {
        const Num box = Num(static_cast<long long>(mi_box_size(a)));
        if (kind == 0)
            return j < 0 ? delta2 : Num(d + 1) * delta2 * box;
        const long long ai = a[kind - 1];
        return Num(d + 1) * delta2 / Num(12) * Num((2 + ai) * (3 + ai)) * box;
    };
    w.kappa = kappa;
    return w;
}

} // namespace

WeightSpec build_weights(const GrowthParams& p)
{
    return preset<double>(p.regime, p.theta, p.r, p.delta1, p.delta2, p.d);
}

ExactWeightSpec build_weights_exact(const GrowthParams& p)
{
    return preset<Rational>(p.regime, Rational(p.theta), Rational(p.r), Rational(p.delta1),
                            Rational(p.delta2), p.d);
}

// ---- conditions ---------------------------------------------------------------

const ConditionResult& ConditionReport::at(const std::string& name) const
{
    for (const auto& c : conditions)
        if (c.name == name)
            return c;
    throw std::out_of_range("no condition named '" + name + "'");
}

double bound_radius(const GrowthParams& p)
{
    return p.regime == Regime::Factorial ? std::pow(2.0, -(p.r + 2)) * radius_factorial(p.theta, p.r, p.d)
                                         : radius_exponential(p.theta, p.d);
}

ConditionReport check_conditions(const GrowthParams& p, const LifetimeModel& model)
{
    ConditionReport rep;
    const double rs = model.rho_star(p.T);
    ConditionResult split{"bound-split-time", rs > 0.0 ? 1.0 / rs : HUGE_VAL, p.delta2, false};
    split.pass = split.lhs <= split.rhs * (1.0 + 1e-12);
    rep.conditions.push_back(split);

    ConditionResult radius{"bound-radius", -std::expm1(-p.lambda * p.T) * p.delta1 * p.delta2,
                           bound_radius(p), false};
    radius.pass = radius.lhs < radius.rhs;
    rep.conditions.push_back(radius);

    const double tr = p.regime == Regime::Factorial ? p.theta * p.r : p.theta;
    const auto dom = check_domination_condition(p.regime, p.theta, p.r, p.d);
    rep.conditions.push_back({"theta-r", tr, dom.threshold, dom.pass});

    ConditionResult side{"delta-side", std::min(tr * tr, 1.0), 1.0 / ((p.d + 1) * p.delta1 * p.delta2),
                         false};
    side.pass = side.lhs >= side.rhs * (1.0 - 1e-12);
    rep.conditions.push_back(side);

    rep.pass = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                           [](const ConditionResult& c) { return c.pass; });
    return rep;
}

HorizonReport max_horizon(const GrowthParams& p)
{
    if (!(p.lambda > 0.0))
        throw std::invalid_argument("max_horizon needs lambda > 0");
    const double c = bound_radius(p);
    HorizonReport h;
    // log(1/2 + √(1/4 + λc)) written without cancellation for small λc
    h.t_max = std::log1p(2.0 * p.lambda * c / (1.0 + std::sqrt(1.0 + 4.0 * p.lambda * c))) / p.lambda;
    h.envelope = c;
    return h;
}

GrowthParams with_horizon_deltas(GrowthParams p, double T)
{
    p.T = T;
    p.delta1 = std::exp(p.lambda * T);
    p.delta2 = std::exp(p.lambda * T) / p.lambda;
    return p;
}

// ---- weight algebra -------------------------------------------------------------

bool verify_weight_dominance_algebra(const ExactWeightSpec& w, int d, int alpha_max, int j_max)
{
    const Rational& kappa = w.kappa;
    auto sb = [&](const MultiIndex& a, int j) { return kappa * w.sigma_boundary(a, j); };
    for (const auto& alpha : mi_enumerate_up_to(d, alpha_max)) {
        if (w.sigma_boundary(alpha, -1) > kappa * w.sigma_boundary(alpha, 0))
            return false;
        if (w.sigma_inner(alpha, -1, 0) > kappa)
            return false;
        for (int j = 0; j <= j_max; ++j) {
            const Rational own = sb(alpha, j);
            const Rational s0 = w.sigma_inner(alpha, j, 0);
            std::vector<Rational> si;
            for (int i = 1; i <= d; ++i)
                si.push_back(w.sigma_inner(alpha, j, i));
            bool ok = true;
            mi_for_each_below(alpha, [&](const MultiIndex& beta) {
                if (!ok)
                    return;
                const MultiIndex gamma = alpha - beta;
                if (sb(gamma, 0) * sb(beta, j + 1) * s0 < own)
                    ok = false;
                for (int i = 1; i <= d && ok; ++i)
                    if (sb(mi_add_unit(gamma, i), 0) * sb(mi_add_unit(beta, i), j + 1)
                            * si[static_cast<std::size_t>(i - 1)]
                        < own)
                        ok = false;
            });
            if (!ok)
                return false;
        }
    }
    return true;
}

bool verify_weight_dominance_algebra(const GrowthParams& p)
{
    return verify_weight_dominance_algebra(build_weights_exact(p), p.d);
}

// ---- bounds -----------------------------------------------------------------------

double hbound(const MultiIndex& alpha, int /*j*/, const GrowthParams& p)
{
    const auto rep = check_conditions(p, LifetimeModel::exponential(p.lambda));
    for (const auto& c : rep.conditions)
        if (!c.pass)
            throw std::domain_error("hbound: condition " + c.name + " fails");
    if (p.regime == Regime::Exponential)
        return bound_report(alpha, p).bound;
    const double Rp = bound_radius(p);
    const double s = -std::expm1(-p.lambda * p.T) * p.delta1 * p.delta2;
    const double C = factorial_tracked_constant(p.theta, p.r, p.d);
    return C * std::pow(2.0 * p.theta * p.d, mi_abs(alpha)) * p.delta1 * std::exp(-p.lambda * p.T)
           / (Rp - s);
}

CodeBoundReport verify_code_bounds(const Problem& problem, const GrowthParams& p,
                                   std::span<const double> grid, int m_max, int k_max)
{
    if (problem.d != 1 || !problem.terminal_jet || !problem.nonlinearity_jet)
        throw std::invalid_argument("verify_code_bounds needs a one-dimensional problem with jet hooks");
    if (grid.empty() || m_max < 0 || k_max < 0)
        throw std::invalid_argument("verify_code_bounds needs a grid and m_max, k_max >= 0");
    const std::size_t M = static_cast<std::size_t>(m_max) + 1;
    const std::size_t n = grid.size();
    std::vector<double> fact(M, 1.0);
    for (std::size_t m = 1; m < M; ++m)
        fact[m] = fact[m - 1] * static_cast<double>(m);

    std::vector<double> phi(n * M), f(n * M);
    const double dmax = std::max(p.delta2, 1.0);
#pragma omp parallel for schedule(static)
    for (std::size_t q = 0; q < n; ++q) {
        const Jet u = problem.terminal_jet(grid[q], m_max);
        for (std::size_t m = 0; m < M; ++m)
            phi[q * M + m] = std::abs(u[static_cast<int>(m)]) * fact[m];
        for (int k = 0; k <= k_max; ++k) {
            const Jet v = problem.nonlinearity_jet(k, u);
            for (std::size_t m = 0; m < M; ++m)
                f[q * M + m] = std::max(f[q * M + m], dmax * std::abs(v[static_cast<int>(m)]) * fact[m]);
        }
    }

    CodeBoundReport rep;
    rep.scale = std::exp(p.lambda * p.T);
    rep.grid_points = static_cast<int>(n);
    rep.grid_lo = *std::min_element(grid.begin(), grid.end());
    rep.grid_hi = *std::max_element(grid.begin(), grid.end());
    for (std::size_t m = 0; m < M; ++m) {
        CodeBoundRow row;
        row.m = static_cast<int>(m);
        row.rhs = p.delta1 * std::pow(p.theta, static_cast<double>(m))
                  * (p.regime == Regime::Factorial ? pochhammer_rising(p.r, row.m) : 1.0);
        double worst = -1.0;
        for (std::size_t q = 0; q < n; ++q) {
            row.phi_max = std::max(row.phi_max, phi[q * M + m]);
            row.f_max = std::max(row.f_max, f[q * M + m]);
            const double v = std::max(phi[q * M + m], f[q * M + m]);
            if (v > worst) {
                worst = v;
                row.worst_x = grid[q];
            }
        }
        row.worst_at_edge = row.worst_x == rep.grid_lo || row.worst_x == rep.grid_hi;
        rep.worst_phi_ratio = std::max(rep.worst_phi_ratio, row.phi_max / row.rhs);
        rep.worst_f_ratio = std::max(rep.worst_f_ratio, row.f_max / row.rhs);
        rep.rows.push_back(row);
    }
    rep.phi_pass = rep.worst_phi_ratio <= 1.0;
    rep.f_pass = rep.worst_f_ratio <= 1.0;
    rep.phi_pass_scaled = rep.worst_phi_ratio * rep.scale <= 1.0;
    rep.f_pass_scaled = rep.worst_f_ratio * rep.scale <= 1.0;
    return rep;
}

std::vector<double> bell_growth_transfer(std::span<const double> K, double sup_f, int m_max)
{
    if (m_max < 0 || K.size() < static_cast<std::size_t>(m_max) + 1)
        throw std::invalid_argument("K must hold K(0), ..., K(m_max)");
    std::vector<double> theta;
    theta.push_back(std::max(K[0], sup_f));
    for (int m = 1; m <= m_max; ++m)
        theta.push_back(std::max(K[static_cast<std::size_t>(m)], sup_f * bell_complete(m, K.subspan(1))));
    return theta;
}

} // namespace branchpde
