// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "branchpde/combinatorics.hpp"
#include "branchpde/quadrature.hpp"

namespace branchpde {

namespace {

double signed_pow(double base, int j)
{
    return std::pow(base, j);
}

double b2_f(int j, double u)
{
    double v = 4.0 * signed_pow(-1.0, j) * std::exp(-u) - 10.0 * signed_pow(-0.5, j) * std::exp(-0.5 * u)
               + signed_pow(0.5, j) * std::exp(0.5 * u) - std::exp(u);
    if (j == 0)
        v += 6.0;
    return v;
}

Jet b2_f_jet(int j, const Jet& u)
{
    Jet v = 4.0 * signed_pow(-1.0, j) * exp(-u) - 10.0 * signed_pow(-0.5, j) * exp(-0.5 * u)
            + signed_pow(0.5, j) * exp(0.5 * u) - exp(u);
    if (j == 0)
        v += 6.0;
    return v;
}

// ζ(x + h) as a jet, evaluated in the overflow-safe orientation.
Jet zeta_jet(double x, int order)
{
    if (x > 0.0) {
        Jet e = exp(-Jet::variable(x, order));
        return e * reciprocal(1.0 + e);
    }
    return reciprocal(1.0 + exp(Jet::variable(x, order)));
}

Jet b2_phi_jet(double x, int order)
{
    return 2.0 * log(1.0 + zeta_jet(x, order));
}

double b2_phi(double x)
{
    return 2.0 * std::log1p(zeta(x));
}

void require_1d(const Problem& p, const char* what)
{
    if (p.d != 1)
        throw std::invalid_argument(std::string(what) + " requires d = 1");
    if (!p.terminal_jet || !p.nonlinearity_jet)
        throw std::invalid_argument(std::string(what) + ": problem has no jet hooks");
}

double inv_factorial(int m)
{
    double f = 1.0;
    for (int i = 2; i <= m; ++i)
        f *= i;
    return 1.0 / f;
}

} // namespace

double zeta(double x)
{
    if (x > 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double zeta_derivative(int m, double x)
{
    if (m < 1)
        throw std::domain_error("zeta_derivative requires m >= 1");
    // (-e^x)^k / (1+e^x)^{k+1} = (-(1-ζ))^k ζ
    const double z = zeta(x);
    const double p = 1.0 - z;
    double s = 0.0;
    double pk = 1.0;
    for (int k = 1; k <= m; ++k) {
        pk *= -p;
        s += pk * factorial(k).convert_to<double>() * stirling2(m, k).convert_to<double>();
    }
    return s * z;
}

double psi_k(int k, double z)
{
    const double w = 1.0 + z;
    double v = 4.0 * signed_pow(-1.0, k) / (w * w) - 10.0 * signed_pow(-1.0, k) / (std::pow(2.0, k) * w)
               + w / std::pow(2.0, k) - w * w;
    if (k == 0)
        v += 6.0;
    return v;
}

Problem b2_problem(double T)
{
    if (!(T > 0.0))
        throw std::invalid_argument("b2 problem needs T > 0");
    Problem p;
    p.name = "b2";
    p.d = 1;
    p.T = T;
    p.terminal = [](std::span<const double> x) { return b2_phi(x[0]); };
    p.nonlinearity = b2_f;
    p.terminal_jet = b2_phi_jet;
    p.nonlinearity_jet = b2_f_jet;
    p.exact = [T](double t, std::span<const double> x) { return b2_phi(x[0] - (T - t)); };
    p.exact_jet = [T](double t, double x, int order) { return b2_phi_jet(x - (T - t), order); };
    // the terminal-point oracle captures only stateless functions so copies stay cheap
    p.oracle = [](const Code& c, std::span<const double> x) {
        const int m = c.alpha[0];
        if (m == 0)
            return c.j < 0 ? b2_phi(x[0]) : b2_f(c.j, b2_phi(x[0]));
        Jet u = b2_phi_jet(x[0], m);
        if (c.j >= 0)
            u = b2_f_jet(c.j, u);
        return u[m];
    };
    return p;
}

Problem constant_problem(int d, double T, double value)
{
    if (d < 1 || d > kMaxDim)
        throw std::invalid_argument("dimension out of range");
    Problem p;
    p.name = "constant";
    p.d = d;
    p.T = T;
    p.terminal = [value](std::span<const double>) { return value; };
    p.nonlinearity = [](int, double) { return 0.0; };
    p.oracle = [value](const Code& c, std::span<const double>) {
        return (c.j < 0 && mi_abs(c.alpha) == 0) ? value : 0.0;
    };
    p.exact = [value](double, std::span<const double>) { return value; };
    if (d == 1) {
        p.terminal_jet = [value](double, int order) { return Jet::constant(value, order); };
        p.nonlinearity_jet = [](int, const Jet& u) { return Jet(u.order()); };
        p.exact_jet = [value](double, double, int order) { return Jet::constant(value, order); };
    }
    return p;
}

Problem zero_f_cosine_problem(int d, double T)
{
    if (d < 1 || d > kMaxDim)
        throw std::invalid_argument("dimension out of range");
    Problem p;
    p.name = "zero-f-cosine";
    p.d = d;
    p.T = T;
    p.terminal = [](std::span<const double> x) { return std::cos(x[0]); };
    p.nonlinearity = [](int, double) { return 0.0; };
    p.oracle = [](const Code& c, std::span<const double> x) {
        if (c.j >= 0)
            return 0.0;
        for (int k = 1; k < c.alpha.dim(); ++k)
            if (c.alpha[k] != 0)
                return 0.0;
        const int m = c.alpha[0];
        return std::cos(x[0] + m * std::numbers::pi / 2) * inv_factorial(m);
    };
    p.exact = [T](double t, std::span<const double> x) {
        return std::exp(-0.5 * (T - t)) * std::cos(x[0]);
    };
    if (d == 1) {
        auto cos_jet = [](double x, int order) {
            Jet j(order);
            for (int k = 0; k <= order; ++k)
                j[k] = std::cos(x + k * std::numbers::pi / 2) * inv_factorial(k);
            return j;
        };
        p.terminal_jet = cos_jet;
        p.nonlinearity_jet = [](int, const Jet& u) { return Jet(u.order()); };
        p.exact_jet = [T, cos_jet](double t, double x, int order) {
            return std::exp(-0.5 * (T - t)) * cos_jet(x, order);
        };
    }
    return p;
}

Problem make_problem(const std::string& name, int d, double T)
{
    if (name == "b2") {
        if (d != 1)
            throw std::invalid_argument("problem b2 is one-dimensional");
        return b2_problem(T);
    }
    if (name == "constant")
        return constant_problem(d, T);
    if (name == "zero-f-cosine")
        return zero_f_cosine_problem(d, T);
    throw std::invalid_argument("unknown problem '" + name + "'");
}

std::vector<std::string> problem_names()
{
    return {"b2", "constant", "zero-f-cosine"};
}

double jet_code_oracle(const Problem& problem, const Code& c, std::span<const double> x)
{
    require_1d(problem, "jet_code_oracle");
    const int m = c.alpha[0];
    Jet u = problem.terminal_jet(x[0], m);
    if (c.j >= 0)
        u = problem.nonlinearity_jet(c.j, u);
    return u[m];
}

double exact_code_value(const Problem& problem, const Code& c, double t, double x)
{
    require_1d(problem, "exact_code_value");
    if (!problem.exact_jet)
        throw std::invalid_argument("problem has no exact solution");
    const int m = c.alpha[0];
    Jet u = problem.exact_jet(t, x, m);
    if (c.j >= 0)
        u = problem.nonlinearity_jet(c.j, u);
    return u[m];
}

namespace {

double mechanism_sum(const Problem& problem, const Code& c, double s, double y)
{
    double total = 0.0;
    for (const auto& e : offspring_set(c, 1)) {
        double prod = e.weight;
        for (int k = 0; k < e.n_children; ++k)
            prod *= exact_code_value(problem, e.children[static_cast<std::size_t>(k)], s, y);
        total += prod;
    }
    return total;
}

} // namespace

double pde_system_residual(const Problem& problem, const Code& c, double t, double x, double h)
{
    require_1d(problem, "pde_system_residual");
    auto u = [&](double s, double y) { return exact_code_value(problem, c, s, y); };
    const double u0 = u(t, x);
    const double dt = (u(t + h, x) - u(t - h, x)) / (2.0 * h);
    const double dxx = (u(t, x + h) - 2.0 * u0 + u(t, x - h)) / (h * h);
    return dt + 0.5 * dxx + mechanism_sum(problem, c, t, x);
}

double mild_solution_check(const Problem& problem, const Code& c, double t, double x,
                           int quad_order, int time_intervals)
{
    require_1d(problem, "mild_solution_check");
    const double T = problem.T;
    const double lhs = exact_code_value(problem, c, t, x);
    const std::array<double, 1> x0{x};
    const double terminal = heat_apply(
        [&](std::span<const double> y) { return jet_code_oracle(problem, c, y); }, T - t, x0, quad_order);
    const double integral = simpson(
        [&](double s) {
            return heat_apply(
                [&](std::span<const double> y) { return mechanism_sum(problem, c, s, y[0]); }, s - t,
                x0, quad_order);
        },
        t, T, time_intervals);
    return std::abs(lhs - terminal - integral);
}

} // namespace branchpde
