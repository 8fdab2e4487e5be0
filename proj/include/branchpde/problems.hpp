// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "branchpde/jet.hpp"
#include "branchpde/mechanism.hpp"
#include "branchpde/tree.hpp"

namespace branchpde {

/// A terminal-value problem ∂_t u + Δu/2 + f(u) = 0, u(T) = φ.
struct Problem
{
    std::string name;
    int d = 1;
    double T = 0.0;
    std::function<double(std::span<const double>)> terminal;
    /// f^{(j)}(u).
    std::function<double(int, double)> nonlinearity;
    CodeOracle oracle;

    // Jet hooks, d = 1 only. `terminal_jet(x, M)` expands φ around x;
    // `nonlinearity_jet(j, u)` composes f^{(j)} with a jet.
    std::function<Jet(double, int)> terminal_jet;
    std::function<Jet(int, const Jet&)> nonlinearity_jet;

    /// Exact solution u(t, x) when known.
    std::function<double(double, std::span<const double>)> exact;
    /// Jet of x ↦ u(t, x) around x, d = 1.
    std::function<Jet(double, double, int)> exact_jet;
};

/// φ(x) = 2log((2+e^x)/(1+e^x)), f(u) = 4e^{-u} - 10e^{-u/2} + e^{u/2} - e^u + 6,
/// with exact solution φ(x - (T - t)). d = 1.
Problem b2_problem(double T);

/// φ ≡ value, f ≡ 0, so u ≡ value.
Problem constant_problem(int d, double T, double value = 1.0);

/// φ(x) = cos(x_1), f ≡ 0, so u(t,x) = e^{-(T-t)/2} cos(x_1).
Problem zero_f_cosine_problem(int d, double T);

/// Registry lookup: "b2", "constant", "zero-f-cosine". Throws std::invalid_argument.
Problem make_problem(const std::string& name, int d, double T);
std::vector<std::string> problem_names();

/// ζ(x) = 1/(1+e^x).
double zeta(double x);

/// ζ^{(m)}(x) = Σ_{k=1}^m (-e^x)^k k! S(m,k)/(1+e^x)^{k+1}, m >= 1.
double zeta_derivative(int m, double x);

/// ψ_k(z), with f^{(k)}(φ(x)) = ψ_k(ζ(x)) for the b2 problem.
double psi_k(int k, double z);

/// c(φ)(x) from the problem's jet hooks: the α-th Taylor coefficient of φ
/// (j = -1) or of f^{(j)}∘φ (j >= 0) at x. d = 1 only.
double jet_code_oracle(const Problem& problem, const Code& c, std::span<const double> x);

/// u_c(t, x) = c(u)(t, x) from the exact solution's jet. d = 1 only.
double exact_code_value(const Problem& problem, const Code& c, double t, double x);

/// (∂_t + Δ/2) u_c + Σ_{z∈M(c)} z_1 ∏ u_{z_i} at (t, x), time and space
/// derivatives by central differences with step h.
double pde_system_residual(const Problem& problem, const Code& c, double t, double x, double h);

/// |u_c(t,x) - S(T-t)c(φ)(x) - Σ_z z_1 ∫_t^T S(s-t)(∏u_{z_i}(s))(x) ds|, with the
/// time integral by Simpson on `time_intervals` and the semigroup by Gauss–Hermite.
double mild_solution_check(const Problem& problem, const Code& c, double t, double x,
                           int quad_order = 64, int time_intervals = 32);

} // namespace branchpde
