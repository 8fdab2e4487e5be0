// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "branchpde/jet.hpp"
#include "branchpde/problems.hpp"
#include "branchpde/quadrature.hpp"
#include "oracle.hpp"

using namespace branchpde;
using testing_oracle::frozen;

namespace {

double phi_b2(double x) { return 2.0 * std::log((2.0 + std::exp(x)) / (1.0 + std::exp(x))); }

double f_b2(double u)
{
    return 4 * std::exp(-u) - 10 * std::exp(-u / 2) + std::exp(u / 2) - std::exp(u) + 6;
}

} // namespace

TEST(Jet, Arithmetic)
{
    const Jet x = Jet::variable(0.5, 6);
    const Jet e = exp(x);
    for (int m = 0; m <= 6; ++m)
        EXPECT_NEAR(e.derivative(m), std::exp(0.5), 1e-13);
    const Jet l = log(x);
    EXPECT_NEAR(l[0], std::log(0.5), 1e-15);
    EXPECT_NEAR(l.derivative(3), 2.0 / 0.125, 1e-11);
    const Jet r = reciprocal(x);
    EXPECT_NEAR(r.derivative(2), 2.0 / 0.125, 1e-11);
    const Jet p = x * x - 2.0 * x + 1.0;
    EXPECT_NEAR(p[0], 0.25, 1e-15);
    EXPECT_NEAR(p[1], -1.0, 1e-15);
    EXPECT_NEAR(p[2], 1.0, 1e-15);
    EXPECT_EQ(p[3], 0.0);
    EXPECT_THROW(log(Jet::constant(-1.0, 3)), std::domain_error);
}

TEST(Quadrature, GaussHermiteMatchesNumpy)
{
    const auto& ref = frozen()["gauss_hermite_20"];
    const auto rule = gauss_hermite(20);
    const auto nodes = ref["nodes"].get<std::vector<double>>();
    const auto weights = ref["weights"].get<std::vector<double>>();
    ASSERT_EQ(rule.nodes.size(), 20u);
    // numpy lists nodes ascending; compare as sets of (node, weight) pairs
    std::vector<std::pair<double, double>> ours;
    for (std::size_t k = 0; k < 20; ++k)
        ours.emplace_back(rule.nodes[k], rule.weights[k]);
    std::sort(ours.begin(), ours.end());
    for (std::size_t k = 0; k < 20; ++k) {
        EXPECT_NEAR(ours[k].first, nodes[k], 1e-12);
        EXPECT_NEAR(ours[k].second, weights[k], 1e-12 * weights[k] + 1e-300);
    }
}

TEST(Quadrature, HeatApply)
{
    const std::vector<double> x{0.3};
    EXPECT_NEAR(heat_apply([](std::span<const double>) { return 1.0; }, 0.7, x), 1.0, 1e-13);
    EXPECT_NEAR(heat_apply([](std::span<const double> y) { return y[0]; }, 0.7, x), 0.3, 1e-13);
    EXPECT_NEAR(heat_apply([](std::span<const double> y) { return std::cos(y[0]); }, 0.7, x),
                std::exp(-0.35) * std::cos(0.3), 1e-13);
    const std::vector<double> x2{0.3, -0.2};
    EXPECT_NEAR(heat_apply([](std::span<const double> y) { return y[0] * y[0] + y[1]; }, 0.5, x2, 16),
                0.09 + 0.5 - 0.2, 1e-12);
    EXPECT_DOUBLE_EQ(heat_apply([](std::span<const double> y) { return y[0] * 3; }, 0.0, x), 0.9);
}

TEST(Quadrature, Simpson)
{
    EXPECT_NEAR(simpson([](double t) { return t * t * t; }, 0.0, 2.0, 4), 4.0, 1e-14);
    EXPECT_NEAR(simpson([](double t) { return std::sin(t); }, 0.0, std::numbers::pi, 32), 2.0, 1e-5);
}

TEST(B2, ExactSolution)
{
    const Problem b2 = b2_problem(0.1);
    EXPECT_NEAR(b2.exact(0.1, std::vector<double>{0.0}), 2.0 * std::log(1.5), 1e-15);
    EXPECT_NEAR(2.0 * std::log(1.5), 0.810930, 1e-6);
    for (const auto& [x, v] : frozen()["b2_exact_T01"].items())
        EXPECT_NEAR(b2.exact(0.0, std::vector<double>{std::stod(x)}), v.get<double>(), 1e-14) << x;
    for (double t = 0.0; t <= 0.1; t += 0.025)
        for (double x = -10; x <= 10; x += 0.5) {
            const double u = b2.exact(t, std::vector<double>{x});
            ASSERT_GT(u, 0.0);
            ASSERT_LT(u, 2 * std::log(2.0));
        }
}

TEST(B2, OracleMatchesMpmathTaylor)
{
    const Problem b2 = b2_problem(1.0);
    for (const auto& [x, coeffs] : frozen()["b2_phi_taylor"].items())
        for (int m = 0; m < static_cast<int>(coeffs.size()); ++m) {
            const double v = coeffs[static_cast<std::size_t>(m)].get<double>();
            EXPECT_NEAR(jet_code_oracle(b2, Code{MultiIndex{m}, -1}, std::vector<double>{std::stod(x)}), v,
                        1e-12 * (1 + std::abs(v)))
                << "x=" << x << " m=" << m;
        }
    for (const auto& [j, coeffs] : frozen()["b2_f_phi_taylor"].items())
        for (int m = 0; m < static_cast<int>(coeffs.size()); ++m) {
            const double v = coeffs[static_cast<std::size_t>(m)].get<double>();
            EXPECT_NEAR(jet_code_oracle(b2, Code{MultiIndex{m}, std::stoi(j)}, std::vector<double>{0.3}), v,
                        1e-10 * (1 + std::abs(v)))
                << "j=" << j << " m=" << m;
        }
}

TEST(B2, OracleExamples)
{
    const Problem b2 = b2_problem(1.0);
    const std::vector<double> x0{0.0};
    EXPECT_NEAR(b2.oracle(identity_code(1), x0), phi_b2(0.0), 1e-15);
    EXPECT_NEAR(b2.oracle(Code{MultiIndex{0}, 0}, x0), f_b2(phi_b2(0.0)), 1e-12);
    EXPECT_NEAR(b2.oracle(Code{MultiIndex{1}, -1}, x0), -1.0 / 3.0, 1e-14);
    // against a 5-point stencil with one Richardson step
    const auto fd = [](const std::function<double(double)>& g, double x, double h) {
        return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
    };
    std::function<double(double)> g = phi_b2;
    for (int m = 1; m <= 4; ++m) {
        const std::function<double(double)> prev = g;
        g = [prev, fd](double x) {
            const double h = 1e-2;
            return (16 * fd(prev, x, h / 2) - fd(prev, x, h)) / 15;
        };
        const double x = 0.4;
        const double expect = g(x) / std::tgamma(m + 1);
        EXPECT_NEAR(b2.oracle(Code{MultiIndex{m}, -1}, std::vector<double>{x}), expect, 1e-6) << m;
    }
}

TEST(Zeta, StirlingFormulaMatchesJetAndMpmath)
{
    EXPECT_NEAR(zeta_derivative(1, 0.0), -0.25, 1e-15);
    EXPECT_NEAR(zeta_derivative(2, 0.0), 0.0, 1e-15);
    for (const auto& [xs, row] : frozen()["zeta_derivative"].items()) {
        const double x = std::stod(xs);
        const Jet z = reciprocal(1.0 + exp(Jet::variable(x, 10)));
        for (int m = 1; m <= 10; ++m) {
            const double ref = row[static_cast<std::size_t>(m - 1)].get<double>();
            EXPECT_NEAR(zeta_derivative(m, x), ref, 1e-10 * (1 + std::abs(ref))) << x << ' ' << m;
            EXPECT_NEAR(zeta_derivative(m, x), z.derivative(m), 1e-10 * (1 + std::abs(ref))) << x << ' ' << m;
        }
    }
}

TEST(Psi, ClosedForm)
{
    for (double x : {-1.0, 0.0, 1.0})
        EXPECT_NEAR(psi_k(0, zeta(x)), f_b2(phi_b2(x)), 1e-12);
    // ψ_k(ζ(x)) = f^{(k)}(φ(x)) via the jet of f^{(k)} at φ(x)
    const Problem b2 = b2_problem(1.0);
    for (int k = 0; k <= 4; ++k)
        for (double x : {-1.0, 0.5})
            EXPECT_NEAR(psi_k(k, zeta(x)), b2.nonlinearity(k, phi_b2(x)), 1e-12) << k;
    double sup = 0;
    for (int k = 0; k <= 20; ++k)
        for (int i = 1; i < 100; ++i)
            sup = std::max(sup, std::abs(psi_k(k, i / 100.0)));
    EXPECT_TRUE(std::isfinite(sup));
    EXPECT_LT(sup, 20.0);
}

TEST(Psi, DerivativeBound)
{
    // |ψ_l^{(k)}(z)| <= 10 (k+1)! on (0, 1), derivatives by jets in z.
    for (int l = 0; l <= 6; ++l)
        for (int i = 1; i < 50; ++i) {
            const double z0 = i / 50.0;
            const Jet z = Jet::variable(z0, 6);
            const double s = (l % 2 == 0) ? 1.0 : -1.0;
            const double p2 = std::pow(2.0, -l);
            const Jet onepz = 1.0 + z;
            const Jet r = reciprocal(onepz);
            Jet psi = 4 * s * (r * r) - 10 * s * p2 * r + p2 * onepz - onepz * onepz;
            if (l == 0)
                psi += 6.0;
            for (int k = 0; k <= 6; ++k)
                ASSERT_LE(std::abs(psi.derivative(k)), 10 * std::tgamma(k + 2)) << l << ' ' << k << ' ' << z0;
            ASSERT_NEAR(psi[0], psi_k(l, z0), 1e-12);
        }
}

TEST(B2, PdeSystemResidual)
{
    const Problem b2 = b2_problem(0.1);
    for (const Code& c : {identity_code(1), Code{MultiIndex{1}, -1}, Code{MultiIndex{0}, 0}})
        EXPECT_LE(std::abs(pde_system_residual(b2, c, 0.05, 0.0, 1e-3)), 1e-4) << c;
}

TEST(B2, MildSolution)
{
    const Problem b2 = b2_problem(0.1);
    EXPECT_LE(mild_solution_check(b2, identity_code(1), 0.0, 0.0), 5e-4);
    EXPECT_LE(mild_solution_check(b2, Code{MultiIndex{0}, 0}, 0.0, 0.0), 5e-4);
    EXPECT_EQ(mild_solution_check(b2, identity_code(1), 0.1, 0.3), 0.0);
}

TEST(Problems, Registry)
{
    for (const auto& name : problem_names())
        EXPECT_EQ(make_problem(name, 1, 0.5).name, name);
    EXPECT_THROW(make_problem("nope", 1, 0.5), std::invalid_argument);
    const Problem b2 = b2_problem(0.5);
    const std::vector<double> x{0.25};
    EXPECT_NEAR(b2.oracle(identity_code(1), x), b2.terminal(x), 1e-12);
    const Problem cosine = zero_f_cosine_problem(2, 0.5);
    const std::vector<double> y{0.4, 1.0};
    EXPECT_NEAR(cosine.exact(0.1, y), std::exp(-0.2) * std::cos(0.4), 1e-15);
}
