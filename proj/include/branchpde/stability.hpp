// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "branchpde/growth.hpp"
#include "branchpde/lifetimes.hpp"
#include "branchpde/problems.hpp"

namespace branchpde {

struct ConditionResult
{
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct ConditionReport
{
    std::vector<ConditionResult> conditions;
    bool pass = false;

    const ConditionResult& at(const std::string& name) const;
};

/// Integrability conditions for the regime:
///   bound-split-time  1/ρ_*(T) <= δ₂
///   bound-radius      (1-e^{-λT})δ₁δ₂ < 2^{-(r+2)}R_{θ,r}  (exponential: < R_θ)
///   theta-r           θr >= √(2/d)                         (exponential: θ >= √(2/d))
///   delta-side        min(θ²r², 1) >= 1/((d+1)δ₁δ₂)         (exponential: θ²)
/// The first comparison allows a relative slack of 1e-12 so that δ₂ chosen
/// with equality passes.
ConditionReport check_conditions(const GrowthParams& p, const LifetimeModel& model);

/// The radius the bound condition compares against: 2^{-(r+2)}R_{θ,r} or R_θ.
double bound_radius(const GrowthParams& p);

struct HorizonReport
{
    double t_max = 0.0;    ///< supremum of admissible T for this λ
    double envelope = 0.0; ///< λ → 0 limit of t_max
};

/// With δ₁ = e^{λT} and δ₂ = e^{λT}/λ (exponential lifetimes), the bound-radius
/// condition reads (e^{2λT} - e^{λT})/λ < c, solved as
/// T_max = log(1/2 + √(1/4 + λc))/λ. θ, r, d, λ and the regime are read from p.
HorizonReport max_horizon(const GrowthParams& p);

/// p with T replaced and δ₁ = e^{λT}, δ₂ = e^{λT}/λ.
GrowthParams with_horizon_deltas(GrowthParams p, double T);

/// Exact check over |α| <= alpha_max, β <= α, j <= j_max, i <= d of
///   σ_∂(α,-1) <= κσ_∂(α,0),   σ_∘^{(0)}(α,-1) <= κ,
///   1 <= σ̃_∂(α-β,0) σ̃_∂(β,j+1) σ̃_∘^{(0)}(α,j)/σ̃_∂(α,j),
///   1 <= σ̃_∂(α-β+1_i,0) σ̃_∂(β+1_i,j+1) σ̃_∘^{(i)}(α,j)/σ̃_∂(α,j),
/// with σ̃_∂ = κσ_∂ and σ̃_∘ = σ_∘.
bool verify_weight_dominance_algebra(const ExactWeightSpec& w, int d, int alpha_max = 5, int j_max = 3);
bool verify_weight_dominance_algebra(const GrowthParams& p);

/// Explicit bound on E|H| for code (α, j) (j does not enter):
///   factorial   C (2θd)^{|α|} δ₁ e^{-λT}/(2^{-(r+2)}R_{θ,r} - (1-e^{-λT})δ₁δ₂),
///   exponential the bound_report value.
/// C is the tracked constant (factorial_tracked_constant). Throws
/// std::domain_error naming the first failing condition.
double hbound(const MultiIndex& alpha, int j, const GrowthParams& p);

struct CodeBoundRow
{
    int m = 0;
    double rhs = 0.0;         ///< δ₁θ^m(r)_m or δ₁θ^m
    double phi_max = 0.0;     ///< max over the grid of |∂^m φ|
    double f_max = 0.0;       ///< (δ₂∨1) max over the grid and k <= k_max of |∂^m f^{(k)}(φ)|
    double worst_x = 0.0;     ///< where the larger of the two ratios is attained
    bool worst_at_edge = false;
};

struct CodeBoundReport
{
    std::vector<CodeBoundRow> rows;
    double scale = 1.0;          ///< 1/ρ̄(T) for exponential(λ) lifetimes
    double worst_phi_ratio = 0.0; ///< max_m phi_max/rhs
    double worst_f_ratio = 0.0;   ///< max_m f_max/rhs
    bool phi_pass = false;        ///< φ-side without the 1/ρ̄(T) factor
    bool f_pass = false;
    bool phi_pass_scaled = false; ///< φ-side with the 1/ρ̄(T) factor on the left
    bool f_pass_scaled = false;
    int grid_points = 0;
    double grid_lo = 0.0;
    double grid_hi = 0.0;
};

/// Grid check of the code bounds for a one-dimensional problem with jet hooks,
/// for m <= m_max and k <= k_max. The sup over ℝ is only sampled on `grid`;
/// worst_at_edge flags rows whose maximum sits on a grid endpoint.
CodeBoundReport verify_code_bounds(const Problem& problem, const GrowthParams& p,
                                   std::span<const double> grid, int m_max, int k_max = 4);

/// Θ(m) = max(K(m), sup_f B_m(K(1), ..., K(m))) for m = 0..m_max, with B_0 = 1.
/// K holds K(0), ..., K(m_max).
std::vector<double> bell_growth_transfer(std::span<const double> K, double sup_f, int m_max);

} // namespace branchpde
