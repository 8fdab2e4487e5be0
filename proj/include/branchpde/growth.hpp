// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "branchpde/tree.hpp"

namespace branchpde {

enum class Regime { Factorial, Exponential };

std::string to_string(Regime r);
/// "factorial" or "exponential"; throws std::invalid_argument.
Regime regime_from_string(const std::string& s);

/// Growth-regime parameters for the code bounds and the weight presets.
struct GrowthParams
{
    Regime regime = Regime::Factorial;
    double theta = 1.0;
    double r = 1.0; ///< factorial regime only
    double delta1 = 1.0;
    double delta2 = 1.0;
    double lambda = 1.0;
    double T = 0.0;
    int d = 1;
};

/// g(α): θ^{|α|}(r)_{|α|}/α! (factorial) or θ^{|α|}/α! (exponential).
double growth_g(const GrowthParams& p, const MultiIndex& alpha);

/// The branch-weight preset for the regime:
///   σ_∂(α,-1) = δ₁g(α),  σ_∂(α,j) = δ₁g(α)/(δ₂∨1),
///   σ_∘^{(0)}(α,-1) = δ₂,  σ_∘^{(0)}(α,j) = (d+1)δ₂∏(1+α_k),
///   σ_∘^{(i)}(α,j) = (d+1)(δ₂/12)(2+α_i)(3+α_i)∏(1+α_k),  κ = δ₂∨1.
WeightSpec build_weights(const GrowthParams& p);

/// The same preset in exact rationals (each double parameter converted exactly).
ExactWeightSpec build_weights_exact(const GrowthParams& p);

} // namespace branchpde
