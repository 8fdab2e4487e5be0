// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <iosfwd>
#include <string>
#include <vector>

#include "branchpde/multiindex.hpp"

namespace branchpde {

/// A branch label (α, j). j = -1 tags the pure derivative α!^{-1}∂^α, j >= 0 tags
/// α!^{-1}∂^α ∘ f^{(j)}.
struct Code
{
    MultiIndex alpha;
    int j = -1;

    int dim() const { return alpha.dim(); }
    friend bool operator==(const Code&, const Code&) = default;
    friend auto operator<=>(const Code&, const Code&) = default;
    std::string to_string() const;
};

std::ostream& operator<<(std::ostream& os, const Code& c);

/// The identity code (0, -1) in dimension d.
inline Code identity_code(int d) { return Code{MultiIndex(d), -1}; }

/// One element of the offspring set of a code.
struct MechanismEntry
{
    double weight = 1.0;  ///< scalar factor z_1
    std::array<Code, 2> children{};
    int n_children = 1;
    int kind = 0;         ///< 0 for the unit-weight family, i >= 1 for direction i
    MultiIndex beta;

    friend bool operator==(const MechanismEntry&, const MechanismEntry&) = default;
};

/// Full offspring set in canonical order: the kind-0 block (β lexicographic),
/// then the directional blocks i = 1..d. Size is 1 for j = -1 and
/// (d+1)∏(1+α_k) otherwise. `d` must equal c.alpha.dim().
std::vector<MechanismEntry> offspring_set(const Code& c, int d);

/// Offspring probability q_c(z). Throws std::invalid_argument if `entry` is
/// not an element of offspring_set(c).
double offspring_prob(const Code& c, const MechanismEntry& entry, int d);

/// Probability of an entry produced by one of the samplers below, without the
/// membership check. j = -1 codes return 1.
double sampled_entry_prob(const Code& c, const MechanismEntry& entry, int d) noexcept;

/// Same as offspring_prob in exact arithmetic.
Rational offspring_prob_exact(const Code& c, const MechanismEntry& entry, int d);

/// The entry weight z_1 as an exact rational.
Rational entry_weight_exact(const MechanismEntry& entry);

/// Σ_{β ≤ α} (1+β_i)(1+α_i-β_i), by direct summation.
BigInt directional_normalizer_sum(const MultiIndex& alpha, int i);
/// ((2+α_i)(3+α_i)/6)·∏(1+α_k), the closed form of the sum above.
BigInt directional_normalizer_closed(const MultiIndex& alpha, int i);

/// Inverse-CDF sample over the canonical ordering, u in [0,1).
///
/// The entry is decoded without materializing the set: the block is picked from
/// its closed-form mass 1/(d+1), then β is decoded coordinate by coordinate.
MechanismEntry sample_offspring(const Code& c, int d, double u);

/// Reference sampler: explicit cumulative sum over offspring_set. O(|M(c)|).
MechanismEntry sample_offspring_reference(const Code& c, int d, double u);

/// The dominating set for (α, j), j >= 0: same index set and probabilities as
/// offspring_set, with both children carrying j-indices >= 0.
std::vector<MechanismEntry> dominating_offspring_set(const MultiIndex& alpha, int j, int d);

/// Probability of an entry of dominating_offspring_set.
double dominating_offspring_prob(const MultiIndex& alpha, int j, const MechanismEntry& entry, int d);

/// Lazy inverse-CDF sampler for the dominating set.
MechanismEntry sample_dominating_offspring(const MultiIndex& alpha, int j, int d, double u);

} // namespace branchpde
