// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "branchpde/errors.hpp"
#include "branchpde/lifetimes.hpp"
#include "branchpde/mechanism.hpp"
#include "branchpde/rng.hpp"

namespace branchpde {

/// c(φ)(x): the terminal value attached to a survived branch with code c at x.
using CodeOracle = std::function<double(const Code&, std::span<const double>)>;

struct TreeCaps
{
    std::int64_t max_branches = 1'000'000;
    int max_generation = 200;
};

struct BranchRecord
{
    std::vector<int> label;        ///< child indices from the root; empty for the root
    int parent = -1;               ///< index into TreeSample::branches
    int generation = 0;
    Code code;
    double birth_time = 0.0;
    double lifetime = 0.0;
    double death_time = 0.0;       ///< birth_time + lifetime; may exceed the horizon
    bool survived = false;
    std::vector<double> birth_position;
    std::vector<double> terminal_position;       ///< set iff survived
    std::optional<MechanismEntry> offspring_entry; ///< set iff died before the horizon
    double entry_prob = 1.0;                     ///< q of the sampled entry
};

struct TreeSample
{
    double t = 0.0;
    double T = 0.0;
    int d = 0;
    bool spatial = true;
    std::vector<BranchRecord> branches; ///< depth-first order, parents before children

    std::vector<std::vector<int>> survived_labels() const;
    std::vector<std::vector<int>> died_labels() const;
    /// Number of branches per generation (root = generation 0).
    std::vector<std::int64_t> generation_counts() const;
};

/// Branch weights for multiplicative progenies.
template <class Num>
struct BasicWeightSpec
{
    std::function<Num(const MultiIndex&, int)> sigma_boundary;   ///< (α, j) → σ_∂
    std::function<Num(const MultiIndex&, int, int)> sigma_inner; ///< (α, j, kind) → σ_∘
    Num kappa = 1;
};

using WeightSpec = BasicWeightSpec<double>;
using ExactWeightSpec = BasicWeightSpec<Rational>;

/// Weights for the dominating chain: boundary scaled by κ, inner unchanged.
template <class Num>
BasicWeightSpec<Num> dominating_weights(const BasicWeightSpec<Num>& w)
{
    BasicWeightSpec<Num> out = w;
    auto b = w.sigma_boundary;
    Num kappa = w.kappa;
    out.sigma_boundary = [b, kappa](const MultiIndex& a, int j) { return kappa * b(a, j); };
    return out;
}

inline WeightSpec unit_weights()
{
    return WeightSpec{[](const MultiIndex&, int) { return 1.0; },
                      [](const MultiIndex&, int, int) { return 1.0; }, 1.0};
}

// Functional factors; shared by the streaming evaluator and evaluate_functional
// so both give bit-identical products.
inline double boundary_factor(double terminal_value, const LifetimeModel& model, double T,
                              double birth)
{
    return terminal_value / model.survival(T - birth);
}

inline double inner_factor(double weight, const LifetimeModel& model, double lifetime, double prob)
{
    return weight / (model.density(lifetime) * prob);
}

namespace detail {

struct PendingBranch
{
    Code code;
    double birth = 0.0;
    std::array<double, kMaxDim> pos{};
    std::uint64_t key = 0;
    int generation = 0;
    int parent = -1;
    int child_index = 0;
};

/// Depth-first growth of one tree. Per-branch draw order: lifetime uniform, then
/// d normals (spatial trees only), then the offspring uniform (died branches only).
///
/// Visitor must provide
///   survived(const PendingBranch&, int index, double lifetime, const double* pos)
///   died(const PendingBranch&, int index, double lifetime, const double* pos,
///        const MechanismEntry&, double prob)
template <bool Spatial, class Sampler, class Visitor>
void grow_tree(const Code& root, double t, const double* x, double T, const LifetimeModel& model,
               int d, std::uint64_t root_key, const TreeCaps& caps, Sampler&& sample_entry,
               Visitor& vis)
{
    std::vector<PendingBranch> stack;
    stack.reserve(64);
    PendingBranch r;
    r.code = root;
    r.birth = t;
    r.key = root_key;
    if constexpr (Spatial)
        for (int k = 0; k < d; ++k)
            r.pos[static_cast<std::size_t>(k)] = x[k];
    stack.push_back(r);

    std::int64_t created = 1;
    int index = 0;
    while (!stack.empty()) {
        PendingBranch b = stack.back();
        stack.pop_back();
        if (b.generation > caps.max_generation)
            throw CapExceeded("tree exceeded the generation cap", created, b.generation);

        Stream s(b.key);
        const double lifetime = model.sample(s.uniform());
        const bool survives = b.birth + lifetime > T;
        std::array<double, kMaxDim> pos = b.pos;
        if constexpr (Spatial) {
            const double dt = survives ? T - b.birth : lifetime;
            const double sd = std::sqrt(dt);
            for (int k = 0; k < d; ++k)
                pos[static_cast<std::size_t>(k)] += sd * s.normal();
        }
        const int my_index = index++;
        if (survives) {
            vis.survived(b, my_index, lifetime, pos.data());
            continue;
        }
        const MechanismEntry e = sample_entry(b.code, s.uniform());
        const double prob = sampled_entry_prob(b.code, e, d);
        vis.died(b, my_index, lifetime, pos.data(), e, prob);

        created += e.n_children;
        if (created > caps.max_branches)
            throw CapExceeded("tree exceeded the branch cap", created, b.generation + 1);
        for (int c = e.n_children - 1; c >= 0; --c) {
            PendingBranch child;
            child.code = e.children[static_cast<std::size_t>(c)];
            child.birth = b.birth + lifetime;
            child.pos = pos;
            child.key = derive_key(b.key, static_cast<std::uint64_t>(c));
            child.generation = b.generation + 1;
            child.parent = my_index;
            child.child_index = c;
            stack.push_back(child);
        }
    }
}

} // namespace detail

/// Samples the coded branching diffusion started at (t, x) with code c0.
/// Throws CapExceeded past the caps, std::invalid_argument on bad input.
TreeSample sample_tree(const Code& c0, double t, std::span<const double> x, double T,
                       const LifetimeModel& model, int d, Stream stream, const TreeCaps& caps = {});

/// Evaluates the path functional on a sampled tree.
double evaluate_functional(const TreeSample& tree, const CodeOracle& oracle,
                           const LifetimeModel& model, double T);

/// Samples one tree and returns its functional without storing the tree.
/// Bit-identical to evaluate_functional(sample_tree(...)).
double sample_functional(const Code& c0, double t, std::span<const double> x, double T,
                         const LifetimeModel& model, int d, const CodeOracle& oracle,
                         Stream stream, const TreeCaps& caps = {});

/// Samples the dominating binary chain from (α, j), j >= 0, with exponential(λ)
/// lifetimes and no spatial component.
TreeSample sample_dominating_tree(const MultiIndex& alpha, int j, double t, double T, double lambda,
                                  int d, Stream stream, const TreeCaps& caps = {});

/// ∏_{died} σ_∘(code; kind) · ∏_{survived} σ_∂(code).
double weighted_progeny(const TreeSample& tree, const WeightSpec& w);

/// Number of branches ever alive.
std::int64_t total_progeny(const TreeSample& tree);

/// One JSON object per branch: label, code, times, positions, entry.
void write_tree_jsonl(const TreeSample& tree, std::ostream& os);

} // namespace branchpde
