// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/tree.hpp"

#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace branchpde {

namespace {

void check_inputs(const Code& c0, double t, std::span<const double> x, double T, int d)
{
    if (c0.alpha.dim() != d)
        throw std::invalid_argument("root code dimension does not match d");
    if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument("starting point dimension does not match d");
    if (!(t >= 0.0) || !(t <= T))
        throw std::invalid_argument("need 0 <= t <= T");
}

struct RecordBuilder
{
    TreeSample& tree;
    int d;
    bool spatial;

    BranchRecord& add(const detail::PendingBranch& b, double lifetime)
    {
        BranchRecord rec;
        if (b.parent >= 0) {
            rec.label = tree.branches[static_cast<std::size_t>(b.parent)].label;
            rec.label.push_back(b.child_index);
        }
        rec.parent = b.parent;
        rec.generation = b.generation;
        rec.code = b.code;
        rec.birth_time = b.birth;
        rec.lifetime = lifetime;
        rec.death_time = b.birth + lifetime;
        if (spatial)
            rec.birth_position.assign(b.pos.begin(), b.pos.begin() + d);
        tree.branches.push_back(std::move(rec));
        return tree.branches.back();
    }

    void survived(const detail::PendingBranch& b, int, double lifetime, const double* pos)
    {
        BranchRecord& rec = add(b, lifetime);
        rec.survived = true;
        if (spatial)
            rec.terminal_position.assign(pos, pos + d);
    }

    void died(const detail::PendingBranch& b, int, double lifetime, const double*,
              const MechanismEntry& e, double prob)
    {
        BranchRecord& rec = add(b, lifetime);
        rec.offspring_entry = e;
        rec.entry_prob = prob;
    }
};

struct FunctionalAccumulator
{
    const CodeOracle& oracle;
    const LifetimeModel& model;
    double T;
    int d;
    double h = 1.0;

    void survived(const detail::PendingBranch& b, int, double, const double* pos)
    {
        const double v = oracle(b.code, std::span<const double>(pos, static_cast<std::size_t>(d)));
        h *= boundary_factor(v, model, T, b.birth);
    }

    void died(const detail::PendingBranch&, int, double lifetime, const double*,
              const MechanismEntry& e, double prob)
    {
        h *= inner_factor(e.weight, model, lifetime, prob);
    }
};

nlohmann::json code_json(const Code& c)
{
    return {{"alpha", std::vector<int>(c.alpha.components().begin(), c.alpha.components().end())},
            {"j", c.j}};
}

} // namespace

std::vector<std::vector<int>> TreeSample::survived_labels() const
{
    std::vector<std::vector<int>> out;
    for (const auto& b : branches)
        if (b.survived)
            out.push_back(b.label);
    return out;
}

std::vector<std::vector<int>> TreeSample::died_labels() const
{
    std::vector<std::vector<int>> out;
    for (const auto& b : branches)
        if (!b.survived)
            out.push_back(b.label);
    return out;
}

std::vector<std::int64_t> TreeSample::generation_counts() const
{
    std::vector<std::int64_t> out;
    for (const auto& b : branches) {
        if (static_cast<std::size_t>(b.generation) >= out.size())
            out.resize(static_cast<std::size_t>(b.generation) + 1, 0);
        ++out[static_cast<std::size_t>(b.generation)];
    }
    return out;
}

TreeSample sample_tree(const Code& c0, double t, std::span<const double> x, double T,
                       const LifetimeModel& model, int d, Stream stream, const TreeCaps& caps)
{
    check_inputs(c0, t, x, T, d);
    TreeSample tree;
    tree.t = t;
    tree.T = T;
    tree.d = d;
    tree.spatial = true;
    RecordBuilder vis{tree, d, true};
    detail::grow_tree<true>(
        c0, t, x.data(), T, model, d, stream.key(), caps,
        [d](const Code& c, double u) { return sample_offspring(c, d, u); }, vis);
    return tree;
}

double evaluate_functional(const TreeSample& tree, const CodeOracle& oracle,
                           const LifetimeModel& model, double T)
{
    double h = 1.0;
    for (const auto& b : tree.branches) {
        if (b.survived) {
            const double v = oracle(b.code, b.terminal_position);
            h *= boundary_factor(v, model, T, b.birth_time);
        } else {
            h *= inner_factor(b.offspring_entry->weight, model, b.lifetime, b.entry_prob);
        }
    }
    return h;
}

double sample_functional(const Code& c0, double t, std::span<const double> x, double T,
                         const LifetimeModel& model, int d, const CodeOracle& oracle,
                         Stream stream, const TreeCaps& caps)
{
    check_inputs(c0, t, x, T, d);
    FunctionalAccumulator vis{oracle, model, T, d};
    detail::grow_tree<true>(
        c0, t, x.data(), T, model, d, stream.key(), caps,
        [d](const Code& c, double u) { return sample_offspring(c, d, u); }, vis);
    return vis.h;
}

TreeSample sample_dominating_tree(const MultiIndex& alpha, int j, double t, double T, double lambda,
                                  int d, Stream stream, const TreeCaps& caps)
{
    if (j < 0)
        throw std::invalid_argument("dominating chain starts from j >= 0");
    if (alpha.dim() != d)
        throw std::invalid_argument("multi-index dimension does not match d");
    if (!(t >= 0.0) || !(t <= T))
        throw std::invalid_argument("need 0 <= t <= T");
    const LifetimeModel model = LifetimeModel::exponential(lambda);
    TreeSample tree;
    tree.t = t;
    tree.T = T;
    tree.d = d;
    tree.spatial = false;
    RecordBuilder vis{tree, d, false};
    detail::grow_tree<false>(
        Code{alpha, j}, t, nullptr, T, model, d, stream.key(), caps,
        [d](const Code& c, double u) { return sample_dominating_offspring(c.alpha, c.j, d, u); },
        vis);
    return tree;
}

double weighted_progeny(const TreeSample& tree, const WeightSpec& w)
{
    double n = 1.0;
    for (const auto& b : tree.branches) {
        if (b.survived)
            n *= w.sigma_boundary(b.code.alpha, b.code.j);
        else
            n *= w.sigma_inner(b.code.alpha, b.code.j, b.offspring_entry->kind);
    }
    return n;
}

std::int64_t total_progeny(const TreeSample& tree)
{
    return static_cast<std::int64_t>(tree.branches.size());
}

void write_tree_jsonl(const TreeSample& tree, std::ostream& os)
{
    for (const auto& b : tree.branches) {
        nlohmann::json rec{{"label", b.label},
                           {"parent", b.parent},
                           {"generation", b.generation},
                           {"code", code_json(b.code)},
                           {"birth_time", b.birth_time},
                           {"death_time", b.death_time},
                           {"survived", b.survived}};
        if (tree.spatial) {
            rec["birth_position"] = b.birth_position;
            if (b.survived)
                rec["terminal_position"] = b.terminal_position;
        }
        if (b.offspring_entry) {
            const auto& e = *b.offspring_entry;
            nlohmann::json children = nlohmann::json::array();
            for (int c = 0; c < e.n_children; ++c)
                children.push_back(code_json(e.children[static_cast<std::size_t>(c)]));
            rec["entry"] = {{"kind", e.kind},
                            {"weight", e.weight},
                            {"beta", std::vector<int>(e.beta.components().begin(),
                                                      e.beta.components().end())},
                            {"children", children},
                            {"prob", b.entry_prob}};
        }
        os << rec.dump() << '\n';
    }
}

} // namespace branchpde
