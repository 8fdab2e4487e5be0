// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "branchpde/estimator.hpp"
#include "branchpde/growth.hpp"
#include "branchpde/problems.hpp"
#include "branchpde/progeny.hpp"
#include "branchpde/tree.hpp"

using namespace branchpde;

namespace {

const LifetimeModel kExp1 = LifetimeModel::exponential(1.0);

std::uint64_t find_seed(const std::function<bool(const TreeSample&)>& pred,
                        const std::function<TreeSample(std::uint64_t)>& draw)
{
    for (std::uint64_t s = 0; s < 100000; ++s)
        if (pred(draw(s)))
            return s;
    throw std::runtime_error("no seed found");
}

} // namespace

TEST(Tree, RootSurvives)
{
    const std::vector<double> x{0.3};
    const auto draw = [&](std::uint64_t s) {
        return sample_tree(identity_code(1), 0.0, x, 0.2, kExp1, 1, Stream::for_sample(1, s));
    };
    const auto s = find_seed([](const TreeSample& t) { return t.branches.size() == 1; }, draw);
    const auto tree = draw(s);
    ASSERT_TRUE(tree.branches[0].survived);
    EXPECT_GT(tree.branches[0].death_time, 0.2);
    EXPECT_EQ(tree.survived_labels().size(), 1u);
    EXPECT_TRUE(tree.died_labels().empty());

    // terminal position ~ x + N(0, T - t) over survived roots
    double m = 0, v = 0;
    int n = 0;
    for (std::uint64_t k = 0; k < 40000; ++k) {
        const auto t = draw(k);
        if (t.branches.size() != 1)
            continue;
        const double z = t.branches[0].terminal_position[0] - 0.3;
        m += z;
        v += z * z;
        ++n;
    }
    m /= n;
    v = v / n - m * m;
    EXPECT_NEAR(m, 0.0, 4 * std::sqrt(0.2 / n));
    EXPECT_NEAR(v, 0.2, 4 * 0.2 * std::sqrt(2.0 / n));
}

TEST(Tree, StructureInvariants)
{
    const std::vector<double> x{0.0, 0.5};
    for (std::uint64_t s = 0; s < 300; ++s) {
        const auto tree = sample_tree(Code{MultiIndex{1, 0}, -1}, 0.1, x, 1.5, kExp1, 2, Stream::for_sample(2, s));
        ASSERT_FALSE(tree.branches.empty());
        std::vector<int> nchildren(tree.branches.size(), 0);
        for (std::size_t k = 0; k < tree.branches.size(); ++k) {
            const auto& b = tree.branches[k];
            ASSERT_DOUBLE_EQ(b.death_time, b.birth_time + b.lifetime);
            ASSERT_EQ(b.survived, b.death_time > tree.T);
            ASSERT_EQ(b.survived, !b.offspring_entry.has_value());
            ASSERT_EQ(b.survived, b.terminal_position.size() == 2);
            if (k == 0) {
                ASSERT_EQ(b.parent, -1);
                ASSERT_TRUE(b.label.empty());
                continue;
            }
            ASSERT_GE(b.parent, 0);
            ASSERT_LT(b.parent, static_cast<int>(k));
            const auto& p = tree.branches[static_cast<std::size_t>(b.parent)];
            ASSERT_FALSE(p.survived);
            ++nchildren[static_cast<std::size_t>(b.parent)];
            ASSERT_DOUBLE_EQ(b.birth_time, p.death_time);
            ASSERT_EQ(b.generation, p.generation + 1);
            ASSERT_EQ(b.code, p.offspring_entry->children[static_cast<std::size_t>(b.label.back())]);
            // a child starts where its parent died; the parent's position at death is
            // shared by all its children
            for (std::size_t o = 0; o < k; ++o)
                if (tree.branches[o].parent == b.parent)
                    ASSERT_EQ(tree.branches[o].birth_position, b.birth_position);
        }
        for (std::size_t k = 0; k < tree.branches.size(); ++k) {
            const auto& b = tree.branches[k];
            if (b.survived)
                ASSERT_EQ(nchildren[k], 0);
            else if (b.code.j == -1)
                ASSERT_EQ(nchildren[k], 1);
            else
                ASSERT_EQ(nchildren[k], 2);
        }
        const auto counts = tree.generation_counts();
        ASSERT_EQ(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}), total_progeny(tree));
    }
}

TEST(Tree, PureDerivativeRootSpawnsOneFCode)
{
    const std::vector<double> x{0.0};
    const Code root{MultiIndex{2}, -1};
    const auto draw = [&](std::uint64_t s) {
        return sample_tree(root, 0.0, x, 3.0, kExp1, 1, Stream::for_sample(3, s));
    };
    const auto tree = draw(find_seed([](const TreeSample& t) { return !t.branches[0].survived; }, draw));
    const auto& r = tree.branches[0];
    ASSERT_EQ(r.offspring_entry->n_children, 1);
    EXPECT_EQ(tree.branches[1].code, (Code{MultiIndex{2}, 0}));
    EXPECT_DOUBLE_EQ(tree.branches[1].birth_time, r.death_time);
}

TEST(Tree, Reproducible)
{
    const std::vector<double> x{0.2};
    const auto a = sample_tree(Code{MultiIndex{1}, 0}, 0.0, x, 1.0, kExp1, 1, Stream::for_sample(9, 4));
    const auto b = sample_tree(Code{MultiIndex{1}, 0}, 0.0, x, 1.0, kExp1, 1, Stream::for_sample(9, 4));
    std::ostringstream sa, sb;
    write_tree_jsonl(a, sa);
    write_tree_jsonl(b, sb);
    EXPECT_EQ(sa.str(), sb.str());
    ASSERT_EQ(a.branches.size(), b.branches.size());
    for (std::size_t k = 0; k < a.branches.size(); ++k) {
        EXPECT_EQ(a.branches[k].lifetime, b.branches[k].lifetime);
        EXPECT_EQ(a.branches[k].terminal_position, b.branches[k].terminal_position);
    }
}

TEST(Tree, Caps)
{
    const std::vector<double> x{0.0};
    TreeCaps caps;
    caps.max_branches = 5;
    bool thrown = false;
    for (std::uint64_t s = 0; s < 200 && !thrown; ++s) {
        try {
            sample_tree(Code{MultiIndex{0}, 0}, 0.0, x, 5.0, kExp1, 1, Stream::for_sample(4, s), caps);
        } catch (const CapExceeded& e) {
            thrown = true;
            EXPECT_GT(e.branches(), 5);
        }
    }
    EXPECT_TRUE(thrown);
    EXPECT_THROW(sample_tree(identity_code(1), 2.0, x, 1.0, kExp1, 1, Stream(1)), std::invalid_argument);
    EXPECT_THROW(sample_tree(identity_code(2), 0.0, x, 1.0, kExp1, 1, Stream(1)), std::invalid_argument);
}

TEST(Functional, SingleSurvivedRoot)
{
    const Problem one = constant_problem(1, 0.5);
    const std::vector<double> x{0.0};
    const auto draw = [&](std::uint64_t s) {
        return sample_tree(identity_code(1), 0.1, x, 0.5, kExp1, 1, Stream::for_sample(5, s));
    };
    const auto tree = draw(find_seed([](const TreeSample& t) { return t.branches.size() == 1; }, draw));
    EXPECT_DOUBLE_EQ(evaluate_functional(tree, one.oracle, kExp1, 0.5), 1.0 / kExp1.survival(0.4));
}

TEST(Functional, DepthOneTree)
{
    const Problem b2 = b2_problem(1.0);
    const std::vector<double> x{0.1};
    const Code root{MultiIndex{1}, 0};
    const auto draw = [&](std::uint64_t s) {
        return sample_tree(root, 0.0, x, 1.0, kExp1, 1, Stream::for_sample(6, s));
    };
    const auto tree = draw(find_seed(
        [](const TreeSample& t) { return t.branches.size() == 3 && t.branches[1].survived && t.branches[2].survived; },
        draw));
    const auto& r = tree.branches[0];
    const auto& c1 = tree.branches[1];
    const auto& c2 = tree.branches[2];
    const double expect = r.offspring_entry->weight * b2.oracle(c1.code, c1.terminal_position)
                          * b2.oracle(c2.code, c2.terminal_position)
                          / (kExp1.density(r.lifetime) * offspring_prob(root, *r.offspring_entry, 1)
                             * std::pow(kExp1.survival(1.0 - r.death_time), 2));
    EXPECT_NEAR(evaluate_functional(tree, b2.oracle, kExp1, 1.0), expect, 1e-13 * std::abs(expect));
}

TEST(Functional, StreamingMatchesStoredTree)
{
    const Problem b2 = b2_problem(0.5);
    const std::vector<double> x{-0.4};
    for (std::uint64_t s = 0; s < 500; ++s) {
        const Stream st = Stream::for_sample(8, s);
        const auto tree = sample_tree(identity_code(1), 0.0, x, 0.5, kExp1, 1, st);
        ASSERT_EQ(sample_functional(identity_code(1), 0.0, x, 0.5, kExp1, 1, b2.oracle, st),
                  evaluate_functional(tree, b2.oracle, kExp1, 0.5));
    }
}

TEST(Functional, ZeroNonlinearityHasMeanOne)
{
    Problem one = constant_problem(1, 0.4);
    EstimatorConfig cfg;
    cfg.n = 50000;
    cfg.seed = 11;
    const std::vector<double> x{0.0};
    const auto e = estimate_u(identity_code(1), 0.0, x, 0.4, one, kExp1, cfg);
    EXPECT_NEAR(e.mean, 1.0, 3 * e.std_error + 1e-12);
}

TEST(Dominating, Examples)
{
    const double lam = 1.0, h = std::log(2.0);
    int root_survived = 0;
    const int n = 40000;
    for (int k = 0; k < n; ++k) {
        const auto t = sample_dominating_tree(MultiIndex{1}, 0, 0.0, h, lam, 1, Stream::for_sample(12, k));
        ASSERT_EQ(total_progeny(t) % 2, 1);
        ASSERT_FALSE(t.spatial);
        for (const auto& b : t.branches) {
            ASSERT_GE(b.code.j, 0);
            if (!b.survived)
                ASSERT_EQ(b.offspring_entry->n_children, 2);
        }
        root_survived += t.branches.size() == 1;
    }
    const double p = std::exp(-lam * h);
    EXPECT_NEAR(root_survived / static_cast<double>(n), p, 4 * std::sqrt(p * (1 - p) / n));
}

TEST(Dominating, ProgenyLawTwoHorizons)
{
    for (double lh : {std::log(2.0), 0.3}) {
        const int n = 100000;
        std::vector<int> counts(16, 0);
        for (int k = 0; k < n; ++k) {
            const auto m = total_progeny(sample_dominating_tree(MultiIndex{0}, 0, 0.0, lh, 1.0, 1,
                                                                Stream::for_sample(13, k)));
            if (m < 16)
                ++counts[static_cast<std::size_t>(m)];
        }
        for (int m = 0; m <= 6; ++m)
            EXPECT_NEAR(counts[static_cast<std::size_t>(2 * m + 1)] / static_cast<double>(n),
                        progeny_pmf(1.0, lh, 2 * m + 1), 0.01)
                << "lh=" << lh << " m=" << m;
        for (int m = 0; m < 16; m += 2)
            EXPECT_EQ(counts[static_cast<std::size_t>(m)], 0);
    }
}

TEST(WeightedProgeny, Examples)
{
    const std::vector<double> x{0.0};
    const auto tree = sample_tree(Code{MultiIndex{2}, 0}, 0.0, x, 2.0, kExp1, 1, Stream::for_sample(14, 0));
    EXPECT_EQ(weighted_progeny(tree, unit_weights()), 1.0);

    GrowthParams p;
    p.theta = 2.0;
    p.delta1 = 1.3;
    p.delta2 = 0.8;
    const WeightSpec w = build_weights(p);
    const MultiIndex a{2};
    const auto draw_single = [&](std::uint64_t s) {
        return sample_dominating_tree(a, 1, 0.0, 0.3, 1.0, 1, Stream::for_sample(15, s));
    };
    const auto single = draw_single(find_seed([](const TreeSample& t) { return t.branches.size() == 1; }, draw_single));
    EXPECT_DOUBLE_EQ(weighted_progeny(single, w), w.sigma_boundary(a, 1));

    const auto depth1 = draw_single(find_seed(
        [](const TreeSample& t) {
            return t.branches.size() == 3 && t.branches[0].offspring_entry->kind == 0;
        },
        draw_single));
    const auto& beta = depth1.branches[0].offspring_entry->beta;
    EXPECT_DOUBLE_EQ(weighted_progeny(depth1, w),
                     w.sigma_inner(a, 1, 0) * w.sigma_boundary(a - beta, 0) * w.sigma_boundary(beta, 2));
}

TEST(TreeDump, JsonLines)
{
    const std::vector<double> x{0.0};
    const auto tree = sample_tree(Code{MultiIndex{1}, 0}, 0.0, x, 1.0, kExp1, 1, Stream::for_sample(16, 2));
    std::ostringstream os;
    write_tree_jsonl(tree, os);
    std::istringstream in(os.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_TRUE(j.contains("label"));
        EXPECT_TRUE(j.contains("code"));
        EXPECT_TRUE(j.contains("birth_time"));
        EXPECT_EQ(j["survived"].get<bool>(), !j.contains("entry"));
        ++n;
    }
    EXPECT_EQ(n, tree.branches.size());
}

// One-step recursion: E[H] from (t, x) equals E over the first branch of the
// boundary term plus z_1/(ρ q) ∏ u_{z_i}(t+τ, X_τ), with the inner u's taken
// from the exact solution.
TEST(TreeProperty, FunctionalRecursion)
{
    const double T = 0.05, x0 = 0.2;
    const Problem b2 = b2_problem(T);
    const std::vector<double> x{x0};
    for (const Code& c0 : {identity_code(1), Code{MultiIndex{0}, 0}, Code{MultiIndex{1}, 0}}) {
        EstimatorConfig cfg;
        cfg.n = 200000;
        cfg.seed = 21;
        const auto direct = estimate_u(c0, 0.0, x, T, b2, kExp1, cfg);

        const int n = 200000;
        std::vector<double> v(n);
        for (int k = 0; k < n; ++k) {
            Stream s = Stream::for_sample(22, static_cast<std::uint64_t>(k));
            const double tau = kExp1.sample(s.uniform());
            if (tau > T) {
                const std::vector<double> xt{x0 + std::sqrt(T) * s.normal()};
                v[static_cast<std::size_t>(k)] = b2.oracle(c0, xt) / kExp1.survival(T);
                continue;
            }
            const double xs = x0 + std::sqrt(tau) * s.normal();
            const auto e = sample_offspring(c0, 1, s.uniform());
            double prod = e.weight / (kExp1.density(tau) * offspring_prob(c0, e, 1));
            for (int c = 0; c < e.n_children; ++c)
                prod *= exact_code_value(b2, e.children[static_cast<std::size_t>(c)], tau, xs);
            v[static_cast<std::size_t>(k)] = prod;
        }
        const auto nested = summarize(v);
        const double se = std::hypot(direct.std_error, nested.std_error);
        EXPECT_NEAR(direct.mean, nested.mean, 3 * se) << c0;
        EXPECT_NEAR(nested.mean, exact_code_value(b2, c0, 0.0, x0), 3 * nested.std_error) << c0;
    }
}

// Weighted progeny of the coded tree is stochastically dominated by that of the
// dominating chain: compare empirical survival functions on 20 quantiles.
TEST(TreeProperty, StochasticDominance)
{
    GrowthParams p;
    p.theta = 2.0;
    p.r = 1.0;
    const WeightSpec w = build_weights(p);
    const WeightSpec wt = dominating_weights(w);
    const int n = 40000;
    const double h = 0.1;
    const std::vector<double> x{0.0};
    for (const MultiIndex& a : {MultiIndex{0}, MultiIndex{1}}) {
        std::vector<double> N(n), Nt(n);
        for (int k = 0; k < n; ++k) {
            N[static_cast<std::size_t>(k)] = weighted_progeny(
                sample_tree(Code{a, 0}, 0.0, x, h, kExp1, 1, Stream::for_sample(31, k)), w);
            Nt[static_cast<std::size_t>(k)] =
                weighted_progeny(sample_dominating_tree(a, 0, 0.0, h, 1.0, 1, Stream::for_sample(32, k)), wt);
        }
        std::vector<double> pooled = N;
        pooled.insert(pooled.end(), Nt.begin(), Nt.end());
        std::sort(pooled.begin(), pooled.end());
        std::sort(N.begin(), N.end());
        std::sort(Nt.begin(), Nt.end());
        const auto surv = [](const std::vector<double>& s, double q) {
            return static_cast<double>(s.end() - std::upper_bound(s.begin(), s.end(), q)) / static_cast<double>(s.size());
        };
        const double band = 1.628 * std::sqrt(2.0 / n);
        for (int g = 1; g <= 20; ++g) {
            const double q = pooled[static_cast<std::size_t>(g * (pooled.size() - 1) / 21)];
            EXPECT_LE(surv(N, q), surv(Nt, q) + band) << a << " q=" << q;
        }
    }
}
