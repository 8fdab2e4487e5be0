// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace branchpde {

namespace {

void check_dim(const MultiIndex& alpha, int d)
{
    if (alpha.dim() != d)
        throw std::invalid_argument("code dimension " + std::to_string(alpha.dim())
                                    + " does not match d = " + std::to_string(d));
}

MechanismEntry make_entry(const MultiIndex& alpha, int j, int kind, const MultiIndex& beta,
                          bool dominating)
{
    MechanismEntry e;
    e.kind = kind;
    e.beta = beta;
    e.n_children = 2;
    if (kind == 0) {
        e.weight = 1.0;
        e.children[0] = Code{alpha - beta, 0};
        e.children[1] = Code{beta, j + 1};
    } else {
        const int bi = beta[kind - 1];
        const int ai = alpha[kind - 1];
        e.weight = -0.5 * (1 + bi) * (1 + ai - bi);
        e.children[0] = Code{mi_add_unit(alpha - beta, kind), dominating ? 0 : -1};
        e.children[1] = Code{mi_add_unit(beta, kind), j + 1};
    }
    return e;
}

MechanismEntry derivative_entry(const Code& c)
{
    MechanismEntry e;
    e.weight = 1.0;
    e.n_children = 1;
    e.kind = 0;
    e.beta = MultiIndex(c.alpha.dim());
    e.children[0] = Code{c.alpha, 0};
    return e;
}

std::vector<MechanismEntry> build_set(const MultiIndex& alpha, int j, int d, bool dominating)
{
    std::vector<MechanismEntry> out;
    out.reserve(static_cast<std::size_t>((d + 1) * mi_box_size(alpha)));
    for (int kind = 0; kind <= d; ++kind) {
        mi_for_each_below(alpha, [&](const MultiIndex& beta) {
            out.push_back(make_entry(alpha, j, kind, beta, dominating));
        });
    }
    return out;
}

double block_prob(const MultiIndex& alpha, int kind, const MultiIndex& beta, int d)
{
    const double box = static_cast<double>(mi_box_size(alpha));
    if (kind == 0)
        return 1.0 / ((d + 1) * box);
    const int ai = alpha[kind - 1];
    const int bi = beta[kind - 1];
    return 6.0 * (1 + bi) * (1 + ai - bi) / ((d + 1) * (2.0 + ai) * (3.0 + ai) * box);
}

void check_membership(const MultiIndex& alpha, int j, const MechanismEntry& entry, int d,
                      bool dominating)
{
    if (entry.kind < 0 || entry.kind > d || entry.beta.dim() != d || !mi_leq(entry.beta, alpha))
        throw std::invalid_argument("entry is not an element of the offspring set");
    if (!(make_entry(alpha, j, entry.kind, entry.beta, dominating) == entry))
        throw std::invalid_argument("entry is not an element of the offspring set");
}

double clamp_unit(double v)
{
    if (v < 0.0)
        return 0.0;
    if (v >= 1.0)
        return std::nextafter(1.0, 0.0);
    return v;
}

// Decodes (kind, β) from u by successive inverse-CDF steps on each factor of the
// product law: block first, then β_1, ..., β_d.
MechanismEntry decode(const MultiIndex& alpha, int j, int d, double u, bool dominating)
{
    double x = clamp_unit(u) * (d + 1);
    const int kind = std::min(static_cast<int>(x), d);
    double v = clamp_unit(x - kind);
    MultiIndex beta(d);
    for (int k = 0; k < d; ++k) {
        const int a = alpha[k];
        int b = 0;
        if (kind != k + 1) {
            const double y = v * (a + 1);
            b = std::min(static_cast<int>(y), a);
            v = clamp_unit(y - b);
        } else {
            const double total = (a + 1.0) * (a + 2.0) * (a + 3.0) / 6.0;
            const double y = v * total;
            double cum = 0.0;
            for (b = 0; b <= a; ++b) {
                const double w = (1.0 + b) * (1.0 + a - b);
                if (y < cum + w || b == a) {
                    v = clamp_unit((y - cum) / w);
                    break;
                }
                cum += w;
            }
        }
        beta.set(k, b);
    }
    return make_entry(alpha, j, kind, beta, dominating);
}

} // namespace

std::string Code::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Code& c)
{
    return os << '[' << c.alpha << ", " << c.j << ']';
}

std::vector<MechanismEntry> offspring_set(const Code& c, int d)
{
    check_dim(c.alpha, d);
    if (c.j < -1)
        throw std::invalid_argument("code index j must be >= -1");
    if (c.j == -1)
        return {derivative_entry(c)};
    return build_set(c.alpha, c.j, d, false);
}

double offspring_prob(const Code& c, const MechanismEntry& entry, int d)
{
    check_dim(c.alpha, d);
    if (c.j == -1) {
        if (!(entry == derivative_entry(c)))
            throw std::invalid_argument("entry is not an element of the offspring set");
        return 1.0;
    }
    check_membership(c.alpha, c.j, entry, d, false);
    return block_prob(c.alpha, entry.kind, entry.beta, d);
}

double sampled_entry_prob(const Code& c, const MechanismEntry& entry, int d) noexcept
{
    if (c.j == -1)
        return 1.0;
    return block_prob(c.alpha, entry.kind, entry.beta, d);
}

Rational offspring_prob_exact(const Code& c, const MechanismEntry& entry, int d)
{
    check_dim(c.alpha, d);
    if (c.j == -1) {
        if (!(entry == derivative_entry(c)))
            throw std::invalid_argument("entry is not an element of the offspring set");
        return 1;
    }
    check_membership(c.alpha, c.j, entry, d, false);
    const Rational box(mi_box_size(c.alpha));
    if (entry.kind == 0)
        return 1 / ((d + 1) * box);
    const int ai = c.alpha[entry.kind - 1];
    const int bi = entry.beta[entry.kind - 1];
    return Rational(6 * (1 + bi) * (1 + ai - bi)) / ((d + 1) * Rational((2 + ai) * (3 + ai)) * box);
}

Rational entry_weight_exact(const MechanismEntry& entry)
{
    if (entry.kind == 0)
        return 1;
    const int bi = entry.beta[entry.kind - 1];
    // children[1] = β + 1_i, children[0] = α - β + 1_i  ⇒  α_i - β_i = children[0]_i - 1
    const int rest = entry.children[0].alpha[entry.kind - 1] - 1;
    return Rational(-(1 + bi) * (1 + rest), 2);
}

BigInt directional_normalizer_sum(const MultiIndex& alpha, int i)
{
    if (i < 1 || i > alpha.dim())
        throw std::out_of_range("direction index out of range");
    BigInt s = 0;
    mi_for_each_below(alpha, [&](const MultiIndex& beta) {
        s += (1 + beta[i - 1]) * (1 + alpha[i - 1] - beta[i - 1]);
    });
    return s;
}

BigInt directional_normalizer_closed(const MultiIndex& alpha, int i)
{
    if (i < 1 || i > alpha.dim())
        throw std::out_of_range("direction index out of range");
    const int a = alpha[i - 1];
    BigInt num = BigInt((2 + a) * (3 + a)) * mi_box_size(alpha);
    return num / 6;
}

MechanismEntry sample_offspring(const Code& c, int d, double u)
{
    check_dim(c.alpha, d);
    if (c.j == -1)
        return derivative_entry(c);
    return decode(c.alpha, c.j, d, u, false);
}

MechanismEntry sample_offspring_reference(const Code& c, int d, double u)
{
    auto set = offspring_set(c, d);
    double cum = 0.0;
    for (const auto& e : set) {
        cum += offspring_prob(c, e, d);
        if (u < cum)
            return e;
    }
    return set.back();
}

std::vector<MechanismEntry> dominating_offspring_set(const MultiIndex& alpha, int j, int d)
{
    check_dim(alpha, d);
    if (j < 0)
        throw std::invalid_argument("dominating codes need j >= 0");
    return build_set(alpha, j, d, true);
}

double dominating_offspring_prob(const MultiIndex& alpha, int j, const MechanismEntry& entry, int d)
{
    check_dim(alpha, d);
    check_membership(alpha, j, entry, d, true);
    return block_prob(alpha, entry.kind, entry.beta, d);
}

MechanismEntry sample_dominating_offspring(const MultiIndex& alpha, int j, int d, double u)
{
    check_dim(alpha, d);
    if (j < 0)
        throw std::invalid_argument("dominating codes need j >= 0");
    return decode(alpha, j, d, u, true);
}

} // namespace branchpde
