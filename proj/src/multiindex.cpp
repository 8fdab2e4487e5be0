// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/multiindex.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace branchpde {

namespace {

void check_dim(int dim)
{
    if (dim < 0 || dim > kMaxDim)
        throw std::invalid_argument("multi-index dimension must lie in [0, "
                                    + std::to_string(kMaxDim) + "], got "
                                    + std::to_string(dim));
}

} // namespace

MultiIndex::MultiIndex(int dim) : dim_(dim)
{
    check_dim(dim);
}

MultiIndex::MultiIndex(std::initializer_list<int> components)
    : MultiIndex(std::span<const int>(components.begin(), components.size()))
{
}

MultiIndex::MultiIndex(std::span<const int> components)
    : dim_(static_cast<int>(components.size()))
{
    check_dim(dim_);
    for (int k = 0; k < dim_; ++k)
        set(k, components[static_cast<std::size_t>(k)]);
}

MultiIndex MultiIndex::unit(int dim, int i)
{
    return mi_add_unit(MultiIndex(dim), i);
}

void MultiIndex::set(int k, int value)
{
    if (k < 0 || k >= dim_)
        throw std::out_of_range("multi-index coordinate out of range");
    if (value < 0)
        throw std::invalid_argument("multi-index components must be non-negative");
    c_[static_cast<std::size_t>(k)] = value;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b)
{
    if (auto cmp = a.dim_ <=> b.dim_; cmp != 0)
        return cmp;
    for (int k = 0; k < a.dim_; ++k)
        if (auto cmp = a[k] <=> b[k]; cmp != 0)
            return cmp;
    return std::strong_ordering::equal;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const
{
    if (dim_ != other.dim_)
        throw std::invalid_argument("multi-index length mismatch");
    MultiIndex out(dim_);
    for (int k = 0; k < dim_; ++k)
        out.c_[static_cast<std::size_t>(k)] = (*this)[k] + other[k];
    return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const
{
    if (!mi_leq(other, *this))
        throw std::domain_error("multi-index difference requires other <= this");
    MultiIndex out(dim_);
    for (int k = 0; k < dim_; ++k)
        out.c_[static_cast<std::size_t>(k)] = (*this)[k] - other[k];
    return out;
}

std::string MultiIndex::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& a)
{
    os << '(';
    for (int k = 0; k < a.dim(); ++k)
        os << (k ? "," : "") << a[k];
    if (a.dim() == 1)
        os << ',';
    return os << ')';
}

int mi_abs(const MultiIndex& a)
{
    int s = 0;
    for (int v : a.components())
        s += v;
    return s;
}

BigInt factorial(int n)
{
    if (n < 0)
        throw std::domain_error("factorial of a negative integer");
    BigInt f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

BigInt binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt b = 1;
    for (int i = 1; i <= k; ++i)
        b = b * (n - k + i) / i;
    return b;
}

BigInt mi_factorial(const MultiIndex& a)
{
    BigInt f = 1;
    for (int v : a.components())
        f *= factorial(v);
    return f;
}

bool mi_leq(const MultiIndex& beta, const MultiIndex& alpha)
{
    if (beta.dim() != alpha.dim())
        throw std::invalid_argument("multi-index length mismatch: "
                                    + std::to_string(beta.dim()) + " vs "
                                    + std::to_string(alpha.dim()));
    for (int k = 0; k < alpha.dim(); ++k)
        if (beta[k] > alpha[k])
            return false;
    return true;
}

BigInt mi_binomial(const MultiIndex& alpha, const MultiIndex& beta)
{
    if (!mi_leq(beta, alpha))
        throw std::domain_error("mi_binomial requires beta <= alpha");
    BigInt b = 1;
    for (int k = 0; k < alpha.dim(); ++k)
        b *= binomial(alpha[k], beta[k]);
    return b;
}

std::int64_t mi_box_size(const MultiIndex& a)
{
    std::int64_t n = 1;
    for (int v : a.components())
        n *= 1 + v;
    return n;
}

void mi_for_each_below(const MultiIndex& alpha, const std::function<void(const MultiIndex&)>& fn)
{
    MultiIndex beta(alpha.dim());
    const int d = alpha.dim();
    while (true) {
        fn(beta);
        // odometer increment, last coordinate fastest
        int k = d - 1;
        while (k >= 0 && beta[k] == alpha[k]) {
            beta.set(k, 0);
            --k;
        }
        if (k < 0)
            return;
        beta.set(k, beta[k] + 1);
    }
}

std::vector<MultiIndex> mi_enumerate_below(const MultiIndex& alpha)
{
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(mi_box_size(alpha)));
    mi_for_each_below(alpha, [&](const MultiIndex& b) { out.push_back(b); });
    return out;
}

MultiIndex mi_add_unit(const MultiIndex& alpha, int i)
{
    if (i < 1 || i > alpha.dim())
        throw std::out_of_range("unit coordinate " + std::to_string(i) + " outside 1.."
                                + std::to_string(alpha.dim()));
    MultiIndex out = alpha;
    out.set(i - 1, alpha[i - 1] + 1);
    return out;
}

std::vector<MultiIndex> mi_enumerate_up_to(int dim, int max_abs)
{
    std::vector<MultiIndex> out;
    for (int m = 0; m <= max_abs; ++m) {
        for_each_composition(m, dim, [&](std::span<const int> parts) {
            out.emplace_back(parts);
        });
    }
    return out;
}

void for_each_composition(int total, int parts,
                          const std::function<void(std::span<const int>)>& fn)
{
    if (total < 0 || parts < 1)
        throw std::invalid_argument("compositions need total >= 0 and parts >= 1");
    std::vector<int> m(static_cast<std::size_t>(parts), 0);
    m.back() = total;
    while (true) {
        fn(m);
        // next composition in lexicographic order: find the rightmost non-last
        // slot that can take one unit from the tail.
        int tail = m.back();
        if (tail > 0) {
            if (parts == 1)
                return;
            m[static_cast<std::size_t>(parts - 2)] += 1;
            m.back() = tail - 1;
            continue;
        }
        int k = parts - 2;
        while (k >= 0 && m[static_cast<std::size_t>(k)] == 0)
            --k;
        if (k <= 0)
            return;
        int carried = m[static_cast<std::size_t>(k)];
        m[static_cast<std::size_t>(k)] = 0;
        m[static_cast<std::size_t>(k - 1)] += 1;
        m.back() = carried - 1;
    }
}

std::vector<std::vector<int>> integer_compositions(int total, int parts)
{
    std::vector<std::vector<int>> out;
    for_each_composition(total, parts, [&](std::span<const int> c) {
        out.emplace_back(c.begin(), c.end());
    });
    return out;
}

} // namespace branchpde
