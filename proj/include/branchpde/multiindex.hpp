// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace branchpde {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest ambient dimension supported by the fixed-capacity multi-index.
inline constexpr int kMaxDim = 8;

/// A d-tuple of non-negative derivative orders.
///
/// Storage is inline (no heap) so codes can be copied freely inside the tree
/// sampler. Components past dim() are always zero, which keeps the defaulted
/// comparison lexicographic over the active components.
class MultiIndex
{
  public:
    MultiIndex() = default;
    explicit MultiIndex(int dim);
    MultiIndex(std::initializer_list<int> components);
    explicit MultiIndex(std::span<const int> components);

    static MultiIndex zero(int dim) { return MultiIndex(dim); }
    /// The unit multi-index 1_i, with a 1-based coordinate.
    static MultiIndex unit(int dim, int i);

    int dim() const { return dim_; }
    int operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    void set(int k, int value);

    std::span<const int> components() const
    {
        return {c_.data(), static_cast<std::size_t>(dim_)};
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

    MultiIndex operator+(const MultiIndex& other) const;
    /// Component-wise difference; requires other <= *this.
    MultiIndex operator-(const MultiIndex& other) const;

    std::string to_string() const;

  private:
    int dim_ = 0;
    std::array<int, kMaxDim> c_{};
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& a);

/// |α| = Σ α_i.
int mi_abs(const MultiIndex& a);

/// α! = ∏ α_i!, exact.
BigInt mi_factorial(const MultiIndex& a);

/// Partial order β ≤ α. Throws std::invalid_argument on a length mismatch.
bool mi_leq(const MultiIndex& beta, const MultiIndex& alpha);

/// ∏ binom(α_i, β_i), exact. Throws std::domain_error unless β ≤ α.
BigInt mi_binomial(const MultiIndex& alpha, const MultiIndex& beta);

/// ∏ (1 + α_k), the number of β with 0 ≤ β ≤ α.
std::int64_t mi_box_size(const MultiIndex& a);

/// All β with 0 ≤ β ≤ α in lexicographic order (first coordinate most significant).
std::vector<MultiIndex> mi_enumerate_below(const MultiIndex& alpha);

/// Visits the same sequence as mi_enumerate_below without materializing it.
void mi_for_each_below(const MultiIndex& alpha, const std::function<void(const MultiIndex&)>& fn);

/// α + 1_i with a 1-based coordinate. Throws std::out_of_range.
MultiIndex mi_add_unit(const MultiIndex& alpha, int i);

/// All multi-indices of dimension d with |α| ≤ max_abs, ordered by |α| then lexicographically.
std::vector<MultiIndex> mi_enumerate_up_to(int dim, int max_abs);

/// Visits every tuple (m_1..m_parts) of non-negative integers summing to total,
/// in lexicographic order.
void for_each_composition(int total, int parts,
                          const std::function<void(std::span<const int>)>& fn);

std::vector<std::vector<int>> integer_compositions(int total, int parts);

BigInt factorial(int n);
BigInt binomial(int n, int k);

} // namespace branchpde

template <>
struct std::hash<branchpde::MultiIndex>
{
    std::size_t operator()(const branchpde::MultiIndex& a) const noexcept
    {
        std::size_t h = static_cast<std::size_t>(a.dim());
        for (int v : a.components())
            h = h * 1000003u ^ static_cast<std::size_t>(v);
        return h;
    }
};
