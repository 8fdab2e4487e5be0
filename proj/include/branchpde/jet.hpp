// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace branchpde {

/// Truncated Taylor expansion a_0 + a_1 h + ... + a_M h^M of a univariate
/// function around a point, with a_m = f^{(m)}(x)/m!.
class Jet
{
  public:
    explicit Jet(int order);

    static Jet constant(double c, int order);
    /// The identity map h ↦ x0 + h.
    static Jet variable(double x0, int order);

    int order() const { return static_cast<int>(a_.size()) - 1; }
    double operator[](int k) const { return a_[static_cast<std::size_t>(k)]; }
    double& operator[](int k) { return a_[static_cast<std::size_t>(k)]; }
    /// m-th derivative, m! a_m.
    double derivative(int m) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator+=(double c);
    Jet& operator*=(double c);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double c) { return a += c; }
    friend Jet operator+(double c, Jet a) { return a += c; }
    friend Jet operator-(Jet a, double c) { return a += -c; }
    friend Jet operator*(Jet a, double c) { return a *= c; }
    friend Jet operator*(double c, Jet a) { return a *= c; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(const Jet& a, const Jet& b);

  private:
    std::vector<double> a_;
};

Jet exp(const Jet& a);
/// Requires a[0] > 0.
Jet log(const Jet& a);
/// Requires a[0] != 0.
Jet reciprocal(const Jet& a);

} // namespace branchpde
