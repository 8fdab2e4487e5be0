// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace branchpde {

Jet::Jet(int order)
{
    if (order < 0)
        throw std::invalid_argument("jet order must be non-negative");
    a_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

Jet Jet::constant(double c, int order)
{
    Jet j(order);
    j.a_[0] = c;
    return j;
}

Jet Jet::variable(double x0, int order)
{
    Jet j(order);
    j.a_[0] = x0;
    if (order >= 1)
        j.a_[1] = 1.0;
    return j;
}

double Jet::derivative(int m) const
{
    double f = 1.0;
    for (int i = 2; i <= m; ++i)
        f *= i;
    return f * (*this)[m];
}

Jet& Jet::operator+=(const Jet& o)
{
    if (o.order() != order())
        throw std::invalid_argument("jet order mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k)
        a_[k] += o.a_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o)
{
    if (o.order() != order())
        throw std::invalid_argument("jet order mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k)
        a_[k] -= o.a_[k];
    return *this;
}

Jet& Jet::operator+=(double c)
{
    a_[0] += c;
    return *this;
}

Jet& Jet::operator*=(double c)
{
    for (auto& v : a_)
        v *= c;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b)
{
    if (a.order() != b.order())
        throw std::invalid_argument("jet order mismatch");
    const int m = a.order();
    Jet c(m);
    for (int k = 0; k <= m; ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i)
            s += a[i] * b[k - i];
        c[k] = s;
    }
    return c;
}

Jet exp(const Jet& a)
{
    const int m = a.order();
    Jet b(m);
    b[0] = std::exp(a[0]);
    for (int k = 1; k <= m; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i)
            s += i * a[i] * b[k - i];
        b[k] = s / k;
    }
    return b;
}

Jet log(const Jet& a)
{
    if (!(a[0] > 0.0))
        throw std::domain_error("jet log needs a positive constant term");
    const int m = a.order();
    Jet b(m);
    b[0] = std::log(a[0]);
    for (int k = 1; k <= m; ++k) {
        double s = 0.0;
        for (int i = 1; i < k; ++i)
            s += i * b[i] * a[k - i];
        b[k] = (a[k] - s / k) / a[0];
    }
    return b;
}

Jet reciprocal(const Jet& a)
{
    if (a[0] == 0.0)
        throw std::domain_error("jet reciprocal of a zero constant term");
    const int m = a.order();
    Jet b(m);
    b[0] = 1.0 / a[0];
    for (int k = 1; k <= m; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i)
            s += a[i] * b[k - i];
        b[k] = -s / a[0];
    }
    return b;
}

} // namespace branchpde
