// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/lifetimes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace branchpde {

LifetimeModel LifetimeModel::exponential(double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lifetime rate lambda must be positive, got "
                                    + std::to_string(lambda));
    LifetimeModel m;
    m.kind_ = Kind::Exponential;
    m.lambda_ = lambda;
    return m;
}

LifetimeModel LifetimeModel::tabulated(std::vector<std::pair<double, double>> knots, double lambda)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("lifetime rate lambda must be positive");
    if (knots.size() < 2)
        throw std::invalid_argument("tabulated density needs at least two knots");
    std::sort(knots.begin(), knots.end());
    if (knots.front().first != 0.0)
        throw std::invalid_argument("tabulated density must start at r = 0");
    LifetimeModel m;
    m.kind_ = Kind::Tabulated;
    m.lambda_ = lambda;
    for (auto [r, rho] : knots) {
        if (rho < 0.0 || !std::isfinite(rho))
            throw std::invalid_argument("tabulated density must be non-negative");
        if (!m.r_.empty() && r <= m.r_.back())
            throw std::invalid_argument("tabulated knots must be strictly increasing");
        m.r_.push_back(r);
        m.rho_.push_back(rho);
    }
    m.cdf_.assign(m.r_.size(), 0.0);
    for (std::size_t k = 1; k < m.r_.size(); ++k)
        m.cdf_[k] = m.cdf_[k - 1] + 0.5 * (m.rho_[k] + m.rho_[k - 1]) * (m.r_[k] - m.r_[k - 1]);
    const double mass = m.cdf_.back();
    if (!(mass > 0.0))
        throw std::invalid_argument("tabulated density has zero mass");
    for (auto& v : m.rho_)
        v /= mass;
    for (auto& v : m.cdf_)
        v /= mass;
    return m;
}

std::size_t LifetimeModel::segment(double r) const
{
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - r_.begin() - 1, 0));
}

double LifetimeModel::density(double r) const
{
    if (r < 0.0)
        return 0.0;
    if (kind_ == Kind::Exponential)
        return lambda_ * std::exp(-lambda_ * r);
    if (r >= r_.back())
        return r == r_.back() ? rho_.back() : 0.0;
    const std::size_t k = segment(r);
    const double w = (r - r_[k]) / (r_[k + 1] - r_[k]);
    return rho_[k] + w * (rho_[k + 1] - rho_[k]);
}

double LifetimeModel::survival(double r) const
{
    if (r <= 0.0)
        return 1.0;
    if (kind_ == Kind::Exponential)
        return std::exp(-lambda_ * r);
    if (r >= r_.back())
        return 0.0;
    const std::size_t k = segment(r);
    const double h = r - r_[k];
    const double cdf = cdf_[k] + 0.5 * (rho_[k] + density(r)) * h;
    return std::max(0.0, 1.0 - cdf);
}

double LifetimeModel::rho_star(double T) const
{
    if (kind_ == Kind::Exponential)
        return lambda_ * std::exp(-lambda_ * T);
    double m = std::min(density(0.0), density(T));
    for (std::size_t k = 0; k < r_.size() && r_[k] <= T; ++k)
        m = std::min(m, rho_[k]);
    return m;
}

double LifetimeModel::sample(double u) const
{
    if (kind_ == Kind::Exponential)
        return -std::log1p(-u) / lambda_;
    if (u >= cdf_.back())
        return r_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - cdf_.begin() - 1);
    // Solve cdf_[k] + a h + b h^2/2 = u on the linear segment.
    const double a = rho_[k];
    const double b = (rho_[k + 1] - rho_[k]) / (r_[k + 1] - r_[k]);
    const double need = u - cdf_[k];
    double h;
    if (std::abs(b) < 1e-14)
        h = a > 0.0 ? need / a : 0.0;
    else
        h = (-a + std::sqrt(std::max(0.0, a * a + 2.0 * b * need))) / b;
    return std::clamp(r_[k] + h, r_[k], r_[k + 1]);
}

std::string LifetimeModel::describe() const
{
    std::ostringstream os;
    if (kind_ == Kind::Exponential)
        os << "exponential(lambda=" << lambda_ << ")";
    else
        os << "tabulated(" << r_.size() << " knots, lambda=" << lambda_ << ")";
    return os.str();
}

AssumptionHReport validate_assumption_h(const LifetimeModel& model, double T, int grid_points,
                                        double range_factor)
{
    AssumptionHReport rep;
    rep.lambda = model.lambda();
    rep.rho_star = model.rho_star(T);
    if (!(T > 0.0)) {
        rep.message = "horizon must be positive";
        return rep;
    }
    const double range = range_factor / model.lambda();
    rep.worst_margin = 0.0;
    rep.worst_r = 0.0;
    bool first = true;
    for (int k = 0; k < grid_points; ++k) {
        const double r = range * k / std::max(1, grid_points - 1);
        const double margin = model.survival(r) - std::exp(-model.lambda() * r);
        if (first || margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_r = r;
            first = false;
        }
    }
    const bool positive = rep.rho_star > 0.0;
    // survival is computed in floating point; allow roundoff at the exponential's equality
    const bool dominates = rep.worst_margin >= -1e-12;
    rep.ok = positive && dominates;
    if (!positive)
        rep.message = "density minimum on [0,T] is zero";
    else if (!dominates)
        rep.message = "survival function drops below exp(-lambda r) at r = "
                      + std::to_string(rep.worst_r);
    return rep;
}

} // namespace branchpde
