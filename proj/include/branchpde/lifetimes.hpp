// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace branchpde {

/// Lifetime law of a branch: density ρ, survival ρ̄ and an inverse-CDF sampler.
///
/// Two families: exponential(λ) and a tabulated density given by (r, ρ) knots
/// with linear interpolation (zero past the last knot, renormalized to unit mass).
/// Immutable after construction.
class LifetimeModel
{
  public:
    enum class Kind { Exponential, Tabulated };

    static LifetimeModel exponential(double lambda);
    /// `lambda` is the rate the survival function is claimed to dominate.
    static LifetimeModel tabulated(std::vector<std::pair<double, double>> knots, double lambda);

    Kind kind() const { return kind_; }
    double lambda() const { return lambda_; }

    double density(double r) const;
    double survival(double r) const;
    /// min over s in [0, T] of the density.
    double rho_star(double T) const;
    /// Inverse-CDF sample, u in [0,1).
    double sample(double u) const;

    std::string describe() const;

  private:
    LifetimeModel() = default;
    std::size_t segment(double r) const;

    Kind kind_ = Kind::Exponential;
    double lambda_ = 1.0;
    std::vector<double> r_, rho_, cdf_; // tabulated only; cdf_ at knots
};

inline double sample_lifetime(const LifetimeModel& model, double u) { return model.sample(u); }

struct AssumptionHReport
{
    double rho_star = 0.0;
    double lambda = 0.0;
    bool ok = false;
    double worst_margin = 0.0; ///< min over the grid of ρ̄(r) - e^{-λr}
    double worst_r = 0.0;
    std::string message;
};

/// Checks ρ_*(T) > 0 and ρ̄(r) >= e^{-λr} on `grid_points` points of [0, range_factor/λ].
AssumptionHReport validate_assumption_h(const LifetimeModel& model, double T,
                                        int grid_points = 1000, double range_factor = 10.0);

} // namespace branchpde
