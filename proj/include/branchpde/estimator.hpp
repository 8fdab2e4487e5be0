// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "branchpde/lifetimes.hpp"
#include "branchpde/problems.hpp"
#include "branchpde/tree.hpp"

namespace branchpde {

struct Estimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
    std::int64_t n_capped = 0;
    double elapsed = 0.0; ///< seconds
};

struct EstimatorConfig
{
    std::int64_t n = 100000;
    std::uint64_t seed = 0;
    int workers = 0; ///< 0 = OpenMP default
    TreeCaps caps{};
};

/// Per-sample functional values for samples [0, n); capped samples are NaN.
/// Sample k uses the stream Stream::for_sample(seed, k), so the vector does not
/// depend on the worker count.
std::vector<double> sample_functionals(const Code& c, double t, std::span<const double> x, double T,
                                       const Problem& problem, const LifetimeModel& model,
                                       const EstimatorConfig& cfg);

/// Single-threaded reference for sample_functionals.
std::vector<double> sample_functionals_serial(const Code& c, double t, std::span<const double> x,
                                              double T, const Problem& problem,
                                              const LifetimeModel& model, const EstimatorConfig& cfg);

/// Mean and standard error over the non-NaN values, by pairwise summation.
/// Throws AllSamplesCapped if every value is NaN.
Estimate summarize(std::span<const double> values);

/// Sum by recursive halving; order-fixed, so the result depends only on the input.
double pairwise_sum(std::span<const double> values);

/// Monte Carlo estimate of u_c(t, x). Throws AssumptionHViolated, AllSamplesCapped,
/// std::invalid_argument (n < 2, bad dimensions).
Estimate estimate_u(const Code& c, double t, std::span<const double> x, double T,
                    const Problem& problem, const LifetimeModel& model, const EstimatorConfig& cfg);

/// Same estimate computed without OpenMP.
Estimate estimate_u_serial(const Code& c, double t, std::span<const double> x, double T,
                           const Problem& problem, const LifetimeModel& model,
                           const EstimatorConfig& cfg);

/// Median of the means of `groups` contiguous blocks of samples; std_error is
/// √(π/2)·sd(block means)/√groups. groups = 1 reduces to estimate_u.
/// Requires groups = 1 or an odd number >= 3.
Estimate median_of_means(const Code& c, double t, std::span<const double> x, double T,
                         const Problem& problem, const LifetimeModel& model,
                         const EstimatorConfig& cfg, int groups);

struct GridPoint
{
    double t = 0.0;
    std::vector<double> x;
};

/// estimate_u at each point with the shared configuration.
std::vector<Estimate> estimate_grid(const Code& c, const std::vector<GridPoint>& points, double T,
                                    const Problem& problem, const LifetimeModel& model,
                                    const EstimatorConfig& cfg);

/// CSV rows: t, x..., code_alpha, code_j, mean, std_error, n, n_capped, seed.
/// code_alpha is written as ';'-joined components.
void write_estimates_csv(std::ostream& os, const Code& c, const std::vector<GridPoint>& points,
                         const std::vector<Estimate>& rows, std::uint64_t seed, bool header = true);

} // namespace branchpde
