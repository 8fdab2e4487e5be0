// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <omp.h>

namespace branchpde {

namespace {

void check_request(const Code& c, double t, std::span<const double> x, double T,
                   const Problem& problem, const LifetimeModel& model, const EstimatorConfig& cfg)
{
    if (cfg.n < 2)
        throw std::invalid_argument("estimator needs n >= 2 samples");
    if (c.alpha.dim() != problem.d || static_cast<int>(x.size()) != problem.d)
        throw std::invalid_argument("code / point dimension does not match the problem");
    if (!(t >= 0.0) || !(t <= T))
        throw std::invalid_argument("need 0 <= t <= T");
    if (t < T) {
        const auto rep = validate_assumption_h(model, T);
        if (!rep.ok)
            throw AssumptionHViolated("lifetime model " + model.describe() + ": " + rep.message);
    }
}

double one_sample(const Code& c, double t, std::span<const double> x, double T,
                  const Problem& problem, const LifetimeModel& model, const EstimatorConfig& cfg,
                  std::int64_t k)
{
    try {
        return sample_functional(c, t, x, T, model, problem.d, problem.oracle,
                                 Stream::for_sample(cfg.seed, static_cast<std::uint64_t>(k)), cfg.caps);
    } catch (const CapExceeded&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Estimate terminal_estimate(const Code& c, std::span<const double> x, const Problem& problem,
                           const EstimatorConfig& cfg)
{
    Estimate e;
    e.mean = problem.oracle(c, x);
    e.std_error = 0.0;
    e.n_samples = cfg.n;
    return e;
}

} // namespace

double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 16) {
        double s = 0.0;
        for (double a : v)
            s += a;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

Estimate summarize(std::span<const double> values)
{
    std::vector<double> ok;
    ok.reserve(values.size());
    for (double v : values)
        if (!std::isnan(v))
            ok.push_back(v);
    Estimate e;
    e.n_samples = static_cast<std::int64_t>(values.size());
    e.n_capped = e.n_samples - static_cast<std::int64_t>(ok.size());
    if (ok.empty())
        throw AllSamplesCapped("all " + std::to_string(values.size()) + " samples hit the tree caps");
    const double n = static_cast<double>(ok.size());
    e.mean = pairwise_sum(ok) / n;
    if (ok.size() > 1) {
        for (double& v : ok)
            v = (v - e.mean) * (v - e.mean);
        e.std_error = std::sqrt(pairwise_sum(ok) / (n - 1.0) / n);
    }
    return e;
}

std::vector<double> sample_functionals(const Code& c, double t, std::span<const double> x, double T,
                                       const Problem& problem, const LifetimeModel& model,
                                       const EstimatorConfig& cfg)
{
    std::vector<double> h(static_cast<std::size_t>(cfg.n));
    std::exception_ptr failure;
    const int workers = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 256) num_threads(workers)
    for (std::int64_t k = 0; k < cfg.n; ++k) {
        try {
            h[static_cast<std::size_t>(k)] = one_sample(c, t, x, T, problem, model, cfg, k);
        } catch (...) {
#pragma omp critical(branchpde_estimator_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return h;
}

std::vector<double> sample_functionals_serial(const Code& c, double t, std::span<const double> x,
                                              double T, const Problem& problem,
                                              const LifetimeModel& model, const EstimatorConfig& cfg)
{
    std::vector<double> h(static_cast<std::size_t>(cfg.n));
    for (std::int64_t k = 0; k < cfg.n; ++k)
        h[static_cast<std::size_t>(k)] = one_sample(c, t, x, T, problem, model, cfg, k);
    return h;
}

Estimate estimate_u(const Code& c, double t, std::span<const double> x, double T,
                    const Problem& problem, const LifetimeModel& model, const EstimatorConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    check_request(c, t, x, T, problem, model, cfg);
    if (t == T)
        return terminal_estimate(c, x, problem, cfg);
    Estimate e = summarize(sample_functionals(c, t, x, T, problem, model, cfg));
    e.elapsed = seconds_since(t0);
    return e;
}

Estimate estimate_u_serial(const Code& c, double t, std::span<const double> x, double T,
                           const Problem& problem, const LifetimeModel& model,
                           const EstimatorConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    check_request(c, t, x, T, problem, model, cfg);
    if (t == T)
        return terminal_estimate(c, x, problem, cfg);
    Estimate e = summarize(sample_functionals_serial(c, t, x, T, problem, model, cfg));
    e.elapsed = seconds_since(t0);
    return e;
}

Estimate median_of_means(const Code& c, double t, std::span<const double> x, double T,
                         const Problem& problem, const LifetimeModel& model,
                         const EstimatorConfig& cfg, int groups)
{
    if (groups != 1 && (groups < 3 || groups % 2 == 0))
        throw std::invalid_argument("median-of-means needs 1 or an odd number >= 3 of groups");
    if (groups == 1)
        return estimate_u(c, t, x, T, problem, model, cfg);
    if (cfg.n < 2 * static_cast<std::int64_t>(groups))
        throw std::invalid_argument("median-of-means needs at least two samples per group");
    const auto t0 = std::chrono::steady_clock::now();
    check_request(c, t, x, T, problem, model, cfg);
    if (t == T)
        return terminal_estimate(c, x, problem, cfg);
    const auto h = sample_functionals(c, t, x, T, problem, model, cfg);

    std::vector<double> means;
    std::int64_t capped = 0;
    for (int g = 0; g < groups; ++g) {
        const auto lo = static_cast<std::size_t>(cfg.n * g / groups);
        const auto hi = static_cast<std::size_t>(cfg.n * (g + 1) / groups);
        const auto part = std::span<const double>(h).subspan(lo, hi - lo);
        try {
            Estimate ge = summarize(part);
            capped += ge.n_capped;
            means.push_back(ge.mean);
        } catch (const AllSamplesCapped&) {
            capped += static_cast<std::int64_t>(part.size());
        }
    }
    if (means.empty())
        throw AllSamplesCapped("every median-of-means group was fully capped");
    std::vector<double> sorted = means;
    std::sort(sorted.begin(), sorted.end());
    Estimate e;
    const std::size_t m = sorted.size();
    e.mean = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    const double gm = pairwise_sum(means) / static_cast<double>(m);
    double ss = 0.0;
    for (double v : means)
        ss += (v - gm) * (v - gm);
    const double sd = m > 1 ? std::sqrt(ss / static_cast<double>(m - 1)) : 0.0;
    e.std_error = std::sqrt(std::numbers::pi / 2.0) * sd / std::sqrt(static_cast<double>(m));
    e.n_samples = cfg.n;
    e.n_capped = capped;
    e.elapsed = seconds_since(t0);
    return e;
}

std::vector<Estimate> estimate_grid(const Code& c, const std::vector<GridPoint>& points, double T,
                                    const Problem& problem, const LifetimeModel& model,
                                    const EstimatorConfig& cfg)
{
    std::vector<Estimate> out;
    out.reserve(points.size());
    for (const auto& p : points)
        out.push_back(estimate_u(c, p.t, p.x, T, problem, model, cfg));
    return out;
}

void write_estimates_csv(std::ostream& os, const Code& c, const std::vector<GridPoint>& points,
                         const std::vector<Estimate>& rows, std::uint64_t seed, bool header)
{
    if (points.size() != rows.size())
        throw std::invalid_argument("points and estimates differ in length");
    const int d = c.alpha.dim();
    if (header) {
        os << "t";
        for (int k = 0; k < d; ++k)
            os << ",x" << (d == 1 ? std::string() : std::to_string(k + 1));
        os << ",code_alpha,code_j,mean,std_error,n,n_capped,seed\n";
    }
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::string alpha;
    for (int k = 0; k < d; ++k)
        alpha += (k ? ";" : "") + std::to_string(c.alpha[k]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        os << num(points[r].t);
        for (double v : points[r].x)
            os << ',' << num(v);
        os << ',' << alpha << ',' << c.j << ',' << num(rows[r].mean) << ',' << num(rows[r].std_error)
           << ',' << rows[r].n_samples << ',' << rows[r].n_capped << ',' << seed << '\n';
    }
}

} // namespace branchpde
