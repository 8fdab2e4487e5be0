// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "branchpde/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "branchpde/combinatorics.hpp"
#include "branchpde/estimator.hpp"
#include "branchpde/mechanism.hpp"
#include "branchpde/problems.hpp"
#include "branchpde/progeny.hpp"
#include "branchpde/stability.hpp"

namespace branchpde {

namespace {

using RationalG = std::function<Rational(const MultiIndex&)>;

struct Suite
{
    const VerifyOptions& opts;
    std::vector<CheckResult> results;

    void run(const std::string& name, const std::function<bool(std::string&)>& body)
    {
        CheckResult r;
        r.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.pass = body(r.detail);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(r));
    }
};

bool identities(std::string& detail)
{
    for (int m = 1; m <= 15; ++m)
        polylog_neg_half(m); // throws if the two evaluations disagree
    for (int k = 0; k <= 15; ++k)
        if (!tree_identity_check(k)) {
            detail = "tree identity fails at k=" + std::to_string(k);
            return false;
        }
    detail = "polylog 1<=m<=15, tree k<=15";
    return true;
}

bool offspring_normalization(std::string& detail)
{
    for (int d = 1; d <= 3; ++d)
        for (const auto& a : mi_enumerate_up_to(d, 5)) {
            for (int i = 1; i <= d; ++i)
                if (directional_normalizer_sum(a, i) != directional_normalizer_closed(a, i)) {
                    detail = "normalizer mismatch at " + a.to_string();
                    return false;
                }
            for (int j = -1; j <= 1; ++j) {
                const Code c{a, j};
                Rational total = 0;
                for (const auto& e : offspring_set(c, d))
                    total += offspring_prob_exact(c, e, d);
                if (total != 1) {
                    detail = "sum q != 1 at " + c.to_string();
                    return false;
                }
            }
        }
    detail = "|alpha|<=5, d<=3";
    return true;
}

bool closed_forms(std::string& detail, bool fault)
{
    const Rational one = 1;
    const RationalG fg = [&](const MultiIndex& a) { return factorial_g<Rational>(a, one, one); };
    const RationalG eg = [&](const MultiIndex& a) { return exponential_g<Rational>(a, one); };
    const auto gs_f = factorial_g_star(one, one, 16);
    const auto gs_e = exponential_g_star(one, 16);
    for (int d = 1; d <= 2; ++d) {
        const auto tf = ahat_recursion<Rational>(fg, d, 4, 6);
        const auto te = ahat_recursion<Rational>(eg, d, 4, 6);
        for (const auto& a : mi_enumerate_up_to(d, 4)) {
            if (mi_abs(a) == 0)
                continue;
            for (int k = 0; k <= 6; ++k) {
                Rational cf = ahat_closed_factorial_exact(one, 1, d, a, k);
                if (fault && d == 2 && k == 6)
                    cf += 1;
                if (tf.at(a, k) != cf) {
                    detail = "factorial closed form differs at " + a.to_string() + ", k=" + std::to_string(k);
                    return false;
                }
                if (te.at(a, k) != ahat_closed_exponential_exact(one, d, a, k)) {
                    detail = "exponential closed form differs at " + a.to_string() + ", k=" + std::to_string(k);
                    return false;
                }
                if (k <= 4 && (ahat_composition_form(gs_f, d, a, k) != tf.at(a, k)
                               || ahat_composition_form(gs_e, d, a, k) != te.at(a, k))) {
                    detail = "composition form differs at " + a.to_string() + ", k=" + std::to_string(k);
                    return false;
                }
            }
        }
    }
    detail = "k<=6, |alpha|<=4, d in {1,2}, exact";
    return true;
}

bool domination(std::string& detail)
{
    for (int d = 1; d <= 2; ++d) {
        GrowthParams p;
        p.theta = 2.0;
        p.r = 1.0;
        p.d = d;
        const Rational theta = 2, r = 1;
        const RationalG g = [&](const MultiIndex& a) { return factorial_g<Rational>(a, theta, r); };
        const auto ahat = ahat_recursion<Rational>(g, d, 4, 6);
        const auto w = dominating_weights(build_weights_exact(p));
        const auto A = a_table<Rational>(w, d, 4, 6);
        for (const auto& [key, v] : A.values)
            if (v > ahat.at(key.first, key.second)) {
                detail = "A > Ahat at " + key.first.to_string() + ", k=" + std::to_string(key.second);
                return false;
            }
    }
    detail = "factorial preset theta=2, r=1, k<=6, |alpha|<=4, d in {1,2}";
    return true;
}

bool hj_and_weights(std::string& detail)
{
    const RationalG ones = [](const MultiIndex&) { return Rational(1); };
    const RationalG expo = [](const MultiIndex& a) { return exponential_g<Rational>(a, Rational(1)); };
    if (!contact_hj_consistency(ones, 1, 4, 3) || !contact_hj_consistency(expo, 2, 3, 2)) {
        detail = "contact HJ coefficient identity fails";
        return false;
    }
    GrowthParams f;
    f.theta = 2.0;
    GrowthParams e;
    e.regime = Regime::Exponential;
    e.theta = std::sqrt(2.0);
    if (!verify_weight_dominance_algebra(f) || !verify_weight_dominance_algebra(e)) {
        detail = "weight dominance algebra fails for a preset";
        return false;
    }
    detail = "contact HJ exact; presets factorial theta=2 and exponential theta=sqrt2";
    return true;
}

bool horizon(std::string& detail)
{
    GrowthParams p;
    p.theta = 2.0;
    p.r = 1.0;
    p.lambda = 1.0;
    const auto h = max_horizon(p);
    const auto model = LifetimeModel::exponential(p.lambda);
    const bool below = check_conditions(with_horizon_deltas(p, h.t_max - 1e-9), model).pass;
    const bool above = check_conditions(with_horizon_deltas(p, h.t_max + 1e-9), model).pass;
    p.lambda = 1e-12;
    const double env = max_horizon(p).t_max;
    std::ostringstream os;
    os << std::setprecision(10) << "t_max=" << h.t_max << " envelope=" << h.envelope;
    detail = os.str();
    return below && !above && std::abs(env - h.envelope) <= 1e-9;
}

bool radii(std::string& detail)
{
    const MultiIndex a{1};
    const double rf = ahat_closed_factorial(1.0, 1.0, 1, a, 199) / ahat_closed_factorial(1.0, 1.0, 1, a, 200);
    const double re = ahat_closed_exponential(1.0, 1, a, 199) / ahat_closed_exponential(1.0, 1, a, 200);
    const double Rf = radius_factorial(1.0, 1.0, 1);
    const double Re = radius_exponential(1.0, 1);
    std::ostringstream os;
    os << "ratio/R: factorial " << rf / Rf << ", exponential " << re / Re;
    detail = os.str();
    return std::abs(rf / Rf - 1.0) < 0.05 && std::abs(re / Re - 1.0) < 0.05;
}

bool b2_end_to_end(std::string& detail, const VerifyOptions& opts)
{
    const Problem prob = b2_problem(0.1);
    EstimatorConfig cfg;
    cfg.n = opts.mc_samples;
    cfg.seed = opts.seed;
    cfg.workers = opts.workers;
    const auto model = LifetimeModel::exponential(1.0);
    const std::vector<double> x{0.0};
    const Estimate e = estimate_u(identity_code(1), 0.0, x, 0.1, prob, model, cfg);
    const double exact = prob.exact(0.0, x);
    std::ostringstream os;
    os << std::setprecision(8) << "mean=" << e.mean << " se=" << e.std_error << " exact=" << exact;
    detail = os.str();
    return std::abs(e.mean - exact) <= 4.0 * e.std_error && e.std_error <= 0.02;
}

bool progeny_law(std::string& detail, const VerifyOptions& opts)
{
    const double lam = 1.0, h = std::log(2.0);
    const std::int64_t n = opts.mc_samples;
    std::vector<std::int64_t> counts(16, 0);
    for (std::int64_t k = 0; k < n; ++k) {
        const auto tree = sample_dominating_tree(MultiIndex{0}, 0, 0.0, h, lam, 1,
                                                 Stream::for_sample(opts.seed + 1, static_cast<std::uint64_t>(k)));
        const auto m = total_progeny(tree);
        if (m < 16)
            ++counts[static_cast<std::size_t>(m)];
    }
    double worst = 0.0;
    for (int m = 1; m < 14; ++m) {
        const double emp = static_cast<double>(counts[static_cast<std::size_t>(m)]) / static_cast<double>(n);
        if (m % 2 == 0 && counts[static_cast<std::size_t>(m)] != 0)
            return false;
        worst = std::max(worst, std::abs(emp - progeny_pmf(lam, h, m)));
    }
    detail = "max bin deviation " + std::to_string(worst);
    return worst <= 0.01;
}

} // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts)
{
    Suite s{opts, {}};
    s.run("identities", identities);
    s.run("offspring-normalization", offspring_normalization);
    s.run("closed-forms", [&](std::string& d) { return closed_forms(d, opts.inject_fault); });
    s.run("radii", radii);
    s.run("domination", domination);
    s.run("contact-hj-and-weights", hj_and_weights);
    s.run("max-horizon", horizon);
    s.run("progeny-law", [&](std::string& d) { return progeny_law(d, opts); });
    s.run("b2-end-to-end", [&](std::string& d) { return b2_end_to_end(d, opts); });
    return s.results;
}

void print_matrix(std::ostream& os, const std::vector<CheckResult>& results)
{
    for (const auto& r : results)
        os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(26) << r.name << ' '
           << std::fixed << std::setprecision(2) << r.seconds << "s  " << std::defaultfloat << r.detail
           << '\n';
}

} // namespace branchpde
