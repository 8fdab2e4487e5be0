// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
//
// branchpde: command-line front end.
//
//   branchpde solve     --config c.json   Monte Carlo estimates as CSV (or JSON)
//   branchpde stability --config c.json   integrability report as JSON (or CSV)
//   branchpde progeny   --config c.json   dominating-series table as CSV
//   branchpde dump-tree --config c.json   one sampled tree as JSON lines
//   branchpde verify                      invariant suite, exit 0 iff all pass
//
// Exit codes: 0 success, 1 failed check or conditions, 2 lifetime model
// rejected, 3 configuration error.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "branchpde/errors.hpp"
#include "branchpde/estimator.hpp"
#include "branchpde/progeny.hpp"
#include "branchpde/stability.hpp"
#include "branchpde/tree.hpp"
#include "branchpde/verify.hpp"
#include "config.hpp"

using namespace branchpde;
using branchpde::cli::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitAssumption = 2;
constexpr int kExitConfig = 3;

struct Options
{
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::string format;
};

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("branchpde");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("BRANCHPDE_LOG"))
        spdlog::set_level(spdlog::level::from_str(env));
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Writes to --out when given, stdout otherwise.
class Output
{
  public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw ConfigError("out", "cannot open '" + path + "' for writing");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

json load(const Options& o)
{
    if (o.config.empty())
        throw ConfigError("config", "--config is required");
    return cli::load_config(o.config);
}

// ---- solve ----------------------------------------------------------------------

int cmd_solve(const Options& o)
{
    json cfg = load(o);
    const std::string name = cli::get_string(cfg, "problem", "");
    if (name.empty())
        throw ConfigError("problem", "missing problem name");
    const int d = cli::get_int(cfg, "d", 1);
    const double T = cli::require_number(cfg, "T");
    if (!(T > 0.0))
        throw ConfigError("T", "must be > 0");
    Problem problem;
    try {
        problem = make_problem(name, d, T);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("problem", e.what());
    }
    const LifetimeModel model = cli::lifetime_from(cfg, 1.0);
    const Code code = cli::code_from(cfg, d);

    EstimatorConfig ec;
    ec.n = cli::get_int(cfg, "n", 100000);
    ec.seed = o.seed ? *o.seed : static_cast<std::uint64_t>(cli::get_number(cfg, "seed", 0));
    ec.workers = o.workers ? *o.workers : cli::get_int(cfg, "workers", 0);
    ec.caps.max_branches = static_cast<std::int64_t>(cli::get_number(cfg, "caps.max_branches", 1e6));
    ec.caps.max_generation = cli::get_int(cfg, "caps.max_generation", 200);
    if (ec.n < 2)
        throw ConfigError("n", "must be >= 2");
    if (ec.workers < 0)
        throw ConfigError("workers", "must be >= 0");
    const std::string estimator = cli::get_string(cfg, "estimator", "mean");
    if (estimator != "mean" && estimator != "mom")
        throw ConfigError("estimator", "expected 'mean' or 'mom'");
    const int groups = cli::get_int(cfg, "groups", 9);
    if (estimator == "mom" && (groups < 3 || groups % 2 == 0))
        throw ConfigError("groups", "must be an odd number >= 3");

    std::vector<GridPoint> points;
    if (cfg.contains("points")) {
        if (!cfg["points"].is_array() || cfg["points"].empty())
            throw ConfigError("points", "expected a non-empty array of {t, x}");
        for (const auto& pj : cfg["points"]) {
            GridPoint gp;
            gp.t = cli::get_number(pj, "t", 0.0);
            if (!pj.contains("x") || !pj["x"].is_array() || static_cast<int>(pj["x"].size()) != d)
                throw ConfigError("points", "each point needs x with " + std::to_string(d) + " components");
            for (const auto& v : pj["x"]) {
                if (!v.is_number())
                    throw ConfigError("points", "x components must be numbers");
                gp.x.push_back(v.get<double>());
            }
            if (!(gp.t >= 0.0 && gp.t <= T))
                throw ConfigError("points", "t must lie in [0, T]");
            points.push_back(gp);
        }
    } else {
        points.push_back(GridPoint{0.0, std::vector<double>(static_cast<std::size_t>(d), 0.0)});
    }

    // resolved configuration, echoed into the output
    json resolved = cfg;
    resolved["problem"] = name;
    resolved["d"] = d;
    resolved["T"] = T;
    resolved["n"] = ec.n;
    resolved["seed"] = ec.seed;
    resolved["workers"] = ec.workers;
    resolved["estimator"] = estimator;
    if (estimator == "mom")
        resolved["groups"] = groups;
    resolved["code"] = json{{"alpha", std::vector<int>(code.alpha.components().begin(), code.alpha.components().end())},
                            {"j", code.j}};
    json pts = json::array();
    for (const auto& gp : points)
        pts.push_back(json{{"t", gp.t}, {"x", gp.x}});
    resolved["points"] = pts;
    if (!resolved.contains("lifetime"))
        resolved["lifetime"] = json{{"kind", "exponential"}, {"lambda", model.lambda()}};

    std::vector<Estimate> rows;
    for (const auto& gp : points) {
        spdlog::info("estimating u at t={} with n={}", gp.t, ec.n);
        if (estimator == "mean") {
            rows.push_back(estimate_u(code, gp.t, gp.x, T, problem, model, ec));
            continue;
        }
        Estimate mom = median_of_means(code, gp.t, gp.x, T, problem, model, ec, groups);
        const Estimate plain = estimate_u(code, gp.t, gp.x, T, problem, model, ec);
        if (std::abs(mom.mean - plain.mean) > 5.0 * plain.std_error)
            spdlog::warn("median-of-means {} differs from the sample mean {} by more than 5 standard errors",
                         mom.mean, plain.mean);
        rows.push_back(mom);
    }
    for (const auto& e : rows)
        if (e.n_capped > 0)
            spdlog::warn("{} samples hit the tree caps and were excluded", e.n_capped);

    Output out(o.out);
    if (o.format == "json") {
        json j{{"config", resolved}, {"estimates", json::array()}};
        for (std::size_t k = 0; k < rows.size(); ++k)
            j["estimates"].push_back(json{{"t", points[k].t}, {"x", points[k].x}, {"mean", rows[k].mean},
                                          {"std_error", rows[k].std_error}, {"n", rows[k].n_samples},
                                          {"n_capped", rows[k].n_capped}});
        out.os() << j.dump(2) << '\n';
    } else {
        out.os() << "# config=" << resolved.dump() << '\n';
        write_estimates_csv(out.os(), code, points, rows, ec.seed);
    }
    return 0;
}

// ---- stability --------------------------------------------------------------------

GrowthParams stability_params(const json& cfg, double T)
{
    GrowthParams p = cli::growth_from(cfg);
    p.T = T;
    if (cli::get_string(cfg, "deltas", "given") == "horizon")
        p = with_horizon_deltas(p, T);
    return p;
}

json conditions_json(const ConditionReport& rep)
{
    json arr = json::array();
    for (const auto& c : rep.conditions)
        arr.push_back(json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
    return arr;
}

int cmd_stability(const Options& o)
{
    json cfg = load(o);
    const std::string deltas = cli::get_string(cfg, "deltas", "given");
    if (deltas != "given" && deltas != "horizon")
        throw ConfigError("deltas", "expected 'given' or 'horizon'");
    const double T = cli::require_number(cfg, "T");
    if (!(T > 0.0))
        throw ConfigError("T", "must be > 0");
    const GrowthParams p = stability_params(cfg, T);
    const LifetimeModel model = cli::lifetime_from(cfg, p.lambda);
    const int m_max = cli::get_int(cfg, "m_max", 4);
    if (m_max < 0)
        throw ConfigError("m_max", "must be >= 0");

    const ConditionReport rep = check_conditions(p, model);
    const HorizonReport hz = max_horizon(p);
    json report{{"config", cfg}, {"params", cli::growth_to_json(p)}, {"pass", rep.pass},
                {"conditions", conditions_json(rep)}, {"t_max", hz.t_max}, {"t_envelope", hz.envelope},
                {"domination", check_domination_condition(p.regime, p.theta, p.r, p.d).pass},
                {"weight_algebra", verify_weight_dominance_algebra(p)}};

    json hb = json::array();
    for (int m = 0; m <= m_max; ++m) {
        MultiIndex a(p.d);
        a.set(0, m);
        json row{{"alpha_abs", m}};
        if (rep.pass)
            row["hbound"] = hbound(a, 0, p);
        else
            row["hbound"] = nullptr;
        hb.push_back(row);
    }
    report["hbound"] = hb;

    if (cfg.contains("sweep_T")) {
        if (!cfg["sweep_T"].is_array())
            throw ConfigError("sweep_T", "expected an array of horizons");
        json sw = json::array();
        for (const auto& tv : cfg["sweep_T"]) {
            if (!tv.is_number() || !(tv.get<double>() > 0.0))
                throw ConfigError("sweep_T", "horizons must be positive numbers");
            const GrowthParams q = stability_params(cfg, tv.get<double>());
            const auto r = check_conditions(q, cli::lifetime_from(cfg, q.lambda));
            json failing = json::array();
            for (const auto& c : r.conditions)
                if (!c.pass)
                    failing.push_back(c.name);
            sw.push_back(json{{"T", q.T}, {"pass", r.pass}, {"failing", failing}});
        }
        report["sweep"] = sw;
    }

    if (cfg.contains("code_bounds")) {
        const json& cb = cfg["code_bounds"];
        json merged = cfg;
        for (auto it = cb.begin(); it != cb.end(); ++it)
            merged[it.key()] = it.value();
        const GrowthParams q = stability_params(merged, T);
        Problem prob;
        try {
            prob = make_problem(cli::get_string(cb, "problem", "b2"), 1, T);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("code_bounds.problem", e.what());
        }
        const double lo = cli::get_number(cb, "grid.lo", -10.0);
        const double hi = cli::get_number(cb, "grid.hi", 10.0);
        const int npts = cli::get_int(cb, "grid.points", 201);
        if (npts < 2 || !(hi > lo))
            throw ConfigError("code_bounds.grid", "need points >= 2 and hi > lo");
        std::vector<double> grid;
        for (int k = 0; k < npts; ++k)
            grid.push_back(lo + (hi - lo) * k / (npts - 1));
        const auto cr = verify_code_bounds(prob, q, grid, cli::get_int(cb, "m_max", 8), cli::get_int(cb, "k_max", 4));
        json rows = json::array();
        for (const auto& r : cr.rows)
            rows.push_back(json{{"m", r.m}, {"rhs", r.rhs}, {"phi_max", r.phi_max}, {"f_max", r.f_max},
                                {"worst_x", r.worst_x}, {"worst_at_edge", r.worst_at_edge}});
        report["code_bounds"] = json{{"rows", rows},
                                     {"scale", cr.scale},
                                     {"phi_pass", cr.phi_pass},
                                     {"f_pass", cr.f_pass},
                                     {"phi_pass_scaled", cr.phi_pass_scaled},
                                     {"f_pass_scaled", cr.f_pass_scaled},
                                     {"grid", {{"lo", lo}, {"hi", hi}, {"points", npts}}}};
    }

    Output out(o.out);
    if (o.format == "csv") {
        out.os() << "# config=" << cfg.dump() << '\n' << "name,lhs,rhs,pass\n";
        for (const auto& c : rep.conditions)
            out.os() << c.name << ',' << num(c.lhs) << ',' << num(c.rhs) << ',' << (c.pass ? "true" : "false")
                     << '\n';
    } else {
        out.os() << report.dump(2) << '\n';
    }
    if (!rep.pass)
        for (const auto& c : rep.conditions)
            if (!c.pass)
                spdlog::warn("condition {} fails: lhs {} rhs {}", c.name, c.lhs, c.rhs);
    return rep.pass ? 0 : kExitFail;
}

// ---- progeny ----------------------------------------------------------------------

int cmd_progeny(const Options& o)
{
    json cfg = load(o);
    const GrowthParams p = cli::growth_from(cfg);
    const int kmax = cli::get_int(cfg, "kmax", 6);
    const int alpha_max = cli::get_int(cfg, "alpha_max", 3);
    if (kmax < 0)
        throw ConfigError("kmax", "must be >= 0");
    if (alpha_max < 0)
        throw ConfigError("alpha_max", "must be >= 0");
    const std::string backend = cli::get_string(cfg, "backend", "exact");
    if (backend != "exact" && backend != "float")
        throw ConfigError("backend", "expected 'exact' or 'float'");

    const double radius = p.regime == Regime::Factorial ? radius_factorial(p.theta, p.r, p.d)
                                                        : radius_exponential(p.theta, p.d);
    auto bound_cell = [&](const MultiIndex& a) -> std::string {
        if (!(p.T > 0.0))
            return "";
        try {
            return num(bound_report(a, p).bound);
        } catch (const OutsideRadius&) {
            return "";
        }
    };
    auto alpha_cell = [](const MultiIndex& a) {
        std::string s;
        for (int k = 0; k < a.dim(); ++k)
            s += (k ? ";" : "") + std::to_string(a[k]);
        return s;
    };

    Output out(o.out);
    out.os() << "# config=" << cfg.dump() << '\n';
    const std::string regime = to_string(p.regime);
    if (backend == "exact") {
        const Rational theta(p.theta), r(p.r);
        const std::function<Rational(const MultiIndex&)> g = [&](const MultiIndex& a) {
            return p.regime == Regime::Factorial ? factorial_g<Rational>(a, theta, r) : exponential_g<Rational>(a, theta);
        };
        const auto table = ahat_recursion<Rational>(g, p.d, alpha_max, kmax);
        out.os() << "alpha,k,A_exact_num,A_exact_den,regime,radius,bound\n";
        for (const auto& a : mi_enumerate_up_to(p.d, alpha_max)) {
            const std::string b = bound_cell(a);
            for (int k = 0; k <= kmax; ++k) {
                const Rational& v = table.at(a, k);
                out.os() << alpha_cell(a) << ',' << k << ',' << numerator(v) << ',' << denominator(v) << ','
                         << regime << ',' << num(radius) << ',' << b << '\n';
            }
        }
    } else {
        const std::function<double(const MultiIndex&)> g = [&](const MultiIndex& a) { return growth_g(p, a); };
        out.os() << "alpha,k,A,regime,radius,bound\n";
        for (const auto& a : mi_enumerate_up_to(p.d, alpha_max)) {
            const std::string b = bound_cell(a);
            const auto seq = ahat_sequence<double>(g, p.d, a, kmax);
            for (int k = 0; k <= kmax; ++k)
                out.os() << alpha_cell(a) << ',' << k << ',' << num(seq[static_cast<std::size_t>(k)]) << ','
                         << regime << ',' << num(radius) << ',' << b << '\n';
        }
    }
    return 0;
}

// ---- dump-tree --------------------------------------------------------------------

int cmd_dump_tree(const Options& o)
{
    json cfg = load(o);
    const int d = cli::get_int(cfg, "d", 1);
    if (d < 1 || d > kMaxDim)
        throw ConfigError("d", "out of range");
    const double T = cli::require_number(cfg, "T");
    const double t = cli::get_number(cfg, "t", 0.0);
    if (!(T > 0.0) || !(t >= 0.0 && t <= T))
        throw ConfigError("t", "need 0 <= t <= T and T > 0");
    const Code code = cli::code_from(cfg, d);
    const std::uint64_t seed = o.seed ? *o.seed : static_cast<std::uint64_t>(cli::get_number(cfg, "seed", 0));
    const auto sample = static_cast<std::uint64_t>(cli::get_number(cfg, "sample", 0));
    cfg["seed"] = seed;
    const Stream stream = Stream::for_sample(seed, sample);

    TreeSample tree;
    if (cfg.value("dominating", false)) {
        if (code.j < 0)
            throw ConfigError("code.j", "the dominating chain starts from j >= 0");
        const double lambda = cli::get_number(cfg, "lifetime.lambda", 1.0);
        if (!(lambda > 0.0))
            throw ConfigError("lifetime.lambda", "must be > 0");
        tree = sample_dominating_tree(code.alpha, code.j, t, T, lambda, d, stream);
    } else {
        std::vector<double> x(static_cast<std::size_t>(d), 0.0);
        if (cfg.contains("x")) {
            if (!cfg["x"].is_array() || static_cast<int>(cfg["x"].size()) != d)
                throw ConfigError("x", "expected " + std::to_string(d) + " numbers");
            for (int k = 0; k < d; ++k)
                x[static_cast<std::size_t>(k)] = cfg["x"][static_cast<std::size_t>(k)].get<double>();
        }
        tree = sample_tree(code, t, x, T, cli::lifetime_from(cfg, 1.0), d, stream);
    }
    Output out(o.out);
    out.os() << "# config=" << cfg.dump() << '\n';
    write_tree_jsonl(tree, out.os());
    return 0;
}

// ---- verify -------------------------------------------------------------------------

int cmd_verify(const Options& o, bool inject_fault, std::int64_t samples)
{
    VerifyOptions vo;
    if (o.seed)
        vo.seed = *o.seed;
    if (o.workers)
        vo.workers = *o.workers;
    vo.mc_samples = samples;
    vo.inject_fault = inject_fault;
    const auto results = run_verification(vo);
    Output out(o.out);
    print_matrix(out.os(), results);
    for (const auto& r : results)
        if (!r.pass)
            return kExitFail;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    setup_logging();
    CLI::App app{"Branching-diffusion Monte Carlo for semilinear heat equations"};
    app.require_subcommand(1);
    Options o;
    std::uint64_t seed = 0;
    int workers = 0;
    std::array<std::string, 5> formats{"csv", "json", "csv", "csv", "csv"};
    auto common = [&](CLI::App* sub, bool needs_config, std::string& format) {
        if (needs_config)
            sub->add_option("--config", o.config, "JSON config, or an earlier output carrying one")->required();
        sub->add_option("--out", o.out, "output path (default stdout)");
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--workers", workers, "override the worker count");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto* solve = app.add_subcommand("solve", "Monte Carlo estimates of u_c(t, x)");
    common(solve, true, formats[0]);
    auto* stab = app.add_subcommand("stability", "integrability conditions, horizons and bounds");
    common(stab, true, formats[1]);
    auto* prog = app.add_subcommand("progeny", "table of the dominating series");
    common(prog, true, formats[2]);
    auto* dump = app.add_subcommand("dump-tree", "sample one tree and write it as JSON lines");
    common(dump, true, formats[3]);
    auto* ver = app.add_subcommand("verify", "run the invariant suite");
    common(ver, false, formats[4]);
    bool inject = false;
    std::int64_t samples = 200000;
    ver->add_flag("--inject-fault", inject)->group(""); // test hook, hidden from help
    ver->add_option("--samples", samples, "Monte Carlo samples per statistical check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }
    const std::array<CLI::App*, 5> subs{solve, stab, prog, dump, ver};
    for (std::size_t k = 0; k < subs.size(); ++k) {
        CLI::App* sub = subs[k];
        if (!*sub)
            continue;
        o.format = formats[k];
        if (sub->count("--seed"))
            o.seed = seed;
        if (sub->count("--workers"))
            o.workers = workers;
    }
    if (o.workers && *o.workers < 0) {
        spdlog::error("workers: must be >= 0");
        return kExitConfig;
    }

    try {
        if (*solve)
            return cmd_solve(o);
        if (*stab)
            return cmd_stability(o);
        if (*prog)
            return cmd_progeny(o);
        if (*dump)
            return cmd_dump_tree(o);
        return cmd_verify(o, inject, samples);
    } catch (const ConfigError& e) {
        spdlog::error("config error in {}", e.what());
        return kExitConfig;
    } catch (const AssumptionHViolated& e) {
        spdlog::error("{}", e.what());
        return kExitAssumption;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitFail;
    }
}
