// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <fstream>
#include <sstream>

#include "branchpde/errors.hpp"

namespace branchpde::cli {

namespace {

const json* find(const json& j, const std::string& path)
{
    const json* cur = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!cur->is_object() || !cur->contains(key))
            return nullptr;
        cur = &(*cur)[key];
        if (dot == std::string::npos)
            return cur;
        start = dot + 1;
    }
}

json parse_or_throw(const std::string& text, const std::string& where)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(where, std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

json load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const std::string tag = "# config=";
    if (text.rfind(tag, 0) == 0) {
        const auto eol = text.find('\n');
        return parse_or_throw(text.substr(tag.size(), eol == std::string::npos ? std::string::npos : eol - tag.size()),
                              "config");
    }
    json j = parse_or_throw(text, "config");
    if (!j.is_object())
        throw ConfigError("config", "top level must be a JSON object");
    if (j.contains("config") && j["config"].is_object())
        return j["config"];
    return j;
}

double get_number(const json& j, const std::string& field, double fallback)
{
    const json* v = find(j, field);
    if (!v)
        return fallback;
    if (!v->is_number())
        throw ConfigError(field, "expected a number");
    return v->get<double>();
}

double require_number(const json& j, const std::string& field)
{
    if (!find(j, field))
        throw ConfigError(field, "missing required number");
    return get_number(j, field, 0.0);
}

int get_int(const json& j, const std::string& field, int fallback)
{
    const json* v = find(j, field);
    if (!v)
        return fallback;
    if (!v->is_number_integer())
        throw ConfigError(field, "expected an integer");
    return v->get<int>();
}

std::string get_string(const json& j, const std::string& field, const std::string& fallback)
{
    const json* v = find(j, field);
    if (!v)
        return fallback;
    if (!v->is_string())
        throw ConfigError(field, "expected a string");
    return v->get<std::string>();
}

LifetimeModel lifetime_from(const json& cfg, double fallback_lambda)
{
    const std::string kind = get_string(cfg, "lifetime.kind", "exponential");
    const double lambda = get_number(cfg, "lifetime.lambda", fallback_lambda);
    if (!(lambda > 0.0))
        throw ConfigError("lifetime.lambda", "must be > 0");
    if (kind == "exponential")
        return LifetimeModel::exponential(lambda);
    if (kind == "tabulated") {
        const json* knots = find(cfg, "lifetime.knots");
        if (!knots || !knots->is_array())
            throw ConfigError("lifetime.knots", "expected an array of [r, density] pairs");
        std::vector<std::pair<double, double>> k;
        for (const auto& row : *knots) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
                throw ConfigError("lifetime.knots", "expected [r, density] pairs");
            k.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
        try {
            return LifetimeModel::tabulated(std::move(k), lambda);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("lifetime.knots", e.what());
        }
    }
    throw ConfigError("lifetime.kind", "expected 'exponential' or 'tabulated'");
}

Code code_from(const json& cfg, int d)
{
    Code c{MultiIndex(d), get_int(cfg, "code.j", -1)};
    if (c.j < -1)
        throw ConfigError("code.j", "must be >= -1");
    if (const json* a = find(cfg, "code.alpha")) {
        if (!a->is_array() || static_cast<int>(a->size()) != d)
            throw ConfigError("code.alpha", "expected " + std::to_string(d) + " non-negative integers");
        for (int k = 0; k < d; ++k) {
            const auto& v = (*a)[static_cast<std::size_t>(k)];
            if (!v.is_number_integer() || v.get<int>() < 0)
                throw ConfigError("code.alpha", "expected non-negative integers");
            c.alpha.set(k, v.get<int>());
        }
    }
    return c;
}

GrowthParams growth_from(const json& cfg)
{
    GrowthParams p;
    try {
        p.regime = regime_from_string(get_string(cfg, "regime", "factorial"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("regime", e.what());
    }
    p.theta = get_number(cfg, "theta", 1.0);
    p.r = get_number(cfg, "r", 1.0);
    p.delta1 = get_number(cfg, "delta1", 1.0);
    p.delta2 = get_number(cfg, "delta2", 1.0);
    p.lambda = get_number(cfg, "lambda", 1.0);
    p.T = get_number(cfg, "T", 0.0);
    p.d = get_int(cfg, "d", 1);
    if (!(p.theta > 0.0))
        throw ConfigError("theta", "must be > 0");
    if (!(p.r > 0.0))
        throw ConfigError("r", "must be > 0");
    if (!(p.delta1 > 0.0))
        throw ConfigError("delta1", "must be > 0");
    if (!(p.delta2 > 0.0))
        throw ConfigError("delta2", "must be > 0");
    if (!(p.lambda > 0.0))
        throw ConfigError("lambda", "must be > 0");
    if (!(p.T >= 0.0))
        throw ConfigError("T", "must be >= 0");
    if (p.d < 1 || p.d > kMaxDim)
        throw ConfigError("d", "must be in [1, " + std::to_string(kMaxDim) + "]");
    return p;
}

json growth_to_json(const GrowthParams& p)
{
    return json{{"regime", to_string(p.regime)}, {"theta", p.theta}, {"r", p.r},
                {"delta1", p.delta1}, {"delta2", p.delta2}, {"lambda", p.lambda},
                {"T", p.T}, {"d", p.d}};
}

} // namespace branchpde::cli
