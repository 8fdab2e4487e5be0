// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "json.hpp"

#include "branchpde/estimator.hpp"
#include "branchpde/growth.hpp"
#include "branchpde/lifetimes.hpp"
#include "branchpde/mechanism.hpp"
#include "branchpde/problems.hpp"

namespace branchpde::cli {

using nlohmann::json;

/// Reads a config file. Accepts a plain JSON object, a JSON report carrying a
/// "config" member, or any output whose first line is "# config=<json>".
/// Throws ConfigError.
json load_config(const std::string& path);

// Typed accessors; each throws ConfigError naming the dotted field path.
double get_number(const json& j, const std::string& field, double fallback);
double require_number(const json& j, const std::string& field);
int get_int(const json& j, const std::string& field, int fallback);
std::string get_string(const json& j, const std::string& field, const std::string& fallback);

LifetimeModel lifetime_from(const json& cfg, double fallback_lambda);
Code code_from(const json& cfg, int d);
GrowthParams growth_from(const json& cfg);
json growth_to_json(const GrowthParams& p);

} // namespace branchpde::cli
