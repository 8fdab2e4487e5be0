// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace branchpde {

struct CheckResult
{
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions
{
    std::uint64_t seed = 2026;
    int workers = 0;
    std::int64_t mc_samples = 200000;
    /// Test hook: perturbs one exact comparison so the suite must fail.
    bool inject_fault = false;
};

/// Runs the invariant suite: exact identities, recursion equivalences, weight
/// algebra, domination, analyzer coherence, and small Monte Carlo end-to-end runs.
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

/// One line per check: PASS/FAIL, name, detail.
void print_matrix(std::ostream& os, const std::vector<CheckResult>& results);

} // namespace branchpde
