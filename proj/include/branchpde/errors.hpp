// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace branchpde {

/// The lifetime model fails the positivity / survival-domination check.
class AssumptionHViolated : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A tree grew past its branch or generation cap.
class CapExceeded : public std::runtime_error
{
  public:
    CapExceeded(const std::string& what, std::int64_t branches, int generation)
        : std::runtime_error(what), branches_(branches), generation_(generation)
    {
    }
    std::int64_t branches() const { return branches_; }
    int generation() const { return generation_; }

  private:
    std::int64_t branches_;
    int generation_;
};

/// Every sample in an estimate hit a cap, so no mean exists.
class AllSamplesCapped : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A series was requested outside its radius of convergence.
class OutsideRadius : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Malformed or out-of-range configuration. `field` names the offending key.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string field, const std::string& msg)
        : std::runtime_error(field + ": " + msg), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

} // namespace branchpde
