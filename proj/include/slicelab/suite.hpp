#pragma once

#include "slicelab/quad.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace slicelab {

enum class Budget { quick, full };

std::string to_string(Budget budget);
Budget budget_from_string(const std::string& s);

/// Quadrature and search budgets of a suite profile.
IntegrationConfig suite_config(std::uint64_t seed, Budget budget);

inline constexpr int kCheckCount = 12;

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Instances evaluated.
  int executed = 0;
  /// Worst observed statistic against its pinned threshold.
  double worst = 0.0;
  double threshold = 0.0;
  nlohmann::json details;

  nlohmann::json to_json() const;
};

/// Runs one acceptance check (1..12). Every check is deterministic in (seed, budget).
CheckResult run_check(int id, std::uint64_t seed, Budget budget);

struct SuiteSummary {
  std::uint64_t seed = 0;
  Budget budget = Budget::quick;
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

SuiteSummary verify_suite(std::uint64_t seed, Budget budget);

}  // namespace slicelab
