#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cdk {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  bool inconclusive;  // exploratory search found nothing; not a failure
  std::string detail;
};

/// Runs the full conformance suite. Every result with passed = false and
/// inconclusive = false is a hard failure.
std::vector<CriterionResult> run_acceptance(uint64_t seed);

bool all_passed(const std::vector<CriterionResult>& rs);

}  // namespace cdk
