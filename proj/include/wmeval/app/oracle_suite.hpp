#pragma once

#include "wmeval/kinematics/params.hpp"
#include "wmeval/oracle/synthetic.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wmeval::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct OracleSuiteOptions {
  std::uint64_t seed = 0;
  int sweep = 20;
  kin::PhysLawParams params;
  oracle::FallGeometry geometry;
};

/// Scores the synthetic ladder, the acceleration sweep and the bounce
/// fixtures with the evaluator, then checks the formula-level criteria
/// (GEN, VQS gate, voting boundaries).
std::vector<CriterionResult> run_oracle_suite(const OracleSuiteOptions& opt = {});

std::string format_table(const std::vector<CriterionResult>& results);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace wmeval::app
