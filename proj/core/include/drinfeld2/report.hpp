#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "drinfeld2/common.hpp"

namespace d2 {

using json = nlohmann::json;

/// Run configuration shared by the CLI commands and the acceptance suite.
struct RunConfig {
  int64_t p = 2;
  int s = 2;
  int m = 3;          // Witt truncation length
  int precision = 6;  // lattice working precision
  int t_max = 6;      // extension-ladder budget for the fixed-point solver
  uint64_t seed = 1;

  // sample sizes for randomized property checks
  int witt_triples = 300;
  int fiber_pairs = 120;
  int rebasings = 60;
  int tangent_samples = 8;

  void validate() const;  // throws DomainError on unsupported parameters
  json to_json() const;
};

json cmd_witt_selftest(const RunConfig& cfg);
json cmd_tree(const RunConfig& cfg);
json cmd_enumerate_points(const RunConfig& cfg);
json cmd_roundtrip(const RunConfig& cfg);
json cmd_families(const RunConfig& cfg);
json cmd_glue_report(const RunConfig& cfg);
json cmd_tangent_report(const RunConfig& cfg);
json cmd_all(const RunConfig& cfg);

bool report_pass(const json& report);

}  // namespace d2
