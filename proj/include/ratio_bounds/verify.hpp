// Property suites that check the bound families against the oracles.
//
// Each suite returns one Check per property with the worst margin observed
// over its grid. Margins are relative and positive when the property holds
// with room to spare.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ratio_bounds/oracle.hpp"

namespace ratio_bounds::verify {

struct Check {
  std::string name;
  bool passed = false;
  double worst_margin = 0.0;
  std::string detail;
};

struct SuiteOptions {
  std::vector<double> nus_I{0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0};
  std::vector<double> nus_K{-2.0, 0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0};
  std::vector<double> xs;  // empty: 25 log-spaced points in [1e-3, 1e3]
  /// Point used by the continued-fraction gap-formula check.
  double cf_nu = 1.0;
  double cf_x = 50.0;
  oracle::PrecisionConfig precision{};
  std::size_t random_samples = 100;
  unsigned seed = 20160101;
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("enclosures", "monotonicity", "identities", "sharpness",
/// "crossings", "cf") or all of them ("all"). Throws DomainError for an
/// unknown name; oracle failures propagate.
std::vector<Check> run_suite(std::string_view name, const SuiteOptions& options = {});

}  // namespace ratio_bounds::verify
