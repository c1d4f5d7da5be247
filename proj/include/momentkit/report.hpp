#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "momentkit/common.hpp"
#include "momentkit/grid.hpp"

namespace momentkit {

/// Outcome of one sampled verification claim.  A margin is the amount by
/// which the checked inequality held at one sample; negative margins beyond
/// the tolerance are recorded as violations.
struct VerificationReport {
  struct Violation {
    std::vector<double> params;
    double margin = 0.0;
  };

  std::string claim_id;
  GridSpec grid;
  std::vector<std::string> param_names;
  double tolerance = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<Violation> violations;
  long long evaluations = 0;
  std::map<std::string, double> notes;

  bool passed() const { return violations.empty(); }

  /// Feeds one sample.  Non-finite margins always count as violations.
  void record(std::span<const double> params, double margin) {
    ++evaluations;
    if (std::isfinite(margin)) {
      if (margin < min_margin) min_margin = margin;
      if (margin >= -tolerance) return;
    }
    violations.push_back(
        Violation{std::vector<double>(params.begin(), params.end()), margin});
  }

  std::string summary() const {
    std::string s = claim_id + ": " + (passed() ? "pass" : "FAIL") +
                    ", samples=" + std::to_string(evaluations) +
                    ", min_margin=" + fmt17(min_margin) +
                    ", tolerance=" + fmt17(tolerance);
    if (!passed()) s += ", violations=" + std::to_string(violations.size());
    for (const auto& [key, value] : notes) s += ", " + key + "=" + fmt17(value);
    return s;
  }

  /// Header row, then one row per violation.  17 significant digits, '\n'
  /// line endings; byte-identical across runs with the same inputs.
  void write_csv(std::ostream& os) const {
    os << "claim_id";
    for (const auto& name : param_names) os << "," << name;
    os << ",margin\n";
    for (const auto& v : violations) {
      os << claim_id;
      for (double p : v.params) os << "," << fmt17(p);
      os << "," << fmt17(v.margin) << "\n";
    }
  }
};

}  // namespace momentkit
