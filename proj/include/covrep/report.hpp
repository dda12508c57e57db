#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covrep/linalg.hpp"

namespace covrep {

/// Fail means: hypothesis satisfied, conclusion violated beyond tolerance.
/// HypothesisFailed / NotApplicable record that a conditional statement was
/// not asserted; Info items never affect the overall outcome.
enum class Verdict { Pass, Fail, HypothesisFailed, NotApplicable, Info };

std::string to_string(Verdict v);

struct CheckItem {
  std::string name;    // unique instance, e.g. "regularity.cc3[n=2,m=1]"
  std::string anchor;  // stable check-family identifier, or "plumbing"
  Verdict verdict = Verdict::Info;
  double value = 0.0;  // residual or margin, as documented per check
  std::optional<CVec> witness;
};

struct CheckReport {
  double tol = 0.0;
  std::vector<CheckItem> items;

  CheckItem& add(std::string name, std::string anchor, Verdict verdict,
                 double value = 0.0);
  CheckItem& add_residual(std::string name, std::string anchor,
                          double residual);  // Pass iff residual <= tol
  void append(const CheckReport& other);

  bool has_fail() const;
  bool all_pass() const;  // no Fail items
  const CheckItem* find(const std::string& name) const;
};

}  // namespace covrep
