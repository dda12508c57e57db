#pragma once

#include <cstdint>
#include <vector>

#include "covrep/rep.hpp"
#include "covrep/report.hpp"
#include "covrep/shifts.hpp"

namespace covrep {

struct BatterySelection {
  bool duality = true;
  bool structure = true;
  bool properties = true;
};

/// Runs the selected certifier batteries on one representation. wall_ms,
/// when supplied, receives one timing per emitted item. properties_domain
/// restricts the quadratic-form certifiers of the properties battery (used
/// for the interior mode of truncated shifts).
CheckReport run_battery(const CovariantRep& rep, const BatterySelection& sel,
                        int max_power = -1, std::vector<double>* wall_ms = nullptr,
                        const Subspace* properties_domain = nullptr);

/// The cross-module implication suite used by the fuzzer: the concavity
/// implications, the bi-regular decomposition, the regularity-condition and
/// unitarity-battery consistencies, the failure biconditional, and the
/// hyper-dagger regularity transfer, plus the informational two-dagger
/// measurement.
CheckReport implication_suite(const CovariantRep& rep, int max_power = -1);

struct FuzzConfig {
  int trials = 100;
  std::uint64_t seed = 0;
  Index h_max = 4;
  Index n_max = 3;
  std::vector<RepKind> kinds;  // empty: cycle through all kinds
  int jobs = 1;
  int max_power = -1;
};

struct FuzzCounts {
  int pass = 0;
  int hypothesis_failed = 0;
  int fail = 0;
  int info = 0;
};

struct FuzzFailure {
  int trial = 0;
  std::string check;
  CovariantRep rep;
};

struct FuzzOutcome {
  std::vector<std::pair<std::string, FuzzCounts>> per_anchor;  // sorted by anchor
  std::vector<FuzzFailure> failures;
  int trials = 0;
};

RepKind kind_for_trial(const FuzzConfig& cfg, int trial);
CovariantRep rep_for_trial(const FuzzConfig& cfg, int trial);

/// Deterministic for fixed (seed, trials, dims, kinds) regardless of jobs.
FuzzOutcome run_fuzz(const FuzzConfig& cfg);

}  // namespace covrep
