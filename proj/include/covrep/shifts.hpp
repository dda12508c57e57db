#pragma once

#include <cstdint>
#include <vector>

#include "covrep/rep.hpp"

namespace covrep {

enum class ShiftKind { Unilateral, Bilateral };

/// Weighted shift data: V_i(e_m) = w_{i,m} e_{n m + i} for i in 1..n and m
/// in the window. Weights are real; a finite window truncates the model and
/// out-of-window images are dropped.
struct WeightedShiftSpec {
  ShiftKind kind = ShiftKind::Unilateral;
  Index n = 1;
  long window_lo = 0;
  long window_hi = 0;
  Eigen::MatrixXd weights;  // n rows x window length, weights(i-1, m - lo)

  Index window_len() const { return window_hi - window_lo + 1; }
  double weight(Index i, long m) const { return weights(i - 1, m - window_lo); }
};

WeightedShiftSpec make_shift_spec(ShiftKind kind, Index n, long lo, long hi,
                                  Eigen::MatrixXd weights);
WeightedShiftSpec unit_shift_spec(ShiftKind kind, Index n, long lo, long hi);
/// Dirichlet-type weights w_{i,m} = sqrt((m' + 1 + a) / (m' + a)) with
/// m' = m - lo and a >= 1; a = 1 gives the classical sequence.
WeightedShiftSpec dirichlet_shift_spec(ShiftKind kind, Index n, long lo, long hi,
                                       double a = 1.0);

/// Copy with w_{i,m0} = 0 for every i.
WeightedShiftSpec zero_at(WeightedShiftSpec spec, long m0);

struct ShiftRealization {
  CovariantRep rep;
  long window_lo = 0;
  long window_hi = 0;
  std::vector<long> labels;    // labels[c] = window_lo + c
  std::vector<long> interior;  // m with n m + i in-window for every i

  Index coord(long m) const { return static_cast<Index>(m - window_lo); }
  bool is_interior(long m) const;
};

/// H = span{e_m : m in window}; out-of-window images are dropped (the
/// source column is zeroed and excluded from the interior). The scalar
/// action is recorded as the single generator pair (I_H, I_n).
ShiftRealization build_shift(const WeightedShiftSpec& spec);

/// Narrows the window to the interior index range.
WeightedShiftSpec restrict_to_interior(const WeightedShiftSpec& spec);

/// span{e_m : m interior} inside the realization's H; the certifier domain
/// that strips truncation artifacts.
Subspace interior_subspace(const ShiftRealization& sr);

struct Dd1Entry {
  Index i = 0;
  long m = 0;
  double margin = 0.0;   // w^2 w'^2 - 2 w^2 + 1
  bool excluded = false; // zero-weight position, skipped by the kernel convention
};

struct Dd1Scan {
  std::vector<Dd1Entry> entries;
  double max_margin = 0.0;  // over non-excluded entries
  bool pass = true;
};

Dd1Scan dd1_scan(const WeightedShiftSpec& spec, double tol = -1.0);

/// Closed form of the Cauchy dual: column (i, m) carries 1/w_{i,m} at row
/// n m + i when the weight is nonzero and the target is in-window, zero
/// otherwise. Valid as an oracle on interior columns.
CMat shift_dual_closed_form(const WeightedShiftSpec& spec);

/// Closed form of the Moore-Penrose inverse: e_j maps to
/// (1/w_{i,(j-i)/n}) delta_i (x) e_{(j-i)/n} when such a decomposition
/// exists with a nonzero weight.
CMat shift_dagger_closed_form(const WeightedShiftSpec& spec);

enum class RepKind {
  Dense,
  RankDeficient,
  LeftInvertible,  // injectivity forces n = 1; the requested n is ignored
  PartialIsometry,
  ConcaveShift,
};

/// Deterministic for a fixed (seed, dim_h, n, kind); see RepKind notes.
CovariantRep random_rep(std::uint64_t seed, Index dim_h, Index n, RepKind kind);

/// Random spec with nonzero weights in [w_lo, w_hi]; with_zero inserts one
/// zeroed column at a random window position.
WeightedShiftSpec random_shift_spec(std::uint64_t seed, Index n_max,
                                    Index len_max, double w_lo, double w_hi,
                                    bool with_zero);

}  // namespace covrep
