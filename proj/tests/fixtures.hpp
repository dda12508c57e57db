#pragma once

#include <vector>

#include "covrep/rep.hpp"
#include "covrep/rng.hpp"
#include "covrep/shifts.hpp"

namespace covrep::testing {

inline CMat cmat(Index rows, Index cols, std::initializer_list<double> real_entries) {
  CMat m(rows, cols);
  auto it = real_entries.begin();
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = *it++;
  return m;
}

/// dim_h = 2, n = 2, v = [I2, 0]: a coisometry and partial isometry.
inline CovariantRep ex_a() {
  return make_rep(2, 2, cmat(2, 4, {1, 0, 0, 0, 0, 1, 0, 0}));
}

/// dim_h = 2, n = 2, v = [diag(2,1), 0].
inline CovariantRep ex_b() {
  return make_rep(2, 2, cmat(2, 4, {2, 0, 0, 0, 0, 1, 0, 0}));
}

/// Truncated unit unilateral shift on C^4 (nilpotent).
inline ShiftRealization ex_c_shift() {
  return build_shift(unit_shift_spec(ShiftKind::Unilateral, 1, 0, 3));
}
inline CovariantRep ex_c() { return ex_c_shift().rep; }

/// Bilateral n = 1 shift on window [-2, 2] with weights (1, 2, 0, 3, 1).
inline WeightedShiftSpec ex_d_spec() {
  Eigen::MatrixXd w(1, 5);
  w << 1, 2, 0, 3, 1;
  return make_shift_spec(ShiftKind::Bilateral, 1, -2, 2, std::move(w));
}
inline ShiftRealization ex_d_shift() { return build_shift(ex_d_spec()); }
inline CovariantRep ex_d() { return ex_d_shift().rep; }

inline CMat random_unitary(std::uint64_t seed, Index dim) {
  SplitMix64 g(seed);
  CMat m(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c)
      m(r, c) = Complex(g.uniform(-1, 1), g.uniform(-1, 1));
  Eigen::HouseholderQR<CMat> qr(m);
  return qr.householderQ() * CMat::Identity(dim, dim);
}

inline std::vector<RepKind> all_kinds() {
  return {RepKind::Dense, RepKind::RankDeficient, RepKind::LeftInvertible,
          RepKind::PartialIsometry, RepKind::ConcaveShift};
}

/// Small mixed corpus for property tests.
inline std::vector<CovariantRep> corpus(std::uint64_t seed, int count,
                                        Index h_max = 4, Index n_max = 3) {
  std::vector<CovariantRep> out;
  const auto kinds = all_kinds();
  for (int t = 0; t < count; ++t) {
    SplitMix64 g(derive_seed(seed, t));
    const Index dim_h = g.uniform_int(1, h_max);
    const Index n = g.uniform_int(1, n_max);
    out.push_back(random_rep(derive_seed(seed, t), dim_h, n,
                             kinds[t % kinds.size()]));
  }
  return out;
}

}  // namespace covrep::testing
