#include "covrep/shifts.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "covrep/rng.hpp"

namespace covrep {

WeightedShiftSpec make_shift_spec(ShiftKind kind, Index n, long lo, long hi,
                                  Eigen::MatrixXd weights) {
  if (n < 1) throw InputError("shift spec: n must be >= 1");
  if (lo > hi) throw InputError("shift spec: empty window");
  if (kind == ShiftKind::Unilateral && lo != 0)
    throw InputError("shift spec: unilateral window must start at 0");
  if (weights.rows() != n || weights.cols() != hi - lo + 1)
    throw InputError("shift spec: weight table must be n x window length");
  if (!weights.allFinite()) throw InputError("shift spec: non-finite weight");
  return WeightedShiftSpec{kind, n, lo, hi, std::move(weights)};
}

WeightedShiftSpec unit_shift_spec(ShiftKind kind, Index n, long lo, long hi) {
  return make_shift_spec(kind, n, lo, hi, Eigen::MatrixXd::Ones(n, hi - lo + 1));
}

WeightedShiftSpec dirichlet_shift_spec(ShiftKind kind, Index n, long lo, long hi,
                                       double a) {
  Eigen::MatrixXd w(n, hi - lo + 1);
  for (Index c = 0; c < w.cols(); ++c) {
    const double m = static_cast<double>(c);
    w.col(c).setConstant(std::sqrt((m + 1.0 + a) / (m + a)));
  }
  return make_shift_spec(kind, n, lo, hi, std::move(w));
}

WeightedShiftSpec zero_at(WeightedShiftSpec spec, long m0) {
  if (m0 < spec.window_lo || m0 > spec.window_hi)
    throw InputError("zero_at: index outside window");
  spec.weights.col(m0 - spec.window_lo).setZero();
  return spec;
}

bool ShiftRealization::is_interior(long m) const {
  return std::find(interior.begin(), interior.end(), m) != interior.end();
}

ShiftRealization build_shift(const WeightedShiftSpec& spec) {
  const Index dim_h = spec.window_len();
  if (spec.n * dim_h > settings().max_dim)
    throw SizeCapError("build_shift: window too large for the configured cap");
  CMat v = CMat::Zero(dim_h, spec.n * dim_h);
  ShiftRealization out;
  out.window_lo = spec.window_lo;
  out.window_hi = spec.window_hi;
  for (long m = spec.window_lo; m <= spec.window_hi; ++m) {
    out.labels.push_back(m);
    bool all_inside = true;
    for (Index i = 1; i <= spec.n; ++i) {
      const long target = spec.n * m + i;
      if (target < spec.window_lo || target > spec.window_hi) {
        all_inside = false;
        continue;
      }
      const Index col = (i - 1) * dim_h + (m - spec.window_lo);
      v(target - spec.window_lo, col) = spec.weight(i, m);
    }
    if (all_inside) out.interior.push_back(m);
  }
  std::vector<LabeledMatrix> sigma{{"1", CMat::Identity(dim_h, dim_h)}};
  std::vector<LabeledMatrix> phi{{"1", CMat::Identity(spec.n, spec.n)}};
  out.rep = make_rep(dim_h, spec.n, std::move(v), std::move(sigma), std::move(phi));
  return out;
}

WeightedShiftSpec restrict_to_interior(const WeightedShiftSpec& spec) {
  const ShiftRealization full = build_shift(spec);
  if (full.interior.empty())
    throw InputError("restrict_to_interior: empty interior");
  const long lo = full.interior.front();
  const long hi = full.interior.back();
  Eigen::MatrixXd w =
      spec.weights.middleCols(lo - spec.window_lo, hi - lo + 1);
  const ShiftKind kind = lo == 0 ? spec.kind : ShiftKind::Bilateral;
  return make_shift_spec(kind, spec.n, lo, hi, std::move(w));
}

Subspace interior_subspace(const ShiftRealization& sr) {
  const Index dim_h = sr.rep.dim_h;
  CMat basis = CMat::Zero(dim_h, static_cast<Index>(sr.interior.size()));
  Index c = 0;
  for (long m : sr.interior) basis(sr.coord(m), c++) = 1.0;
  return make_subspace(dim_h, std::move(basis));
}

Dd1Scan dd1_scan(const WeightedShiftSpec& spec, double tol) {
  tol = resolve_tol(tol);
  Dd1Scan scan;
  scan.max_margin = -std::numeric_limits<double>::infinity();
  for (Index i = 1; i <= spec.n; ++i) {
    for (long m = spec.window_lo; m <= spec.window_hi; ++m) {
      const long target = spec.n * m + i;
      if (target < spec.window_lo || target > spec.window_hi) continue;
      const double w = spec.weight(i, m);
      const double w2 = spec.weight(i, target);
      Dd1Entry entry;
      entry.i = i;
      entry.m = m;
      entry.margin = w * w * w2 * w2 - 2.0 * w * w + 1.0;
      entry.excluded = w == 0.0;
      if (!entry.excluded) {
        scan.max_margin = std::max(scan.max_margin, entry.margin);
        scan.pass = scan.pass && entry.margin <= tol;
      }
      scan.entries.push_back(entry);
    }
  }
  if (scan.entries.empty() || scan.max_margin == -std::numeric_limits<double>::infinity())
    scan.max_margin = 0.0;
  return scan;
}

CMat shift_dual_closed_form(const WeightedShiftSpec& spec) {
  if (spec.weights.cwiseAbs().maxCoeff() == 0.0)
    throw InputError("shift_dual_closed_form: all weights are zero");
  const Index dim_h = spec.window_len();
  CMat dual = CMat::Zero(dim_h, spec.n * dim_h);
  for (Index i = 1; i <= spec.n; ++i)
    for (long m = spec.window_lo; m <= spec.window_hi; ++m) {
      const double w = spec.weight(i, m);
      const long target = spec.n * m + i;
      if (w == 0.0 || target < spec.window_lo || target > spec.window_hi) continue;
      dual(target - spec.window_lo, (i - 1) * dim_h + (m - spec.window_lo)) = 1.0 / w;
    }
  return dual;
}

CMat shift_dagger_closed_form(const WeightedShiftSpec& spec) {
  const Index dim_h = spec.window_len();
  CMat dagger = CMat::Zero(spec.n * dim_h, dim_h);
  for (long j = spec.window_lo; j <= spec.window_hi; ++j) {
    for (Index i = 1; i <= spec.n; ++i) {
      const long diff = j - i;
      if (diff % spec.n != 0) continue;
      const long m = diff / spec.n;
      if (m < spec.window_lo || m > spec.window_hi) continue;
      const double w = spec.weight(i, m);
      if (w == 0.0) continue;
      dagger((i - 1) * dim_h + (m - spec.window_lo), j - spec.window_lo) = 1.0 / w;
    }
  }
  return dagger;
}

namespace {

CMat random_complex(SplitMix64& g, Index rows, Index cols) {
  CMat m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      m(r, c) = Complex(g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0));
  return m;
}

CMat random_orthonormal(SplitMix64& g, Index rows, Index cols) {
  const CMat m = random_complex(g, rows, std::min(rows, cols));
  Eigen::HouseholderQR<CMat> qr(m);
  CMat q = qr.householderQ() * CMat::Identity(rows, cols);
  return q;
}

}  // namespace

CovariantRep random_rep(std::uint64_t seed, Index dim_h, Index n, RepKind kind) {
  SplitMix64 g(seed);
  switch (kind) {
    case RepKind::Dense:
      return make_rep(dim_h, n, random_complex(g, dim_h, n * dim_h));
    case RepKind::RankDeficient: {
      const Index r_max = std::min(dim_h, n * dim_h) - 1;
      if (r_max < 1) return make_rep(dim_h, n, CMat::Zero(dim_h, n * dim_h));
      const Index r = g.uniform_int(1, r_max);
      const CMat left = random_orthonormal(g, dim_h, r);
      const CMat right = random_orthonormal(g, n * dim_h, r);
      RVec s(r);
      for (Index k = 0; k < r; ++k) s(k) = g.uniform(0.7, 1.5);
      return make_rep(dim_h, n, left * s.asDiagonal() * right.adjoint());
    }
    case RepKind::LeftInvertible: {
      const CMat left = random_orthonormal(g, dim_h, dim_h);
      const CMat right = random_orthonormal(g, dim_h, dim_h);
      RVec s(dim_h);
      for (Index k = 0; k < dim_h; ++k) s(k) = g.uniform(0.6, 1.8);
      return make_rep(dim_h, 1, left * s.asDiagonal() * right.adjoint());
    }
    case RepKind::PartialIsometry: {
      const Index r = g.uniform_int(1, std::min(dim_h, n * dim_h));
      const CMat left = random_orthonormal(g, dim_h, r);
      const CMat right = random_orthonormal(g, n * dim_h, r);
      return make_rep(dim_h, n, left * right.adjoint());
    }
    case RepKind::ConcaveShift: {
      const double a = g.uniform(1.0, 3.0);
      const WeightedShiftSpec spec =
          dirichlet_shift_spec(ShiftKind::Unilateral, n, 0, dim_h - 1, a);
      return build_shift(spec).rep;
    }
  }
  throw InputError("random_rep: unknown kind");
}

WeightedShiftSpec random_shift_spec(std::uint64_t seed, Index n_max,
                                    Index len_max, double w_lo, double w_hi,
                                    bool with_zero) {
  SplitMix64 g(seed);
  const Index n = g.uniform_int(1, n_max);
  const Index len = g.uniform_int(2, std::max<Index>(2, len_max));
  const bool bilateral = g.uniform() < 0.5;
  const long lo = bilateral ? -static_cast<long>(len / 2) : 0;
  const long hi = lo + static_cast<long>(len) - 1;
  Eigen::MatrixXd w(n, len);
  for (Index i = 0; i < n; ++i)
    for (Index c = 0; c < len; ++c) w(i, c) = g.uniform(w_lo, w_hi);
  WeightedShiftSpec spec = make_shift_spec(
      bilateral ? ShiftKind::Bilateral : ShiftKind::Unilateral, n, lo, hi,
      std::move(w));
  if (with_zero && g.uniform() < 0.5)
    spec = zero_at(spec, g.uniform_int(lo, hi));
  return spec;
}

}  // namespace covrep
