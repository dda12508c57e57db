#include "covrep/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace covrep {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const CMat& m, const char* who) {
  if (!is_finite(m)) throw InputError(std::string(who) + ": non-finite entry");
}

double rank_tol_for(const CMat& m, double s_max, double rank_tol) {
  if (rank_tol >= 0) return rank_tol;
  return static_cast<double>(std::max(m.rows(), m.cols())) * kEps * s_max;
}

}  // namespace

bool is_finite(const CMat& m) {
  return m.allFinite();
}

double SvdResult::default_rank_tol() const {
  const double s_max = singular_values.size() ? singular_values(0) : 0.0;
  return static_cast<double>(std::max(left.rows(), right_adjoint.cols())) * kEps * s_max;
}

Index SvdResult::rank(double rank_tol) const {
  Index r = 0;
  while (r < singular_values.size() && singular_values(r) > rank_tol) ++r;
  return r;
}

CMat SvdResult::reconstruct() const {
  CMat s = CMat::Zero(left.cols(), right_adjoint.rows());
  for (Index i = 0; i < singular_values.size(); ++i) s(i, i) = singular_values(i);
  return left * s * right_adjoint;
}

SvdResult svd(const CMat& m) {
  require_finite(m, "svd");
  Eigen::JacobiSVD<CMat> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success)
    throw FactorizationError("svd: factorization failed");
  SvdResult out;
  out.left = dec.matrixU();
  out.singular_values = dec.singularValues();
  out.right_adjoint = dec.matrixV().adjoint();
  return out;
}

CMat pinv(const CMat& m, double rank_tol) {
  require_finite(m, "pinv");
  Eigen::JacobiSVD<CMat> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success)
    throw FactorizationError("pinv: factorization failed");
  const RVec& s = dec.singularValues();
  const double cut = rank_tol_for(m, s.size() ? s(0) : 0.0, rank_tol);
  RVec inv = RVec::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) inv(i) = 1.0 / s(i);
  return dec.matrixV() * inv.asDiagonal() * dec.matrixU().adjoint();
}

Subspace make_subspace(Index ambient, CMat basis, double tol) {
  tol = resolve_tol(tol);
  if (basis.rows() != ambient)
    throw DimensionError("make_subspace: basis rows != ambient");
  if (basis.cols() > ambient)
    throw DimensionError("make_subspace: rank exceeds ambient dimension");
  const double gram_err =
      (basis.adjoint() * basis - CMat::Identity(basis.cols(), basis.cols())).norm();
  if (gram_err > 10 * tol && gram_err > 1e3 * kEps * static_cast<double>(ambient))
    throw InputError("make_subspace: columns not orthonormal");
  return Subspace{ambient, std::move(basis), tol};
}

Subspace full_space(Index ambient, double tol) {
  return Subspace{ambient, CMat::Identity(ambient, ambient), resolve_tol(tol)};
}

Subspace zero_space(Index ambient, double tol) {
  return Subspace{ambient, CMat::Zero(ambient, 0), resolve_tol(tol)};
}

Subspace onb_range(const CMat& m, double rank_tol) {
  require_finite(m, "onb_range");
  Eigen::JacobiSVD<CMat> dec(m, Eigen::ComputeThinU);
  const RVec& s = dec.singularValues();
  const double cut = rank_tol_for(m, s.size() ? s(0) : 0.0, rank_tol);
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return Subspace{m.rows(), dec.matrixU().leftCols(r), settings().tol};
}

Subspace onb_kernel(const CMat& m, double rank_tol) {
  require_finite(m, "onb_kernel");
  Eigen::JacobiSVD<CMat> dec(m, Eigen::ComputeFullV);
  const RVec& s = dec.singularValues();
  const double cut = rank_tol_for(m, s.size() ? s(0) : 0.0, rank_tol);
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return Subspace{m.cols(), dec.matrixV().rightCols(m.cols() - r), settings().tol};
}

Subspace complement(const Subspace& a) {
  if (a.rank() == 0) return full_space(a.ambient, a.tol);
  if (a.rank() == a.ambient) return zero_space(a.ambient, a.tol);
  // kernel of basis^*: everything orthogonal to the span
  return onb_kernel(a.basis.adjoint());
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient)
    throw DimensionError("subspace_intersect: ambient mismatch");
  const Index d = a.ambient;
  const double tol = std::max(a.tol, b.tol);
  CMat stacked(2 * d, d);
  stacked.topRows(d) = CMat::Identity(d, d) - projector(a);
  stacked.bottomRows(d) = CMat::Identity(d, d) - projector(b);
  Subspace out = onb_kernel(stacked, tol);
  out.tol = tol;
  return out;
}

Subspace subspace_join(const std::vector<Subspace>& parts) {
  if (parts.empty()) throw DimensionError("subspace_join: empty argument list");
  const Index d = parts.front().ambient;
  double tol = 0;
  Index total = 0;
  for (const Subspace& p : parts) {
    if (p.ambient != d) throw DimensionError("subspace_join: ambient mismatch");
    tol = std::max(tol, p.tol);
    total += p.rank();
  }
  CMat stacked(d, total);
  Index col = 0;
  for (const Subspace& p : parts) {
    stacked.middleCols(col, p.rank()) = p.basis;
    col += p.rank();
  }
  Subspace out = total == 0 ? zero_space(d, tol) : onb_range(stacked);
  out.tol = std::max(tol, out.tol);
  return out;
}

bool subspace_leq(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient != b.ambient)
    throw DimensionError("subspace_leq: ambient mismatch");
  tol = tol >= 0 ? tol : std::max({a.tol, b.tol, settings().tol});
  const CMat residual = a.basis - b.basis * (b.basis.adjoint() * a.basis);
  return residual.norm() <= tol * (1.0 + static_cast<double>(a.rank()));
}

bool subspace_eq(const Subspace& a, const Subspace& b, double tol) {
  return a.rank() == b.rank() && subspace_leq(a, b, tol) && subspace_leq(b, a, tol);
}

CMat projector(const Subspace& a) {
  return a.basis * a.basis.adjoint();
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat apply_block_diag(const CMat& m, const CMat& x) {
  if (m.cols() == 0 || x.rows() % m.cols() != 0)
    throw DimensionError("apply_block_diag: row count not a multiple of block size");
  const Index blocks = x.rows() / m.cols();
  CMat out(blocks * m.rows(), x.cols());
  for (Index b = 0; b < blocks; ++b)
    out.middleRows(b * m.rows(), m.rows()) =
        m * x.middleRows(b * m.cols(), m.cols());
  return out;
}

Subspace lift_subspace(Index blocks, const Subspace& s) {
  if (s.rank() == 0) return zero_space(blocks * s.ambient, s.tol);
  return Subspace{blocks * s.ambient,
                  kron(CMat::Identity(blocks, blocks), s.basis), s.tol};
}

Subspace map_subspace(const CMat& m, const Subspace& a, double rank_tol) {
  if (m.cols() != a.ambient)
    throw DimensionError("map_subspace: shape mismatch");
  if (a.rank() == 0) return zero_space(m.rows(), a.tol);
  return onb_range(m * a.basis, rank_tol);
}

RVec hermitian_eigenvalues(const CMat& m) {
  require_finite(m, "hermitian_eigenvalues");
  const CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw FactorizationError("hermitian_eigenvalues: factorization failed");
  return es.eigenvalues();
}

std::pair<RVec, CMat> hermitian_eigensystem(const CMat& m) {
  require_finite(m, "hermitian_eigensystem");
  const CMat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success)
    throw FactorizationError("hermitian_eigensystem: factorization failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

double operator_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> dec(m);
  return dec.singularValues().size() ? dec.singularValues()(0) : 0.0;
}

}  // namespace covrep
