#include "covrep/rep.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace covrep {

CovariantRep make_rep(Index dim_h, Index n, CMat v_tilde,
                      std::vector<LabeledMatrix> sigma_gens,
                      std::vector<LabeledMatrix> phi_gens) {
  if (dim_h < 1 || n < 1) throw DimensionError("make_rep: dim_h and n must be >= 1");
  if (v_tilde.rows() != dim_h || v_tilde.cols() != n * dim_h) {
    std::ostringstream msg;
    msg << "make_rep: v_tilde must be " << dim_h << "x" << n * dim_h
        << ", got " << v_tilde.rows() << "x" << v_tilde.cols();
    throw DimensionError(msg.str());
  }
  if (!is_finite(v_tilde)) throw InputError("make_rep: non-finite entry in v_tilde");
  if (sigma_gens.size() != phi_gens.size())
    throw DimensionError("make_rep: sigma_gens and phi_gens counts differ");
  for (std::size_t g = 0; g < sigma_gens.size(); ++g) {
    if (sigma_gens[g].label != phi_gens[g].label)
      throw DimensionError("make_rep: generator labels do not match");
    if (sigma_gens[g].matrix.rows() != dim_h || sigma_gens[g].matrix.cols() != dim_h)
      throw DimensionError("make_rep: sigma generator must be dim_h x dim_h");
    if (phi_gens[g].matrix.rows() != n || phi_gens[g].matrix.cols() != n)
      throw DimensionError("make_rep: phi generator must be n x n");
  }
  return CovariantRep{dim_h, n, std::move(v_tilde),
                      std::move(sigma_gens), std::move(phi_gens)};
}

Index tensor_dim(const CovariantRep& rep, int k) {
  if (k < 0) throw DimensionError("tensor_dim: negative power");
  Index d = rep.dim_h;
  for (int j = 0; j < k; ++j) {
    d *= rep.n;
    if (d > settings().max_dim)
      throw SizeCapError("tensor power dimension exceeds configured cap");
  }
  return d;
}

CMat lift(const CovariantRep& rep, int k) {
  tensor_dim(rep, k + 1);  // cap check on the column count
  Index blocks = 1;
  for (int j = 0; j < k; ++j) blocks *= rep.n;
  return kron(CMat::Identity(blocks, blocks), rep.v_tilde);
}

CMat power(const CovariantRep& rep, int k) {
  if (k < 0) throw DimensionError("power: negative power");
  if (k == 0) return CMat::Identity(rep.dim_h, rep.dim_h);
  tensor_dim(rep, k);
  CMat p = rep.v_tilde;
  // p_{j} = v (I_E (x) p_{j-1}); the lift is block diagonal, multiply blockwise
  for (int j = 2; j <= k; ++j) {
    const Index inner = p.cols();  // n^(j-1) dim_h
    CMat next(rep.dim_h, rep.n * inner);
    for (Index b = 0; b < rep.n; ++b)
      next.middleCols(b * inner, inner) =
          rep.v_tilde.middleCols(b * rep.dim_h, rep.dim_h) * p;
    p = std::move(next);
  }
  return p;
}

double chain_scale(const CMat& factor, int k) {
  return std::pow(std::max(1.0, factor.norm()), std::max(k, 1));
}

double chain_rank_tol(const CMat& factor, int k, Index rows, Index cols) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * chain_scale(factor, k);
}

CheckReport check_covariance(const CovariantRep& rep, double tol) {
  CheckReport report;
  report.tol = resolve_tol(tol);
  if (rep.sigma_gens.empty()) {
    report.add("covariance.vacuous", "covariance.intertwiner", Verdict::Pass, 0.0);
    return report;
  }
  for (std::size_t g = 0; g < rep.sigma_gens.size(); ++g) {
    const CMat& sig = rep.sigma_gens[g].matrix;
    const CMat& phi = rep.phi_gens[g].matrix;
    const CMat lhs = sig * rep.v_tilde;
    const CMat rhs = rep.v_tilde * kron(phi, CMat::Identity(rep.dim_h, rep.dim_h));
    const double residual = (lhs - rhs).norm();
    report.add_residual("covariance.intertwiner[" + rep.sigma_gens[g].label + "]",
                        "covariance.intertwiner", residual);
    const bool phi_hermitian = (phi - phi.adjoint()).norm() <= report.tol * (1 + phi.norm());
    if (phi_hermitian) {
      const double herm = (sig - sig.adjoint()).norm() / (1 + sig.norm());
      report.add("covariance.hermitian_consistency[" + rep.sigma_gens[g].label + "]",
                 "covariance.hermitian_consistency",
                 herm <= report.tol ? Verdict::Info : Verdict::Fail, herm);
    }
  }
  // nondegeneracy of the supplied left action: joint range of phi(b) is all of E
  std::vector<Subspace> phi_ranges;
  for (const LabeledMatrix& g : rep.phi_gens) phi_ranges.push_back(onb_range(g.matrix));
  const Subspace joint = subspace_join(phi_ranges);
  report.add("covariance.phi_nondegenerate", "covariance.phi_nondegenerate",
             Verdict::Info, static_cast<double>(joint.rank() == rep.n ? 1 : 0));
  return report;
}

double gamma(const CovariantRep& rep, double rank_tol) {
  const SvdResult dec = svd(rep.v_tilde);
  const double cut = rank_tol >= 0 ? rank_tol : dec.default_rank_tol();
  const Index r = dec.rank(cut);
  if (r == 0) return std::numeric_limits<double>::infinity();
  return dec.singular_values(r - 1);
}

BoolWithResidual is_partial_isometry(const CovariantRep& rep, double tol) {
  tol = resolve_tol(tol);
  const CMat& v = rep.v_tilde;
  const double residual = (v * v.adjoint() * v - v).norm();
  return BoolWithResidual{residual <= tol * (1.0 + v.norm()), residual};
}

CovariantRep direct_sum(const CovariantRep& a, const CovariantRep& b) {
  if (a.n != b.n) throw DimensionError("direct_sum: correspondence dimensions differ");
  const Index d = a.dim_h + b.dim_h;
  CMat v = CMat::Zero(d, a.n * d);
  for (Index i = 0; i < a.n; ++i) {
    v.block(0, i * d, a.dim_h, a.dim_h) =
        a.v_tilde.middleCols(i * a.dim_h, a.dim_h);
    v.block(a.dim_h, i * d + a.dim_h, b.dim_h, b.dim_h) =
        b.v_tilde.middleCols(i * b.dim_h, b.dim_h);
  }
  return make_rep(d, a.n, std::move(v));
}

}  // namespace covrep
