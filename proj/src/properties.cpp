#include "covrep/properties.hpp"

#include <cmath>
#include <sstream>

#include "covrep/duality.hpp"

namespace covrep {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

/// Extreme eigenvalue of form restricted to the columns of basis, with the
/// eigenvector mapped back to the ambient space. smallest=true picks the
/// minimum eigenvalue, otherwise the maximum.
std::pair<double, CVec> restricted_extreme(const CMat& form, const CMat& basis,
                                           bool smallest) {
  if (basis.cols() == 0) return {0.0, CVec()};
  const CMat restricted = basis.adjoint() * form * basis;
  const auto [values, vectors] = hermitian_eigensystem(restricted);
  const Index pick = smallest ? 0 : values.size() - 1;
  return {values(pick), basis * vectors.col(pick)};
}

PropertyVerdict from_violation(std::string property, double margin, CVec witness,
                               double tol) {
  PropertyVerdict out;
  out.property = std::move(property);
  out.margin = margin;
  out.verdict = margin <= tol ? Verdict::Pass : Verdict::Fail;
  if (out.verdict == Verdict::Fail && witness.size() > 0) out.witness = std::move(witness);
  return out;
}

/// The certifier domain: base intersected with blocks (x) domain when a
/// domain restriction is supplied.
CMat domain_basis(const Subspace& base, Index blocks, const Subspace* domain) {
  if (!domain) return base.basis;
  return subspace_intersect(base, lift_subspace(blocks, *domain)).basis;
}

}  // namespace

PropertyVerdict is_hyponormal_mod(const CovariantRep& rep, double tol,
                                  const Subspace* domain) {
  tol = resolve_tol(tol);
  const CMat& v = rep.v_tilde;
  const CMat form = v.adjoint() * v -
                    kron(CMat::Identity(rep.n, rep.n), v * v.adjoint());
  const Subspace coker = complement(onb_kernel(v));
  const CMat basis = domain_basis(coker, rep.n, domain);
  const auto [margin, witness] = restricted_extreme(form, basis, true);
  PropertyVerdict out;
  out.property = "hyponormal_mod";
  out.margin = margin;
  out.verdict = margin >= -tol ? Verdict::Pass : Verdict::Fail;
  if (out.verdict == Verdict::Fail) out.witness = witness;
  return out;
}

PropertyVerdict is_n_expansive_mod(const CovariantRep& rep, int n, double tol,
                                   const Subspace* domain) {
  if (n < 1) throw DimensionError("is_n_expansive_mod: n must be >= 1");
  tol = resolve_tol(tol);
  const Index ambient = tensor_dim(rep, n);
  CMat form = CMat::Zero(ambient, ambient);
  for (int j = 0; j <= n; ++j) {
    const CMat pj = power(rep, j);
    const CMat gram = pj.adjoint() * pj;  // on E^(x)j (x) H
    const Index blocks = ambient / gram.rows();
    const double coeff = (j % 2 == 0 ? 1.0 : -1.0) * binomial(n, j);
    form += coeff * kron(CMat::Identity(blocks, blocks), gram);
  }
  // restriction: N(I_{E^(x)(n-1)} (x) v)-perp = E^(x)(n-1) (x) N(v)-perp
  const Subspace coker = complement(onb_kernel(rep.v_tilde));
  Index blocks = 1;
  for (int j = 0; j < n - 1; ++j) blocks *= rep.n;
  const Subspace base = lift_subspace(blocks, coker);
  const CMat basis = domain_basis(base, blocks * rep.n, domain);
  auto [margin, witness] = restricted_extreme(form, basis, false);
  return from_violation("n_expansive_mod[" + std::to_string(n) + "]", margin,
                        std::move(witness), tol);
}

PropertyVerdict is_concave_mod(const CovariantRep& rep, double tol,
                               const Subspace* domain) {
  tol = resolve_tol(tol);
  const Index ambient = tensor_dim(rep, 2);
  const CMat v2 = power(rep, 2);
  const CMat id_n = CMat::Identity(rep.n, rep.n);
  const CMat gram1 = rep.v_tilde.adjoint() * rep.v_tilde;
  const CMat p_coker = mp_inverse(rep) * rep.v_tilde;  // projector, hermitian idempotent
  const CMat form =
      v2.adjoint() * v2 + kron(id_n, p_coker) - 2.0 * kron(id_n, gram1);
  const CMat basis = domain_basis(full_space(ambient), rep.n * rep.n, domain);
  auto [margin, witness] = restricted_extreme(form, basis, false);
  return from_violation("concave_mod", margin, std::move(witness), tol);
}

PropertyVerdict is_concave_full(const CovariantRep& rep, double tol,
                                const Subspace* domain) {
  tol = resolve_tol(tol);
  const Index ambient = tensor_dim(rep, 2);
  const CMat v2 = power(rep, 2);
  const CMat id_n = CMat::Identity(rep.n, rep.n);
  const CMat gram1 = rep.v_tilde.adjoint() * rep.v_tilde;
  const CMat form = v2.adjoint() * v2 +
                    CMat::Identity(ambient, ambient) - 2.0 * kron(id_n, gram1);
  const CMat basis = domain_basis(full_space(ambient), rep.n * rep.n, domain);
  auto [margin, witness] = restricted_extreme(form, basis, false);
  return from_violation("concave", margin, std::move(witness), tol);
}

CheckReport theorem_suite(const CovariantRep& rep, int n_cap, double tol,
                          const Subspace* domain) {
  n_cap = n_cap >= 1 ? n_cap : 2;
  CheckReport r;
  r.tol = resolve_tol(tol);
  const CovariantRep dual = cauchy_dual(rep);
  const double dual_norm = operator_norm(dual.v_tilde);

  const PropertyVerdict concave_mod = is_concave_mod(rep, r.tol, domain);
  const PropertyVerdict concave = is_concave_full(rep, r.tol, domain);
  const PropertyVerdict dual_hypo = is_hyponormal_mod(dual, r.tol, domain);

  const auto implication = [&](const char* name, bool premise, bool conclusion,
                               double value) {
    r.add(name, name,
          premise ? (conclusion ? Verdict::Pass : Verdict::Fail)
                  : Verdict::HypothesisFailed,
          value);
  };

  r.add("thm.x_hypothesis.concave_mod", "property.concave_mod", Verdict::Info,
        concave_mod.margin);
  r.add("thm.x_hypothesis.concave", "property.concave", Verdict::Info, concave.margin);

  implication("thm.dual_of_concave_mod_hyponormal_mod",
              concave_mod.verdict == Verdict::Pass,
              dual_hypo.verdict == Verdict::Pass, dual_hypo.margin);
  implication("thm.dual_of_concave_hyponormal_mod",
              concave.verdict == Verdict::Pass,
              dual_hypo.verdict == Verdict::Pass, dual_hypo.margin);
  implication("thm.dual_of_concave_contractive",
              concave.verdict == Verdict::Pass,
              dual_norm <= 1.0 + r.tol, dual_norm);

  // image-chain hypothesis: (I_{E^(x)n} (x) v) N(I_{E^(x)n} (x) v)-perp
  // inside N(I_{E^(x)(n-1)} (x) v)-perp, per n <= cap
  const Subspace coker = complement(onb_kernel(rep.v_tilde));
  bool chain = true;
  for (int n = 1; n <= n_cap; ++n) {
    Index blocks = 1;
    bool feasible = true;
    for (int j = 0; j < n; ++j) {
      blocks *= rep.n;
      if (blocks * rep.n * rep.dim_h > settings().max_dim) { feasible = false; break; }
    }
    if (!feasible) break;
    const Subspace lifted = lift_subspace(blocks, coker);
    const Subspace image = lifted.rank() == 0
                               ? zero_space(blocks * rep.dim_h)
                               : onb_range(apply_block_diag(rep.v_tilde, lifted.basis));
    const Subspace target = lift_subspace(blocks / rep.n, coker);
    const bool ok = subspace_leq(image, target, r.tol);
    chain = chain && ok;
    std::ostringstream name;
    name << "thm.x5.image_chain[" << n << "]";
    r.add(name.str(), "thm.x5.image_chain", Verdict::Info, ok ? 1.0 : 0.0);
  }
  const PropertyVerdict expansive = is_n_expansive_mod(rep, 1, r.tol, domain);
  implication("thm.x5.conclusion_expansive_mod",
              concave_mod.verdict == Verdict::Pass && chain,
              expansive.verdict == Verdict::Pass, expansive.margin);
  implication("thm.x5.conclusion_dual_contractive",
              concave_mod.verdict == Verdict::Pass && chain,
              dual_norm <= 1.0 + r.tol, dual_norm);

  // sqrt(2) block-norm bound implies hyponormal-mod
  {
    const CMat id_n = CMat::Identity(rep.n, rep.n);
    const CMat dagger = mp_inverse(rep);
    const CMat b1 = kron(id_n, rep.v_tilde);
    const CMat b2 = kron(id_n, rep.v_tilde * dagger) * (dagger * rep.v_tilde);
    CMat x(b1.rows(), b1.cols() + b2.cols());
    x.leftCols(b1.cols()) = b1;
    x.rightCols(b2.cols()) = b2;
    const double norm_x = operator_norm(x);
    const bool premise = norm_x <= std::sqrt(2.0) + r.tol;
    r.add("thm.sqrt2_bound.premise", "thm.sqrt2_bound", Verdict::Info, norm_x);
    const PropertyVerdict hypo = is_hyponormal_mod(rep, r.tol);
    implication("thm.sqrt2_bound.conclusion_hyponormal_mod", premise,
                hypo.verdict == Verdict::Pass, hypo.margin);
  }

  // doubling bound ||(I (x) v) z + e||^2 <= 2(||z||^2 + ||v e||^2) implies
  // hyponormal contractive
  {
    const CMat b1 = kron(CMat::Identity(rep.n, rep.n), rep.v_tilde);
    const Index d2 = b1.cols();   // E^(x)2 (x) H
    const Index d1 = b1.rows();   // E (x) H
    CMat form = CMat::Zero(d2 + d1, d2 + d1);
    form.topLeftCorner(d2, d2) = b1.adjoint() * b1 - 2.0 * CMat::Identity(d2, d2);
    form.topRightCorner(d2, d1) = b1.adjoint();
    form.bottomLeftCorner(d1, d2) = b1;
    form.bottomRightCorner(d1, d1) =
        CMat::Identity(d1, d1) - 2.0 * rep.v_tilde.adjoint() * rep.v_tilde;
    const double margin = hermitian_eigenvalues(form).tail(1)(0);
    const bool premise = margin <= r.tol;
    r.add("thm.doubling_bound.premise", "thm.doubling_bound", Verdict::Info, margin);
    const PropertyVerdict hypo = is_hyponormal_mod(rep, r.tol);
    implication("thm.doubling_bound.conclusion_hyponormal_mod", premise,
                hypo.verdict == Verdict::Pass, hypo.margin);
    implication("thm.doubling_bound.conclusion_contractive", premise,
                operator_norm(rep.v_tilde) <= 1.0 + r.tol,
                operator_norm(rep.v_tilde));
  }
  return r;
}

}  // namespace covrep
