#pragma once

#include <string>
#include <vector>

#include "covrep/linalg.hpp"
#include "covrep/report.hpp"

namespace covrep {

struct LabeledMatrix {
  std::string label;
  CMat matrix;
};

/// A covariant representation encoded by the single matrix
/// v_tilde : E (x) H -> H, with E = C^n, H = C^dim_h.
///
/// Basis ordering is i-major: the flat index of delta_{i1} (x) ... (x)
/// delta_{ik} (x) e_j is ((...(i1*n + i2)*n + ...)*n + ik)*dim_h + j with
/// 0-based indices, so every lift I_{E^(x)k} (x) v_tilde is the literal
/// Kronecker product kron(I_{n^k}, v_tilde).
struct CovariantRep {
  Index dim_h = 0;
  Index n = 0;
  CMat v_tilde;  // dim_h x (n * dim_h)
  std::vector<LabeledMatrix> sigma_gens;  // each dim_h x dim_h
  std::vector<LabeledMatrix> phi_gens;    // each n x n, labels match sigma_gens
};

CovariantRep make_rep(Index dim_h, Index n, CMat v_tilde,
                      std::vector<LabeledMatrix> sigma_gens = {},
                      std::vector<LabeledMatrix> phi_gens = {});

/// n^k * dim_h, with the configured size cap enforced.
Index tensor_dim(const CovariantRep& rep, int k);

/// kron(I_{n^k}, v_tilde): n^k dim_h x n^(k+1) dim_h.
CMat lift(const CovariantRep& rep, int k);

/// The k-th power map E^(x)k (x) H -> H; k = 0 gives the identity on H.
CMat power(const CovariantRep& rep, int k);

/// Rounding-noise scale of a k-fold product of factors with Frobenius norm
/// like m: max(1, ||m||_F)^k. Rank cutoffs for power chains must reference
/// this rather than the product's own norm, which a near-nilpotent chain
/// drives to zero faster than its noise floor.
double chain_scale(const CMat& factor, int k);

/// Absolute singular-value cutoff for rank decisions on a k-fold chain of
/// the given factor.
double chain_rank_tol(const CMat& factor, int k, Index rows, Index cols);

/// Per-generator residuals of sigma(b) v = v (phi(b) (x) I_H). Vacuous pass
/// when no generators are supplied (base algebra C). Also records, as
/// informational items, hermitian consistency per generator and whether the
/// supplied phi generators act nondegenerately.
CheckReport check_covariance(const CovariantRep& rep, double tol = -1.0);

/// Reduced minimum modulus: the smallest singular value above the rank
/// cutoff; +infinity for the zero map.
double gamma(const CovariantRep& rep, double rank_tol = -1.0);

struct BoolWithResidual {
  bool value = false;
  double residual = 0.0;
};

/// true iff ||v v^* v - v|| <= tol * (1 + ||v||).
BoolWithResidual is_partial_isometry(const CovariantRep& rep, double tol = -1.0);

/// Block-diagonal direct sum of two representations over the same E.
CovariantRep direct_sum(const CovariantRep& a, const CovariantRep& b);

}  // namespace covrep
