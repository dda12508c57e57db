#pragma once

#include <array>

#include "covrep/rep.hpp"
#include "covrep/report.hpp"

namespace covrep {

using DualityReport = CheckReport;

/// Moore-Penrose inverse of v_tilde: E (x) H <- H, n dim_h x dim_h.
CMat mp_inverse(const CovariantRep& rep);

/// Composed dagger power (I_{E^(x)(k-1)} (x) v^+) ... (I_E (x) v^+) v^+,
/// shape n^k dim_h x dim_h. Requires k >= 1.
CMat dagger_power(const CovariantRep& rep, int k);

/// Cauchy dual: a representation with matrix adjoint(mp_inverse(rep)).
/// Cross-checked internally against the defining product v (v^* v)^+;
/// generators are carried over unchanged.
CovariantRep cauchy_dual(const CovariantRep& rep);

/// Frobenius norms of the four defining equations of the pseudoinverse:
/// (||VWV - V||, ||WVW - W||, ||(VW)^* - VW||, ||(WV)^* - WV||).
std::array<double, 4> penrose_residuals(const CMat& v, const CMat& w);

/// Checks that s is a generalized inverse (s v s = s, v s v = v), builds the
/// composed powers s^(k), and evaluates the kernel-containment chain
/// (I_E (x) s^(k)) N(v) against both the generalized range and the plain
/// range for k <= k_max, together with the power fixed-point identity
/// v_k s^(k) v_k = v_k. Conditional items are asserted only when the
/// representation is regular.
DualityReport verify_generalized_inverse(const CovariantRep& rep, const CMat& s,
                                         int k_max = -1);

/// Residual per duality identity: both dual formulas, involution,
/// adjoint/dual commutation, the gram-dual identity, the partial-isometry
/// fixed point, kernel/range projection factorizations, the gram-pinv
/// factorization, regular-only range characterizations, and (when a unitary
/// is supplied) the conjugation identity. All residuals are normalized by
/// (1 + ||v||).
DualityReport dual_identity_suite(const CovariantRep& rep,
                                  const CMat* unitary = nullptr,
                                  int k_max = -1);

/// Residual of dagger_power(rep, k) against pinv(power(rep, k)).
BoolWithResidual is_n_dagger(const CovariantRep& rep, int k, double tol = -1.0);

/// n-dagger for every 2 <= k <= k_max.
bool is_hyper_dagger(const CovariantRep& rep, int k_max = -1, double tol = -1.0);

}  // namespace covrep
