#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "covrep/config.hpp"

namespace covrep {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

bool is_finite(const CMat& m);

/// Full SVD, m = left * diag(singular_values) * right_adjoint.
/// Singular values are nonincreasing; left and right_adjoint are square.
struct SvdResult {
  CMat left;
  RVec singular_values;
  CMat right_adjoint;

  double default_rank_tol() const;  // max(rows, cols) * eps * s_max
  Index rank(double rank_tol) const;
  CMat reconstruct() const;
};

/// Deterministic full SVD. Throws InputError on non-finite entries and
/// FactorizationError if the decomposition does not converge.
SvdResult svd(const CMat& m);

/// Moore-Penrose pseudoinverse. Singular values at or below rank_tol are
/// treated as zero; rank_tol < 0 selects the default cutoff.
CMat pinv(const CMat& m, double rank_tol = -1.0);

/// A linear subspace of C^ambient carried by an orthonormal column basis.
struct Subspace {
  Index ambient = 0;
  CMat basis;  // ambient x rank, orthonormal columns
  double tol = 0;

  Index rank() const { return basis.cols(); }
};

/// Validates orthonormality: ||basis^* basis - I||_F <= 10 * tol.
Subspace make_subspace(Index ambient, CMat basis, double tol = -1.0);

Subspace full_space(Index ambient, double tol = -1.0);
Subspace zero_space(Index ambient, double tol = -1.0);

Subspace onb_range(const CMat& m, double rank_tol = -1.0);
Subspace onb_kernel(const CMat& m, double rank_tol = -1.0);

/// Orthogonal complement within the ambient space.
Subspace complement(const Subspace& a);

/// Intersection computed as the kernel of the stacked complement
/// projections [(I - P_A); (I - P_B)].
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

Subspace subspace_join(const std::vector<Subspace>& parts);

/// true iff ||(I - P_B) A.basis||_F <= tol * (1 + rank A)
bool subspace_leq(const Subspace& a, const Subspace& b, double tol = -1.0);
bool subspace_eq(const Subspace& a, const Subspace& b, double tol = -1.0);

/// Orthogonal projection basis * basis^*.
CMat projector(const Subspace& a);

CMat kron(const CMat& a, const CMat& b);

/// kron(I_blocks, m) * x without materializing the block-diagonal factor;
/// blocks is inferred from x.rows() / m.cols().
CMat apply_block_diag(const CMat& m, const CMat& x);

/// The subspace I_blocks (x) s inside C^(blocks * s.ambient).
Subspace lift_subspace(Index blocks, const Subspace& s);

/// Rank-revealed image of a subspace under a linear map.
Subspace map_subspace(const CMat& m, const Subspace& a, double rank_tol = -1.0);

/// Eigenvalues of a (numerically) hermitian matrix, ascending. The input
/// is symmetrized before factorization.
RVec hermitian_eigenvalues(const CMat& m);
std::pair<RVec, CMat> hermitian_eigensystem(const CMat& m);

/// Largest singular value.
double operator_norm(const CMat& m);

}  // namespace covrep
