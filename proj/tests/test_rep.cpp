#include <doctest.h>

#include <cmath>
#include <limits>

#include "covrep/duality.hpp"
#include "covrep/rep.hpp"
#include "fixtures.hpp"

using namespace covrep;
using namespace covrep::testing;

TEST_CASE("make_rep accepts valid shapes and rejects bad ones") {
  CHECK_NOTHROW(make_rep(1, 1, cmat(1, 1, {0})));
  CHECK_NOTHROW(ex_a());
  CHECK_THROWS_AS(make_rep(2, 2, CMat::Zero(3, 4)), DimensionError);
  CHECK_THROWS_AS(make_rep(2, 2, CMat::Zero(2, 4),
                           {{"a", CMat::Identity(2, 2)}}, {}),
                  DimensionError);
}

TEST_CASE("lift is the literal kron with the identity on the left") {
  const CovariantRep a = ex_a();
  CHECK((lift(a, 0) - a.v_tilde).norm() == 0.0);
  const CMat l1 = lift(a, 1);
  CHECK(l1.rows() == 4);
  CHECK(l1.cols() == 8);
  CHECK((l1 - kron(CMat::Identity(2, 2), a.v_tilde)).norm() == 0.0);
  const CovariantRep zero = make_rep(1, 1, cmat(1, 1, {0}));
  CHECK(lift(zero, 3).norm() == 0.0);
}

TEST_CASE("power base cases and nilpotency of the truncated shift") {
  const CovariantRep c = ex_c();
  CHECK((power(c, 0) - CMat::Identity(4, 4)).norm() == 0.0);
  CHECK((power(c, 1) - c.v_tilde).norm() == 0.0);
  // repeated-multiplication oracle
  CMat acc = c.v_tilde;
  for (int k = 2; k <= 4; ++k) acc = acc * kron(CMat::Identity(1, 1), c.v_tilde);
  CHECK((power(c, 4) - acc).norm() == 0.0);
  CHECK(power(c, 4).norm() == 0.0);
}

TEST_CASE("both power factorizations agree") {
  for (int t = 0; t < 20; ++t) {
    const CovariantRep rep = corpus(101 + t, 1, 3, 2).front();
    for (int k = 1; k <= 3; ++k) {
      const CMat via_left = rep.v_tilde * kron(CMat::Identity(rep.n, rep.n), power(rep, k - 1));
      const CMat via_right = power(rep, k - 1) * lift(rep, k - 1);
      const double scale = 1.0 + power(rep, k).norm();
      CHECK((power(rep, k) - via_left).norm() <= 1e-12 * scale);
      CHECK((power(rep, k) - via_right).norm() <= 1e-12 * scale);
    }
  }
}

TEST_CASE("power composition identity") {
  for (int t = 0; t < 15; ++t) {
    const CovariantRep rep = corpus(222 + t, 1, 3, 2).front();
    for (int j = 0; j <= 2; ++j)
      for (int k = 0; k + j <= 3; ++k) {
        Index blocks = 1;
        for (int b = 0; b < j; ++b) blocks *= rep.n;
        const CMat lhs = power(rep, j + k);
        const CMat rhs = power(rep, j) * kron(CMat::Identity(blocks, blocks), power(rep, k));
        CHECK((lhs - rhs).norm() <= 1e-10 * (1 + lhs.norm()));
      }
  }
}

TEST_CASE("power respects the size cap") {
  const CovariantRep rep = make_rep(2, 3, CMat::Zero(2, 6));
  CHECK_THROWS_AS(power(rep, 12), SizeCapError);
  CHECK_THROWS_AS(lift(rep, 12), SizeCapError);
}

TEST_CASE("covariance check is vacuous over the scalars") {
  const CheckReport r = check_covariance(ex_a());
  CHECK(r.all_pass());
  CHECK(r.find("covariance.vacuous") != nullptr);
}

TEST_CASE("covariance holds for identity generators and fails for a sign flip") {
  CovariantRep a = ex_a();
  a.sigma_gens = {{"b", CMat::Identity(2, 2)}};
  a.phi_gens = {{"b", CMat::Identity(2, 2)}};
  CHECK(check_covariance(a).all_pass());

  CovariantRep bad = ex_a();
  bad.sigma_gens = {{"b", cmat(2, 2, {1, 0, 0, -1})}};
  bad.phi_gens = {{"b", CMat::Identity(2, 2)}};
  const CheckReport r = check_covariance(bad);
  CHECK(r.has_fail());
  CHECK(r.find("covariance.intertwiner[b]")->value == doctest::Approx(2.0));
}

TEST_CASE("gamma of the zero map is infinite") {
  const CovariantRep zero = make_rep(2, 1, CMat::Zero(2, 2));
  CHECK(std::isinf(gamma(zero)));
}

TEST_CASE("gamma of known maps") {
  CHECK(gamma(ex_a()) == doctest::Approx(1.0));
  CHECK(gamma(make_rep(1, 2, cmat(1, 2, {0, 2}))) == doctest::Approx(2.0));
}

TEST_CASE("gamma >= 1 iff the restricted quadratic form is nonnegative") {
  for (const CovariantRep& rep : corpus(333, 25)) {
    const Subspace coker = complement(onb_kernel(rep.v_tilde));
    double min_eig = 0.0;
    if (coker.rank() > 0) {
      const CMat form = rep.v_tilde.adjoint() * rep.v_tilde -
                        CMat::Identity(rep.n * rep.dim_h, rep.n * rep.dim_h);
      min_eig = hermitian_eigenvalues(coker.basis.adjoint() * form * coker.basis)(0);
    }
    const double g = gamma(rep);
    const bool expansive_metric = std::isinf(g) || g >= 1.0 - 1e-10;
    CHECK(expansive_metric == (min_eig >= -1e-10));
  }
}

TEST_CASE("partial isometry detection") {
  CHECK(is_partial_isometry(ex_a()).value);
  CHECK(!is_partial_isometry(ex_b()).value);
  CHECK(is_partial_isometry(make_rep(2, 1, CMat::Zero(2, 2))).value);
}

TEST_CASE("partial isometry iff the dual fixes the representation") {
  for (const CovariantRep& rep : corpus(444, 25)) {
    const CovariantRep dual = cauchy_dual(rep);
    const bool fixed = (dual.v_tilde - rep.v_tilde).norm() <=
                       1e-9 * (1 + rep.v_tilde.norm());
    CHECK(is_partial_isometry(rep).value == fixed);
  }
}

TEST_CASE("direct sum places blocks per correspondence index") {
  const CovariantRep sum = direct_sum(ex_a(), ex_b());
  CHECK(sum.dim_h == 4);
  CHECK(sum.n == 2);
  // the (delta_1 (x) e0) column of the second summand lands at row 2 scaled by 2
  CHECK(sum.v_tilde(2, 2).real() == doctest::Approx(2.0));
  CHECK(sum.v_tilde(0, 0).real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(direct_sum(ex_a(), ex_c()), DimensionError);
}
