#pragma once

#include <optional>
#include <string>

#include "covrep/rep.hpp"
#include "covrep/report.hpp"

namespace covrep {

/// Certified by the extreme eigenvalue of the associated quadratic form.
/// The margin is reported in the property's natural orientation: for
/// ">= 0"-type inequalities (hyponormal) it is the smallest eigenvalue and
/// pass means margin >= -tol; for "<= 0"-type inequalities (expansive,
/// concave) it is the most positive violation and pass means margin <= tol.
/// A witness vector accompanies every failure; plugging it into the
/// defining inequality reproduces the margin.
struct PropertyVerdict {
  std::string property;
  Verdict verdict = Verdict::Pass;
  double margin = 0.0;
  std::optional<CVec> witness;
};

/// Every certifier takes an optional domain restriction: a subspace D of H
/// whose lifts E^(x)k (x) D replace the full tensor spaces in the quadratic
/// form. Truncated shift models use the interior-supported subspace here to
/// strip truncation artifacts.

/// ||(I_E (x) v^*) eta|| <= ||v eta|| on the kernel complement.
PropertyVerdict is_hyponormal_mod(const CovariantRep& rep, double tol = -1.0,
                                  const Subspace* domain = nullptr);

/// Alternating binomial expansion of lifted power grams, nonpositive on
/// N(I_{E^(x)(n-1)} (x) v)-perp.
PropertyVerdict is_n_expansive_mod(const CovariantRep& rep, int n, double tol = -1.0,
                                   const Subspace* domain = nullptr);

/// ||v_2 z||^2 + ||(I_E (x) v^+ v) z||^2 - 2 ||(I_E (x) v) z||^2 <= 0 over
/// all of E^(x)2 (x) H (the kernel-complement restriction is equivalent and
/// unnecessary here).
PropertyVerdict is_concave_mod(const CovariantRep& rep, double tol = -1.0,
                               const Subspace* domain = nullptr);

/// ||v_2 z||^2 + ||z||^2 - 2 ||(I_E (x) v) z||^2 <= 0 over all of
/// E^(x)2 (x) H.
PropertyVerdict is_concave_full(const CovariantRep& rep, double tol = -1.0,
                                const Subspace* domain = nullptr);

/// Implication battery: concave-mod => dual hyponormal-mod; concave =>
/// dual hyponormal contraction; the image-chain hypothesis => expansive-mod
/// and contractive dual; the sqrt(2) block-norm bound => hyponormal-mod;
/// the doubling bound => hyponormal contractive. Hypotheses and conclusions
/// are evaluated independently and combined three-valued.
CheckReport theorem_suite(const CovariantRep& rep, int n_cap = -1, double tol = -1.0,
                          const Subspace* domain = nullptr);

}  // namespace covrep
