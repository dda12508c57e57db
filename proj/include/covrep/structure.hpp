#pragma once

#include <utility>
#include <vector>

#include "covrep/rep.hpp"
#include "covrep/report.hpp"

namespace covrep {

struct GenRange {
  Subspace space;
  int stabilized_at = 0;  // first k with R(v_k) = R(v_{k+1})
  bool cap_hit = false;
};

/// Generalized range: the intersection of the nested range chain R(v_k),
/// k = 0..k_max, with early stop once two consecutive ranges agree. In
/// finite dimension the chain is decreasing, so stabilization is reached at
/// k <= dim_h unless the size cap interferes.
GenRange generalized_range(const CovariantRep& rep, int k_max = -1);

/// Kernel containment N(v) <= E (x) generalized range.
bool regular_bool(const CovariantRep& rep, int k_max = -1);

/// The regularity definition plus the four equivalent finite-power chain
/// conditions per (n, m) up to the caps. Any disagreement among the four is
/// flagged as a tolerance bug ("regularity.conditions.consistency").
CheckReport is_regular(const CovariantRep& rep, int n_max = -1, int m_max = -1);

/// Regularity of rep and of its Moore-Penrose inverse, the latter checked
/// directly as N(I_{E^(x)n} (x) v^+) <= R(dagger_power(n)) for n <= k_max.
/// Also records, separately, the sufficient condition "generalized range
/// reduces the representation".
CheckReport is_bi_regular(const CovariantRep& rep, int k_max = -1);
bool bi_regular_bool(const CovariantRep& rep, int k_max = -1);

/// H minus the range of v, cross-checked against I - v v^+.
Subspace wandering_subspace(const CovariantRep& rep);

struct BracketsResult {
  Subspace space;
  std::vector<Index> growth_profile;  // dim of the cumulative join per k
  int stabilized_at = -1;             // -1 when the cap was hit first
  bool cap_hit = false;
};

/// Join of v_k(E^(x)k (x) seed) over k = 0..K. The family is not nested, so
/// equality of two consecutive joins is only a stopping heuristic; the
/// growth profile and cap flag always accompany the result.
BracketsResult brackets(const CovariantRep& rep, const Subspace& seed,
                        int k_max = -1);

struct WoldReport {
  Subspace wandering;        // E_w = H minus R(v)
  Subspace brackets_v;       // [E_w]_v, truncated
  Subspace brackets_dual;    // [E_w]_{v'}
  Subspace gen_range;        // generalized range of v
  Subspace gen_range_dual;   // generalized range of v'
  int stabilized_at = 0;
  bool cap_hit = false;
  CheckReport verdicts;
};

/// Decomposition verdicts: the two direct-sum identities (asserted only for
/// bi-regular representations, informational otherwise), the extended
/// decomposition battery (wandering property, reducing summands, unitarity
/// of the restriction), the five restriction-unitarity equivalents with a
/// consistency flag, and the subspace equalities that hold when both
/// generalized ranges reduce their representations.
WoldReport wold_report(const CovariantRep& rep, int k_max = -1);

/// true iff v maps E (x) M into M and E (x) M-perp into M-perp, and every
/// supplied sigma generator leaves M invariant.
bool reduces(const CovariantRep& rep, const Subspace& m, double tol = -1.0);

/// The seven equivalent failure conditions of the wandering-subspace
/// property, with the canonical witness subspaces constructed and each of
/// their stated properties verified. Asserted for bi-regular
/// representations, informational otherwise.
CheckReport wold_failure_witnesses(const CovariantRep& rep, int k_max = -1);

struct ProjectionSequence {
  std::vector<CMat> p_list;  // P_k = v_k dagger_power(k), k = 0.. (P_0 = I)
  std::vector<CMat> q_list;  // Q_k = P_k - P_{k+1}
  CMat p_limit;
  CMat q_limit;
  int stabilized_at = -1;
  bool cap_hit = false;
};

/// The nested projection chain and its stabilized limit, with hermitian
/// idempotence, mutual orthogonality, the telescoping identity, the limit
/// projection onto the generalized range, the vanishing characterization of
/// R(Q), and reducing verdicts. Conclusions are conditional on the
/// hyper-dagger and regularity hypotheses.
std::pair<ProjectionSequence, CheckReport> projection_sequence(
    const CovariantRep& rep, int k_max = -1);

/// Per i: hypothesis (I_E (x) v_i v_i^*) N(v) <= N(v) and conclusion
/// pinv(power(i+1)) = dagger_power(i+1) on R(power(i+1)), with the
/// implication asserted only when all hypotheses up to i hold.
CheckReport dagger_power_on_range(const CovariantRep& rep, int n_max = -1);

}  // namespace covrep
