#include "covrep/structure.hpp"

#include <cmath>
#include <sstream>

#include "covrep/duality.hpp"

namespace covrep {

namespace {

std::string idx(const char* base, int a) {
  std::ostringstream s;
  s << base << '[' << a << ']';
  return s.str();
}

std::string idx2(const char* base, int a, int b) {
  std::ostringstream s;
  s << base << '[' << a << ',' << b << ']';
  return s.str();
}

/// v_k (I_{n^k} (x) B): image matrix of E^(x)k (x) span(B) under the k-th power.
CMat power_image(const CovariantRep& rep, const CMat& power_k, const CMat& b) {
  if (b.cols() == 0) return CMat::Zero(rep.dim_h, 0);
  const Index blocks = power_k.cols() / rep.dim_h;
  CMat out(rep.dim_h, blocks * b.cols());
  for (Index blk = 0; blk < blocks; ++blk)
    out.middleCols(blk * b.cols(), b.cols()) =
        power_k.middleCols(blk * rep.dim_h, rep.dim_h) * b;
  return out;
}

bool image_inside(const CovariantRep& rep, const Subspace& m, const Subspace& target,
                  double tol) {
  // range of v (I_n (x) P_M) against target
  CMat x(rep.dim_h, rep.n * m.rank());
  if (m.rank() == 0) return true;
  for (Index b = 0; b < rep.n; ++b)
    x.middleCols(b * m.rank(), m.rank()) =
        rep.v_tilde.middleCols(b * rep.dim_h, rep.dim_h) * m.basis;
  return subspace_leq(onb_range(x), target, tol);
}

}  // namespace

GenRange generalized_range(const CovariantRep& rep, int k_max) {
  k_max = resolve_power(k_max);
  GenRange out;
  out.space = full_space(rep.dim_h);
  for (int k = 1; k <= k_max; ++k) {
    CMat vk;
    try {
      vk = power(rep, k);
    } catch (const SizeCapError&) {
      out.cap_hit = true;
      out.stabilized_at = -1;
      return out;
    }
    const Subspace range_k =
        onb_range(vk, chain_rank_tol(rep.v_tilde, k, vk.rows(), vk.cols()));
    const Subspace next = subspace_intersect(out.space, range_k);
    const bool stable = next.rank() == out.space.rank() || next.rank() == 0;
    out.space = next;
    if (stable) {
      out.stabilized_at = k;
      return out;
    }
  }
  out.cap_hit = true;
  out.stabilized_at = -1;
  return out;
}

bool regular_bool(const CovariantRep& rep, int k_max) {
  const GenRange gen = generalized_range(rep, k_max);
  const Subspace ker = onb_kernel(rep.v_tilde);
  return subspace_leq(ker, lift_subspace(rep.n, gen.space));
}

CheckReport is_regular(const CovariantRep& rep, int n_max, int m_max) {
  n_max = n_max >= 1 ? n_max : 2;
  m_max = m_max >= 1 ? m_max : 2;
  CheckReport report;
  report.tol = settings().tol;

  report.add("regularity.closed_range[auto-pass:finite-dimensional]",
             "regularity.closed_range", Verdict::Pass, 0.0);

  const GenRange gen = generalized_range(rep);
  const Subspace ker = onb_kernel(rep.v_tilde);
  const bool definition =
      !gen.cap_hit && subspace_leq(ker, lift_subspace(rep.n, gen.space));
  report.add("regularity.definition", "regularity.definition", Verdict::Info,
             definition ? 1.0 : 0.0);

  // chain conditions; the m range is extended to the stabilization depth so
  // the deepest column is equivalent to the definition
  const int m_deep = gen.cap_hit ? m_max : std::max(m_max, gen.stabilized_at);

  std::vector<int> cc1(m_deep + 1, -1);  // -1: not evaluated
  for (int m = 1; m <= m_deep; ++m) {
    CMat vm;
    try {
      vm = power(rep, m);
    } catch (const SizeCapError&) {
      break;
    }
    const bool ok = subspace_leq(
        ker, lift_subspace(rep.n, onb_range(vm, chain_rank_tol(rep.v_tilde, m,
                                                               vm.rows(), vm.cols()))));
    cc1[m] = ok ? 1 : 0;
    report.add(idx("regularity.cc1", m), "regularity.cc1", Verdict::Info,
               ok ? 1.0 : 0.0);
  }

  struct PairVerdict { int n, m; bool cc3, cc4; };
  std::vector<PairVerdict> pairs;
  std::vector<int> cc2(n_max + 1, -1);
  for (int n = 1; n <= n_max; ++n) {
    CMat vn;
    Subspace ker_n;
    try {
      vn = power(rep, n);
      ker_n = onb_kernel(vn, chain_rank_tol(rep.v_tilde, n, vn.rows(), vn.cols()));
    } catch (const SizeCapError&) {
      break;
    }
    const Index blocks_n = vn.cols() / rep.dim_h;  // n^n
    {
      const bool ok = subspace_leq(ker_n, lift_subspace(blocks_n, onb_range(rep.v_tilde)));
      cc2[n] = ok ? 1 : 0;
      report.add(idx("regularity.cc2", n), "regularity.cc2", Verdict::Info,
                 ok ? 1.0 : 0.0);
    }
    for (int m = 1; m <= m_max; ++m) {
      CMat vm, vnm;
      Subspace ker_nm;
      try {
        vm = power(rep, m);
        tensor_dim(rep, n + m);
        vnm = power(rep, n + m);
        ker_nm = onb_kernel(vnm, chain_rank_tol(rep.v_tilde, n + m,
                                                vnm.rows(), vnm.cols()));
      } catch (const SizeCapError&) {
        break;
      }
      const bool c3 = subspace_leq(
          ker_n, lift_subspace(blocks_n, onb_range(vm, chain_rank_tol(rep.v_tilde, m,
                                                                      vm.rows(), vm.cols()))));
      // (I_{E^(x)n} (x) v_m) N(v_{n+m}) compared with N(v_n)
      const CMat moved = ker_nm.rank() == 0 ? CMat() : apply_block_diag(vm, ker_nm.basis);
      const Subspace image =
          ker_nm.rank() == 0
              ? zero_space(ker_n.ambient)
              : onb_range(moved, chain_rank_tol(rep.v_tilde, m, moved.rows(), moved.cols()));
      const bool c4 = subspace_eq(image, ker_n, report.tol);
      pairs.push_back({n, m, c3, c4});
      report.add(idx2("regularity.cc3", n, m), "regularity.cc3", Verdict::Info,
                 c3 ? 1.0 : 0.0);
      report.add(idx2("regularity.cc4", n, m), "regularity.cc4", Verdict::Info,
                 c4 ? 1.0 : 0.0);
    }
  }

  // Consistency at matched quantifier depth: the deepest cc1 column equals
  // the definition, cc3 and cc4 agree pairwise, and cc3 is monotone in both
  // arguments (a violation indicates a tolerance bug, not a math finding).
  bool consistent = true;
  if (!gen.cap_hit && m_deep >= 1 && cc1[m_deep] != -1)
    consistent = consistent && (cc1[m_deep] == (definition ? 1 : 0));
  for (const PairVerdict& p : pairs) consistent = consistent && (p.cc3 == p.cc4);
  for (const PairVerdict& p : pairs)
    for (const PairVerdict& q : pairs)
      if (p.n <= q.n && p.m <= q.m && q.cc3 && !p.cc3) consistent = false;
  for (int m = 1; m < m_deep; ++m)
    if (cc1[m] != -1 && cc1[m + 1] == 1 && cc1[m] == 0) consistent = false;
  report.add("regularity.conditions.consistency", "regularity.conditions.consistency",
             consistent ? Verdict::Pass : Verdict::Fail, consistent ? 0.0 : 1.0);
  return report;
}

CheckReport is_bi_regular(const CovariantRep& rep, int k_max) {
  k_max = resolve_power(k_max);
  CheckReport report = is_regular(rep);
  const CovariantRep dual = cauchy_dual(rep);

  report.add("biregularity.dagger_closed_range[auto-pass:finite-dimensional]",
             "regularity.closed_range", Verdict::Pass, 0.0);

  const bool dual_regular = regular_bool(dual);
  report.add("biregularity.dagger_regular", "biregularity.dagger_regular",
             Verdict::Info, dual_regular ? 1.0 : 0.0);

  // the definition checked directly: N(I_{E^(x)k} (x) v^+) <= R(dagger_power(k))
  const CMat dagger = mp_inverse(rep);
  const Subspace dagger_ker = onb_kernel(dagger);
  for (int k = 1; k <= k_max; ++k) {
    Index blocks = 1;
    bool feasible = true;
    for (int j = 0; j < k; ++j) {
      blocks *= rep.n;
      if (blocks * rep.n * rep.dim_h > settings().max_dim) { feasible = false; break; }
    }
    if (!feasible) break;
    CMat wk;
    try {
      wk = dagger_power(rep, k);
    } catch (const SizeCapError&) {
      break;
    }
    const bool ok = subspace_leq(
        lift_subspace(blocks, dagger_ker),
        onb_range(wk, chain_rank_tol(dagger, k, wk.rows(), wk.cols())));
    report.add(idx("biregularity.dagger_kernel_chain", k),
               "biregularity.dagger_kernel_chain", Verdict::Info, ok ? 1.0 : 0.0);
  }

  // sufficient condition: the generalized range reduces the representation
  const GenRange gen = generalized_range(rep);
  const bool reduces_gen = !gen.cap_hit && reduces(rep, gen.space);
  report.add("biregularity.genrange_reduces", "biregularity.genrange_reduces",
             Verdict::Info, reduces_gen ? 1.0 : 0.0);
  const bool regular = report.find("regularity.definition")->value == 1.0;
  if (reduces_gen && regular) {
    report.add("biregularity.sufficient_condition", "biregularity.sufficient_condition",
               dual_regular ? Verdict::Pass : Verdict::Fail, dual_regular ? 0.0 : 1.0);
  } else {
    report.add("biregularity.sufficient_condition", "biregularity.sufficient_condition",
               Verdict::HypothesisFailed, 0.0);
  }
  return report;
}

bool bi_regular_bool(const CovariantRep& rep, int k_max) {
  return regular_bool(rep, k_max) && regular_bool(cauchy_dual(rep), k_max);
}

Subspace wandering_subspace(const CovariantRep& rep) {
  const Subspace w = complement(onb_range(rep.v_tilde));
  const CMat alt = CMat::Identity(rep.dim_h, rep.dim_h) -
                   rep.v_tilde * mp_inverse(rep);
  if ((projector(w) - alt).norm() > 1e-8 * (1.0 + static_cast<double>(rep.dim_h)))
    throw FactorizationError("wandering_subspace: projector cross-check failed");
  return w;
}

namespace {

BracketsResult brackets_from(const CovariantRep& rep, const Subspace& seed,
                             int k_min, int k_max) {
  if (seed.ambient != rep.dim_h)
    throw DimensionError("brackets: seed must live in H");
  BracketsResult out;
  out.space = k_min == 0 ? seed : zero_space(rep.dim_h, seed.tol);
  out.growth_profile.push_back(out.space.rank());
  for (int k = std::max(1, k_min); k <= k_max; ++k) {
    CMat vk;
    try {
      vk = power(rep, k);
    } catch (const SizeCapError&) {
      out.cap_hit = true;
      return out;
    }
    const CMat image = seed.rank() == 0 ? CMat() : power_image(rep, vk, seed.basis);
    const Subspace term =
        seed.rank() == 0
            ? zero_space(rep.dim_h, seed.tol)
            : onb_range(image, chain_rank_tol(rep.v_tilde, k, image.rows(), image.cols()));
    const bool absorbed =
        term.rank() == 0 || subspace_leq(term, out.space, seed.tol);
    if (!absorbed) out.space = subspace_join({out.space, term});
    out.growth_profile.push_back(out.space.rank());
    if (absorbed) {
      out.stabilized_at = k - 1;
      return out;
    }
  }
  out.cap_hit = true;
  return out;
}

}  // namespace

BracketsResult brackets(const CovariantRep& rep, const Subspace& seed, int k_max) {
  return brackets_from(rep, seed, 0, resolve_power(k_max));
}

bool reduces(const CovariantRep& rep, const Subspace& m, double tol) {
  if (m.ambient != rep.dim_h) throw DimensionError("reduces: ambient mismatch");
  tol = resolve_tol(tol);
  const Subspace m_perp = complement(m);
  if (!image_inside(rep, m, m, tol)) return false;
  if (!image_inside(rep, m_perp, m_perp, tol)) return false;
  for (const LabeledMatrix& g : rep.sigma_gens) {
    if (m.rank() == 0) break;
    if (!subspace_leq(onb_range(g.matrix * m.basis), m, tol)) return false;
  }
  return true;
}

WoldReport wold_report(const CovariantRep& rep, int k_max) {
  k_max = resolve_power(k_max);
  WoldReport out;
  CheckReport& r = out.verdicts;
  r.tol = settings().tol;
  const double scale = 1.0 + rep.v_tilde.norm();

  const CovariantRep dual = cauchy_dual(rep);
  out.wandering = wandering_subspace(rep);
  const BracketsResult bv = brackets(rep, out.wandering, k_max);
  const BracketsResult bd = brackets(dual, out.wandering, k_max);
  const GenRange gv = generalized_range(rep, k_max);
  const GenRange gd = generalized_range(dual, k_max);
  out.brackets_v = bv.space;
  out.brackets_dual = bd.space;
  out.gen_range = gv.space;
  out.gen_range_dual = gd.space;
  out.stabilized_at = std::max({bv.stabilized_at, bd.stabilized_at,
                                gv.stabilized_at, gd.stabilized_at});
  out.cap_hit = bv.cap_hit || bd.cap_hit || gv.cap_hit || gd.cap_hit;

  const bool biregular = bi_regular_bool(rep, k_max);
  r.add("wold.hypothesis_biregular", "wold.hypothesis_biregular",
        biregular ? Verdict::Pass : Verdict::HypothesisFailed,
        biregular ? 1.0 : 0.0);

  auto direct_sum_check = [&](const char* name, const Subspace& a, const Subspace& b) {
    const double cross = (a.rank() && b.rank())
                             ? (a.basis.adjoint() * b.basis).norm()
                             : 0.0;
    const bool dims = a.rank() + b.rank() == rep.dim_h;
    const bool ok = dims && cross <= r.tol * (1 + static_cast<double>(rep.dim_h));
    r.add(name, "wold.direct_sum",
          biregular ? (ok ? Verdict::Pass : Verdict::Fail)
                    : (ok ? Verdict::Info : Verdict::HypothesisFailed),
          cross + (dims ? 0.0 : 1.0));
  };
  direct_sum_check("wold.sum_brackets_plus_dualrange", out.brackets_v, out.gen_range_dual);
  direct_sum_check("wold.sum_bracketsdual_plus_range", out.brackets_dual, out.gen_range);

  // wandering property of E_w under v
  for (int k = 1; k <= k_max && out.wandering.rank() > 0; ++k) {
    CMat vk;
    try {
      vk = power(rep, k);
    } catch (const SizeCapError&) {
      break;
    }
    const CMat image = power_image(rep, vk, out.wandering.basis);
    r.add_residual(idx("wold.wandering_property", k), "wold.wandering_property",
                   (out.wandering.basis.adjoint() * image).norm() / scale);
  }

  const bool red_brackets = reduces(rep, out.brackets_v);
  const bool red_gen = reduces(rep, out.gen_range);
  r.add("wold.summand_reduces.brackets", "wold.summand_reduces", Verdict::Info,
        red_brackets ? 1.0 : 0.0);
  r.add("wold.summand_reduces.genrange", "wold.summand_reduces", Verdict::Info,
        red_gen ? 1.0 : 0.0);

  const double cross_own = (out.brackets_v.rank() && out.gen_range.rank())
                               ? (out.brackets_v.basis.adjoint() * out.gen_range.basis).norm()
                               : 0.0;
  const bool own_sum = out.brackets_v.rank() + out.gen_range.rank() == rep.dim_h &&
                       cross_own <= r.tol * (1 + static_cast<double>(rep.dim_h));
  r.add("wold.decomposition_direct", "wold.decomposition_direct",
        Verdict::Info, own_sum ? 1.0 : 0.0);

  // unitarity of v restricted to (E (x) genrange) meet N(v)-perp -> genrange
  const Subspace domain = subspace_intersect(
      lift_subspace(rep.n, out.gen_range), complement(onb_kernel(rep.v_tilde)));
  bool unitary_restriction = true;
  double iso_residual = 0.0;
  if (domain.rank() > 0) {
    const CMat vb = rep.v_tilde * domain.basis;
    iso_residual =
        (vb.adjoint() * vb - CMat::Identity(domain.rank(), domain.rank())).norm() / scale;
    unitary_restriction = iso_residual <= r.tol &&
                          subspace_eq(onb_range(vb), out.gen_range, r.tol);
  } else {
    unitary_restriction = out.gen_range.rank() == 0;
  }
  r.add("wold.restriction_unitary", "wold.restriction_unitary", Verdict::Info,
        unitary_restriction ? 1.0 : 0.0);

  const bool admits = own_sum && red_brackets && red_gen && unitary_restriction &&
                      bv.stabilized_at >= 0;
  r.add("wold.admits_extended", "wold.admits_extended", Verdict::Info,
        admits ? 1.0 : 0.0);

  // five equivalent forms of the restriction-unitarity, with consistency
  const CMat p_inf = projector(out.gen_range);
  const CMat dagger = mp_inverse(rep);
  const CMat& v = rep.v_tilde;
  const double r1 = (v * v.adjoint() * p_inf - p_inf).norm() / scale;
  const double r2 = (p_inf * v * v.adjoint() - p_inf * v * dagger).norm() / scale;
  const double r3 = (v.adjoint() * p_inf - dagger * p_inf).norm() / scale;
  const CMat lifted_p = kron(CMat::Identity(rep.n, rep.n), p_inf);
  const double r4 = ((v.adjoint() * v - dagger * v) * lifted_p).norm() / scale;
  r.add("wold.unitarity_battery.i", "wold.unitarity_battery", Verdict::Info, r1);
  r.add("wold.unitarity_battery.ii", "wold.unitarity_battery", Verdict::Info, r2);
  r.add("wold.unitarity_battery.iii", "wold.unitarity_battery", Verdict::Info, r3);
  r.add("wold.unitarity_battery.iv", "wold.unitarity_battery", Verdict::Info, r4);
  r.add("wold.unitarity_battery.v", "wold.unitarity_battery", Verdict::Info,
        unitary_restriction ? 1.0 : 0.0);

  const bool regular = regular_bool(rep, k_max);
  const bool b1 = r1 <= r.tol, b2 = r2 <= r.tol, b3 = r3 <= r.tol, b4 = r4 <= r.tol;
  const bool battery_consistent = (b1 == b2) && (b2 == b3) && (b3 == b4) &&
                                  (b4 == unitary_restriction);
  r.add("wold.unitarity_battery.consistency", "wold.unitarity_battery.consistency",
        regular ? (battery_consistent ? Verdict::Pass : Verdict::Fail)
                : Verdict::HypothesisFailed,
        battery_consistent ? 0.0 : 1.0);

  // subspace equalities under the double reducing hypothesis
  const bool red_dual = reduces(dual, out.gen_range_dual);
  if (regular && red_gen && red_dual) {
    const bool eq_gen = subspace_eq(out.gen_range, out.gen_range_dual, r.tol);
    const bool eq_br = subspace_eq(out.brackets_v, out.brackets_dual, r.tol);
    r.add("wold.genrange_equality", "wold.genrange_equality",
          eq_gen ? Verdict::Pass : Verdict::Fail, eq_gen ? 0.0 : 1.0);
    r.add("wold.brackets_equality", "wold.brackets_equality",
          eq_br ? Verdict::Pass : Verdict::Fail, eq_br ? 0.0 : 1.0);
  } else {
    r.add("wold.genrange_equality", "wold.genrange_equality",
          Verdict::HypothesisFailed, 0.0);
    r.add("wold.brackets_equality", "wold.brackets_equality",
          Verdict::HypothesisFailed, 0.0);
  }
  return out;
}

CheckReport wold_failure_witnesses(const CovariantRep& rep, int k_max) {
  k_max = resolve_power(k_max);
  CheckReport r;
  r.tol = settings().tol;

  const bool biregular = bi_regular_bool(rep, k_max);
  r.add("wsfail.hypothesis_biregular", "wsfail.hypothesis_biregular",
        biregular ? Verdict::Pass : Verdict::HypothesisFailed,
        biregular ? 1.0 : 0.0);
  const auto assert_or_info = [&](bool ok) {
    return biregular ? (ok ? Verdict::Pass : Verdict::Fail)
                     : (ok ? Verdict::Info : Verdict::HypothesisFailed);
  };

  const CovariantRep dual = cauchy_dual(rep);
  const Subspace wandering = wandering_subspace(rep);
  const BracketsResult bv = brackets(rep, wandering, k_max);
  const GenRange gd = generalized_range(dual, k_max);
  const CMat dagger = mp_inverse(rep);

  const bool cond_i = bv.space.rank() != rep.dim_h;
  const bool cond_ii = gd.space.rank() != 0;
  r.add("wsfail.i", "wsfail.i", Verdict::Info, cond_i ? 1.0 : 0.0);
  r.add("wsfail.ii", "wsfail.ii", Verdict::Info, cond_ii ? 1.0 : 0.0);
  r.add("wsfail.i_iff_ii", "wsfail.i_iff_ii", assert_or_info(cond_i == cond_ii),
        cond_i == cond_ii ? 0.0 : 1.0);

  if (!cond_ii) {
    r.add("wsfail.witnesses", "wsfail.witnesses", Verdict::NotApplicable, 0.0);
    return r;
  }

  // (iii)/(iv): M = generalized range of the dual
  {
    const Subspace& m = gd.space;
    const bool in_dual_image =
        subspace_leq(m, map_subspace(dual.v_tilde, lift_subspace(rep.n, m)), r.tol);
    r.add("wsfail.iii.m_in_dual_image", "wsfail.iii", assert_or_info(in_dual_image),
          in_dual_image ? 0.0 : 1.0);
    const bool in_range = subspace_leq(m, onb_range(rep.v_tilde), r.tol);
    const bool adj_invariant =
        subspace_leq(map_subspace(rep.v_tilde.adjoint(), m),
                     lift_subspace(rep.n, m), r.tol);
    r.add("wsfail.iv.m_in_range", "wsfail.iv", assert_or_info(in_range),
          in_range ? 0.0 : 1.0);
    r.add("wsfail.iv.adjoint_invariance", "wsfail.iv", assert_or_info(adj_invariant),
          adj_invariant ? 0.0 : 1.0);
  }

  // (v)/(vi): M = [E_w]_v
  {
    const Subspace& m = bv.space;
    const bool contains_wandering = subspace_leq(wandering, m, r.tol);
    const bool proper = m.rank() != rep.dim_h;
    const bool invariant = image_inside(rep, m, m, r.tol);
    r.add("wsfail.v.contains_wandering", "wsfail.v", assert_or_info(contains_wandering),
          contains_wandering ? 0.0 : 1.0);
    r.add("wsfail.v.proper_invariant", "wsfail.v", assert_or_info(proper && invariant),
          (proper && invariant) ? 0.0 : 1.0);
    const bool dagger_containment =
        subspace_leq(lift_subspace(rep.n, m),
                     m.rank() == 0 ? zero_space(rep.n * rep.dim_h)
                                   : onb_range(dagger * m.basis),
                     r.tol);
    r.add("wsfail.vi.dagger_containment", "wsfail.vi", assert_or_info(dagger_containment),
          dagger_containment ? 0.0 : 1.0);
  }

  // (vii): M1 = join over k >= 1 of the wandering orbit, M2 = dual generalized range
  {
    const BracketsResult m1r = brackets_from(rep, wandering, 1, k_max);
    const Subspace& m1 = m1r.space;
    const Subspace& m2 = gd.space;
    const bool invariant = image_inside(rep, m1, m1, r.tol);
    r.add("wsfail.vii.m1_invariant", "wsfail.vii", assert_or_info(invariant),
          invariant ? 0.0 : 1.0);

    const Subspace m1_plus_wandering = subspace_join({m1, wandering});
    const bool dagger_into =
        m1.rank() == 0 ||
        subspace_leq(onb_range(dagger * m1.basis),
                     lift_subspace(rep.n, m1_plus_wandering), r.tol);
    r.add("wsfail.vii.dagger_into_m1_plus_wandering", "wsfail.vii",
          assert_or_info(dagger_into), dagger_into ? 0.0 : 1.0);

    // P_{M2} v (E (x) M2) = M2
    bool compression_onto = m2.rank() == 0;
    if (m2.rank() > 0) {
      CMat x(rep.dim_h, rep.n * m2.rank());
      for (Index b = 0; b < rep.n; ++b)
        x.middleCols(b * m2.rank(), m2.rank()) =
            rep.v_tilde.middleCols(b * rep.dim_h, rep.dim_h) * m2.basis;
      compression_onto = subspace_eq(onb_range(projector(m2) * x), m2, r.tol);
    }
    r.add("wsfail.vii.compression_onto_m2", "wsfail.vii",
          assert_or_info(compression_onto), compression_onto ? 0.0 : 1.0);

    const double cross = (m1.rank() && m2.rank())
                             ? (m1.basis.adjoint() * m2.basis).norm()
                             : 0.0;
    const bool splits = cross <= r.tol * (1 + static_cast<double>(rep.dim_h)) &&
                        subspace_eq(subspace_join({m1, m2}), onb_range(rep.v_tilde), r.tol);
    r.add("wsfail.vii.range_splits", "wsfail.vii", assert_or_info(splits), cross);
  }
  return r;
}

std::pair<ProjectionSequence, CheckReport> projection_sequence(
    const CovariantRep& rep, int k_max) {
  k_max = resolve_power(k_max);
  ProjectionSequence seq;
  CheckReport r;
  r.tol = settings().tol;
  const double scale = 1.0 + rep.v_tilde.norm();

  const bool hyper = is_hyper_dagger(rep, k_max);
  const bool regular = regular_bool(rep, k_max);
  const bool hypotheses = hyper && regular;
  r.add("projseq.hypothesis_hyper_dagger", "projseq.hypotheses",
        hyper ? Verdict::Pass : Verdict::HypothesisFailed, hyper ? 1.0 : 0.0);
  r.add("projseq.hypothesis_regular", "projseq.hypotheses",
        regular ? Verdict::Pass : Verdict::HypothesisFailed, regular ? 1.0 : 0.0);
  const auto conditional = [&](bool ok) {
    return hypotheses ? (ok ? Verdict::Pass : Verdict::Fail)
                      : (ok ? Verdict::Info : Verdict::HypothesisFailed);
  };

  seq.p_list.push_back(CMat::Identity(rep.dim_h, rep.dim_h));
  for (int k = 1; k <= k_max; ++k) {
    CMat pk;
    try {
      pk = power(rep, k) * dagger_power(rep, k);
    } catch (const SizeCapError&) {
      seq.cap_hit = true;
      break;
    }
    const bool stable = (pk - seq.p_list.back()).norm() <=
                        r.tol * (1 + static_cast<double>(rep.dim_h));
    seq.p_list.push_back(pk);
    if (stable || pk.norm() <= r.tol) {
      seq.stabilized_at = k;
      break;
    }
  }
  if (seq.stabilized_at < 0 && !seq.cap_hit) seq.cap_hit = true;
  seq.p_limit = seq.p_list.back();
  seq.q_limit = CMat::Identity(rep.dim_h, rep.dim_h) - seq.p_limit;
  for (std::size_t k = 0; k + 1 < seq.p_list.size(); ++k)
    seq.q_list.push_back(seq.p_list[k] - seq.p_list[k + 1]);

  const Subspace wandering = wandering_subspace(rep);
  const CMat p_wandering = projector(wandering);
  r.add_residual("projseq.wandering_projector", "projseq.wandering_projector",
                 (p_wandering - (CMat::Identity(rep.dim_h, rep.dim_h) -
                                 rep.v_tilde * mp_inverse(rep))).norm() / scale);

  for (std::size_t k = 1; k < seq.p_list.size(); ++k) {
    const CMat& pk = seq.p_list[k];
    const double herm = (pk - pk.adjoint()).norm() / scale;
    const double idem = (pk * pk - pk).norm() / scale;
    r.add(idx("projseq.p_hermitian_idempotent", static_cast<int>(k)),
          "projseq.p_hermitian_idempotent",
          conditional(herm <= r.tol && idem <= r.tol), std::max(herm, idem));
  }

  // Q_k against the wandering-compression formula v_k (I (x) P_E) dagger(k)
  for (std::size_t k = 0; k < seq.q_list.size(); ++k) {
    CMat formula;
    if (k == 0) {
      formula = p_wandering;
    } else {
      const CMat vk = power(rep, static_cast<int>(k));
      const CMat wk = dagger_power(rep, static_cast<int>(k));
      const Index blocks = vk.cols() / rep.dim_h;
      formula = vk * kron(CMat::Identity(blocks, blocks), p_wandering) * wk;
    }
    const double residual = (seq.q_list[k] - formula).norm() / scale;
    r.add(idx("projseq.q_formula", static_cast<int>(k)), "projseq.q_formula",
          conditional(residual <= 1e3 * r.tol), residual);
  }

  for (std::size_t j = 0; j < seq.q_list.size(); ++j)
    for (std::size_t k = j + 1; k < seq.q_list.size(); ++k) {
      const double residual = (seq.q_list[j] * seq.q_list[k]).norm() / scale;
      r.add(idx2("projseq.q_mutual_orthogonality", static_cast<int>(j),
                 static_cast<int>(k)),
            "projseq.q_mutual_orthogonality", conditional(residual <= r.tol),
            residual);
    }

  // telescoping holds by construction, asserted unconditionally
  for (std::size_t k = 1; k < seq.p_list.size(); ++k) {
    CMat sum = CMat::Zero(rep.dim_h, rep.dim_h);
    for (std::size_t i = 0; i < k; ++i) sum += seq.q_list[i];
    r.add_residual(idx("projseq.telescoping", static_cast<int>(k)),
                   "projseq.telescoping",
                   (sum - (CMat::Identity(rep.dim_h, rep.dim_h) - seq.p_list[k]))
                       .norm() / scale);
  }

  const GenRange gen = generalized_range(rep, k_max);
  const double limit_residual = (seq.p_limit - projector(gen.space)).norm() / scale;
  r.add("projseq.limit_is_genrange_projector", "projseq.limit_is_genrange_projector",
        conditional(!gen.cap_hit && !seq.cap_hit && limit_residual <= r.tol),
        limit_residual);

  const double proj_cut = 1e-6 * (1.0 + seq.p_limit.norm());
  const Subspace q_range = onb_range(seq.q_limit, proj_cut);
  const Subspace p_vanish = onb_kernel(seq.p_limit, proj_cut);
  const bool vanishing = subspace_eq(q_range, p_vanish, r.tol);
  r.add("projseq.q_range_vanishing", "projseq.q_range_vanishing",
        conditional(vanishing), vanishing ? 0.0 : 1.0);

  const bool p_reduces = reduces(rep, onb_range(seq.p_limit, proj_cut));
  const bool q_reduces = reduces(rep, q_range);
  r.add("projseq.range_p_reduces", "projseq.range_reduces", conditional(p_reduces),
        p_reduces ? 0.0 : 1.0);
  r.add("projseq.range_q_reduces", "projseq.range_reduces", conditional(q_reduces),
        q_reduces ? 0.0 : 1.0);
  return {std::move(seq), std::move(r)};
}

CheckReport dagger_power_on_range(const CovariantRep& rep, int n_max) {
  n_max = n_max >= 1 ? n_max : std::max(1, settings().max_power - 1);
  CheckReport r;
  r.tol = settings().tol;
  const double scale = 1.0 + rep.v_tilde.norm();
  const Subspace ker = onb_kernel(rep.v_tilde);

  bool hypotheses_so_far = true;
  for (int i = 1; i <= n_max; ++i) {
    CMat vi, vnext, wnext;
    try {
      vi = power(rep, i);
      vnext = power(rep, i + 1);
      wnext = dagger_power(rep, i + 1);
    } catch (const SizeCapError&) {
      break;
    }
    r.add(idx("dpor.range_closed[auto-pass:finite-dimensional]", i + 1),
          "regularity.closed_range", Verdict::Pass, 0.0);

    // hypothesis: (I_E (x) v_i v_i^*) N(v) <= N(v)
    bool hyp = true;
    if (ker.rank() > 0) {
      const CMat moved = apply_block_diag(vi * vi.adjoint(), ker.basis);
      hyp = subspace_leq(
          onb_range(moved, chain_rank_tol(rep.v_tilde, 2 * i, moved.rows(), moved.cols())),
          ker, r.tol);
    }
    r.add(idx("dpor.hypothesis", i), "dpor.hypothesis",
          hyp ? Verdict::Pass : Verdict::HypothesisFailed, hyp ? 1.0 : 0.0);
    hypotheses_so_far = hypotheses_so_far && hyp;

    const Subspace range_next =
        onb_range(vnext, chain_rank_tol(rep.v_tilde, i + 1, vnext.rows(), vnext.cols()));
    const double residual =
        range_next.rank() == 0
            ? 0.0
            : ((pinv(vnext) - wnext) * range_next.basis).norm() / scale;
    r.add(idx("dpor.conclusion", i), "dpor.conclusion",
          hypotheses_so_far ? (residual <= 1e3 * r.tol ? Verdict::Pass : Verdict::Fail)
                            : (residual <= 1e3 * r.tol ? Verdict::Info
                                                       : Verdict::HypothesisFailed),
          residual);
  }
  return r;
}

}  // namespace covrep
