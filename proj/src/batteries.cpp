#include "covrep/batteries.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <thread>

#include "covrep/duality.hpp"
#include "covrep/properties.hpp"
#include "covrep/rng.hpp"
#include "covrep/structure.hpp"

namespace covrep {

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void merge_timed(CheckReport& into, std::vector<double>* wall_ms,
                 const CheckReport& part, double elapsed) {
  into.append(part);
  if (wall_ms)
    wall_ms->insert(wall_ms->end(), part.items.size(),
                    part.items.empty() ? 0.0 : elapsed / part.items.size());
}

}  // namespace

CheckReport run_battery(const CovariantRep& rep, const BatterySelection& sel,
                        int max_power, std::vector<double>* wall_ms,
                        const Subspace* properties_domain) {
  CheckReport report;
  report.tol = settings().tol;
  const auto timed = [&](auto&& fn) {
    const double t0 = now_ms();
    const CheckReport part = fn();
    merge_timed(report, wall_ms, part, now_ms() - t0);
  };

  timed([&] { return check_covariance(rep); });

  if (sel.duality) {
    timed([&] { return dual_identity_suite(rep, nullptr, max_power); });
    timed([&] { return verify_generalized_inverse(rep, mp_inverse(rep), max_power); });
    timed([&] {
      CheckReport part;
      part.tol = settings().tol;
      const auto pr = penrose_residuals(rep.v_tilde, mp_inverse(rep));
      const double scale = 1.0 + rep.v_tilde.norm();
      part.add_residual("penrose.fixed_v", "penrose.equations", pr[0] / scale);
      part.add_residual("penrose.fixed_w", "penrose.equations", pr[1] / scale);
      part.add_residual("penrose.hermitian_vw", "penrose.equations", pr[2] / scale);
      part.add_residual("penrose.hermitian_wv", "penrose.equations", pr[3] / scale);
      try {
        const auto nd = is_n_dagger(rep, 2);
        part.add("dagger.two_dagger", "dagger.n_dagger", Verdict::Info, nd.residual);
      } catch (const SizeCapError&) {
      }
      return part;
    });
  }

  if (sel.structure) {
    timed([&] { return is_bi_regular(rep, max_power); });
    timed([&] { return wold_report(rep, max_power).verdicts; });
    timed([&] { return wold_failure_witnesses(rep, max_power); });
    timed([&] { return projection_sequence(rep, max_power).second; });
    timed([&] { return dagger_power_on_range(rep, max_power >= 1 ? max_power : -1); });
  }

  if (sel.properties) {
    timed([&] {
      CheckReport part;
      part.tol = settings().tol;
      const auto emit = [&part](const PropertyVerdict& pv) {
        CheckItem& item = part.add("property." + pv.property,
                                   "property." + pv.property, Verdict::Info,
                                   pv.margin);
        item.witness = pv.witness;
      };
      emit(is_hyponormal_mod(rep, -1.0, properties_domain));
      emit(is_n_expansive_mod(rep, 1, -1.0, properties_domain));
      try {
        emit(is_n_expansive_mod(rep, 2, -1.0, properties_domain));
      } catch (const SizeCapError&) {
      }
      emit(is_concave_mod(rep, -1.0, properties_domain));
      emit(is_concave_full(rep, -1.0, properties_domain));
      return part;
    });
    timed([&] { return theorem_suite(rep, -1, -1.0, properties_domain); });
  }
  return report;
}

CheckReport implication_suite(const CovariantRep& rep, int max_power) {
  CheckReport r;
  r.tol = settings().tol;

  {
    const CheckReport props = theorem_suite(rep);
    const auto copy = [&](const char* name) {
      if (const CheckItem* item = props.find(name)) r.items.push_back(*item);
    };
    copy("thm.dual_of_concave_mod_hyponormal_mod");
    copy("thm.dual_of_concave_hyponormal_mod");
    copy("thm.dual_of_concave_contractive");
  }

  {
    const CheckReport reg = is_regular(rep);
    if (const CheckItem* c = reg.find("regularity.conditions.consistency"))
      r.items.push_back(*c);
  }

  {
    const WoldReport wold = wold_report(rep, max_power);
    const auto copy = [&](const char* name) {
      if (const CheckItem* item = wold.verdicts.find(name)) r.items.push_back(*item);
    };
    copy("wold.sum_brackets_plus_dualrange");
    copy("wold.sum_bracketsdual_plus_range");
    copy("wold.unitarity_battery.consistency");
  }

  {
    const CheckReport wsf = wold_failure_witnesses(rep, max_power);
    if (const CheckItem* c = wsf.find("wsfail.i_iff_ii")) r.items.push_back(*c);
  }

  // hyper-dagger regularity transfer: regular iff the dagger is regular
  {
    bool hyper = false;
    try {
      hyper = is_hyper_dagger(rep, max_power >= 2 ? max_power : 4);
    } catch (const SizeCapError&) {
    }
    if (hyper) {
      const bool reg = regular_bool(rep);
      const bool dagger_reg = regular_bool(cauchy_dual(rep));
      r.add("thm.hyperdagger_regularity_transfer",
            "thm.hyperdagger_regularity_transfer",
            reg == dagger_reg ? Verdict::Pass : Verdict::Fail,
            reg == dagger_reg ? 0.0 : 1.0);
    } else {
      r.add("thm.hyperdagger_regularity_transfer",
            "thm.hyperdagger_regularity_transfer", Verdict::HypothesisFailed, 0.0);
    }
  }

  try {
    const auto nd = is_n_dagger(rep, 2);
    r.add("info.two_dagger", "dagger.n_dagger", Verdict::Info, nd.residual);
  } catch (const SizeCapError&) {
  }
  return r;
}

RepKind kind_for_trial(const FuzzConfig& cfg, int trial) {
  static const RepKind all[] = {RepKind::Dense, RepKind::RankDeficient,
                                RepKind::LeftInvertible, RepKind::PartialIsometry,
                                RepKind::ConcaveShift};
  if (cfg.kinds.empty()) return all[trial % 5];
  return cfg.kinds[trial % cfg.kinds.size()];
}

CovariantRep rep_for_trial(const FuzzConfig& cfg, int trial) {
  const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  SplitMix64 g(seed ^ 0x5bf03ULL);
  const Index dim_h = g.uniform_int(1, cfg.h_max);
  const Index n = g.uniform_int(1, cfg.n_max);
  return random_rep(seed, dim_h, n, kind_for_trial(cfg, trial));
}

FuzzOutcome run_fuzz(const FuzzConfig& cfg) {
  FuzzOutcome out;
  out.trials = cfg.trials;
  std::vector<CheckReport> reports(static_cast<std::size_t>(std::max(cfg.trials, 0)));
  std::vector<CovariantRep> reps(reports.size());

  std::atomic<int> cursor{0};
  const auto worker = [&] {
    for (;;) {
      const int trial = cursor.fetch_add(1);
      if (trial >= cfg.trials) return;
      reps[trial] = rep_for_trial(cfg, trial);
      reports[trial] = implication_suite(reps[trial], cfg.max_power);
    }
  };
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::map<std::string, FuzzCounts> counts;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    for (const CheckItem& item : reports[trial].items) {
      FuzzCounts& c = counts[item.anchor];
      switch (item.verdict) {
        case Verdict::Pass: ++c.pass; break;
        case Verdict::Fail: ++c.fail; break;
        case Verdict::HypothesisFailed:
        case Verdict::NotApplicable: ++c.hypothesis_failed; break;
        case Verdict::Info: ++c.info; break;
      }
      if (item.verdict == Verdict::Fail)
        out.failures.push_back({trial, item.name, reps[trial]});
    }
  }
  out.per_anchor.assign(counts.begin(), counts.end());
  return out;
}

}  // namespace covrep
