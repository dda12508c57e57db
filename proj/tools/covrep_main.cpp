#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "covrep/batteries.hpp"
#include "covrep/duality.hpp"
#include "covrep/json_io.hpp"
#include "covrep/structure.hpp"

namespace {

using namespace covrep;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct Usage : InputError {
  using InputError::InputError;
};

std::pair<long, long> parse_window(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) throw Usage("window must look like A..B");
  char* end = nullptr;
  const long lo = std::strtol(text.c_str(), &end, 10);
  if (end != text.c_str() + sep) throw Usage("bad window start");
  const char* tail = text.c_str() + sep + 2;
  const long hi = std::strtol(tail, &end, 10);
  if (*end != '\0') throw Usage("bad window end");
  return {lo, hi};
}

std::pair<Index, Index> parse_dims(const std::string& text) {
  Index h = 4, n = 3;
  std::string rest = text;
  for (std::string part; !rest.empty();) {
    const auto comma = rest.find(',');
    part = rest.substr(0, comma);
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    const auto leq = part.find("<=");
    if (leq == std::string::npos || part.empty()) throw Usage("dims must look like h<=4,n<=3");
    const long value = std::strtol(part.c_str() + leq + 2, nullptr, 10);
    if (value < 1) throw Usage("dims bounds must be >= 1");
    if (part[0] == 'h') h = value;
    else if (part[0] == 'n') n = value;
    else throw Usage("dims keys are h and n");
  }
  return {h, n};
}

RepKind parse_kind(const std::string& name) {
  if (name == "dense") return RepKind::Dense;
  if (name == "rank-deficient") return RepKind::RankDeficient;
  if (name == "left-invertible") return RepKind::LeftInvertible;
  if (name == "partial-isometry") return RepKind::PartialIsometry;
  if (name == "concave-shift") return RepKind::ConcaveShift;
  throw Usage("unknown rep kind: " + name);
}

Json spec_metadata(const WeightedShiftSpec& spec, const ShiftRealization& sr) {
  Json dense = Json::array();
  for (Index i = 0; i < spec.n; ++i) {
    Json row = Json::array();
    for (Index c = 0; c < spec.window_len(); ++c) row.push_back(spec.weights(i, c));
    dense.push_back(std::move(row));
  }
  Json interior = Json::array();
  for (long m : sr.interior) interior.push_back(m);
  return Json{{"shift",
               Json{{"kind", spec.kind == ShiftKind::Unilateral ? "unilateral" : "bilateral"},
                    {"n", spec.n},
                    {"window", Json::array({spec.window_lo, spec.window_hi})},
                    {"weights_dense", std::move(dense)},
                    {"interior", std::move(interior)}}}};
}

WeightedShiftSpec spec_from_metadata(const Json& metadata) {
  if (!metadata.is_object() || !metadata.contains("shift"))
    throw InputError("input carries no shift metadata (required by --interior-only)");
  const Json& s = metadata.at("shift");
  const Index n = s.at("n").get<Index>();
  const long lo = s.at("window").at(0).get<long>();
  const long hi = s.at("window").at(1).get<long>();
  Eigen::MatrixXd w = weights_from_json(Json{{"dense", s.at("weights_dense")}}, n, lo, hi);
  const ShiftKind kind = s.at("kind").get<std::string>() == "unilateral"
                             ? ShiftKind::Unilateral
                             : ShiftKind::Bilateral;
  return make_shift_spec(kind, n, lo, hi, std::move(w));
}

int cmd_gen(const std::string& kind_name, Index n, const std::string& window,
            const std::string& weights_file, bool unit, bool dirichlet,
            long zero_index, bool has_zero, const std::string& out_path) {
  const auto [lo, hi] = parse_window(window);
  if (n < 1) throw Usage("--n must be >= 1");
  ShiftKind kind;
  if (kind_name == "unilateral") kind = ShiftKind::Unilateral;
  else if (kind_name == "bilateral") kind = ShiftKind::Bilateral;
  else throw Usage("--kind must be unilateral or bilateral");

  WeightedShiftSpec spec = [&] {
    if (unit) return unit_shift_spec(kind, n, lo, hi);
    if (dirichlet) return dirichlet_shift_spec(kind, n, lo, hi);
    if (weights_file.empty()) throw Usage("one of --unit, --dirichlet, --weights is required");
    const Json w = Json::parse(read_file(weights_file));
    return make_shift_spec(kind, n, lo, hi, weights_from_json(w, n, lo, hi));
  }();
  if (has_zero) spec = zero_at(spec, zero_index);

  const ShiftRealization sr = build_shift(spec);
  const Json metadata = spec_metadata(spec, sr);
  write_file(out_path, rep_to_json(sr.rep, &metadata).dump(2) + "\n");
  return kExitOk;
}

int cmd_check(const std::string& input, const std::string& battery, double tolerance,
              int max_power, bool interior_only, const std::string& report_path,
              const std::string& format) {
  if (tolerance > 0) settings().tol = tolerance;
  const std::string bytes = read_file(input);
  Json metadata;
  CovariantRep rep = rep_from_json(Json::parse(bytes), &metadata);
  Subspace interior;
  const Subspace* domain = nullptr;
  if (interior_only) {
    const ShiftRealization sr = build_shift(spec_from_metadata(metadata));
    if ((sr.rep.v_tilde - rep.v_tilde).norm() > settings().tol)
      throw InputError("shift metadata does not reproduce the stored matrix");
    interior = interior_subspace(sr);
    domain = &interior;
  }

  BatterySelection sel;
  if (battery == "all") {
    sel = BatterySelection{};
  } else if (battery == "duality") {
    sel = BatterySelection{true, false, false};
  } else if (battery == "structure") {
    sel = BatterySelection{false, true, false};
  } else if (battery == "properties") {
    sel = BatterySelection{false, false, true};
  } else {
    throw Usage("--battery must be all, duality, structure, or properties");
  }

  std::vector<double> wall_ms;
  const CheckReport report = run_battery(rep, sel, max_power, &wall_ms, domain);
  const std::string text = report_to_text(report);
  if (!report_path.empty()) {
    if (format == "text")
      write_file(report_path, text);
    else
      write_file(report_path,
                 report_to_json(report, digest_string(bytes), wall_ms).dump(2) + "\n");
  }
  std::cout << text;
  return report.has_fail() ? kExitFail : kExitOk;
}

int cmd_fuzz(int trials, std::uint64_t seed, const std::string& dims,
             const std::vector<std::string>& kind_names, int jobs,
             const std::string& report_path, int max_power) {
  if (trials < 0) throw Usage("--trials must be >= 0");
  FuzzConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  std::tie(cfg.h_max, cfg.n_max) = parse_dims(dims);
  for (const std::string& k : kind_names) cfg.kinds.push_back(parse_kind(k));
  cfg.jobs = jobs;
  cfg.max_power = max_power;

  const FuzzOutcome outcome = run_fuzz(cfg);
  Json anchors = Json::array();
  bool any_fail = false;
  for (const auto& [anchor, counts] : outcome.per_anchor) {
    anchors.push_back(Json{{"anchor", anchor},
                           {"pass", counts.pass},
                           {"hypothesis_failed", counts.hypothesis_failed},
                           {"FAIL", counts.fail},
                           {"info", counts.info}});
    any_fail = any_fail || counts.fail > 0;
    std::printf("%-48s pass=%-5d hyp-failed=%-5d FAIL=%-3d info=%d\n",
                anchor.c_str(), counts.pass, counts.hypothesis_failed,
                counts.fail, counts.info);
  }
  Json fixtures = Json::array();
  for (std::size_t f = 0; f < outcome.failures.size(); ++f) {
    const FuzzFailure& failure = outcome.failures[f];
    const std::string path = report_path.empty()
                                 ? "fuzz-failure-" + std::to_string(f) + ".json"
                                 : report_path + ".failure-" + std::to_string(f) + ".json";
    write_file(path, rep_to_json(failure.rep).dump(2) + "\n");
    fixtures.push_back(Json{{"trial", failure.trial},
                            {"check", failure.check},
                            {"fixture", path}});
  }
  if (!report_path.empty()) {
    const Json j{{"format", "covrep.fuzz/1"},
                 {"tool_version", kToolVersion},
                 {"seed", seed},
                 {"trials", trials},
                 {"dims", dims},
                 {"anchors", std::move(anchors)},
                 {"failures", std::move(fixtures)}};
    write_file(report_path, j.dump(2) + "\n");
  }
  return any_fail ? kExitFail : kExitOk;
}

int cmd_transform(const std::string& which, const std::string& input,
                  const std::string& out_path) {
  const std::string bytes = read_file(input);
  Json metadata;
  const CovariantRep rep = rep_from_json(Json::parse(bytes), &metadata);
  if (which == "dual") {
    const CovariantRep dual = cauchy_dual(rep);
    Json meta = metadata.is_null() ? Json::object() : metadata;
    meta["derived"] = "cauchy_dual";
    write_file(out_path, rep_to_json(dual, &meta).dump(2) + "\n");
  } else if (which == "pinv") {
    const Json j{{"format", "covrep.matrix/1"},
                 {"matrix", matrix_to_json(mp_inverse(rep))}};
    write_file(out_path, j.dump(2) + "\n");
  } else {
    const WoldReport wold = wold_report(rep);
    Json verdicts = Json::array();
    for (const CheckItem& item : wold.verdicts.items)
      verdicts.push_back(Json{{"name", item.name},
                              {"anchor", item.anchor},
                              {"verdict", to_string(item.verdict)},
                              {"value", item.value}});
    const Json j{{"format", "covrep.wold/1"},
                 {"wandering", matrix_to_json(wold.wandering.basis)},
                 {"brackets", matrix_to_json(wold.brackets_v.basis)},
                 {"brackets_dual", matrix_to_json(wold.brackets_dual.basis)},
                 {"gen_range", matrix_to_json(wold.gen_range.basis)},
                 {"gen_range_dual", matrix_to_json(wold.gen_range_dual.basis)},
                 {"stabilized_at", wold.stabilized_at},
                 {"cap_hit", wold.cap_hit},
                 {"verdicts", std::move(verdicts)}};
    write_file(out_path, j.dump(2) + "\n");
    return wold.verdicts.has_fail() ? kExitFail : kExitOk;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional laboratory for covariant representations"};
  app.require_subcommand(1);

  // gen shift
  auto* gen = app.add_subcommand("gen", "generate representation files");
  auto* gen_shift = gen->add_subcommand("shift", "weighted shift representation");
  std::string kind_name, window, weights_file, out_path;
  Index n = 1;
  bool unit = false, dirichlet = false;
  long zero_index = 0;
  gen_shift->add_option("--kind", kind_name, "unilateral|bilateral")->required();
  gen_shift->add_option("--n", n, "correspondence dimension")->required();
  gen_shift->add_option("--window", window, "index window A..B")->required();
  gen_shift->add_option("--weights", weights_file, "weight table JSON file");
  gen_shift->add_flag("--unit", unit, "unit weights");
  gen_shift->add_flag("--dirichlet", dirichlet, "Dirichlet-type weights");
  auto* zero_opt = gen_shift->add_option("--zero-at", zero_index, "zero the column at index");
  gen_shift->add_option("--out", out_path, "output file")->required();

  // check
  auto* check = app.add_subcommand("check", "run certifier batteries");
  std::string input, battery = "all", report_path, format = "json";
  double tolerance = -1.0;
  int max_power = -1;
  bool interior_only = false;
  check->add_option("--input", input, "representation JSON file")->required();
  check->add_option("--battery", battery, "all|duality|structure|properties");
  check->add_option("--tolerance", tolerance, "comparison tolerance");
  check->add_option("--max-power", max_power, "power-chain truncation depth");
  check->add_flag("--interior-only", interior_only, "restrict a shift to interior indices");
  check->add_option("--report", report_path, "report output file");
  check->add_option("--format", format, "json|text");

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "seeded implication fuzzing");
  int trials = 100, jobs = 1, fuzz_power = -1;
  std::uint64_t seed = 0;
  std::string dims = "h<=4,n<=3";
  std::vector<std::string> kind_names;
  fuzz->add_option("--trials", trials, "number of trials")->required();
  fuzz->add_option("--seed", seed, "master seed")->required();
  fuzz->add_option("--dims", dims, "bounds, e.g. h<=4,n<=3");
  fuzz->add_option("--kinds", kind_names, "rep kinds to cycle")->delimiter(',');
  fuzz->add_option("--jobs", jobs, "worker threads");
  fuzz->add_option("--max-power", fuzz_power, "power-chain truncation depth");
  fuzz->add_option("--report", report_path, "report output file");

  // dual / pinv / wold
  std::string tr_input, tr_out;
  auto* dual = app.add_subcommand("dual", "emit the Cauchy dual");
  auto* pinv_cmd = app.add_subcommand("pinv", "emit the Moore-Penrose inverse");
  auto* wold = app.add_subcommand("wold", "emit the decomposition subspaces");
  for (CLI::App* sub : {dual, pinv_cmd, wold}) {
    sub->add_option("--input", tr_input, "representation JSON file")->required();
    sub->add_option("--out", tr_out, "output file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_shift->parsed())
      return cmd_gen(kind_name, n, window, weights_file, unit, dirichlet,
                     zero_index, zero_opt->count() > 0, out_path);
    if (check->parsed())
      return cmd_check(input, battery, tolerance, max_power, interior_only,
                       report_path, format);
    if (fuzz->parsed())
      return cmd_fuzz(trials, seed, dims, kind_names, jobs, report_path, fuzz_power);
    if (dual->parsed()) return cmd_transform("dual", tr_input, tr_out);
    if (pinv_cmd->parsed()) return cmd_transform("pinv", tr_input, tr_out);
    if (wold->parsed()) return cmd_transform("wold", tr_input, tr_out);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const SizeCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
