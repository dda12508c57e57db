#include "covrep/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace covrep {

std::string hex_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", value);
  return buf;
}

double parse_double_field(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw InputError("malformed float literal: " + s);
    return v;
  }
  throw InputError("expected a number or float string");
}

Json matrix_to_json(const CMat& m) {
  Json hex = Json::array();
  Json dec = Json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      hex.push_back({hex_double(z.real()), hex_double(z.imag())});
      dec.push_back({z.real(), z.imag()});
    }
  return Json{{"rows", m.rows()}, {"cols", m.cols()},
              {"entries_hex", std::move(hex)}, {"entries", std::move(dec)}};
}

CMat matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols"))
    throw InputError("matrix: missing rows/cols");
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  if (rows < 0 || cols < 0) throw InputError("matrix: negative shape");
  const Json& entries = j.contains("entries_hex") ? j.at("entries_hex")
                                                  : j.at("entries");
  if (!entries.is_array() || static_cast<Index>(entries.size()) != rows * cols)
    throw InputError("matrix: entry count does not match rows x cols");
  CMat m(rows, cols);
  Index flat = 0;
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c, ++flat) {
      const Json& e = entries.at(flat);
      if (!e.is_array() || e.size() != 2)
        throw InputError("matrix: entries must be [re, im] pairs");
      m(r, c) = Complex(parse_double_field(e.at(0)), parse_double_field(e.at(1)));
    }
  if (!is_finite(m)) throw InputError("matrix: non-finite entry");
  return m;
}

namespace {

Json generators_to_json(const std::vector<LabeledMatrix>& gens) {
  Json out = Json::array();
  for (const LabeledMatrix& g : gens)
    out.push_back({{"label", g.label}, {"matrix", matrix_to_json(g.matrix)}});
  return out;
}

std::vector<LabeledMatrix> generators_from_json(const Json& j) {
  std::vector<LabeledMatrix> out;
  for (const Json& g : j)
    out.push_back({g.at("label").get<std::string>(),
                   matrix_from_json(g.at("matrix"))});
  return out;
}

}  // namespace

Json rep_to_json(const CovariantRep& rep, const Json* metadata) {
  Json j{{"format", "covrep.rep/1"},
         {"dim_h", rep.dim_h},
         {"n", rep.n},
         {"v_tilde", matrix_to_json(rep.v_tilde)}};
  if (!rep.sigma_gens.empty()) {
    j["sigma_generators"] = generators_to_json(rep.sigma_gens);
    j["phi_generators"] = generators_to_json(rep.phi_gens);
  }
  if (metadata && !metadata->is_null()) j["metadata"] = *metadata;
  return j;
}

CovariantRep rep_from_json(const Json& j, Json* metadata_out) {
  if (!j.is_object() || !j.contains("dim_h") || !j.contains("n") ||
      !j.contains("v_tilde"))
    throw InputError("rep: missing dim_h/n/v_tilde");
  std::vector<LabeledMatrix> sigma, phi;
  if (j.contains("sigma_generators"))
    sigma = generators_from_json(j.at("sigma_generators"));
  if (j.contains("phi_generators"))
    phi = generators_from_json(j.at("phi_generators"));
  if (metadata_out)
    *metadata_out = j.contains("metadata") ? j.at("metadata") : Json();
  return make_rep(j.at("dim_h").get<Index>(), j.at("n").get<Index>(),
                  matrix_from_json(j.at("v_tilde")), std::move(sigma),
                  std::move(phi));
}

Json report_to_json(const CheckReport& report, const std::string& input_digest,
                    const std::vector<double>& wall_ms) {
  Json checks = Json::array();
  for (std::size_t k = 0; k < report.items.size(); ++k) {
    const CheckItem& item = report.items[k];
    Json c{{"name", item.name},
           {"anchor", item.anchor},
           {"verdict", to_string(item.verdict)},
           {"value", item.value},
           {"value_hex", hex_double(item.value)}};
    if (item.witness) {
      Json w = Json::array();
      for (Index r = 0; r < item.witness->size(); ++r)
        w.push_back({(*item.witness)(r).real(), (*item.witness)(r).imag()});
      c["witness"] = std::move(w);
    }
    if (k < wall_ms.size()) c["wall_ms"] = wall_ms[k];
    checks.push_back(std::move(c));
  }
  return Json{{"format", "covrep.report/1"},
              {"tool_version", kToolVersion},
              {"input_digest", input_digest},
              {"tolerance", report.tol},
              {"checks", std::move(checks)}};
}

std::string report_to_text(const CheckReport& report) {
  std::ostringstream out;
  for (const CheckItem& item : report.items) {
    char value[32];
    std::snprintf(value, sizeof value, "%.6g", item.value);
    out << to_string(item.verdict) << "\t" << item.name << "\t" << item.anchor
        << "\t" << value << "\n";
  }
  return out.str();
}

Eigen::MatrixXd weights_from_json(const Json& j, Index n, long lo, long hi) {
  const Index len = hi - lo + 1;
  Eigen::MatrixXd w(n, len);
  const auto parse_weight = [](const Json& e) {
    if (e.is_array() || e.is_object())
      throw InputError("weights: complex or structured weights are rejected");
    return parse_double_field(e);
  };
  if (j.is_array() && !j.empty() && j.front().is_object()) {
    // triplet form
    Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(n, len);
    w.setZero();
    for (const Json& t : j) {
      const Index i = t.at("i").get<Index>();
      const long m = t.at("m").get<long>();
      if (i < 1 || i > n || m < lo || m > hi)
        throw InputError("weights: triplet outside the declared table");
      w(i - 1, m - lo) = parse_weight(t.at("w"));
      mask(i - 1, m - lo) = 1.0;
    }
    if (mask.minCoeff() == 0.0)
      throw InputError("weights: every (i, m) in the window needs an entry");
    return w;
  }
  if (j.is_object() && j.contains("dense")) {
    const Json& rows = j.at("dense");
    if (static_cast<Index>(rows.size()) != n)
      throw InputError("weights: dense table must have n rows");
    for (Index i = 0; i < n; ++i) {
      const Json& row = rows.at(i);
      if (static_cast<Index>(row.size()) != len)
        throw InputError("weights: dense row length must match the window");
      for (Index c = 0; c < len; ++c) w(i, c) = parse_weight(row.at(c));
    }
    return w;
  }
  if (j.is_array()) {
    if (n != 1 || static_cast<Index>(j.size()) != len)
      throw InputError("weights: plain array form requires n = 1 and window length entries");
    for (Index c = 0; c < len; ++c) w(0, c) = parse_weight(j.at(c));
    return w;
  }
  throw InputError("weights: unrecognized table format");
}

std::uint64_t fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string digest_string(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a_digest(bytes)));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << contents;
}

}  // namespace covrep
