#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "covrep/rep.hpp"
#include "covrep/report.hpp"
#include "covrep/shifts.hpp"

namespace covrep {

using Json = nlohmann::json;

/// Hex-float encoding ("%a") guarantees bit-exact round trips; the decimal
/// twin fields exist for human readers and hand-written inputs.
std::string hex_double(double value);
double parse_double_field(const Json& j);  // hex string or plain number

Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);

Json rep_to_json(const CovariantRep& rep, const Json* metadata = nullptr);
CovariantRep rep_from_json(const Json& j, Json* metadata_out = nullptr);

Json report_to_json(const CheckReport& report, const std::string& input_digest,
                    const std::vector<double>& wall_ms);
std::string report_to_text(const CheckReport& report);

/// Weight tables: an array of {i, m, w} triplets, an object with "window"
/// and "dense" rows, or (n = 1) a plain array aligned with the window.
Eigen::MatrixXd weights_from_json(const Json& j, Index n, long lo, long hi);

std::uint64_t fnv1a_digest(const std::string& bytes);
std::string digest_string(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace covrep
