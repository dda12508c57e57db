#include <doctest.h>

#include <cstring>

#include "covrep/json_io.hpp"
#include "fixtures.hpp"

using namespace covrep;
using namespace covrep::testing;

namespace {

bool bit_equal(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(Complex) * a.size()) == 0;
}

}  // namespace

TEST_CASE("hex float encoding round-trips exactly") {
  for (double v : {0.1, -0.0, 1.0 / 3.0, 1e-308, 2.2250738585072014e-308,
                   123456789.123456789, -3.5}) {
    const Json j = hex_double(v);
    const double back = parse_double_field(j);
    CHECK(std::memcmp(&v, &back, sizeof v) == 0);
  }
}

TEST_CASE("matrix serialization round-trips bit-exactly") {
  SplitMix64 g(17);
  for (int t = 0; t < 20; ++t) {
    CMat m(3, 4);
    for (Index r = 0; r < 3; ++r)
      for (Index c = 0; c < 4; ++c)
        m(r, c) = Complex(g.uniform(-1, 1) / 3.0, g.uniform(-1, 1) / 7.0);
    m(0, 0) = Complex(-0.0, 1e-200);
    const CMat back = matrix_from_json(matrix_to_json(m));
    CHECK(bit_equal(m, back));
  }
}

TEST_CASE("representation round trip with generators and metadata") {
  CovariantRep rep = ex_a();
  rep.sigma_gens = {{"b", cmat(2, 2, {1, 0, 0, -1})}};
  rep.phi_gens = {{"b", cmat(2, 2, {1, 0, 0, -1})}};
  const Json metadata{{"note", "fixture"}};
  const Json j = rep_to_json(rep, &metadata);
  const std::string text = j.dump();

  Json metadata_back;
  const CovariantRep back = rep_from_json(Json::parse(text), &metadata_back);
  CHECK(bit_equal(rep.v_tilde, back.v_tilde));
  CHECK(back.sigma_gens.size() == 1);
  CHECK(back.sigma_gens[0].label == "b");
  CHECK(bit_equal(back.sigma_gens[0].matrix, rep.sigma_gens[0].matrix));
  CHECK(metadata_back.at("note") == "fixture");
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(matrix_from_json(Json{{"rows", 2}}), InputError);
  CHECK_THROWS_AS(
      matrix_from_json(Json{{"rows", 1}, {"cols", 2}, {"entries", Json::array({1.0})}}),
      InputError);
  CHECK_THROWS_AS(rep_from_json(Json{{"dim_h", 2}}), InputError);
  Json bad = rep_to_json(ex_a());
  bad["v_tilde"]["entries_hex"][0][0] = "zzz";
  CHECK_THROWS_AS(rep_from_json(bad), InputError);
  // non-finite entries are rejected on parse
  Json inf_rep = rep_to_json(ex_a());
  inf_rep["v_tilde"]["entries_hex"][0][0] = "inf";
  CHECK_THROWS_AS(rep_from_json(inf_rep), InputError);
}

TEST_CASE("weight tables in all three forms") {
  const Json triplets = Json::array({
      Json{{"i", 1}, {"m", -1}, {"w", 2.0}},
      Json{{"i", 1}, {"m", 0}, {"w", 3.0}},
  });
  const Eigen::MatrixXd t = weights_from_json(triplets, 1, -1, 0);
  CHECK(t(0, 0) == 2.0);
  CHECK(t(0, 1) == 3.0);

  const Json dense{{"dense", Json::array({Json::array({1.0, 2.0}),
                                          Json::array({3.0, 4.0})})}};
  const Eigen::MatrixXd d = weights_from_json(dense, 2, 0, 1);
  CHECK(d(1, 0) == 3.0);

  const Json plain = Json::array({1.0, 2.0, 0.0});
  const Eigen::MatrixXd p = weights_from_json(plain, 1, 0, 2);
  CHECK(p(0, 2) == 0.0);

  // complex weights are rejected at parse time
  const Json complex_w = Json::array({Json{{"i", 1}, {"m", 0}, {"w", Json::array({1.0, 2.0})}}});
  CHECK_THROWS_AS(weights_from_json(complex_w, 1, 0, 0), InputError);
  // incomplete triplet tables are rejected
  const Json partial = Json::array({Json{{"i", 1}, {"m", 0}, {"w", 1.0}}});
  CHECK_THROWS_AS(weights_from_json(partial, 1, 0, 1), InputError);
}

TEST_CASE("digest is stable") {
  CHECK(digest_string("") == "fnv1a:cbf29ce484222325");
  CHECK(fnv1a_digest("a") != fnv1a_digest("b"));
}

TEST_CASE("reports serialize deterministically modulo timing") {
  CheckReport r;
  r.tol = 1e-10;
  r.add("x", "anchor.x", Verdict::Pass, 0.25);
  r.add("y", "anchor.y", Verdict::Fail, 1.0 / 3.0).witness = CVec::Ones(2);
  const auto strip = [](Json j) {
    for (Json& c : j.at("checks")) c.erase("wall_ms");
    return j.dump();
  };
  const std::string a = strip(report_to_json(r, "fnv1a:0", {1.0, 2.0}));
  const std::string b = strip(report_to_json(r, "fnv1a:0", {9.0, 8.0}));
  CHECK(a == b);
  CHECK(report_to_text(r).find("FAIL\ty") != std::string::npos);
}

TEST_CASE("serialization round trip across random representations") {
  for (int t = 0; t < 30; ++t) {
    const CovariantRep rep = corpus(9090 + t, 1).front();
    const CovariantRep back = rep_from_json(Json::parse(rep_to_json(rep).dump()));
    CHECK(back.dim_h == rep.dim_h);
    CHECK(back.n == rep.n);
    CHECK(bit_equal(rep.v_tilde, back.v_tilde));
  }
}
