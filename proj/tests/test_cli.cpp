#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "kulikov/cli.hpp"

namespace {

const std::string kSamples = KULIKOV_SAMPLES_DIR;

struct Run {
  int code;
  std::string out;
  nlohmann::json json;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "kulikov");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = kulikov::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  Run r{code, out.str(), {}};
  if (!r.out.empty()) r.json = nlohmann::json::parse(r.out);
  return r;
}

std::string sample(const std::string& name) { return kSamples + "/" + name; }

}  // namespace

TEST_CASE("validate exit codes") {
  CHECK(run({"-q", "validate", sample("t2_b2I.json")}).code == 0);
  const Run bad = run({"-q", "validate", sample("t2_indefinite.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("pairing_positive_definite") != std::string::npos);
  const Run missing = run({"-q", "validate", sample("missing_b.json")});
  CHECK(missing.code == 2);
  CHECK(missing.json.contains("error"));
  CHECK(run({"-q", "validate", sample("does_not_exist.json")}).code == 2);
}

TEST_CASE("classify") {
  const Run r = run({"-q", "classify", sample("t2_b2I.json")});
  REQUIRE(r.code == 0);
  CHECK(r.json["kulikov_type"] == "III");
  CHECK(r.json["N_X"] == 4);
  CHECK(r.json["dual_complex"]["X"]["euler_characteristic"] == 2);
  CHECK(r.json["consistent"] == true);

  const Run r1 = run({"-q", "classify", sample("t1_b4.json")});
  REQUIRE(r1.code == 0);
  CHECK(r1.json["kulikov_type"] == "II");
  CHECK(r1.json["N_X"] == 3);
  CHECK(r1.json["dual_complex"]["X"]["shape"] == "chain");

  const Run r0 = run({"-q", "classify", sample("t0.json")});
  REQUIRE(r0.code == 0);
  CHECK(r0.json["kulikov_type"] == "I");
  CHECK(r0.json["N_X"] == 1);

  const Run d = run({"-q", "classify", sample("t2_diag24.json")});
  CHECK(d.code == 0);
  CHECK(d.json["N_X"] == 6);
}

TEST_CASE("classify refuses data that is not invariant under -1") {
  const Run r = run({"-q", "classify", sample("t2_bI_odd.json")});
  CHECK(r.code == 1);
  CHECK(r.json["error"]["code"] == "NotHInvariant");
}

TEST_CASE("base-change") {
  const Run r = run({"-q", "base-change", sample("t1_b4.json"), "--e", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.json["base_change"][0]["N"] == 3);
  CHECK(r.json["base_change"][0]["N_L"] == 7);
  CHECK(r.json["base_change"][0]["N_L_rebuilt"] == 7);
  const Run one = run({"-q", "base-change", sample("t2_b2I.json"), "--e", "1"});
  CHECK(one.json["base_change"][0]["N_L"] == one.json["base_change"][0]["N"]);
  const Run two = run({"-q", "base-change", sample("t2_b2I.json"), "--e", "2"});
  CHECK(two.json["base_change"][0]["N_L"] == 10);
  CHECK(run({"-q", "base-change", sample("t1_b4.json"), "--e", "0"}).code == 2);
}

TEST_CASE("report") {
  const Run r = run({"-q", "report", sample("t1_b4.json")});
  CHECK(r.code == 0);
}

TEST_CASE("monodromy") {
  const Run r2 = run({"-q", "monodromy", "--toric-rank", "2"});
  REQUIRE(r2.code == 0);
  CHECK(r2.json["nilpotency_index"] == 3);
  CHECK(r2.json["kulikov_type"] == "III");
  const Run r0 = run({"-q", "monodromy", "--toric-rank", "0"});
  CHECK(r0.code == 0);
  CHECK(r0.json["nilpotency_index"] == 1);
  CHECK(r0.json["kulikov_type"] == "I");
  const Run m = run({"-q", "monodromy", "--matrix", sample("N_rank1_conjugated.json")});
  REQUIRE(m.code == 0);
  CHECK(m.json["toric_rank"] == 1);
  CHECK(m.json["nilpotency_index"] == 2);
  CHECK(m.json["kulikov_type"] == "II");
  const Run p = run({"-q", "monodromy", "--toric-rank", "1", "--perm", sample("perm_transposition.json")});
  CHECK(p.json["two_torsion_trivial"] == false);
}

TEST_CASE("fan commands") {
  const Run check = run({"-q", "fan", "check", sample("fan_t1_b3.json")});
  CHECK(check.code == 1);
  CHECK(check.json["certificates"]["h_free"] == false);
  CHECK(check.json["violations"]["h_free"].size() == 1);
  const Run build = run({"-q", "fan", "build", sample("t2_bI_odd.json")});
  REQUIRE(build.code == 0);
  CHECK(build.json["nu"] == 2);
}

TEST_CASE("output is deterministic") {
  const Run a = run({"-q", "classify", sample("t2_b2I.json")});
  const Run b = run({"-q", "classify", sample("t2_b2I.json")});
  CHECK(a.out == b.out);
}

TEST_CASE("complex dual and quotient round trip through files") {
  const auto dir = std::filesystem::temp_directory_path() / "kulikov_cli_test";
  std::filesystem::create_directories(dir);
  const Run build = run({"-q", "fan", "build", sample("t2_b2I.json")});
  REQUIRE(build.code == 0);
  const auto fan_path = dir / "fan.json";
  std::ofstream(fan_path) << build.json["fan"].dump();
  const Run dual = run({"-q", "complex", "dual", fan_path.string()});
  REQUIRE(dual.code == 0);
  CHECK(dual.json["vertices"].size() == 4);
  CHECK(dual.json["edges"].size() == 12);
  CHECK(dual.json["triangles"].size() == 8);
  const auto complex_path = dir / "complex.json";
  std::ofstream(complex_path) << dual.out;
  const Run quotient = run({"-q", "complex", "quotient", complex_path.string()});
  REQUIRE(quotient.code == 0);
  CHECK(quotient.json["vertices"].size() == 4);
  CHECK(quotient.json["edges"].size() == 6);
  CHECK(quotient.json["triangles"].size() == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("rational entries accept a negative denominator") {
  CHECK(kulikov::io::rational_from_json(nlohmann::json("1/-2"), "x") == kulikov::Rational(-1) / 2);
  CHECK(kulikov::io::rational_from_json(nlohmann::json("-6/4"), "x") == kulikov::Rational(-3) / 2);
  CHECK(kulikov::io::rational_from_json(nlohmann::json(5), "x") == 5);
  CHECK_THROWS_AS(kulikov::io::rational_from_json(nlohmann::json("1/0"), "x"), kulikov::io::SchemaError);
}
