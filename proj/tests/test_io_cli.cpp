#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "arrowkit/errors.hpp"
#include "arrowkit/io.hpp"

using namespace arrowkit;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string stdout_text;
};

CommandResult run_cli(const std::string& args) {
  const char* bin = std::getenv("ARROWKIT_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "ARROWKIT_BIN must point at the CLI binary");
  const std::string command = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult result;
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.stdout_text.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path fixtures_dir() {
  static const std::filesystem::path dir = [] {
    const auto path = std::filesystem::temp_directory_path() / "arrowkit_fixtures";
    const CommandResult r = run_cli("--emit-fixtures " + path.string());
    REQUIRE(r.exit_code == 0);
    return path;
  }();
  return dir;
}

}  // namespace

TEST_CASE("truth-table packing") {
  // majority on 3: signs -,-,-,+,-,+,+,+  ->  bits 00010111  ->  0x17
  CHECK(pack_bits_hex(BooleanFunction::majority(3)) == "17");
  CHECK(unpack_bits_hex(3, "17") == BooleanFunction::majority(3));

  RandomStream stream(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(stream.next_below(10));
    const BooleanFunction f = BooleanFunction::random(n, stream);
    CHECK(boolean_from_json(boolean_to_json(f)) == f);
  }
  CHECK_THROWS_AS(unpack_bits_hex(3, "1"), Error);
  CHECK_THROWS_AS(unpack_bits_hex(3, "zz"), Error);
}

TEST_CASE("constitution and distribution round trips") {
  RandomStream stream(31);
  const Constitution c = Constitution::random(3, 4, stream);
  CHECK(constitution_from_json(constitution_to_json(c)) == c);

  Json broken = constitution_to_json(c);
  broken["pairs"].erase(1);
  CHECK_THROWS_AS(constitution_from_json(broken), Error);
  Json duplicated = constitution_to_json(c);
  duplicated["pairs"].push_back(duplicated["pairs"][0]);
  CHECK_THROWS_AS(constitution_from_json(duplicated), Error);

  const VoteDistribution uniform = VoteDistribution::uniform(3);
  const VoteDistribution uniform_back =
      vote_distribution_from_json(vote_distribution_to_json(uniform));
  CHECK(uniform_back.exact());
  CHECK(uniform_back.rational_probs() == uniform.rational_probs());

  Eigen::ArrayXd reals(6);
  reals << 0.25, 0.125, 0.125, 0.125, 0.125, 0.25;
  const VoteDistribution real_mu = VoteDistribution::from_reals(3, reals);
  const VoteDistribution real_back =
      vote_distribution_from_json(vote_distribution_to_json(real_mu));
  CHECK_FALSE(real_back.exact());
  CHECK((real_back.real_probs() - reals).abs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(vote_distribution_from_json(parse_json(R"({"k":3,"probs":[1,1]})")), Error);

  const Profile p({Ranking({0, 1, 2}), Ranking({2, 0, 1})});
  CHECK(profile_from_json(profile_to_json(p)) == p);
}

TEST_CASE("bounded-table JSON round trip") {
  RandomStream stream(41);
  Eigen::ArrayXd values(8);
  for (Eigen::Index i = 0; i < 8; ++i) values[i] = 2.0 * stream.next_unit() - 1.0;
  const BoundedFunction f(3, values);
  const BoundedFunction back = bounded_from_json(bounded_to_json(f));
  CHECK((back.values() - f.values()).abs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(bounded_from_json(parse_json(R"({"n":2,"values":[0.5,0.5,0.5]})")), Error);
  CHECK_THROWS_AS(bounded_from_json(parse_json(R"({"n":1,"values":[0.5,1.5]})")), Error);
}

TEST_CASE("rational serialization keeps exactness") {
  const Json j = rational_to_json(Rational(1, 18));
  CHECK(j["num"] == "1");
  CHECK(j["den"] == "18");
  CHECK(j["float"].get<double>() == doctest::Approx(1.0 / 18.0));
}

TEST_CASE("cli: analyze the bundled majority fixture") {
  const auto fixture = fixtures_dir() / "majority_k3_n3.json";
  const CommandResult r = run_cli("analyze -c " + fixture.string());
  REQUIRE(r.exit_code == 0);
  const Json report = parse_json(r.stdout_text);
  CHECK(report["tool"] == "arrowkit");
  CHECK(report["paradox_exact"]["num"] == "1");
  CHECK(report["paradox_exact"]["den"] == "18");
  CHECK(report["paradox_kalai"]["num"] == "1");
  CHECK(report["paradox_kalai"]["den"] == "18");
  CHECK(report["inputs"].size() == 1);

  // byte-identical rerun
  const CommandResult again = run_cli("analyze -c " + fixture.string());
  CHECK(again.stdout_text == r.stdout_text);
}

TEST_CASE("cli: structure and barbera") {
  const auto dict = fixtures_dir() / "dictator_k3_n3.json";
  const CommandResult s = run_cli("structure -c " + dict.string());
  REQUIRE(s.exit_code == 0);
  const Json report = parse_json(s.stdout_text);
  CHECK(report["in_family"] == true);
  CHECK(report["structure"]["kinds"][0]["kind"] == "top_dictator");
  CHECK(report["structure"]["kinds"][0]["voter"] == 0);

  const auto maj = fixtures_dir() / "majority_k3_n3.json";
  const CommandResult w = run_cli("structure -c " + maj.string());
  REQUIRE(w.exit_code == 0);
  const Json witness_report = parse_json(w.stdout_text);
  CHECK(witness_report["in_family"] == false);
  CHECK(witness_report["witness_outcome"]["transitive"] == false);

  const CommandResult b = run_cli("barbera -c " + maj.string() + " --voter1 0 --voter2 1");
  REQUIRE(b.exit_code == 0);
  const Json barbera_report = parse_json(b.stdout_text);
  CHECK(barbera_report["cyclic"] == true);
  CHECK(barbera_report["outcome"]["transitive"] == false);
}

TEST_CASE("cli: mc determinism across thread counts") {
  const auto maj = fixtures_dir() / "majority_k3_n3.json";
  const CommandResult t1 = run_cli("mc -c " + maj.string() + " --samples 100000 --seed 5 --threads 1");
  const CommandResult t4 = run_cli("mc -c " + maj.string() + " --samples 100000 --seed 5 --threads 4");
  REQUIRE(t1.exit_code == 0);
  // thread count appears in the report; estimates must match bit for bit
  const Json e1 = parse_json(t1.stdout_text)["estimate"];
  const Json e4 = parse_json(t4.stdout_text)["estimate"];
  CHECK(e1.dump() == e4.dump());
}

TEST_CASE("cli: exit codes") {
  const auto maj = fixtures_dir() / "majority_k3_n3.json";
  CHECK(run_cli("analyze -c " + maj.string() + " --budget 10").exit_code == 3);
  CHECK(run_cli("analyze -c /nonexistent.json").exit_code == 2);
  CHECK(run_cli("gauss --rho 0.9 --t1 bogus").exit_code == 2);

  // hyper CSV has a header and one row per pair
  const CommandResult h = run_cli("hyper --n 6 --pairs 10 --rho 0.3333 --seed 2");
  REQUIRE(h.exit_code == 0);
  CHECK(h.stdout_text.rfind("measure1,measure2,intersection,bound,slack\n", 0) == 0);

  const CommandResult g = run_cli("gauss --samples 50000 --seed 3");
  REQUIRE(g.exit_code == 0);
  const Json gauss_report = parse_json(g.stdout_text);
  CHECK(gauss_report["hypothesis_ok"] == true);
  CHECK(gauss_report.contains("closed_form"));
  CHECK(gauss_report.contains("mc_stderr"));

  const CommandResult fam = run_cli("enumerate-family --n 1");
  REQUIRE(fam.exit_code == 0);
  const Json fam_report = parse_json(fam.stdout_text);
  CHECK(fam_report["members"] == 20);
  CHECK(fam_report["exhaustive_verified"] == true);
}
