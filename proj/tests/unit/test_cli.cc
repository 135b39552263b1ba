#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bitangent_cli/cli.hpp"
#include "doctest.h"

using namespace bitangent;
using namespace bitangent::cli;
using nlohmann::json;

namespace {

const std::string kData = BITANGENT_TEST_DATA;

RunConfig seeded(std::uint64_t seed) {
  RunConfig cfg;
  cfg.seed = seed;
  return cfg;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("bitangent_test_" + name)).string();
}

}  // namespace

TEST_CASE("random tau") {
  const PeriodMatrix a = random_tau(7, 0.1);
  const PeriodMatrix b = random_tau(7, 0.1);
  CHECK(a.matrix() == b.matrix());
  CHECK(random_tau(8, 0.1).matrix() != a.matrix());
  const Eigen::Matrix3cd offset = a.matrix() - cplx(0, 1) * Eigen::Matrix3cd::Identity();
  CHECK(offset.real().cwiseAbs().maxCoeff() <= 0.1);
  CHECK(offset.imag().cwiseAbs().maxCoeff() <= 0.1);
  CHECK(a.matrix() == a.matrix().transpose());

  // The generator is pure integer arithmetic followed by exact scaling, so
  // these entries are stable across platforms.
  const Eigen::Matrix3cd t1 = random_tau(1, 0.1).matrix();
  CHECK(t1(0, 0) == cplx(-0.07322467119749347, 0.9272814072732395));
  CHECK(t1(1, 2) == cplx(0.013969429740419327, 0.027046243662747216));

  CHECK_THROWS_AS(random_tau(3, 0.0), RetriesExhausted);
  CHECK_THROWS_AS(random_tau(3, -0.1), InputError);
  CHECK_THROWS_AS(random_tau(3, 0.6), InputError);
}

TEST_CASE("tau json") {
  const PeriodMatrix a = random_tau(2, 0.1);
  const json doc = tau_to_json(a.matrix());
  CHECK(tau_from_json(json::parse(doc.dump())).matrix() == a.matrix());

  json tiny = doc;
  const double re = tiny["tau"][0][1][0].get<double>();
  tiny["tau"][0][1][0] = std::nextafter(re, 1.0);
  const PeriodMatrix sym = tau_from_json(tiny);
  CHECK(sym.matrix()(0, 1) == sym.matrix()(1, 0));

  json big = doc;
  big["tau"][0][1][0] = re + 1e-9;
  CHECK_THROWS_AS(tau_from_json(big), InputError);

  CHECK_THROWS_AS(tau_from_json(json::parse(R"({"tau": [[1,2],[3,4]]})")), InputError);
  CHECK_THROWS_AS(tau_from_json(json::parse(R"({"period": []})")), InputError);
  CHECK_THROWS_AS(load_tau(kData + "/tau_not_pd.json"), InputError);
  CHECK_THROWS_AS(load_tau(kData + "/tau_asymmetric.json"), InputError);
  CHECK_THROWS_AS(load_tau(kData + "/does_not_exist.json"), InputError);
  CHECK_NOTHROW(load_tau(kData + "/tau_fixed.json"));
}

TEST_CASE("run config validation") {
  RunConfig none;
  CHECK_THROWS_AS(none.validate(), InputError);
  RunConfig both = seeded(1);
  both.tau_path = "x.json";
  CHECK_THROWS_AS(both.validate(), InputError);
  RunConfig tol = seeded(1);
  tol.tol = 0;
  CHECK_THROWS_AS(tol.validate(), InputError);
  RunConfig thr = seeded(1);
  thr.degeneracy_threshold = -1;
  CHECK_THROWS_AS(thr.validate(), InputError);
  CHECK_NOTHROW(seeded(1).validate());
}

TEST_CASE("pipeline report") {
  const RunConfig cfg = seeded(11);
  const PeriodMatrix tau = random_tau(11, 0.1);
  const RunResult r = run_pipeline(tau, cfg);
  CHECK(r.exit_code == kPass);
  for (const char* key : {"config", "theta", "bitangents", "matrix", "quartic", "verification"})
    CHECK(r.report.contains(key));
  CHECK(r.report["theta"]["constants"].size() == 36);
  CHECK(r.report["theta"]["gradients"].size() == 28);
  CHECK(r.report["bitangents"].size() == 28);
  CHECK(r.report["bitangents"].contains("77"));
  CHECK(r.report["matrix"]["normalized"].size() == 8);
  CHECK(r.report["matrix"]["x"].size() == 7);
  CHECK(r.report["quartic"]["coefficients"].size() == 15);
  CHECK(r.report["verification"]["pass"] == true);
  for (const auto& c : r.report["verification"]["checks"]) CHECK(c["pass"] == true);

  // Doubles survive the text round trip exactly.
  const json back = json::parse(r.report.dump());
  CHECK(back == r.report);

  CHECK(run_pipeline(tau, cfg).report.dump() == r.report.dump());

  RunConfig off = cfg;
  off.checks = false;
  const RunResult q = run_pipeline(tau, off);
  CHECK(q.exit_code == kPass);
  CHECK_FALSE(q.report.contains("verification"));
  CHECK(q.report.contains("quartic"));
}

TEST_CASE("pipeline exit codes") {
  RunConfig cfg;
  cfg.tau_path = kData + "/tau_identity.json";
  const RunResult r = run_pipeline(load_tau(*cfg.tau_path), cfg);
  CHECK(r.exit_code == kDegenerate);
  CHECK(r.report["verification"]["degenerate"] == true);
  CHECK(r.report["verification"]["degeneracy"].get<double>() < 1e-10);

  std::ostringstream out, err;
  RunConfig bad;
  bad.tau_path = kData + "/tau_not_pd.json";
  CHECK(cmd_run(bad, out, err) == kInputError);
  CHECK(err.str().find("positive definite") != std::string::npos);

  std::ostringstream out2, err2;
  RunConfig tight = seeded(5);
  tight.degeneracy_threshold = 0.99;
  CHECK(cmd_run(tight, out2, err2) == kDegenerate);
}

TEST_CASE("commands write files") {
  const std::string tau_file = temp_path("tau.json");
  const std::string tau_file2 = temp_path("tau2.json");
  std::ostringstream out, err;
  REQUIRE(cmd_random_tau(5, 0.1, 1e-6, 1e-12, tau_file, out, err) == kPass);
  REQUIRE(cmd_random_tau(5, 0.1, 1e-6, 1e-12, tau_file2, out, err) == kPass);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  CHECK(slurp(tau_file) == slurp(tau_file2));

  RunConfig from_file;
  from_file.tau_path = tau_file;
  from_file.out_path = temp_path("report_a.json");
  RunConfig from_seed = seeded(5);
  from_seed.out_path = temp_path("report_b.json");
  CHECK(cmd_run(from_file, out, err) == kPass);
  CHECK(cmd_run(from_seed, out, err) == kPass);
  const json a = json::parse(slurp(*from_file.out_path));
  const json b = json::parse(slurp(*from_seed.out_path));
  CHECK(a["matrix"] == b["matrix"]);
  CHECK(a["quartic"] == b["quartic"]);

  CHECK(cmd_random_tau(5, 0.0, 1e-6, 1e-12, std::nullopt, out, err) == kDegenerate);
  for (const auto& p : {tau_file, tau_file2, *from_file.out_path, *from_seed.out_path}) std::remove(p.c_str());
}

TEST_CASE("selftest") {
  std::ostringstream ok;
  CHECK(cmd_selftest(ok) == kPass);
  CHECK(ok.str().find("FAIL") == std::string::npos);
  std::ostringstream same;
  CHECK(cmd_selftest(same, kData + "/char_matrix.txt") == kPass);
  std::ostringstream bad;
  CHECK(cmd_selftest(bad, kData + "/corrupted_char_matrix.txt") != kPass);
  CHECK(bad.str().find("first failing check: golden_char_matrix") != std::string::npos);
  CHECK(bad.str().find("(4,5)") != std::string::npos);
  std::ostringstream missing;
  CHECK(cmd_selftest(missing, kData + "/nope.txt") != kPass);
}
