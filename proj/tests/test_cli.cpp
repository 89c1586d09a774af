#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "spinrotor/cli.hpp"

using namespace spinrotor;
using namespace spinrotor::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "spinrotor-cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

}  // namespace

TEST_CASE("amplitudes file parsing") {
  SUBCASE("comments, default spinor and explicit spinor") {
    std::istringstream in(
        "# sector list\n"
        "4 0.6 0   # spin up\n"
        "\n"
        "-4 0 0.8 0 0 2 0\n");
    std::ostringstream warn;
    const auto s = parse_amplitudes(in, warn);
    CHECK(warn.str().empty());
    REQUIRE(s.size() == 2);
    CHECK(s.entries()[0].m.m == -4);
    CHECK(s.entries()[0].amplitude == cplx{0.0, 0.8});
    CHECK(s.entries()[0].spinor.down == cplx{1.0, 0.0});
    CHECK(s.entries()[1].spinor.up == cplx{1.0, 0.0});
  }
  SUBCASE("renormalization warns past 1e-9") {
    std::istringstream in("1 1 0\n2 1 0\n");
    std::ostringstream warn;
    const auto s = parse_amplitudes(in, warn);
    CHECK(warn.str().find("renormalized") != std::string::npos);
    CHECK(std::abs(s.norm_sq() - 1.0) < 1e-15);
  }
  SUBCASE("errors") {
    std::ostringstream warn;
    std::istringstream empty("# nothing\n\n");
    CHECK_THROWS_AS(parse_amplitudes(empty, warn), std::invalid_argument);
    std::istringstream zero("1 0 0\n");
    CHECK_THROWS_AS(parse_amplitudes(zero, warn), std::invalid_argument);
    std::istringstream fields("1 0.5\n");
    CHECK_THROWS_AS(parse_amplitudes(fields, warn), std::invalid_argument);
    std::istringstream junk("1 0.5 abc\n");
    CHECK_THROWS_AS(parse_amplitudes(junk, warn), std::invalid_argument);
    std::istringstream dup("1 1 0\n1 1 0\n");
    CHECK_THROWS_AS(parse_amplitudes(dup, warn), std::invalid_argument);
    std::istringstream not_int("x 1 0\n");
    CHECK_THROWS_AS(parse_amplitudes(not_int, warn), std::invalid_argument);
  }
}

TEST_CASE("spectrum command") {
  const auto r = run_cli({"spectrum", "--m-min", "-10", "--m-max", "10"});
  CHECK(r.status == kSuccess);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 22);
  CHECK(rows[0] == "m,eps_minus,eps_plus,omega,theta,lambda");
  CHECK(rows[11].rfind("0,-1,1,2,", 0) == 0);
  CHECK(rows[15].rfind("4,6.58578644,9.41421356,2.82842712,", 0) == 0);

  const auto table = cmd_spectrum(RunConfig{}).table;
  for (const auto& row : table.rows) {
    const double gap = std::get<double>(row[2]) - std::get<double>(row[1]);
    CHECK(gap == doctest::Approx(std::get<double>(row[3])).epsilon(1e-14));
  }

  CHECK(run_cli({"spectrum", "--m-min", "3", "--m-max", "1"}).status == kUsageError);
}

TEST_CASE("sweep command") {
  const auto out = cmd_sweep(RunConfig{});
  REQUIRE(out.table.rows.size() == 3);
  const std::array<double, 3> expected{0.68, 0.5, 0.68};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(std::get<double>(out.table.rows[i][4]) - expected[i]) < 1e-15);
  }
  CHECK(std::abs(std::get<double>(out.table.rows[1][5]) - std::log(2.0)) < 1e-15);

  RunConfig zero;
  zero.m_list = {0};
  const auto z = cmd_sweep(zero);
  CHECK(std::get<double>(z.table.rows[0][4]) == 1.0);
  CHECK(std::get<double>(z.table.rows[0][5]) == 0.0);

  const auto text = run_cli({"sweep", "--m-list", "2,4,8"});
  CHECK(text.status == kSuccess);
  CHECK(lines(text.out)[0] == "eta,m,omega,t_first_min,purity_min,entropy_max");
}

TEST_CASE("dynamics command") {
  SUBCASE("two-sector default emits overlap columns") {
    const auto r = run_cli({"dynamics", "--m", "4", "--t-max", "10", "--steps", "11"});
    CHECK(r.status == kSuccess);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] == "t,K_re,K_im,K_abs,purity,entropy,rotor_coherence");
    CHECK(rows[1] == "0,1,0,1,1,0,0.5");
  }
  SUBCASE("general amplitude list drops the overlap columns") {
    const auto path = temp_file("spinrotor_amps.txt", "1 0.6 0\n3 0.8 0\n");
    const auto r = run_cli({"dynamics", "--amplitudes", path.string(), "--steps", "5"});
    CHECK(r.status == kSuccess);
    CHECK(lines(r.out)[0] == "t,purity,entropy,rotor_coherence");
  }
  SUBCASE("g = 0 stays a product state") {
    RunConfig cfg;
    cfg.params.coupling = 0.0;
    std::ostringstream warn;
    const auto out = cmd_dynamics(cfg, warn);
    for (const auto& row : out.table.rows) {
      CHECK(std::abs(std::get<double>(row[4]) - 1.0) < 1e-12);
      CHECK(std::get<double>(row[5]) < 1e-12);
    }
  }
  SUBCASE("refined summary") {
    RunConfig cfg;
    std::ostringstream warn;
    const auto out = cmd_dynamics(cfg, warn);
    CHECK(std::abs(out.extra["summary"]["purity_min"].get<double>() - 0.5) < 1e-12);
  }
  SUBCASE("errors") {
    CHECK(run_cli({"dynamics", "--steps", "1"}).status == kUsageError);
    CHECK(run_cli({"dynamics", "--t-max", "0"}).status == kUsageError);
    CHECK(run_cli({"dynamics", "--m", "0"}).status == kUsageError);
    CHECK(run_cli({"dynamics", "--amplitudes", "/nonexistent/amps"}).status == kUsageError);
    const auto bad = temp_file("spinrotor_bad.txt", "1 0 0\n");
    CHECK(run_cli({"dynamics", "--amplitudes", bad.string()}).status == kUsageError);
  }
}

TEST_CASE("verify command") {
  const auto ok = run_cli({"verify", "--scenario", "fig1b-m4"});
  CHECK(ok.status == kSuccess);
  CHECK(lines(ok.out).size() == 2);
  CHECK(lines(ok.out)[1].ends_with(",true"));

  CHECK(run_cli({"verify", "--scenario", "g-zero", "--threshold", "1e-300"}).status ==
        kVerificationFailure);
  CHECK(run_cli({"verify", "--scenario", "nope"}).status == kUsageError);
}

TEST_CASE("usage errors and help") {
  CHECK(run_cli({}).status == kUsageError);
  CHECK(run_cli({"spectrum", "--bogus"}).status == kUsageError);
  CHECK(run_cli({"--format", "xml", "spectrum"}).status == kUsageError);
  CHECK(run_cli({"--inertia", "-1", "spectrum"}).status == kUsageError);
  CHECK(run_cli({"--delta", "-2", "sweep"}).status == kUsageError);
  CHECK(run_cli({"--help"}).status == kSuccess);
}

TEST_CASE("json output round-trips exactly") {
  const auto r = run_cli({"--format", "json", "dynamics", "--m", "2", "--steps", "101"});
  REQUIRE(r.status == kSuccess);
  const json doc = json::parse(r.out);
  CHECK(doc["meta"]["command"] == "dynamics");
  CHECK(doc["meta"]["config"]["delta"] == 2.0);
  CHECK(doc["meta"]["version"] == kToolVersion);

  RunConfig cfg;
  cfg.m = 2;
  cfg.steps = 101;
  std::ostringstream warn;
  const auto direct = cmd_dynamics(cfg, warn);
  REQUIRE(doc["rows"].size() == direct.table.rows.size());
  for (std::size_t i = 0; i < direct.table.rows.size(); ++i) {
    for (std::size_t c = 0; c < direct.table.columns.size(); ++c) {
      CHECK(doc["rows"][i][direct.table.columns[c]].get<double>() ==
            std::get<double>(direct.table.rows[i][c]));
    }
  }
  CHECK(doc["summary"]["t_first_min"].get<double>() ==
        direct.extra["summary"]["t_first_min"].get<double>());
}

TEST_CASE("config file values yield to flags") {
  const auto cfg = temp_file("spinrotor_cfg.toml", "delta = 3.0\ncoupling = 1.0\n");
  const auto from_file = run_cli({"--config", cfg.string(), "spectrum", "--m-min", "0", "--m-max", "0"});
  CHECK(from_file.status == kSuccess);
  CHECK(lines(from_file.out)[1].rfind("0,-1.5,1.5,3,", 0) == 0);

  const auto overridden =
      run_cli({"--config", cfg.string(), "--delta", "2", "spectrum", "--m-min", "0", "--m-max", "0"});
  CHECK(lines(overridden.out)[1].rfind("0,-1,1,2,", 0) == 0);
}

TEST_CASE("output file and determinism") {
  const auto path = std::filesystem::temp_directory_path() / "spinrotor_out.csv";
  std::filesystem::remove(path);
  CHECK(run_cli({"--output", path.string(), "sweep"}).status == kSuccess);
  std::ifstream in(path, std::ios::binary);
  const std::string first((std::istreambuf_iterator<char>(in)), {});
  CHECK(first == run_cli({"sweep"}).out);
  CHECK(first.find('\r') == std::string::npos);

  const auto a = run_cli({"--format", "json", "verify", "--scenario", "random-multisector", "--seed", "7"});
  const auto b = run_cli({"--format", "json", "verify", "--scenario", "random-multisector", "--seed", "7"});
  CHECK(a.out == b.out);
}

TEST_CASE("csv number format") {
  CHECK(format_csv_number(0.5) == "0.5");
  CHECK(format_csv_number(std::sqrt(2.0)) == "1.41421356");
  CHECK(format_csv_number(1e-20) == "1e-20");
}
