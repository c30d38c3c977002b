#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lowreg/cli.hpp"

using namespace lowreg;

namespace {

std::filesystem::path test_dir() {
  auto dir = std::filesystem::temp_directory_path() / "lowreg_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const auto path = test_dir() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

int run_cli(const std::string& args) {
#ifdef LOWREG_CLI_BIN
  const std::string cmd = std::string(LOWREG_CLI_BIN) + " " + args;
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
#else
  (void)args;
  return -1;
#endif
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("parse_ratio") {
  CHECK(parse_ratio("1/16") == 0.0625);
  CHECK(parse_ratio("0.5") == 0.5);
  CHECK(parse_ratio("3") == 3.0);
  CHECK_THROWS_AS(parse_ratio("abc"), UsageError);
  CHECK_THROWS_AS(parse_ratio("1/0"), UsageError);
  CHECK_THROWS_AS(parse_ratio("1/2x"), UsageError);
}

TEST_CASE("converge invocation maps flags onto the experiment") {
  const auto parsed = parse_invocation(
      {"converge", "--scheme=lri1", "--theta=1.25", "--tau-list=1/16,1/32,1/64"});
  CHECK_FALSE(parsed.help);
  const ExperimentConfig& cfg = parsed.invocation.experiment;
  CHECK(parsed.invocation.command == Command::Converge);
  CHECK(cfg.scheme == SchemeId::LRI1);
  CHECK(cfg.theta_u == 1.25);
  CHECK(cfg.theta_v == 1.25);
  REQUIRE(cfg.tau_list.size() == 3);
  CHECK(cfg.tau_list[0] == 0.0625);
  CHECK(cfg.tau_list[2] == 0.015625);
}

TEST_CASE("run invocation derives the horizon from tau and steps") {
  const auto parsed = parse_invocation({"run", "--tau=0.01", "--steps=100"});
  CHECK(parsed.invocation.command == Command::Run);
  CHECK(parsed.invocation.run_tau == 0.01);
  CHECK(parsed.invocation.run_steps == 100);
  CHECK(parsed.invocation.experiment.T == doctest::Approx(1.0));
}

TEST_CASE("tau list divisibility validation") {
  CHECK_NOTHROW(parse_invocation(
      {"converge", "--tau-list=1/16,1/32,1/64", "--T=1"}));
  CHECK_THROWS_AS(parse_invocation(
      {"converge", "--tau-list=1/16,0.03", "--T=1"}), UsageError);
}

TEST_CASE("unknown and malformed flags are rejected") {
  CHECK_THROWS_AS(parse_invocation({"converge", "--no-such-flag=1"}), UsageError);
  CHECK_THROWS_AS(parse_invocation({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse_invocation({}), UsageError);
  CHECK_THROWS_AS(parse_invocation({"run", "--tau=abc"}), UsageError);
  CHECK_THROWS_AS(parse_invocation({"run", "--steps=10", "--scheme=rk4"}), UsageError);
  CHECK_THROWS_AS(parse_invocation({"run"}), UsageError);
}

TEST_CASE("help text covers every registered flag") {
  const auto parsed = parse_invocation({"--help"});
  CHECK(parsed.help);
  CHECK_FALSE(parsed.help_text.empty());
  for (const std::string& flag : cli_flag_names())
    CHECK(cli_help_text().find(flag) != std::string::npos);
}

TEST_CASE("config files parse and flags override them") {
  const std::string path = write_file("exp.cfg",
                                      "# experiment configuration\n"
                                      "scheme = lri2fd\n"
                                      "theta = 2.25   # both fields\n"
                                      "K = 64\n"
                                      "tau_list = 1/16,1/32\n"
                                      "\n"
                                      "seed = 42\n");
  const auto parsed = parse_invocation({"converge", "--config", path});
  const ExperimentConfig& cfg = parsed.invocation.experiment;
  CHECK(cfg.scheme == SchemeId::LRI2_FD);
  CHECK(cfg.theta_u == 2.25);
  CHECK(cfg.modes == 64);
  CHECK(cfg.seed == 42);

  const auto overridden =
      parse_invocation({"converge", "--config", path, "--theta=3", "--scheme=lri1"});
  CHECK(overridden.invocation.experiment.theta_u == 3.0);
  CHECK(overridden.invocation.experiment.scheme == SchemeId::LRI1);
  CHECK(overridden.invocation.experiment.modes == 64);  // file value survives

  CHECK_THROWS_AS(parse_invocation({"converge", "--config", "/no/such/file"}),
                  UsageError);
  const std::string bad = write_file("bad.cfg", "notakey = 1\ntau_list = 1/16\n");
  CHECK_THROWS_AS(parse_invocation({"converge", "--config", bad}), UsageError);
  const std::string malformed = write_file("malformed.cfg", "just some words\n");
  CHECK_THROWS_AS(parse_invocation({"converge", "--config", malformed}), UsageError);
}

TEST_CASE("boolean toggles reach the invocation") {
  const auto parsed = parse_invocation({"converge", "--tau-list=1/16,1/32",
                                        "--dealias", "--conjugate-commutator"});
  CHECK(parsed.invocation.dealias);
  CHECK(parsed.invocation.experiment.conjugate_commutator);
  const auto plain = parse_invocation({"converge", "--tau-list=1/16,1/32"});
  CHECK_FALSE(plain.invocation.dealias);
  CHECK_FALSE(plain.invocation.experiment.conjugate_commutator);
}

TEST_CASE("reference policy keys are config-file only") {
  const std::string path = write_file("ref.cfg",
                                      "tau_list = 1/16,1/32\n"
                                      "ref_scheme = strang\n"
                                      "cross_scheme = lri2fd\n"
                                      "ref_tau_divisor = 16\n");
  const auto parsed = parse_invocation({"converge", "--config", path});
  CHECK(parsed.invocation.experiment.reference.scheme == SchemeId::STRANG_SPLIT);
  CHECK(parsed.invocation.experiment.reference.cross_scheme == SchemeId::LRI2_FD);
  CHECK(parsed.invocation.experiment.reference.tau_divisor == 16);
}

#ifdef LOWREG_CLI_BIN

TEST_CASE("binary: blow-up exits with status 2") {
  CHECK(run_cli("run --scheme=expeuler --theta=0 --K=64 --tau=0.9 --steps=50 "
                ">/dev/null 2>&1") == kExitBlowup);
}

TEST_CASE("binary: usage errors exit with status 1") {
  CHECK(run_cli("run --tau=0.3 --steps=7 --T=1 >/dev/null 2>&1") == kExitUsage);
  CHECK(run_cli("--garbage >/dev/null 2>&1") == kExitUsage);
}

TEST_CASE("binary: converge writes byte-identical outputs on repeat runs") {
  const auto out1 = test_dir() / "rep1";
  const auto out2 = test_dir() / "rep2";
  const std::string common =
      "converge --scheme=lri1 --theta=2 --K=32 --T=0.25 "
      "--tau-list=1/8,1/16,1/32 --r-list=0 ";
  std::filesystem::create_directories(out1);
  std::filesystem::create_directories(out2);
  REQUIRE(run_cli(common + "--out=" + out1.string() + " >/dev/null") == kExitOk);
  REQUIRE(run_cli(common + "--out=" + out2.string() + " >/dev/null") == kExitOk);
  CHECK(slurp((out1 / "study_lri1_theta2.csv").string()) ==
        slurp((out2 / "study_lri1_theta2.csv").string()));
  CHECK(slurp((out1 / "study_lri1_theta2_r0.svg").string()) ==
        slurp((out2 / "study_lri1_theta2_r0.svg").string()));
}

TEST_CASE("binary: run writes a parsable state dump") {
  const auto dump = test_dir() / "state.csv";
  REQUIRE(run_cli("run --scheme=lri1 --theta=2 --K=8 --tau=1/8 --steps=8 --dump=" +
                  dump.string() + " >/dev/null") == kExitOk);
  std::ifstream in(dump);
  REQUIRE(in);
  std::string header;
  std::getline(in, header);
  CHECK(header == "k1,re,im");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);
}

#endif  // LOWREG_CLI_BIN
