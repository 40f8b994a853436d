// End-to-end runs of the installed driver: exit-status matrix over the
// fixtures plus output checks. Each case shells out to the real binary.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

namespace {

using nlohmann::ordered_json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + JLIE_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fix(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name + ".json";
}

ordered_json parse_report(const RunResult& r) {
  REQUIRE(!r.out.empty());
  return ordered_json::parse(r.out);
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = std::string(BUILD_TMP_DIR) + "/" + name;
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
  return path;
}

}  // namespace

TEST_CASE("cli exit-status matrix over the fixtures") {
  for (const char* name : {"heisenberg", "sl2", "riccati_r1", "riccati_r4", "rectified"}) {
    RunResult r = run_cli("check " + fix(name));
    CAPTURE(name);
    CHECK(r.exit_code == 0);
    auto rep = parse_report(r);
    CHECK(rep.at("exit") == 0);
    for (const auto& c : rep.at("checks")) CHECK(c.at("verdict") == "pass");
  }

  std::string bad = write_temp(
      "incompatible.json",
      R"({"chart": ["x", "y"],
          "lambda": {"degree": 2, "components": {"0,1": "x"}},
          "reeb": {"degree": 1, "components": {"0": "1"}}})");
  RunResult r = run_cli("check " + bad);
  CHECK(r.exit_code == 1);
  auto rep = parse_report(r);
  CHECK(rep.at("checks").at(1).at("verdict") == "fail");

  CHECK(run_cli("check " + write_temp("broken.json", "{\"chart\": [")).exit_code == 2);
  CHECK(run_cli("check /nonexistent/nowhere.json").exit_code == 2);
  CHECK(run_cli("check").exit_code == 2);             // missing positional
  CHECK(run_cli("frobnicate x").exit_code == 2);      // unknown subcommand
  CHECK(run_cli("check " + fix("sl2") + " --bogus").exit_code == 2);
}

TEST_CASE("cli bracket examples") {
  RunResult r = run_cli("bracket " + fix("heisenberg") + " -f -y -g x");
  CHECK(r.exit_code == 0);
  CHECK(parse_report(r).at("result") == "1");

  r = run_cli("bracket " + fix("sl2") + " -f 1+2*b*g -g -b*a");
  CHECK(r.exit_code == 0);
  CHECK(parse_report(r).at("result") == "-2*a*b");

  r = run_cli("bracket " + fix("sl2") + " -f 1+2*b*g -g 1+2*b*g");
  CHECK(r.exit_code == 0);
  CHECK(parse_report(r).at("result") == "0");

  CHECK(run_cli("bracket " + fix("sl2") + " -f 1+ -g b").exit_code == 2);
}

TEST_CASE("cli hamiltonian and closure") {
  RunResult r = run_cli("hamiltonian " + fix("heisenberg") + " -f -y");
  CHECK(r.exit_code == 0);
  CHECK(parse_report(r).at("field") == "dx");

  r = run_cli("hamiltonian " + fix("riccati_r1") + " --solve X3");
  CHECK(r.exit_code == 0);
  CHECK(parse_report(r).at("hamiltonian") == "x^2");

  CHECK(run_cli("hamiltonian " + fix("riccati_r1") + " -f x --solve X1").exit_code == 2);
  CHECK(run_cli("hamiltonian " + fix("riccati_r1") + " --solve NOPE").exit_code == 2);

  r = run_cli("closure " + fix("sl2"));
  CHECK(r.exit_code == 0);
  CHECK(parse_report(r).at("algebra").at("basis").size() == 3);
  CHECK(run_cli("closure " + fix("sl2") + " --max-dim 2").exit_code == 2);

  // Two projective generators grow a third direction past the bound.
  std::string growing = write_temp(
      "growing.json",
      R"({"chart": ["x"],
          "fields": {"X1": {"degree": 1, "components": {"0": "1"}},
                     "X2": {"degree": 1, "components": {"0": "x^2"}}}})");
  r = run_cli("closure " + growing + " --max-dim 2");
  CHECK(r.exit_code == 1);
  CHECK(parse_report(r).at("reached_dim") == 3);
  CHECK(run_cli("closure " + growing + " --max-dim 3").exit_code == 0);
}

TEST_CASE("cli com positive and negative controls") {
  RunResult r = run_cli("com " + fix("sl2") +
                        " -f '(1+2*b*g)*(1+2*b*g)+4*(g*(1+b*g)/a)*(-1*b*a)'");
  CHECK(r.exit_code == 0);

  r = run_cli("com " + fix("sl2") + " -f b");
  CHECK(r.exit_code == 1);
  auto rep = parse_report(r);
  bool found = false;
  for (const auto& c : rep.at("checks"))
    if (c.at("name") == "constant_of_motion") {
      found = true;
      CHECK(c.at("verdict") == "fail");
    }
  CHECK(found);
}

TEST_CASE("cli table") {
  CHECK(run_cli("table I9").exit_code == 0);
  CHECK(run_cli("table I1").exit_code == 0);
  CHECK(run_cli("table I17").exit_code == 0);  // asserted row is the expected state
  CHECK(run_cli("table ZZ").exit_code == 2);
  CHECK(run_cli("table I8 --alpha 1/2").exit_code == 0);
  CHECK(run_cli("table I8 --alpha 0").exit_code == 2);
  CHECK(run_cli("table I13 --r 3").exit_code == 0);
  CHECK(run_cli("table P5 --bivector 1").exit_code == 0);

  RunResult all = run_cli("table --all");
  CHECK(all.exit_code == 0);
  auto rep = parse_report(all);
  CHECK(rep.at("checks").size() == 28);
  CHECK(rep.at("checks").at(0).at("name") == "P1");
  CHECK(run_cli("table --all --alpha 1").exit_code == 2);
}

TEST_CASE("cli integrate") {
  RunResult r = run_cli(
      "integrate --system riccati --a0 1 --a1 0 --a2 1 --x0 0 --t0 0 --t1 1 --step 0.001");
  CHECK(r.exit_code == 0);
  double endpoint = parse_report(r).at("final_state").at(0).get<double>();
  CHECK(endpoint == doctest::Approx(1.5574077).epsilon(1e-6));

  r = run_cli("integrate --system sl2 --b1 1 --b2 0 --b3 0 --x0 1,1,1 --t1 1");
  CHECK(r.exit_code == 0);
  auto state = parse_report(r).at("final_state");
  CHECK(state.at(0).get<double>() == doctest::Approx(2.718282).epsilon(1e-6));
  CHECK(state.at(2).get<double>() == doctest::Approx(0.367879).epsilon(1e-6));

  r = run_cli("integrate --system riccati --a0 0 --a1 0 --a2 0 --x0 5");
  CHECK(r.exit_code == 0);
  CHECK(parse_report(r).at("final_state").at(0).get<double>() == 5.0);

  CHECK(run_cli("integrate --system riccati --a0 1 --a2 1 --x0 0 --t1 2").exit_code == 1);
  CHECK(run_cli("integrate --system bogus --x0 1").exit_code == 2);
  CHECK(run_cli("integrate --system riccati").exit_code == 2);  // x0 required

  std::string csv_path = std::string(BUILD_TMP_DIR) + "/traj.csv";
  std::remove(csv_path.c_str());
  r = run_cli("integrate --system heisenberg --b1 1 --b2 1 --b3 0 --x0 0,0,0 --t1 1 --out " +
              csv_path);
  CHECK(r.exit_code == 0);
  std::ifstream csv(csv_path);
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,x,y,z");

  r = run_cli("integrate --system riccati --a0 1 --a2 1 --x0 0 --t1 0.5 "
              "--superposition 0.3,0.7,0.5");
  CHECK(r.exit_code == 0);
  auto rep = parse_report(r);
  CHECK(rep.at("superposition").at("max_ode_residual").get<double>() < 1e-4);
  CHECK(run_cli("integrate --system riccati --a0 1 --x0 0 --superposition 0.3,0.7").exit_code == 2);
}

TEST_CASE("cli determinism and seed plumbing") {
  const std::string invocation = "table I6";
  RunResult a = run_cli(invocation);
  RunResult b = run_cli(invocation);
  CHECK(a.out == b.out);

  RunResult env_seed = run_cli("check " + fix("sl2"), "JLIE_SEED=7");
  CHECK(parse_report(env_seed).at("inputs").at("seed") == 7);
  RunResult flag_wins = run_cli("check " + fix("sl2") + " --seed 11", "JLIE_SEED=7");
  CHECK(parse_report(flag_wins).at("inputs").at("seed") == 11);

  RunResult pretty = run_cli("check " + fix("heisenberg") + " --pretty");
  CHECK(pretty.exit_code == 0);
  CHECK(pretty.out.find('\n') != std::string::npos);
  RunResult compact = run_cli("check " + fix("heisenberg"));
  CHECK(ordered_json::parse(pretty.out) == ordered_json::parse(compact.out));
}
