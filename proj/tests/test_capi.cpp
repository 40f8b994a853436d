#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <jlie.h>

namespace {

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(FIXTURES_DIR) + "/" + name + ".json");
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ManifestHandle {
  jlie_manifest* m = nullptr;
  ~ManifestHandle() { jlie_manifest_free(m); }
};

struct StructureHandle {
  jlie_structure* s = nullptr;
  ~StructureHandle() { jlie_structure_free(s); }
};

nlohmann::ordered_json run_json(const char* command, const nlohmann::ordered_json& args,
                                jlie_status* st_out = nullptr) {
  char* report = nullptr;
  jlie_status st = jlie_run(command, args.dump().c_str(), &report, nullptr);
  if (st_out) *st_out = st;
  REQUIRE(report != nullptr);
  auto parsed = nlohmann::ordered_json::parse(report);
  jlie_string_free(report);
  return parsed;
}

}  // namespace

TEST_CASE("c api basics") {
  CHECK(std::string(jlie_version()).find('.') != std::string::npos);
  jlie_string_free(nullptr);  // must be a no-op

  jlie_manifest* m = nullptr;
  CHECK(jlie_manifest_parse(nullptr, &m) == JLIE_BAD_INPUT);
  CHECK(jlie_manifest_parse("{", &m) == JLIE_BAD_INPUT);
  CHECK(m == nullptr);
  CHECK(std::string(jlie_last_error()).size() > 0);
}

TEST_CASE("c api manifest and structure handles") {
  ManifestHandle h;
  REQUIRE(jlie_manifest_parse(fixture_text("heisenberg").c_str(), &h.m) == JLIE_OK);
  char* printed = jlie_manifest_print(h.m);
  REQUIRE(printed != nullptr);
  auto round = nlohmann::ordered_json::parse(printed);
  CHECK(round.at("chart").size() == 3);
  jlie_string_free(printed);

  StructureHandle s;
  REQUIRE(jlie_structure_check(h.m, 0, &s.s) == JLIE_OK);
  CHECK(jlie_structure_usable(s.s) == 1);
  CHECK(jlie_structure_is_poisson(s.s) == 0);

  ManifestHandle r4;
  REQUIRE(jlie_manifest_parse(fixture_text("riccati_r4").c_str(), &r4.m) == JLIE_OK);
  StructureHandle s4;
  REQUIRE(jlie_structure_check(r4.m, 0, &s4.s) == JLIE_OK);
  CHECK(jlie_structure_is_poisson(s4.s) == 1);

  // An incompatible pair still yields a handle, flagged unusable.
  const char* bad =
      "{\"chart\": [\"x\", \"y\"],"
      " \"lambda\": {\"degree\": 2, \"components\": {\"0,1\": \"x\"}},"
      " \"reeb\": {\"degree\": 1, \"components\": {\"0\": \"1\"}}}";
  ManifestHandle bm;
  REQUIRE(jlie_manifest_parse(bad, &bm.m) == JLIE_OK);
  StructureHandle bs;
  CHECK(jlie_structure_check(bm.m, 0, &bs.s) == JLIE_CHECK_FAILED);
  REQUIRE(bs.s != nullptr);
  CHECK(jlie_structure_usable(bs.s) == 0);

  char* expr = nullptr;
  CHECK(jlie_bracket(bs.s, "x", "y", &expr) == JLIE_CHECK_FAILED);
  CHECK(expr == nullptr);
}

TEST_CASE("c api bracket and hamiltonian") {
  ManifestHandle h;
  REQUIRE(jlie_manifest_parse(fixture_text("heisenberg").c_str(), &h.m) == JLIE_OK);
  StructureHandle s;
  REQUIRE(jlie_structure_check(h.m, 0, &s.s) == JLIE_OK);

  char* expr = nullptr;
  REQUIRE(jlie_bracket(s.s, "-y", "x", &expr) == JLIE_OK);
  CHECK(std::string(expr) == "1");
  jlie_string_free(expr);

  expr = nullptr;
  CHECK(jlie_bracket(s.s, "1+", "x", &expr) == JLIE_BAD_INPUT);
  CHECK(expr == nullptr);

  char* field = nullptr;
  int good = -1;
  REQUIRE(jlie_hamiltonian(s.s, "-y", &field, &good) == JLIE_OK);
  CHECK(std::string(field) == "dx");
  CHECK(good == 1);
  jlie_string_free(field);

  field = nullptr;
  REQUIRE(jlie_hamiltonian(s.s, "z", &field, &good) == JLIE_OK);
  CHECK(good == 0);
  jlie_string_free(field);
}

TEST_CASE("c api command runner") {
  nlohmann::ordered_json args;
  args["manifest"] = fixture_text("sl2");
  args["f"] = "1+2*b*g";
  args["g"] = "-b*a";
  args["seed"] = 0;

  jlie_status st = JLIE_FATAL;
  auto report = run_json("bracket", args, &st);
  CHECK(st == JLIE_OK);
  CHECK(report.at("result") == "-2*a*b");
  CHECK(report.at("exit") == 0);

  // Identical input, identical bytes.
  char* first = nullptr;
  char* second = nullptr;
  jlie_run("bracket", args.dump().c_str(), &first, nullptr);
  jlie_run("bracket", args.dump().c_str(), &second, nullptr);
  REQUIRE(first != nullptr);
  REQUIRE(second != nullptr);
  CHECK(std::string(first) == std::string(second));
  jlie_string_free(first);
  jlie_string_free(second);

  auto missing = run_json("bracket", nlohmann::ordered_json::object(), &st);
  CHECK(st == JLIE_BAD_INPUT);
  CHECK(missing.contains("error"));
  CHECK(missing.at("exit") == 2);

  run_json("frobnicate", nlohmann::ordered_json::object(), &st);
  CHECK(st == JLIE_BAD_INPUT);

  char* report_text = nullptr;
  CHECK(jlie_run("check", "not json", &report_text, nullptr) == JLIE_BAD_INPUT);
  REQUIRE(report_text != nullptr);
  CHECK(nlohmann::ordered_json::parse(report_text).at("exit") == 2);
  jlie_string_free(report_text);
}

TEST_CASE("c api integrate returns csv") {
  nlohmann::ordered_json args{{"system", "riccati"}, {"a0", "1"}, {"a2", "1"},
                              {"x0", {0.0}},         {"t1", 0.5}, {"seed", 0}};
  char* report = nullptr;
  char* csv = nullptr;
  REQUIRE(jlie_run("integrate", args.dump().c_str(), &report, &csv) == JLIE_OK);
  REQUIRE(csv != nullptr);
  CHECK(std::string(csv).substr(0, 4) == "t,x\n");
  auto rep = nlohmann::ordered_json::parse(report);
  CHECK(rep.at("final_state").at(0).get<double>() == doctest::Approx(0.546302).epsilon(1e-5));
  jlie_string_free(report);
  jlie_string_free(csv);

  // Pole abort: the run fails, so no trajectory is produced.
  args["t1"] = 2.0;
  report = nullptr;
  csv = nullptr;
  CHECK(jlie_run("integrate", args.dump().c_str(), &report, &csv) == JLIE_CHECK_FAILED);
  REQUIRE(report != nullptr);
  CHECK(csv == nullptr);
  jlie_string_free(report);
}
