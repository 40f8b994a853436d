#include "jlie.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include <json.hpp>

#include "jlie/commands.hpp"
#include "jlie/errors.hpp"
#include "jlie/expr.hpp"
#include "jlie/jacobi.hpp"
#include "jlie/manifest.hpp"

struct jlie_manifest_s {
  jlie::Manifest m;
};

struct jlie_structure_s {
  jlie::JacobiStructure j;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

jlie_status fail(jlie_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

// No exception crosses the C boundary. Argument-shaped problems map to
// BAD_INPUT, a structure that failed its zero tests to CHECK_FAILED,
// anything else to FATAL.
template <typename Body>
jlie_status guard(Body body) {
  try {
    return body();
  } catch (const jlie::ParseError& e) {
    return fail(JLIE_BAD_INPUT, e.what());
  } catch (const jlie::InvalidArgumentError& e) {
    return fail(JLIE_BAD_INPUT, e.what());
  } catch (const jlie::DomainError& e) {
    return fail(JLIE_BAD_INPUT, e.what());
  } catch (const jlie::UnusableStructureError& e) {
    return fail(JLIE_CHECK_FAILED, e.what());
  } catch (const jlie::Error& e) {
    return fail(JLIE_CHECK_FAILED, e.what());
  } catch (const std::exception& e) {
    return fail(JLIE_FATAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* jlie_version(void) { return "0.1.0"; }

const char* jlie_last_error(void) { return g_last_error.c_str(); }

void jlie_string_free(char* s) { std::free(s); }

jlie_status jlie_manifest_parse(const char* json_text, jlie_manifest** out) {
  if (!json_text || !out) return fail(JLIE_BAD_INPUT, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new jlie_manifest_s{jlie::Manifest::from_text(json_text)};
    return JLIE_OK;
  });
}

void jlie_manifest_free(jlie_manifest* m) { delete m; }

char* jlie_manifest_print(const jlie_manifest* m) {
  if (!m) return nullptr;
  try {
    return dup_string(m->m.to_json().dump());
  } catch (...) {
    return nullptr;
  }
}

jlie_status jlie_structure_check(const jlie_manifest* m, uint64_t seed,
                                 jlie_structure** out) {
  if (!m || !out) return fail(JLIE_BAD_INPUT, "null argument");
  *out = nullptr;
  return guard([&] {
    auto* h = new jlie_structure_s{
        jlie::JacobiStructure::check_jacobi(m->m.lambda, m->m.reeb, seed)};
    *out = h;  // handle is valid either way, for inspection
    if (h->j.usable()) return JLIE_OK;
    return fail(JLIE_CHECK_FAILED, "a compatibility condition failed its zero test");
  });
}

void jlie_structure_free(jlie_structure* s) { delete s; }

int jlie_structure_usable(const jlie_structure* s) {
  return s && s->j.usable() ? 1 : 0;
}

int jlie_structure_is_poisson(const jlie_structure* s) {
  return s && s->j.is_poisson() ? 1 : 0;
}

jlie_status jlie_bracket(const jlie_structure* s, const char* f, const char* g,
                         char** out_expr) {
  if (!s || !f || !g || !out_expr) return fail(JLIE_BAD_INPUT, "null argument");
  *out_expr = nullptr;
  return guard([&] {
    jlie::Expr ef = jlie::Expr::parse(s->j.chart(), f);
    jlie::Expr eg = jlie::Expr::parse(s->j.chart(), g);
    *out_expr = dup_string(s->j.bracket(ef, eg).print());
    return JLIE_OK;
  });
}

jlie_status jlie_hamiltonian(const jlie_structure* s, const char* f,
                             char** out_field, int* out_good) {
  if (!s || !f || !out_field) return fail(JLIE_BAD_INPUT, "null argument");
  *out_field = nullptr;
  return guard([&] {
    jlie::Expr ef = jlie::Expr::parse(s->j.chart(), f);
    jlie::HamiltonianPair p = s->j.hamiltonian_vf(ef);
    *out_field = dup_string(p.field.print());
    if (out_good) *out_good = p.good ? 1 : 0;
    return JLIE_OK;
  });
}

jlie_status jlie_run(const char* command, const char* args_json,
                     char** out_report, char** out_csv) {
  if (!command || !args_json || !out_report)
    return fail(JLIE_BAD_INPUT, "null argument");
  *out_report = nullptr;
  if (out_csv) *out_csv = nullptr;
  return guard([&]() -> jlie_status {
    nlohmann::ordered_json args;
    try {
      args = nlohmann::ordered_json::parse(args_json);
    } catch (const nlohmann::json::exception& e) {
      nlohmann::ordered_json rep{{"command", command},
                                 {"error", std::string("bad argument object: ") + e.what()},
                                 {"exit", 2}};
      *out_report = dup_string(rep.dump());
      return fail(JLIE_BAD_INPUT, e.what());
    }
    jlie::CommandResult res = jlie::run_command(command, args);
    *out_report = dup_string(res.report.dump());
    if (out_csv && !res.csv.empty()) *out_csv = dup_string(res.csv);
    if (res.exit_code != 0 && res.report.contains("error"))
      g_last_error = res.report.at("error").get<std::string>();
    return static_cast<jlie_status>(res.exit_code);
  });
}

}  // extern "C"
