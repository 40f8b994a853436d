#pragma once

#include <string>

#include <json.hpp>

namespace jlie {

// Result of one CLI-level command: a JSON report, the process exit code, and
// (for integrate) the trajectory CSV. Exit codes: 0 every check positive,
// 1 a check failed (incompatible structure, missing lift, pole abort,
// unreproduced table row), 2 argument/schema/parse problems.
struct CommandResult {
  nlohmann::ordered_json report;
  int exit_code = 0;
  std::string csv;
};

// Commands take a flat JSON argument object (flags already parsed) and never
// throw: bad arguments come back as exit 2 with an "error" field. Manifests
// are passed as text under "manifest" ("manifest_path" is echoed when
// present); "seed" (default 0) feeds every probabilistic zero test. Reports
// are byte-identical for identical argument objects.
//
//   check       {manifest}                      both compatibility conditions
//   bracket     {manifest, f, g}                {f,g} in canonical form
//   hamiltonian {manifest, f | solve, max_degree}
//               forward map f -> X_f, or the inverse polynomial solve for a
//               named manifest field
//   closure     {manifest, max_dim}             algebra generated by the fields
//   com         {manifest, f, max_dim}          constant-of-motion test for f
//               against the function algebra lifted from the manifest
//   table       {id | all, alpha, r, max_degree, bivector}
//               classification registry verification
//   integrate   {system, a0..a2 | b1..b3 | manifest+b, x0, t0, t1, step,
//                com, superposition{x2,x3,k}}; the CSV comes back in `csv`
CommandResult cmd_check(const nlohmann::ordered_json& args);
CommandResult cmd_bracket(const nlohmann::ordered_json& args);
CommandResult cmd_hamiltonian(const nlohmann::ordered_json& args);
CommandResult cmd_closure(const nlohmann::ordered_json& args);
CommandResult cmd_com(const nlohmann::ordered_json& args);
CommandResult cmd_table(const nlohmann::ordered_json& args);
CommandResult cmd_integrate(const nlohmann::ordered_json& args);

// Dispatch by command name; unknown names exit 2.
CommandResult run_command(const std::string& name, const nlohmann::ordered_json& args);

}  // namespace jlie
