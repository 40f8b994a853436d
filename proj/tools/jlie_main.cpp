// Command line driver. Each subcommand assembles a JSON argument object and
// hands it to the shared library; the report comes back as JSON text and the
// process exit code is the library's status. No computation happens here.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <jlie.h>

namespace {

using nlohmann::ordered_json;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

int usage_error(const std::string& message, bool pretty) {
  ordered_json rep{{"error", message}, {"exit", 2}};
  std::cout << (pretty ? rep.dump(2) : rep.dump()) << "\n";
  return 2;
}

// Loads the manifest file into the argument object; the library receives the
// text, the path is echoed for the report only.
bool attach_manifest(ordered_json& args, const std::string& path, bool pretty, int& rc) {
  std::string text;
  if (!read_file(path, text)) {
    rc = usage_error("cannot read manifest file " + path, pretty);
    return false;
  }
  args["manifest"] = text;
  args["manifest_path"] = path;
  return true;
}

int run(const std::string& command, const ordered_json& args, bool pretty,
        const std::string& csv_out) {
  char* report = nullptr;
  char* csv = nullptr;
  jlie_status st = jlie_run(command.c_str(), args.dump().c_str(), &report, &csv);
  if (st == JLIE_FATAL || !report) {
    std::cerr << "error: " << jlie_last_error() << "\n";
    jlie_string_free(report);
    jlie_string_free(csv);
    return 1;
  }
  if (pretty)
    std::cout << ordered_json::parse(report).dump(2) << "\n";
  else
    std::cout << report << "\n";
  int rc = static_cast<int>(st);
  if (!csv_out.empty() && csv) {
    std::ofstream out(csv_out, std::ios::binary);
    if (out) {
      out << csv;
    } else {
      std::cerr << "error: cannot write " << csv_out << "\n";
      rc = rc == 0 ? 2 : rc;
    }
  }
  jlie_string_free(report);
  jlie_string_free(csv);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi structures, Hamiltonian vector fields and Lie systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(jlie_version()));

  std::uint64_t seed = 0;
  bool pretty = false;
  app.add_option("--seed", seed, "Seed for the probabilistic zero tests")
      ->envname("JLIE_SEED");
  app.add_flag("--pretty", pretty, "Indent the JSON report");

  std::string manifest_path;
  std::string f_text, g_text, solve_name;
  int max_degree = 2;
  int max_dim = 12;

  auto* check = app.add_subcommand("check", "Test the two compatibility conditions of a manifest's structure pair");
  check->add_option("manifest", manifest_path, "Manifest file")->required();

  auto* bracket = app.add_subcommand("bracket", "Bracket of two functions under the manifest's structure");
  bracket->add_option("manifest", manifest_path, "Manifest file")->required();
  bracket->add_option("-f", f_text, "First function")->required();
  bracket->add_option("-g", g_text, "Second function")->required();

  auto* hamiltonian = app.add_subcommand("hamiltonian", "Field attached to a function, or a function for a named field");
  hamiltonian->add_option("manifest", manifest_path, "Manifest file")->required();
  auto* ham_f = hamiltonian->add_option("-f", f_text, "Function whose field to compute");
  auto* ham_solve = hamiltonian->add_option("--solve", solve_name, "Named manifest field to find a function for");
  hamiltonian->add_option("--max-degree", max_degree, "Polynomial ansatz degree for --solve");
  ham_f->excludes(ham_solve);
  ham_solve->excludes(ham_f);

  auto* closure = app.add_subcommand("closure", "Lie closure of the manifest's fields");
  closure->add_option("manifest", manifest_path, "Manifest file")->required();
  closure->add_option("--max-dim", max_dim, "Give up past this many independent directions");

  auto* com = app.add_subcommand("com", "Constant-of-motion test against the manifest's system");
  com->add_option("manifest", manifest_path, "Manifest file")->required();
  com->add_option("-f", f_text, "Candidate function")->required();
  com->add_option("--max-dim", max_dim, "Closure bound for the fields");

  std::string table_id, alpha_text, bivector_text;
  int r_value = 0;
  int table_degree = -1;
  bool table_all = false;
  auto* table = app.add_subcommand("table", "Verify one class of the planar classification, or the whole table");
  table->add_option("id", table_id, "Class id, P1..P8 or I1..I20");
  table->add_flag("--all", table_all, "Run every class at default parameters");
  auto* opt_alpha = table->add_option("--alpha", alpha_text, "Class parameter, a rational like -1 or 2/3");
  auto* opt_r = table->add_option("--r", r_value, "Series length for the families that take one");
  table->add_option("--max-degree", table_degree, "Hamiltonian ansatz degree override");
  auto* opt_biv = table->add_option("--bivector", bivector_text,
                                    "Coefficient of the plane bivector to verify a Poisson row with");

  std::string system_name, a0, a1, a2, b1, b2, b3, com_expr, out_path;
  std::vector<std::string> b_list;
  std::vector<double> x0, sup;
  double t0 = 0.0, t1 = 1.0, step = 1e-3;
  auto* integrate = app.add_subcommand("integrate", "Integrate a built-in or manifest system");
  integrate->add_option("--system", system_name, "riccati, heisenberg, sl2 or manifest")->required();
  integrate->add_option("--manifest", manifest_path, "Manifest file for --system manifest");
  auto* opt_a0 = integrate->add_option("--a0", a0, "Constant-term coefficient, an expression in t");
  auto* opt_a1 = integrate->add_option("--a1", a1, "Linear-term coefficient, an expression in t");
  auto* opt_a2 = integrate->add_option("--a2", a2, "Quadratic-term coefficient, an expression in t");
  auto* opt_b1 = integrate->add_option("--b1", b1, "First coefficient, an expression in t");
  auto* opt_b2 = integrate->add_option("--b2", b2, "Second coefficient, an expression in t");
  auto* opt_b3 = integrate->add_option("--b3", b3, "Third coefficient, an expression in t");
  auto* opt_b = integrate->add_option("--b", b_list, "Coefficients for a manifest system")->delimiter(',');
  integrate->add_option("--x0", x0, "Start point, comma separated")->required()->delimiter(',');
  integrate->add_option("--t0", t0, "Start time");
  integrate->add_option("--t1", t1, "End time");
  integrate->add_option("--step", step, "Step size");
  auto* opt_com = integrate->add_option("--com", com_expr, "Report the drift of this function along the trajectory");
  auto* opt_sup = integrate->add_option("--superposition", sup,
                                        "x2,x3,k: two more start points and a mixing constant")
                      ->delimiter(',');
  integrate->add_option("--out", out_path, "Write the trajectory CSV here");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  // Flag and usage problems from the parser share the schema-error exit code.
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  ordered_json args;
  args["seed"] = seed;
  int rc = 0;
  std::string csv_out;

  if (app.got_subcommand(check)) {
    if (!attach_manifest(args, manifest_path, pretty, rc)) return rc;
    return run("check", args, pretty, "");
  }
  if (app.got_subcommand(bracket)) {
    if (!attach_manifest(args, manifest_path, pretty, rc)) return rc;
    args["f"] = f_text;
    args["g"] = g_text;
    return run("bracket", args, pretty, "");
  }
  if (app.got_subcommand(hamiltonian)) {
    if (!attach_manifest(args, manifest_path, pretty, rc)) return rc;
    if (*ham_f) args["f"] = f_text;
    if (*ham_solve) {
      args["solve"] = solve_name;
      args["max_degree"] = max_degree;
    }
    return run("hamiltonian", args, pretty, "");
  }
  if (app.got_subcommand(closure)) {
    if (!attach_manifest(args, manifest_path, pretty, rc)) return rc;
    args["max_dim"] = max_dim;
    return run("closure", args, pretty, "");
  }
  if (app.got_subcommand(com)) {
    if (!attach_manifest(args, manifest_path, pretty, rc)) return rc;
    args["f"] = f_text;
    args["max_dim"] = max_dim;
    return run("com", args, pretty, "");
  }
  if (app.got_subcommand(table)) {
    if (table_all)
      args["all"] = true;
    else
      args["id"] = table_id;
    if (*opt_alpha) args["alpha"] = alpha_text;
    if (*opt_r) args["r"] = r_value;
    if (table_degree >= 0) args["max_degree"] = table_degree;
    if (*opt_biv) args["bivector"] = bivector_text;
    return run("table", args, pretty, "");
  }
  if (app.got_subcommand(integrate)) {
    args["system"] = system_name;
    if (system_name == "manifest") {
      if (!attach_manifest(args, manifest_path, pretty, rc)) return rc;
      args["b"] = b_list;
    } else {
      if (*opt_a0) args["a0"] = a0;
      if (*opt_a1) args["a1"] = a1;
      if (*opt_a2) args["a2"] = a2;
      if (*opt_b1) args["b1"] = b1;
      if (*opt_b2) args["b2"] = b2;
      if (*opt_b3) args["b3"] = b3;
    }
    args["x0"] = x0;
    args["t0"] = t0;
    args["t1"] = t1;
    args["step"] = step;
    if (*opt_com) args["com"] = com_expr;
    if (*opt_sup) {
      if (sup.size() != 3)
        return usage_error("--superposition takes exactly x2,x3,k", pretty);
      args["superposition"] = ordered_json{{"x2", sup[0]}, {"x3", sup[1]}, {"k", sup[2]}};
    }
    csv_out = out_path;
    return run("integrate", args, pretty, csv_out);
  }
  return usage_error("no command", pretty);
}
