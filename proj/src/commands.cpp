#include "jlie/commands.hpp"

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jlie/errors.hpp"
#include "jlie/gko.hpp"
#include "jlie/jacobi.hpp"
#include "jlie/liesys.hpp"
#include "jlie/manifest.hpp"
#include "jlie/numint.hpp"

namespace jlie {

namespace {

using nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

bool verdict_positive(const std::string& v) { return v == "pass" || v == "asserted"; }

// Inputs echo: everything except the manifest body, which the digest covers.
ordered_json echo_inputs(const ordered_json& args) {
  ordered_json echo = ordered_json::object();
  for (const auto& [key, value] : args.items())
    if (key != "manifest") echo[key] = value;
  return echo;
}

struct ReportBuilder {
  std::string command;
  const ordered_json& args;
  ordered_json report = ordered_json::object();
  ordered_json checks = ordered_json::array();

  ReportBuilder(std::string cmd, const ordered_json& a) : command(std::move(cmd)), args(a) {
    report["command"] = command;
    report["inputs"] = echo_inputs(a);
    report["digest"] = hex64(fnv1a(command + "\x1f" + a.dump()));
  }

  void add_check(const std::string& name, const std::string& verdict,
                 const std::string& certainty, ordered_json extra = {}) {
    ordered_json c;
    c["name"] = name;
    c["verdict"] = verdict;
    c["certainty"] = certainty;
    if (extra.is_object())
      for (const auto& [k, v] : extra.items()) c[k] = v;
    checks.push_back(std::move(c));
  }

  CommandResult finish(std::string csv = "") {
    int code = 0;
    for (const auto& c : checks)
      if (!verdict_positive(c.at("verdict").get<std::string>())) code = 1;
    report["checks"] = checks;
    report["exit"] = code;
    return {std::move(report), code, std::move(csv)};
  }
};

CommandResult usage_failure(const std::string& command, const ordered_json& args,
                            const std::string& message) {
  ordered_json rep;
  rep["command"] = command;
  rep["inputs"] = echo_inputs(args);
  rep["error"] = message;
  rep["exit"] = 2;
  return {std::move(rep), 2, ""};
}

// Argument/schema/parse problems exit 2; anything the checks themselves did
// not intercept (unusable structure mid-operation, a pole, an exhausted
// sampler) exits 1 with the error recorded.
template <typename Body>
CommandResult guarded(const std::string& command, const ordered_json& args, Body body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return usage_failure(command, args, e.what());
  } catch (const InvalidArgumentError& e) {
    return usage_failure(command, args, e.what());
  } catch (const DomainError& e) {
    return usage_failure(command, args, e.what());
  } catch (const nlohmann::json::exception& e) {
    return usage_failure(command, args, std::string("bad argument object: ") + e.what());
  } catch (const Error& e) {
    ordered_json rep;
    rep["command"] = command;
    rep["inputs"] = echo_inputs(args);
    rep["error"] = e.what();
    rep["exit"] = 1;
    return {std::move(rep), 1, ""};
  }
}

std::uint64_t seed_of(const ordered_json& args) { return args.value("seed", 0ull); }

Manifest manifest_of(const ordered_json& args) {
  if (!args.contains("manifest")) throw InvalidArgumentError("a manifest is required");
  return Manifest::from_text(args.at("manifest").get<std::string>());
}

std::string certainty_of(const ZeroVerdict& v) {
  return v.proven() ? "proven" : "probabilistic";
}

// Structure gate shared by bracket/hamiltonian/com: a failed compatibility
// check is a negative result (exit 1), not a usage error.
bool gate_structure(ReportBuilder& rb, const JacobiStructure& j) {
  const Compatibility& comp = j.verified();
  bool ok = j.usable();
  rb.add_check("structure_usable", ok ? "pass" : "fail",
               comp.bracket_condition.proven() && comp.reeb_condition.proven()
                   ? "proven"
                   : "probabilistic",
               ordered_json{{"bivector_bracket", comp.bracket_condition.name()},
                            {"reeb_invariance", comp.reeb_condition.name()}});
  return ok;
}

}  // namespace

CommandResult cmd_check(const ordered_json& args) {
  return guarded("check", args, [&] {
    Manifest m = manifest_of(args);
    JacobiStructure j = JacobiStructure::check_jacobi(m.lambda, m.reeb, seed_of(args));
    ReportBuilder rb("check", args);
    rb.report["structure"] =
        ordered_json{{"chart", m.chart.coords()}, {"lambda", m.lambda.print()},
                     {"reeb", m.reeb.print()}, {"poisson", j.is_poisson()}};
    const Compatibility& comp = j.verified();
    rb.add_check("bivector_bracket_condition",
                 comp.bracket_condition.is_zero() ? "pass" : "fail",
                 certainty_of(comp.bracket_condition),
                 ordered_json{{"status", comp.bracket_condition.name()}});
    rb.add_check("reeb_invariance_condition",
                 comp.reeb_condition.is_zero() ? "pass" : "fail",
                 certainty_of(comp.reeb_condition),
                 ordered_json{{"status", comp.reeb_condition.name()}});
    return rb.finish();
  });
}

CommandResult cmd_bracket(const ordered_json& args) {
  return guarded("bracket", args, [&] {
    Manifest m = manifest_of(args);
    Expr f = Expr::parse(m.chart, args.at("f").get<std::string>());
    Expr g = Expr::parse(m.chart, args.at("g").get<std::string>());
    JacobiStructure j = JacobiStructure::check_jacobi(m.lambda, m.reeb, seed_of(args));
    ReportBuilder rb("bracket", args);
    if (!gate_structure(rb, j)) return rb.finish();
    Expr result = j.bracket(f, g);
    rb.report["result"] = result.print();
    rb.add_check("bracket_computed", "pass", "exact");
    return rb.finish();
  });
}

CommandResult cmd_hamiltonian(const ordered_json& args) {
  return guarded("hamiltonian", args, [&] {
    Manifest m = manifest_of(args);
    const bool forward = args.contains("f");
    const bool inverse = args.contains("solve");
    if (forward == inverse)
      throw InvalidArgumentError("pass exactly one of f (forward map) or solve (inverse)");
    JacobiStructure j = JacobiStructure::check_jacobi(m.lambda, m.reeb, seed_of(args));
    ReportBuilder rb("hamiltonian", args);
    if (!gate_structure(rb, j)) return rb.finish();

    if (forward) {
      Expr f = Expr::parse(m.chart, args.at("f").get<std::string>());
      HamiltonianPair pair = j.hamiltonian_vf(f, seed_of(args));
      rb.report["field"] = pair.field.print();
      rb.report["good"] = pair.good;
      rb.add_check("hamiltonian_field_computed", "pass", "exact");
      return rb.finish();
    }

    const std::string name = args.at("solve").get<std::string>();
    const MultiVector* target = m.field(name);
    if (!target) throw InvalidArgumentError("manifest has no field named " + name);
    const int max_degree = args.value("max_degree", 2);
    std::optional<Expr> h = j.solve_hamiltonian(*target, max_degree);
    if (h) rb.report["hamiltonian"] = h->print();
    rb.add_check("hamiltonian_found", h ? "pass" : "fail", "proven",
                 ordered_json{{"field", name}, {"max_degree", max_degree}});
    return rb.finish();
  });
}

CommandResult cmd_closure(const ordered_json& args) {
  return guarded("closure", args, [&] {
    Manifest m = manifest_of(args);
    const int max_dim = args.value("max_dim", 12);
    ClosureResult res = lie_closure(m.field_list(), max_dim, seed_of(args));
    ReportBuilder rb("closure", args);
    if (res.closed()) {
      rb.report["algebra"] = res.algebra->to_json();
      rb.add_check("closed", "pass",
                   res.algebra->probabilistic ? "probabilistic" : "exact",
                   ordered_json{{"dim", res.algebra->dim()}});
    } else {
      rb.report["reached_dim"] = res.reached_dim;
      rb.add_check("closed", "fail", "exact",
                   ordered_json{{"max_dim", max_dim}, {"reached_dim", res.reached_dim}});
    }
    return rb.finish();
  });
}

CommandResult cmd_com(const ordered_json& args) {
  return guarded("com", args, [&] {
    Manifest m = manifest_of(args);
    Expr f = Expr::parse(m.chart, args.at("f").get<std::string>());
    const std::uint64_t seed = seed_of(args);
    JacobiStructure j = JacobiStructure::check_jacobi(m.lambda, m.reeb, seed);
    ReportBuilder rb("com", args);
    if (!gate_structure(rb, j)) return rb.finish();

    ClosureResult res = lie_closure(m.field_list(), args.value("max_dim", 12), seed);
    if (!res.closed()) {
      rb.add_check("fields_close", "fail", "exact",
                   ordered_json{{"reached_dim", res.reached_dim}});
      return rb.finish();
    }
    rb.add_check("fields_close", "pass",
                 res.algebra->probabilistic ? "probabilistic" : "exact",
                 ordered_json{{"dim", res.algebra->dim()}});

    FunctionAlgebra fa = build_function_algebra(j, *res.algebra, m.function_list(), seed);
    rb.report["function_algebra"] = fa.to_json();
    rb.add_check("function_algebra_built", "pass", "exact");

    ordered_json brackets = ordered_json::array();
    bool constant = true;
    for (const auto& [name, g] : fa.generators) {
      Expr b = j.bracket(f, g);
      ZeroVerdict zv = b.is_zero(seed);
      if (!zv.is_zero()) constant = false;
      brackets.push_back(ordered_json{
          {"generator", name}, {"bracket", b.print()}, {"status", zv.name()}});
    }
    rb.report["generator_brackets"] = std::move(brackets);
    rb.add_check("constant_of_motion", constant ? "pass" : "fail",
                 "probabilistic");
    return rb.finish();
  });
}

CommandResult cmd_table(const ordered_json& args) {
  return guarded("table", args, [&] {
    const GKORegistry& reg = GKORegistry::builtin();
    const bool all = args.value("all", false);
    if (all == args.contains("id"))
      throw InvalidArgumentError("pass a class id or all, not both");

    GKOParams params;
    if (args.contains("alpha"))
      params.alpha = rational_from_string(args.at("alpha").get<std::string>());
    if (args.contains("r")) params.r = args.at("r").get<int>();
    if (args.contains("bivector")) {
      Chart plane = Chart::make({"x", "y"});
      MultiVector biv(plane, 2);
      biv.add_term({0, 1}, Expr::parse(plane, args.at("bivector").get<std::string>()));
      params.poisson_bivector = biv;
    }
    const int max_degree = args.value("max_degree", -1);
    const std::uint64_t seed = seed_of(args);

    ReportBuilder rb("table", args);
    if (all) {
      if (params.alpha || params.r || params.poisson_bivector)
        throw InvalidArgumentError("class parameters apply to a single id, not to all");
      ordered_json rows = ordered_json::array();
      for (const std::string& id : reg.ids()) {
        ordered_json row = reg.verify(id, {}, -1, seed);
        std::string verdict = "pass";
        std::string certainty = "proven";
        for (const auto& c : row.at("checks")) {
          const std::string v = c.at("verdict").get<std::string>();
          if (v == "fail") verdict = "fail";
          else if (v == "asserted" && verdict == "pass") verdict = "asserted";
          const std::string ct = c.at("certainty").get<std::string>();
          if (ct == "asserted") certainty = "asserted";
        }
        rb.add_check(id, verdict, certainty,
                     ordered_json{{"recorded", row.at("recorded_verdict")}});
        rows.push_back(std::move(row));
      }
      rb.report["table"] = std::move(rows);
      return rb.finish();
    }

    const std::string id = args.at("id").get<std::string>();
    ordered_json row = reg.verify(id, params, max_degree, seed);
    for (const auto& c : row.at("checks"))
      rb.add_check(id + "." + c.at("name").get<std::string>(),
                   c.at("verdict").get<std::string>(), c.at("certainty").get<std::string>());
    rb.report["table"] = std::move(row);
    return rb.finish();
  });
}

namespace {

// The three built-in systems plus manifest-supplied fields. Coefficients are
// expressions in t.
TDepVectorField build_system(const ordered_json& args) {
  const std::string system = args.value("system", "");
  Chart tc = Chart::make({"t"});
  auto coeff = [&](const char* key) {
    return Expr::parse(tc, args.value(key, "0"));
  };

  std::vector<MultiVector> fields;
  std::vector<Expr> b;
  if (system == "riccati") {
    Chart c = Chart::make({"x"});
    for (const char* comp : {"1", "x", "x^2"}) {
      MultiVector f(c, 1);
      f.add_term({0}, Expr::parse(c, comp));
      fields.push_back(std::move(f));
    }
    b = {coeff("a0"), coeff("a1"), coeff("a2")};
  } else if (system == "heisenberg") {
    Chart c = Chart::make({"x", "y", "z"});
    MultiVector x1(c, 1), x2(c, 1), x3(c, 1);
    x1.add_term({0}, Expr::one(c));
    x2.add_term({1}, Expr::one(c));
    x2.add_term({2}, Expr::coordinate(c, 0));
    x3.add_term({2}, Expr::one(c));
    fields = {x1, x2, x3};
    b = {coeff("b1"), coeff("b2"), coeff("b3")};
  } else if (system == "sl2") {
    Chart c = Chart::make({"a", "b", "g"});
    MultiVector x1(c, 1), x2(c, 1), x3(c, 1);
    x1.add_term({0}, Expr::parse(c, "a"));
    x1.add_term({1}, Expr::parse(c, "b"));
    x1.add_term({2}, Expr::parse(c, "-g"));
    x2.add_term({0}, Expr::parse(c, "g"));
    x2.add_term({1}, Expr::parse(c, "(1+b*g)/a"));
    x3.add_term({2}, Expr::parse(c, "a"));
    fields = {x1, x2, x3};
    b = {coeff("b1"), coeff("b2"), coeff("b3")};
  } else if (system == "manifest") {
    Manifest m = manifest_of(args);
    fields = m.field_list();
    if (!args.contains("b") || !args.at("b").is_array())
      throw InvalidArgumentError("system manifest needs b, an array of t-coefficients");
    for (const auto& s : args.at("b")) b.push_back(Expr::parse(tc, s.get<std::string>()));
    if (b.size() != fields.size())
      throw InvalidArgumentError("coefficient count does not match the manifest fields");
  } else {
    throw InvalidArgumentError("system must be riccati, heisenberg, sl2 or manifest");
  }

  ClosureResult res = lie_closure(fields, static_cast<int>(fields.size()), seed_of(args));
  if (!res.closed() || res.algebra->dim() != static_cast<int>(fields.size()))
    throw InvalidArgumentError("the system fields must already form a closed algebra");
  return assemble_tdvf(std::move(*res.algebra), std::move(b));
}

}  // namespace

CommandResult cmd_integrate(const ordered_json& args) {
  return guarded("integrate", args, [&] {
    TDepVectorField sys = build_system(args);
    if (!args.contains("x0") || !args.at("x0").is_array())
      throw InvalidArgumentError("x0 must be an array of start coordinates");
    std::vector<double> x0 = args.at("x0").get<std::vector<double>>();
    const double t0 = args.value("t0", 0.0);
    const double t1 = args.value("t1", 1.0);
    const double step = args.value("step", 1e-3);

    ReportBuilder rb("integrate", args);
    Trajectory traj{sys, {}, {}};
    try {
      traj = integrate(sys, x0, t0, t1, step);
    } catch (const PoleError& e) {
      ordered_json extra{{"reason", e.what()}};
      if (e.time()) extra["time"] = *e.time();
      rb.add_check("integration", "fail", "numeric", extra);
      return rb.finish();
    } catch (const EvalError& e) {
      rb.add_check("integration", "fail", "numeric", ordered_json{{"reason", e.what()}});
      return rb.finish();
    }
    rb.report["samples"] = traj.times.size();
    rb.report["final_time"] = traj.times.back();
    rb.report["final_state"] = traj.states.back();
    rb.add_check("integration", "pass", "numeric",
                 ordered_json{{"steps", traj.times.size() - 1}});

    if (args.contains("com")) {
      Expr f = Expr::parse(sys.algebra.chart, args.at("com").get<std::string>());
      rb.report["com_drift"] = com_drift(traj, f);
    }

    if (args.contains("superposition")) {
      if (args.value("system", "") != "riccati")
        throw InvalidArgumentError("the superposition check applies to the riccati system");
      const ordered_json& sup = args.at("superposition");
      std::vector<double> x2{sup.at("x2").get<double>()};
      std::vector<double> x3{sup.at("x3").get<double>()};
      const double k = sup.at("k").get<double>();
      Trajectory s2 = integrate(sys, x2, t0, t1, step);
      Trajectory s3 = integrate(sys, x3, t0, t1, step);
      SuperpositionReport rep = riccati_superposition_check(traj, s2, s3, k);
      rb.report["superposition"] = rep.to_json();
      rb.add_check("superposition_ode_residual",
                   rep.max_ode_residual < 1e-4 ? "pass" : "fail", "numeric",
                   ordered_json{{"value", rep.max_ode_residual}, {"tolerance", 1e-4}});
      rb.add_check("superposition_cross_ratio",
                   rep.cross_ratio_drift < 1e-6 ? "pass" : "fail", "numeric",
                   ordered_json{{"value", rep.cross_ratio_drift}, {"tolerance", 1e-6}});
    }
    return rb.finish(traj.to_csv());
  });
}

CommandResult run_command(const std::string& name, const ordered_json& args) {
  static const std::map<std::string, CommandResult (*)(const ordered_json&)> dispatch = {
      {"check", cmd_check},     {"bracket", cmd_bracket},
      {"hamiltonian", cmd_hamiltonian}, {"closure", cmd_closure},
      {"com", cmd_com},         {"table", cmd_table},
      {"integrate", cmd_integrate}};
  auto it = dispatch.find(name);
  if (it == dispatch.end()) return usage_failure(name, ordered_json::object(), "unknown command");
  return it->second(args);
}

}  // namespace jlie
