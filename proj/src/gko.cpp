#include "jlie/gko.hpp"

#include <algorithm>
#include <cstdlib>

#include "jlie/errors.hpp"

namespace jlie {

namespace detail {
extern const char* const kGKOTableJson;
}

namespace {

using nlohmann::ordered_json;

// {alpha} substitutes parenthesized (it may be negative or fractional and land
// inside a product); {r} and {k} are nonnegative integers and substitute bare,
// which keeps them legal in exponent position.
std::string substitute(std::string text, const std::optional<Rational>& alpha,
                       std::optional<int> r, std::optional<int> k, bool parenthesize_alpha) {
  auto replace_all = [&text](const std::string& key, const std::string& value) {
    for (std::size_t pos = text.find(key); pos != std::string::npos;
         pos = text.find(key, pos)) {
      text.replace(pos, key.size(), value);
      pos += value.size();
    }
  };
  if (alpha) {
    std::string a = to_string(*alpha);
    replace_all("{alpha}", parenthesize_alpha ? "(" + a + ")" : a);
  }
  if (r) replace_all("{r}", std::to_string(*r));
  if (k) replace_all("{k}", std::to_string(*k));
  if (text.find('{') != std::string::npos)
    throw ParseError("unresolved placeholder in registry template: " + text);
  return text;
}

// Series bounds may be written as an integer, "r" or "r-1".
int eval_series_bound(const ordered_json& j, int r) {
  if (j.is_number_integer()) return j.get<int>();
  if (!j.is_string()) throw ParseError("registry series bound must be an integer or r-form");
  const std::string s = j.get<std::string>();
  if (s == "r") return r;
  if (s == "r-1") return r - 1;
  throw ParseError("unsupported registry series bound: " + s);
}

BasisCombo resolve_combo(const ordered_json& j, const std::optional<Rational>& alpha,
                         std::optional<int> r) {
  BasisCombo combo;
  for (const auto& [key, value] : j.items()) {
    int index = std::atoi(key.c_str());
    Rational coeff = rational_from_string(
        substitute(value.get<std::string>(), alpha, r, std::nullopt, false));
    combo.emplace_back(index, coeff);
  }
  return combo;
}

MultiVector combo_field(const VGAlgebra& v, const BasisCombo& combo, const char* label) {
  if (combo.empty())
    throw InvalidArgumentError(std::string("witness field ") + label + " has no terms");
  MultiVector acc(v.chart, 1);
  for (const auto& [index, coeff] : combo) {
    if (index < 0 || index >= v.dim())
      throw InvalidArgumentError(std::string("witness field ") + label +
                                 " references basis index " + std::to_string(index) +
                                 " outside 0.." + std::to_string(v.dim() - 1));
    acc = acc + v.basis[index] * Expr::constant(v.chart, coeff);
  }
  return acc;
}

ObstructionCertificate make_certificate(std::string name, std::string requirement,
                                        ZeroVerdict verdict) {
  ObstructionCertificate cert;
  cert.name = std::move(name);
  cert.requirement = std::move(requirement);
  cert.verdict = verdict;
  return cert;
}

bool all_hold(const std::vector<ObstructionCertificate>& certs) {
  return std::all_of(certs.begin(), certs.end(),
                     [](const ObstructionCertificate& c) { return c.holds_proven(); });
}

const char* kScopeNote =
    "rules out every Jacobi structure whose bivector and Reeb field are both "
    "nonzero; structures with a zero tensor are classified separately";

std::vector<ObstructionCertificate> proportional_pair_certificates(const MultiVector& x1,
                                                       const MultiVector& x2,
                                                       std::uint64_t seed) {
  std::vector<ObstructionCertificate> certs;
  certs.push_back(make_certificate("x1_nonzero", "nonzero", x1.is_zero(seed)));
  certs.push_back(make_certificate("x2_nonzero", "nonzero", x2.is_zero(seed)));
  certs.push_back(
      make_certificate("bracket_reproduces_x1", "zero", (lie_bracket(x1, x2) - x1).is_zero(seed)));
  certs.push_back(make_certificate("wedge_vanishes", "zero", wedge(x1, x2).is_zero(seed)));
  return certs;
}

}  // namespace

bool ObstructionCertificate::holds_proven() const {
  if (requirement == "zero") return verdict.status == ZeroStatus::ProvenZero;
  return verdict.status == ZeroStatus::ProvenNonzero;
}

ordered_json ObstructionCertificate::to_json() const {
  return ordered_json{{"name", name}, {"requires", requirement},
                      {"status", verdict.name()}, {"holds", holds_proven()}};
}

ordered_json ObstructionVerdict::to_json() const {
  ordered_json j;
  switch (status) {
    case Status::ProportionalPair: j["status"] = "fires_proportional_pair"; break;
    case Status::DilationTriple: j["status"] = "fires_dilation_triple"; break;
    case Status::Inconclusive: j["status"] = "inconclusive"; break;
  }
  if (alpha) j["alpha"] = to_string(*alpha);
  ordered_json certs = ordered_json::array();
  for (const auto& c : certificates) certs.push_back(c.to_json());
  j["certificates"] = std::move(certs);
  j["statement"] = statement;
  return j;
}

ObstructionVerdict proportional_pair_check(const VGAlgebra& v,
                               const std::optional<std::pair<BasisCombo, BasisCombo>>& witness,
                               std::uint64_t seed) {
  ObstructionVerdict out;
  if (witness) {
    MultiVector x1 = combo_field(v, witness->first, "x1");
    MultiVector x2 = combo_field(v, witness->second, "x2");
    out.certificates = proportional_pair_certificates(x1, x2, seed);
    if (all_hold(out.certificates)) {
      out.status = ObstructionVerdict::Status::ProportionalPair;
      out.statement = std::string("the pair (x1, x2) satisfies [x1,x2] = x1 with "
                                  "x1 ^ x2 = 0, which ") + kScopeNote;
    } else {
      out.statement = "the proposed pair does not satisfy the detector hypotheses "
                      "with proven certificates";
    }
    return out;
  }

  // Bounded search: x1 = X_i, x2 = c X_j over ordered basis pairs, with the
  // scale c running over rationals with numerator and denominator up to 3.
  static const Rational kScales[] = {
      Rational(1),      Rational(-1),     Rational(2),      Rational(-2),
      Rational(3),      Rational(-3),     Rational(1, 2),   Rational(-1, 2),
      Rational(1, 3),   Rational(-1, 3),  Rational(2, 3),   Rational(-2, 3),
      Rational(3, 2),   Rational(-3, 2)};
  for (int i = 0; i < v.dim(); ++i) {
    for (int j = 0; j < v.dim(); ++j) {
      if (i == j) continue;
      if (wedge(v.basis[i], v.basis[j]).is_zero(seed).status != ZeroStatus::ProvenZero)
        continue;
      MultiVector bracket = lie_bracket(v.basis[i], v.basis[j]);
      for (const Rational& c : kScales) {
        MultiVector x2 = v.basis[j] * Expr::constant(v.chart, c);
        MultiVector residual = bracket * Expr::constant(v.chart, c) - v.basis[i];
        if (residual.is_zero(seed).status != ZeroStatus::ProvenZero) continue;
        auto certs = proportional_pair_certificates(v.basis[i], x2, seed);
        if (!all_hold(certs)) continue;
        out.status = ObstructionVerdict::Status::ProportionalPair;
        out.certificates = std::move(certs);
        out.statement = "found x1 = X" + std::to_string(i + 1) + ", x2 = " + to_string(c) +
                        " X" + std::to_string(j + 1) + " with [x1,x2] = x1 and x1 ^ x2 = 0, which " +
                        kScopeNote;
        return out;
      }
    }
  }
  out.statement = "bounded search over scaled basis pairs (scale numerator and "
                  "denominator up to 3) found no proportional pair; no conclusion";
  return out;
}

ObstructionVerdict dilation_triple_check(const VGAlgebra& v, const BasisCombo& y1, const BasisCombo& y2,
                               const BasisCombo& y3, const Rational& alpha, std::uint64_t seed) {
  if (alpha == Rational(0) || alpha == Rational(-1))
    throw InvalidArgumentError("the dilation detector requires alpha outside {0, -1}");
  MultiVector f1 = combo_field(v, y1, "y1");
  MultiVector f2 = combo_field(v, y2, "y2");
  MultiVector f3 = combo_field(v, y3, "y3");

  ObstructionVerdict out;
  out.alpha = alpha;
  out.certificates.push_back(
      make_certificate("y1_y2_commute", "zero", lie_bracket(f1, f2).is_zero(seed)));
  out.certificates.push_back(
      make_certificate("y3_scales_y1", "zero", (lie_bracket(f1, f3) - f1).is_zero(seed)));
  out.certificates.push_back(make_certificate(
      "y3_scales_y2_by_alpha", "zero",
      (lie_bracket(f2, f3) - f2 * Expr::constant(v.chart, alpha)).is_zero(seed)));
  out.certificates.push_back(
      make_certificate("y1_y2_independent", "nonzero", wedge(f1, f2).is_zero(seed)));
  if (all_hold(out.certificates)) {
    out.status = ObstructionVerdict::Status::DilationTriple;
    out.statement = "the triple (y1, y2, y3) spans a dilation algebra of weight " +
                    to_string(alpha) + " on an independent pair, which " + kScopeNote;
  } else {
    out.statement = "the proposed triple does not satisfy the detector hypotheses "
                    "with proven certificates";
  }
  return out;
}

const char* gko_outcome_name(GKOOutcome o) {
  switch (o) {
    case GKOOutcome::Poisson: return "Poisson";
    case GKOOutcome::ReebOnly: return "ReebOnly";
    case GKOOutcome::No: return "No";
    case GKOOutcome::NoAsserted: return "NoAsserted";
  }
  return "?";
}

const GKORegistry& GKORegistry::builtin() {
  static const GKORegistry reg = from_json_text(detail::kGKOTableJson, true);
  return reg;
}

GKORegistry GKORegistry::from_json_text(const std::string& text, bool verify_witnesses) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("registry JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("chart") || !doc.contains("classes"))
    throw ParseError("registry JSON must carry chart and classes");

  GKORegistry reg;
  std::vector<std::string> coords = doc["chart"].get<std::vector<std::string>>();
  reg.chart_ = Chart::make(coords, "plane");

  for (const auto& row : doc["classes"]) {
    GKOClass c;
    c.id_ = row.at("id").get<std::string>();
    c.algebra_ = row.at("algebra").get<std::string>();
    if (row.contains("alpha")) {
      c.has_alpha_ = true;
      c.alpha_default_ = rational_from_string(row["alpha"].at("default").get<std::string>());
      if (row["alpha"].contains("constraint"))
        c.alpha_constraint_ = row["alpha"]["constraint"].get<std::string>();
    }
    if (row.contains("r")) {
      c.has_r_ = true;
      c.r_default_ = row["r"].at("default").get<int>();
    }
    c.dim_base_ = row.at("dim").at("base").get<int>();
    c.dim_per_r_ = row["dim"].value("per_r", 0);
    c.basis_ = row.at("basis");
    if (row.contains("series")) c.series_ = row["series"];
    c.cases_ = row.at("cases");
    if (!c.cases_.is_array() || c.cases_.empty())
      throw ParseError("registry row " + c.id_ + " carries no verdict cases");
    if (reg.index_.count(c.id_)) throw ParseError("duplicate registry id " + c.id_);
    reg.index_[c.id_] = static_cast<int>(reg.rows_.size());
    reg.rows_.push_back(std::move(c));
  }

  if (verify_witnesses) {
    for (const auto& row : reg.rows_) {
      GKOResolvedVerdict rv = reg.verdict_for(row.id_, {});
      if (rv.outcome != GKOOutcome::No || !rv.witness) continue;
      VGAlgebra v = reg.instantiate(row.id_, {});
      ObstructionVerdict ov;
      if (rv.witness->kind == GKOWitnessSpec::Kind::ProportionalPair) {
        ov = proportional_pair_check(v, std::make_pair(rv.witness->x1, rv.witness->x2));
      } else {
        ov = dilation_triple_check(v, rv.witness->x1, rv.witness->x2, rv.witness->x3,
                         rv.witness->alpha);
      }
      if (!ov.fires())
        throw InternalError("registry witness for " + row.id_ +
                            " failed verification at load");
    }
  }
  return reg;
}

std::vector<std::string> GKORegistry::ids() const {
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.id_);
  return out;
}

const GKOClass& GKORegistry::at(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InvalidArgumentError("unknown class id: " + id);
  return rows_[it->second];
}

const GKOClass& GKORegistry::entry(const std::string& id) const { return at(id); }

namespace {

// Validated (alpha, r) for a row, defaults filled in.
struct ResolvedParams {
  std::optional<Rational> alpha;
  std::optional<int> r;
};

ResolvedParams resolve_params(const GKOClass& c, const GKOParams& params) {
  ResolvedParams out;
  if (params.alpha && !c.has_alpha())
    throw InvalidArgumentError("class " + c.id() + " has no parameter alpha");
  if (params.r && !c.has_r())
    throw InvalidArgumentError("class " + c.id() + " has no parameter r");
  if (c.has_alpha()) out.alpha = params.alpha.value_or(c.default_alpha());
  if (c.has_r()) out.r = params.r.value_or(c.default_r());
  if (out.r && *out.r < 1)
    throw InvalidArgumentError("class " + c.id() + " requires r >= 1");
  if (out.alpha) {
    // Constraints mirror the documented parameter ranges of the table rows.
    if (c.id() == "P1" && *out.alpha < 0)
      throw InvalidArgumentError("class P1 requires alpha >= 0");
    if (c.id() == "I8") {
      Rational a = *out.alpha;
      if (a == 0 || a < Rational(-1) || a > Rational(1))
        throw InvalidArgumentError("class I8 requires 0 < |alpha| <= 1");
    }
  }
  return out;
}

}  // namespace

VGAlgebra GKORegistry::instantiate(const std::string& id, const GKOParams& params) const {
  const GKOClass& c = at(id);
  ResolvedParams rp = resolve_params(c, params);
  const Chart& chart = *chart_;

  std::vector<MultiVector> fields;
  for (const auto& spec : c.basis_) {
    MultiVector f(chart, 1);
    for (const auto& [key, value] : spec.items()) {
      int dir = std::atoi(key.c_str());
      if (dir < 0 || dir >= chart.dim())
        throw ParseError("registry row " + id + " uses component index " + key);
      f.add_term({dir}, Expr::parse(chart, substitute(value.get<std::string>(), rp.alpha,
                                                      rp.r, std::nullopt, true)));
    }
    fields.push_back(std::move(f));
  }
  if (!c.series_.is_null()) {
    for (const auto& s : c.series_) {
      int component = s.at("component").get<int>();
      std::string coeff = s.at("coeff").get<std::string>();
      int from = eval_series_bound(s.at("from"), rp.r.value_or(1));
      int to = eval_series_bound(s.at("to"), rp.r.value_or(1));
      for (int k = from; k <= to; ++k) {
        MultiVector f(chart, 1);
        f.add_term({component}, Expr::parse(chart, substitute(coeff, rp.alpha, rp.r, k, true)));
        fields.push_back(std::move(f));
      }
    }
  }

  int expected = c.dim_for(rp.r.value_or(0));
  ClosureResult res = lie_closure(fields, expected);
  if (!res.closed() || res.algebra->dim() != expected)
    throw InternalError("registry row " + id + " did not close at its documented dimension " +
                        std::to_string(expected));
  return std::move(*res.algebra);
}

GKOResolvedVerdict GKORegistry::verdict_for(const std::string& id, const GKOParams& params) const {
  const GKOClass& c = at(id);
  ResolvedParams rp = resolve_params(c, params);

  const ordered_json* selected = nullptr;
  for (const auto& entry : c.cases_) {
    if (entry.contains("when_alpha")) {
      if (!rp.alpha) throw ParseError("registry row " + id + " matches on a missing alpha");
      if (*rp.alpha != rational_from_string(entry["when_alpha"].get<std::string>())) continue;
    }
    selected = &entry;
    break;
  }
  if (!selected) throw ParseError("registry row " + id + " has no matching verdict case");

  GKOResolvedVerdict out;
  std::string verdict = selected->at("verdict").get<std::string>();
  if (verdict == "Poisson") {
    out.outcome = GKOOutcome::Poisson;
  } else if (verdict == "ReebOnly") {
    out.outcome = GKOOutcome::ReebOnly;
    out.reeb_direction = selected->at("reeb").get<int>();
  } else if (verdict == "NoAsserted") {
    out.outcome = GKOOutcome::NoAsserted;
  } else if (verdict == "No") {
    out.outcome = GKOOutcome::No;
    if (selected->contains("witness")) {
      const ordered_json& w = selected->at("witness");
      GKOWitnessSpec spec;
      if (!w.contains("detector") || !w.at("detector").is_string())
        throw ParseError("registry row " + id + " witness lacks a detector name");
      const std::string detector = w.at("detector").get<std::string>();
      if (detector == "proportional_pair") {
        spec.kind = GKOWitnessSpec::Kind::ProportionalPair;
        spec.x1 = resolve_combo(w.at("x1"), rp.alpha, rp.r);
        spec.x2 = resolve_combo(w.at("x2"), rp.alpha, rp.r);
      } else if (detector == "dilation_triple") {
        spec.kind = GKOWitnessSpec::Kind::DilationTriple;
        spec.x1 = resolve_combo(w.at("y1"), rp.alpha, rp.r);
        spec.x2 = resolve_combo(w.at("y2"), rp.alpha, rp.r);
        spec.x3 = resolve_combo(w.at("y3"), rp.alpha, rp.r);
        spec.alpha = rational_from_string(
            substitute(w.at("alpha").get<std::string>(), rp.alpha, rp.r, std::nullopt, false));
      } else {
        throw ParseError("registry row " + id + " names an unknown detector");
      }
      out.witness = std::move(spec);
    }
  } else {
    throw ParseError("registry row " + id + " carries unknown verdict " + verdict);
  }
  return out;
}

ordered_json GKORegistry::verify(const std::string& id, const GKOParams& params,
                                 int max_degree, std::uint64_t seed) const {
  const GKOClass& c = at(id);
  ResolvedParams rp = resolve_params(c, params);
  VGAlgebra v = instantiate(id, params);
  GKOResolvedVerdict rv = verdict_for(id, params);

  ordered_json report;
  report["id"] = id;
  report["algebra"] = c.algebra_name();
  ordered_json pj = ordered_json::object();
  if (rp.alpha) pj["alpha"] = to_string(*rp.alpha);
  if (rp.r) pj["r"] = *rp.r;
  report["parameters"] = std::move(pj);
  report["dim"] = v.dim();
  report["recorded_verdict"] = gko_outcome_name(rv.outcome);

  ordered_json checks = ordered_json::array();
  checks.push_back(ordered_json{{"name", "closure_at_documented_dimension"},
                                {"verdict", "pass"},
                                {"certainty", v.probabilistic ? "probabilistic" : "exact"}});

  int degree_bound = max_degree >= 0 ? max_degree : rp.r.value_or(0) + 2;
  bool failed = false;
  std::string conclusion;

  switch (rv.outcome) {
    case GKOOutcome::ReebOnly: {
      MultiVector reeb(v.chart, 1);
      reeb.add_term({*rv.reeb_direction}, Expr::one(v.chart));
      JacobiStructure j = JacobiStructure::check_jacobi(MultiVector(v.chart, 2), reeb, seed);
      auto lifts = is_hamiltonian_algebra(j, v, degree_bound);
      ordered_json lifted = ordered_json::array();
      bool all = true;
      for (std::size_t i = 0; i < lifts.size(); ++i) {
        if (!lifts[i]) { all = false; continue; }
        lifted.push_back(ordered_json{{"field", v.basis[i].print()},
                                      {"hamiltonian", lifts[i]->print()}});
      }
      checks.push_back(ordered_json{{"name", "hamiltonian_lift_under_reeb_structure"},
                                    {"verdict", all ? "pass" : "fail"},
                                    {"certainty", "proven"},
                                    {"reeb_field", reeb.print()},
                                    {"lifts", std::move(lifted)}});
      failed = !all;
      conclusion = all ? "every basis field lifts through the pure Reeb structure"
                       : "a basis field failed to lift at the selected degree bound";
      break;
    }
    case GKOOutcome::No: {
      if (!rv.witness) {
        checks.push_back(ordered_json{{"name", "obstruction_witness"},
                                      {"verdict", "fail"},
                                      {"certainty", "exact"},
                                      {"note", "row records No but stores no witness"}});
        failed = true;
        conclusion = "no stored witness to run";
        break;
      }
      ObstructionVerdict ov;
      if (rv.witness->kind == GKOWitnessSpec::Kind::ProportionalPair) {
        ov = proportional_pair_check(v, std::make_pair(rv.witness->x1, rv.witness->x2), seed);
      } else {
        ov = dilation_triple_check(v, rv.witness->x1, rv.witness->x2, rv.witness->x3,
                         rv.witness->alpha, seed);
      }
      checks.push_back(ordered_json{{"name", "obstruction_witness_fires"},
                                    {"verdict", ov.fires() ? "pass" : "fail"},
                                    {"certainty", ov.fires() ? "proven" : "inconclusive"},
                                    {"detector", ov.to_json()}});
      failed = !ov.fires();
      conclusion = ov.fires() ? ov.statement : "stored witness did not fire";
      break;
    }
    case GKOOutcome::Poisson: {
      if (!params.poisson_bivector) {
        checks.push_back(ordered_json{{"name", "poisson_status"},
                                      {"verdict", "asserted"},
                                      {"certainty", "asserted"},
                                      {"note", "bivector external to the registry; supply one "
                                               "to verify the lift"}});
        conclusion = "recorded as Poisson; not machine-checked without a bivector";
        break;
      }
      const MultiVector& biv = *params.poisson_bivector;
      if (biv.chart() != v.chart || biv.degree() != 2)
        throw InvalidArgumentError("poisson_bivector must be a bivector on the registry chart");
      JacobiStructure j = JacobiStructure::check_jacobi(biv, MultiVector(v.chart, 1), seed);
      bool usable = j.usable();
      checks.push_back(ordered_json{
          {"name", "poisson_structure_usable"},
          {"verdict", usable ? "pass" : "fail"},
          {"certainty", j.verified().bracket_condition.proven() ? "proven" : "probabilistic"}});
      if (!usable) {
        failed = true;
        conclusion = "supplied bivector is not Poisson";
        break;
      }
      auto lifts = is_hamiltonian_algebra(j, v, degree_bound);
      ordered_json lifted = ordered_json::array();
      bool all = true;
      for (std::size_t i = 0; i < lifts.size(); ++i) {
        if (!lifts[i]) { all = false; continue; }
        lifted.push_back(ordered_json{{"field", v.basis[i].print()},
                                      {"hamiltonian", lifts[i]->print()}});
      }
      checks.push_back(ordered_json{{"name", "hamiltonian_lift_under_poisson_bivector"},
                                    {"verdict", all ? "pass" : "fail"},
                                    {"certainty", "proven"},
                                    {"lifts", std::move(lifted)}});
      failed = !all;
      conclusion = all ? "every basis field lifts through the supplied Poisson structure"
                       : "a basis field failed to lift at the selected degree bound";
      break;
    }
    case GKOOutcome::NoAsserted: {
      checks.push_back(ordered_json{{"name", "asserted_exclusion"},
                                    {"verdict", "asserted"},
                                    {"certainty", "asserted"},
                                    {"note", "recorded as not Hamiltonian by the classification; "
                                             "outside both machine detectors"}});
      conclusion = "recorded as No; asserted, not machine-checked";
      break;
    }
  }

  report["checks"] = std::move(checks);
  report["conclusion"] = failed ? "recorded verdict NOT reproduced: " + conclusion : conclusion;
  report["reproduced"] = !failed;
  return report;
}

}  // namespace jlie
