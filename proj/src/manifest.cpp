#include "jlie/manifest.hpp"

#include <fstream>
#include <sstream>

#include "jlie/errors.hpp"

namespace jlie {

namespace {

Chart chart_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("manifest 'chart' must be a nonempty array of names");
  std::vector<std::string> coords;
  coords.reserve(j.size());
  for (const auto& c : j) {
    if (!c.is_string()) throw ParseError("chart coordinate names must be strings");
    coords.push_back(c.get<std::string>());
  }
  return Chart::make(std::move(coords));
}

MultiVector structure_part(const nlohmann::ordered_json& j, const char* key,
                           const Chart& chart, int degree) {
  if (!j.contains(key)) return MultiVector(chart, degree);
  MultiVector m = MultiVector::from_json(chart, j.at(key));
  if (m.degree() != degree)
    throw ParseError(std::string("manifest '") + key + "' must have degree " +
                     std::to_string(degree));
  return m;
}

}  // namespace

Manifest Manifest::from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ParseError("manifest must be a JSON object");
  if (!j.contains("chart")) throw ParseError("manifest is missing 'chart'");
  Chart chart = chart_from_json(j.at("chart"));

  Manifest m{std::string(), chart, structure_part(j, "lambda", chart, 2),
             structure_part(j, "reeb", chart, 1), {}, {}, std::nullopt};
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw ParseError("manifest 'name' must be a string");
    m.name = j.at("name").get<std::string>();
  }
  if (j.contains("note")) {
    if (!j.at("note").is_string()) throw ParseError("manifest 'note' must be a string");
    m.note = j.at("note").get<std::string>();
  }
  if (j.contains("fields")) {
    const auto& fields = j.at("fields");
    if (!fields.is_object()) throw ParseError("manifest 'fields' must be an object");
    for (auto it = fields.begin(); it != fields.end(); ++it) {
      MultiVector f = MultiVector::from_json(chart, it.value());
      if (f.degree() != 1)
        throw ParseError("manifest field '" + it.key() + "' must have degree 1");
      m.fields.emplace_back(it.key(), std::move(f));
    }
  }
  if (j.contains("functions")) {
    const auto& funcs = j.at("functions");
    if (!funcs.is_object()) throw ParseError("manifest 'functions' must be an object");
    for (auto it = funcs.begin(); it != funcs.end(); ++it) {
      if (!it.value().is_string())
        throw ParseError("manifest function '" + it.key() + "' must be an expression string");
      m.functions.emplace_back(it.key(), Expr::parse(chart, it.value().get<std::string>()));
    }
  }
  return m;
}

Manifest Manifest::from_text(std::string_view text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

nlohmann::ordered_json Manifest::to_json() const {
  nlohmann::ordered_json j;
  if (!name.empty()) j["name"] = name;
  j["chart"] = chart.coords();
  j["lambda"] = lambda.to_json();
  j["reeb"] = reeb.to_json();
  nlohmann::ordered_json fs = nlohmann::ordered_json::object();
  for (const auto& [n, f] : fields) fs[n] = f.to_json();
  j["fields"] = fs;
  nlohmann::ordered_json hs = nlohmann::ordered_json::object();
  for (const auto& [n, h] : functions) hs[n] = h.print();
  j["functions"] = hs;
  if (note) j["note"] = *note;
  return j;
}

const MultiVector* Manifest::field(const std::string& field_name) const {
  for (const auto& [n, f] : fields)
    if (n == field_name) return &f;
  return nullptr;
}

const Expr* Manifest::function(const std::string& function_name) const {
  for (const auto& [n, h] : functions)
    if (n == function_name) return &h;
  return nullptr;
}

std::vector<MultiVector> Manifest::field_list() const {
  std::vector<MultiVector> out;
  out.reserve(fields.size());
  for (const auto& [n, f] : fields) out.push_back(f);
  return out;
}

std::vector<Expr> Manifest::function_list() const {
  std::vector<Expr> out;
  out.reserve(functions.size());
  for (const auto& [n, h] : functions) out.push_back(h);
  return out;
}

}  // namespace jlie
