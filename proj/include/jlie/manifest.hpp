#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jlie/chart.hpp"
#include "jlie/expr.hpp"
#include "jlie/multivector.hpp"

namespace jlie {

// A system description: chart, structure pair, named vector fields and named
// functions, in document order. Schema:
//   {"chart": ["x","y"], "lambda": {<bivector>}, "reeb": {<field>},
//    "fields": {"X1": {<field>}, ...}, "functions": {"h1": "<expr>", ...}}
// plus optional "name" and "note" strings. "lambda"/"reeb" default to zero
// when omitted; "fields"/"functions" default to empty.
struct Manifest {
  std::string name;
  Chart chart;
  MultiVector lambda;
  MultiVector reeb;
  std::vector<std::pair<std::string, MultiVector>> fields;
  std::vector<std::pair<std::string, Expr>> functions;
  std::optional<std::string> note;

  static Manifest from_json(const nlohmann::ordered_json& j);
  // Parses JSON text first; all failures surface as ParseError.
  static Manifest from_text(std::string_view text);
  static Manifest load(const std::string& path);  // reads a file

  nlohmann::ordered_json to_json() const;

  const MultiVector* field(const std::string& field_name) const;
  const Expr* function(const std::string& function_name) const;
  std::vector<MultiVector> field_list() const;
  std::vector<Expr> function_list() const;
};

}  // namespace jlie
