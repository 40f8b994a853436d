#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jlie/chart.hpp"
#include "jlie/poly.hpp"
#include "jlie/rational.hpp"

namespace jlie {

enum class ZeroStatus { ProvenZero, ProvenNonzero, ProbablyZero, ProbablyNonzero };

// Outcome of a zero test. Proven verdicts come from the exact path and are
// only issued for exp-free expressions; Probably* verdicts carry the sample
// count and tolerance of the numeric path, and ProbablyNonzero records the
// witness point.
struct ZeroVerdict {
  ZeroStatus status = ZeroStatus::ProvenZero;
  int samples = 0;
  double tolerance = 0.0;
  std::vector<std::pair<std::string, std::string>> witness;  // coord -> rational
  std::string witness_value;

  bool is_zero() const {
    return status == ZeroStatus::ProvenZero || status == ZeroStatus::ProbablyZero;
  }
  bool is_nonzero() const { return !is_zero(); }
  bool proven() const {
    return status == ZeroStatus::ProvenZero || status == ZeroStatus::ProvenNonzero;
  }
  const char* name() const;

  static ZeroVerdict proven_zero() { return {}; }
};

// Combined verdict for a family of expressions that is zero iff all members
// are: any nonzero member dominates, probabilistic members demote certainty.
ZeroVerdict combine_verdicts(const std::vector<ZeroVerdict>& parts);

// Scalar function on a chart: a quotient of multivariate polynomials over Q
// in the chart coordinates and in exp-atoms exp(u) (u an Expr). Values are
// immutable and always kept in canonical form: numerator and denominator
// relatively reduced, denominator scaled to coprime integer coefficients with
// positive grlex-leading coefficient, unused atoms pruned. Structural
// equality therefore decides function equality for exp-free expressions.
//
// Supported constructions: rationals, coordinates, + - * /, integer powers,
// exp. Division by a structural zero is rejected at construction.
class Expr {
 public:
  static Expr constant(const Chart& chart, const Rational& c);
  static Expr zero(const Chart& chart) { return constant(chart, Rational(0)); }
  static Expr one(const Chart& chart) { return constant(chart, Rational(1)); }
  static Expr coordinate(const Chart& chart, int index);
  static Expr coordinate(const Chart& chart, const std::string& name);

  // Grammar:
  //   expr   := term (("+"|"-") term)*
  //   term   := factor (("*"|"/") factor)*
  //   factor := ["-"] atom ["^" integer]
  //   atom   := rational | ident | "exp" "(" expr ")" | "(" expr ")"
  // Whitespace is insignificant; identifiers must be chart coordinates.
  // Throws ParseError with a position on malformed input.
  static Expr parse(const Chart& chart, std::string_view text);

  const Chart& chart() const { return chart_; }

  bool is_structural_zero() const;
  bool is_exp_free() const;      // no exp-atoms
  bool is_polynomial() const;    // exp-free and denominator 1
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  bool depends_on(int coord) const;
  // Total degree of the numerator; requires is_polynomial().
  std::uint64_t polynomial_degree() const;

  Expr operator-() const;
  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;  // throws DivisionByZeroError
  Expr pow(int k) const;                // k == 0 gives 1

  Expr operator+(const Rational& c) const { return *this + constant(chart_, c); }
  Expr operator-(const Rational& c) const { return *this - constant(chart_, c); }
  Expr operator*(const Rational& c) const { return *this * constant(chart_, c); }

  friend Expr exp(const Expr& u);

  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }

  // Canonical text: numerator and denominator printed with grlex-descending
  // monomials, reduced-fraction coefficients, "/" between them when the
  // denominator is not 1. parse(print(e)) rebuilds e exactly.
  std::string print() const;

  Expr differentiate(int coord) const;
  Expr differentiate(const std::string& coord) const;

  // Exact path; requires an exp-free expression and |point| == dim.
  Rational evaluate_exact(const std::vector<Rational>& point) const;
  // Floating path (exp allowed). Throws PoleError on a vanishing denominator.
  double evaluate(const std::vector<double>& point) const;
  BigFloat evaluate_big(const std::vector<BigFloat>& point) const;

  // Exact verdicts when exp-free; otherwise high-precision evaluation at
  // max(20, 2 * variable count) seeded points in [-2,2]^n avoiding poles,
  // with tolerance 1e-30. Throws EvalError if the resample budget runs out.
  ZeroVerdict is_zero(std::uint64_t seed = 0) const;

  // Internal representation access (used by the bracket and span machinery).
  const Poly& num() const;
  const Poly& den() const;
  int atom_count() const;
  const Expr& atom_arg(int i) const;
  const std::string& atom_key(int i) const;

  // Numerators of the given expressions over one common denominator, all in
  // a single shared variable space (chart coordinates, then merged atoms).
  // Every expression must live on the same chart.
  static std::vector<Poly> numerators_over_common_denominator(
      const std::vector<Expr>& es);

  // Opaque representation types, defined in the implementation file.
  struct Atom;
  struct Impl;

 private:
  Expr(Chart chart, std::shared_ptr<const Impl> impl)
      : chart_(std::move(chart)), impl_(std::move(impl)) {}

  Chart chart_;
  std::shared_ptr<const Impl> impl_;
};

inline Expr operator*(const Rational& c, const Expr& e) { return e * c; }

}  // namespace jlie
