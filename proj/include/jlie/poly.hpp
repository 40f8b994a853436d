#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "jlie/rational.hpp"

namespace jlie {

// Exponent vector; size always equals the owning polynomial's variable count.
using Mono = std::vector<std::uint32_t>;

inline std::uint64_t mono_degree(const Mono& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

// Graded lexicographic order: lower total degree first, ties broken so that
// a larger exponent on an earlier variable sorts later (i.e. reverse
// iteration of the map yields the conventional grlex-descending listing).
struct GrlexLess {
  bool operator()(const Mono& a, const Mono& b) const {
    std::uint64_t da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return a.size() < b.size();
  }
};

// Sparse multivariate polynomial over Rational with a fixed variable count.
// Zero coefficients are never stored. The variable ordering is owned by the
// caller (chart coordinates first, then exp-atoms).
class Poly {
 public:
  using Terms = std::map<Mono, Rational, GrlexLess>;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int index);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Zero polynomial reports Rational(0).
  Rational constant_value() const;

  std::uint64_t total_degree() const;   // 0 for the zero polynomial
  std::uint32_t degree_in(int var) const;
  bool uses(int var) const;

  // Leading term under grlex; polynomial must be nonzero.
  const Mono& leading_mono() const;
  const Rational& leading_coeff() const;

  void add_term(const Mono& m, const Rational& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& c) const;
  Poly pow(std::uint32_t k) const;

  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  // Formal partial derivative with respect to one variable (atoms are treated
  // as independent variables at this layer; the chain rule lives in Expr).
  Poly derivative(int var) const;

  // For an atom variable a: sum over terms of coeff * exp_a * mono, i.e. the
  // formal d/d(log a). Used by the chain rule.
  Poly scaled_by_exponent(int var) const;

  // Substitute a rational value for one variable. The variable stays in the
  // ordering (its exponents drop to zero).
  Poly substituted(int var, const Rational& value) const;

  // Reinterpret over a new variable list; map[i] gives the new index of old
  // variable i. Any used variable must be mapped (map entry >= 0).
  Poly remapped(int new_nvars, const std::vector<int>& map) const;

  template <typename T>
  T evaluate(const std::vector<T>& values) const {
    T acc = T(0);
    for (const auto& [m, c] : terms_) {
      T term = coeff_as<T>(c);
      for (int v = 0; v < nvars_; ++v)
        for (std::uint32_t k = 0; k < m[v]; ++k) term *= values[v];
      acc += term;
    }
    return acc;
  }

 private:
  template <typename T>
  static T coeff_as(const Rational& c);

  int nvars_;
  Terms terms_;
};

template <>
inline Rational Poly::coeff_as<Rational>(const Rational& c) { return c; }
template <>
inline double Poly::coeff_as<double>(const Rational& c) { return to_double(c); }
template <>
inline BigFloat Poly::coeff_as<BigFloat>(const Rational& c) { return to_bigfloat(c); }

// Exact division; throws InternalError if d does not divide p.
Poly poly_divexact(const Poly& p, const Poly& d);

// GCD over Q[x1..xn] via primitive pseudo-remainder sequences, normalized to
// integer-primitive form with positive leading coefficient. gcd(0,0) = 0;
// the gcd of anything with a nonzero constant is 1.
Poly poly_gcd(const Poly& a, const Poly& b);

Poly poly_lcm(const Poly& a, const Poly& b);

// Scales so coefficients are coprime integers and the grlex-leading one is
// positive. Returns the factor f such that result = p * f.
Poly poly_make_primitive(const Poly& p, Rational* factor = nullptr);

}  // namespace jlie
