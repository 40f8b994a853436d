#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "jlie/chart.hpp"
#include "jlie/expr.hpp"

namespace jlie {

// Multivector field of one fixed degree p >= 0 on a chart, stored as a sparse
// sum of Expr coefficients over strictly increasing index tuples
// (i1 < ... < ip), each tuple standing for the blade d/dx_{i1} ^ ... ^ d/dx_{ip}.
// Degree 0 is a scalar held under the empty tuple. Zero coefficients are
// never stored, so an identically-zero field has an empty component map and
// structural equality is decided componentwise.
class MultiVector {
 public:
  MultiVector(Chart chart, int degree);

  static MultiVector scalar(const Expr& f);

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }

  // Adds coeff * blade(indices). Indices may come in any order; the entry is
  // sorted into increasing form with the shuffle sign applied. A repeated
  // index contributes nothing.
  void add_term(const std::vector<int>& indices, const Expr& coeff);

  // Coefficient for the given tuple, sign-adjusted if the tuple is given out
  // of order; zero when absent or when an index repeats.
  Expr component(const std::vector<int>& indices) const;

  const std::map<std::vector<int>, Expr>& components() const { return components_; }

  bool is_structural_zero() const { return components_.empty(); }
  // Componentwise zero test combined into one verdict.
  ZeroVerdict is_zero(std::uint64_t seed = 0) const;

  MultiVector operator-() const;
  MultiVector operator+(const MultiVector& o) const;
  MultiVector operator-(const MultiVector& o) const;
  MultiVector operator*(const Expr& f) const;  // scalar multiple

  bool operator==(const MultiVector& o) const;
  bool operator!=(const MultiVector& o) const { return !(*this == o); }

  // "dx^dy - y * dy^dz" style, components in tuple order; "0" when empty.
  std::string print() const;

  // {"degree": p, "components": {"i,j": "<expr>", ...}} with comma-joined
  // index keys (degree 0 uses the empty key).
  nlohmann::ordered_json to_json() const;
  static MultiVector from_json(const Chart& chart, const nlohmann::ordered_json& j);

 private:
  Chart chart_;
  int degree_;
  std::map<std::vector<int>, Expr> components_;
};

// Exterior product; degrees add.
MultiVector wedge(const MultiVector& a, const MultiVector& b);

// Derivation action of a vector field on a function: X f.
Expr apply(const MultiVector& x, const Expr& f);

// Contraction with an exact one-form: (i_df P), degree p -> p - 1.
// The first slot is filled, so on a bivector this yields the field
// sum_{i<j} P^{ij} ((d_i f) d_j - (d_j f) d_i). Degree 0 contracts to zero.
MultiVector contract_with_df(const MultiVector& p, const Expr& f);

// Commutator of two vector fields (degree 1 each).
MultiVector lie_bracket(const MultiVector& x, const MultiVector& y);

// Graded bracket on multivector fields, degree (p, q) -> p + q - 1. On
// decomposables X1^...^Xp, Y1^...^Yq it is
//   (-1)^(p+1) sum_{i,j} (-1)^(i+j) [Xi,Yj] ^ X1..^(no Xi)..Xp ^ Y1..^(no Yj)..Yq,
// which restricts to the Lie bracket on vector fields and satisfies
// [Q,P] = (-1)^(pq) [P,Q] and the graded Leibniz rule over the wedge.
// A degree-0 argument contracts into the other: [f, P] = [P, f] = i_df P,
// and [f, g] is the zero scalar.
MultiVector schouten(const MultiVector& p, const MultiVector& q);

}  // namespace jlie
