#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jlie/chart.hpp"
#include "jlie/expr.hpp"
#include "jlie/jacobi.hpp"
#include "jlie/multivector.hpp"
#include "jlie/rational.hpp"

namespace jlie {

// Finite-dimensional Lie algebra of vector fields with a fixed ordered basis
// X_1..X_r and exact structure constants, [X_i, X_j] = sum_k c_ijk X_k.
//
// c(i,j,k) = -c(j,i,k) always holds, and for every pair the residual
// [X_i,X_j] - sum_k c_ijk X_k is structurally zero: the constants are found
// either by exact monomial matching (polynomial coefficients) or by solving
// at sampled points, but in both cases the expansion is re-checked
// symbolically before it is accepted. `probabilistic` records that some
// independence decision rested on point sampling rather than on monomial
// algebra.
struct VGAlgebra {
  Chart chart;
  std::vector<MultiVector> basis;
  bool probabilistic = false;

  int dim() const { return static_cast<int>(basis.size()); }
  const Rational& c(int i, int j, int k) const;

  // {"i,j,k": "p/q"} over nonzero entries, plus the basis fields.
  nlohmann::ordered_json to_json() const;

  std::vector<std::vector<std::vector<Rational>>> structure_constants;
};

// lie_closure outcome: either a closed algebra or evidence that the closure
// grew past max_dim (the generated algebra may be infinite-dimensional).
struct ClosureResult {
  enum class Verdict { Closed, ExceedsBound };
  Verdict verdict = Verdict::Closed;
  std::optional<VGAlgebra> algebra;  // set exactly when verdict == Closed
  int reached_dim = 0;               // independent directions found when we stopped

  bool closed() const { return verdict == Verdict::Closed; }
};

// Iteratively brackets an independent spanning set of the given fields until
// no new directions appear or the basis would outgrow max_dim.
ClosureResult lie_closure(const std::vector<MultiVector>& fields, int max_dim = 12,
                          std::uint64_t seed = 0);

// Runs the polynomial Hamiltonian solver on each basis element. A full list
// of values certifies that the algebra acts by Hamiltonian fields; a nullopt
// entry only means the ansatz degree was too small, never a disproof.
std::vector<std::optional<Expr>> is_hamiltonian_algebra(const JacobiStructure& j,
                                                        const VGAlgebra& v, int max_degree);

// Time-dependent field sum_i b_i(t) X_i with coefficients on a 1-dim chart.
struct TDepVectorField {
  VGAlgebra algebra;
  std::vector<Expr> coefficients;

  // Frozen field at rational time, with exact coefficient arithmetic.
  MultiVector frozen(const Rational& tau) const;
  std::vector<double> weights(double tau) const;
};

TDepVectorField assemble_tdvf(VGAlgebra v, std::vector<Expr> b);

// Function-space counterpart of a VGAlgebra: Hamiltonian lifts h_1..h_r of
// the basis plus the central defects s_ij = {h_i,h_j} - sum_k c_ijk h_k.
// Every pairwise bracket re-expands over the generators with structurally
// zero residual; `table[i][j]` holds the expansion coefficients.
struct FunctionAlgebra {
  JacobiStructure structure;
  std::vector<std::pair<std::string, Expr>> generators;
  std::vector<std::vector<std::vector<Rational>>> table;

  int size() const { return static_cast<int>(generators.size()); }
  nlohmann::ordered_json to_json() const;
};

// Builds the function algebra over a Hamiltonian lift: requires each h_i
// to be good and to reproduce basis[i] under hamiltonian_vf; computes the
// s_ij, verifies they are central (zero Hamiltonian field), and assembles
// the bracket table. Violations throw InvalidArgumentError.
FunctionAlgebra build_function_algebra(const JacobiStructure& j, const VGAlgebra& v,
                                       const std::vector<Expr>& hams,
                                       std::uint64_t seed = 0);

// True iff the Jacobi bracket of f with every generator of a vanishes.
bool check_constant_of_motion(const JacobiStructure& j, const Expr& f,
                              const FunctionAlgebra& a, std::uint64_t seed = 0);

}  // namespace jlie
