#pragma once

#include <optional>
#include <vector>

#include "jlie/expr.hpp"
#include "jlie/multivector.hpp"

namespace jlie {

// Verdicts for the two compatibility conditions of a candidate pair (L, R):
// [L,L] - 2 R^L = 0 and [R,L] = 0 under the graded bracket. The pair is
// usable by the rest of the library only when both residuals test zero.
struct Compatibility {
  ZeroVerdict bracket_condition;
  ZeroVerdict reeb_condition;
  bool usable() const {
    return bracket_condition.is_zero() && reeb_condition.is_zero();
  }
};

struct HamiltonianPair {
  MultiVector field;  // sharp(L, f) + f R
  Expr function;
  bool good;          // R f = 0
};

// A bivector L and vector field R on one chart, together with the verified
// compatibility verdicts. Operations that presume a genuine structure throw
// UnusableStructureError when a condition failed its zero test.
class JacobiStructure {
 public:
  // Computes both compatibility residuals and stores their verdicts.
  static JacobiStructure check_jacobi(MultiVector lambda, MultiVector reeb,
                                      std::uint64_t seed = 0);

  const Chart& chart() const { return lambda_.chart(); }
  const MultiVector& lambda() const { return lambda_; }
  const MultiVector& reeb() const { return reeb_; }
  const Compatibility& verified() const { return verified_; }
  bool usable() const { return verified_.usable(); }
  bool is_poisson() const { return reeb_.is_structural_zero(); }

  // Contraction of the bivector with df (no Reeb term).
  MultiVector sharp(const Expr& f) const;

  // X_f = sharp(f) + f R with the good flag from the zero test of R f.
  HamiltonianPair hamiltonian_vf(const Expr& f, std::uint64_t seed = 0) const;

  // {f,g} = L(df,dg) + f Rg - g Rf. Antisymmetric; a Poisson bracket iff R=0.
  Expr bracket(const Expr& f, const Expr& g) const;

  ZeroVerdict good_verdict(const Expr& f, std::uint64_t seed = 0) const;
  bool is_good(const Expr& f, std::uint64_t seed = 0) const;

  // Seeks a polynomial f with total degree <= max_degree and X_f = x by exact
  // coefficient matching; empty when the linear system is inconsistent.
  // Requires polynomial coefficients throughout (structure and target).
  std::optional<Expr> solve_hamiltonian(const MultiVector& x, int max_degree) const;

 private:
  JacobiStructure(MultiVector lambda, MultiVector reeb, Compatibility verified)
      : lambda_(std::move(lambda)), reeb_(std::move(reeb)),
        verified_(std::move(verified)) {}

  void require_usable() const;

  MultiVector lambda_;
  MultiVector reeb_;
  Compatibility verified_;
};

}  // namespace jlie
