#include "jlie/jacobi.hpp"

#include <map>
#include <utility>

#include "jlie/errors.hpp"

namespace jlie {

JacobiStructure JacobiStructure::check_jacobi(MultiVector lambda, MultiVector reeb,
                                              std::uint64_t seed) {
  if (lambda.degree() != 2) throw DomainError("lambda must be a bivector");
  if (reeb.degree() != 1) throw DomainError("reeb must be a vector field");
  if (lambda.chart() != reeb.chart())
    throw DomainError("lambda and reeb live on different charts");
  MultiVector bracket_defect =
      schouten(lambda, lambda) - wedge(reeb, lambda) * Expr::constant(lambda.chart(), Rational(2));
  MultiVector reeb_defect = schouten(reeb, lambda);
  Compatibility verified{bracket_defect.is_zero(seed), reeb_defect.is_zero(seed)};
  return JacobiStructure(std::move(lambda), std::move(reeb), std::move(verified));
}

void JacobiStructure::require_usable() const {
  if (!verified_.usable())
    throw UnusableStructureError(
        "structure failed its compatibility conditions and cannot be used");
}

MultiVector JacobiStructure::sharp(const Expr& f) const {
  return contract_with_df(lambda_, f);
}

HamiltonianPair JacobiStructure::hamiltonian_vf(const Expr& f, std::uint64_t seed) const {
  require_usable();
  if (f.chart() != chart()) throw DomainError("function lives on a different chart");
  MultiVector field = sharp(f) + reeb_ * f;
  return HamiltonianPair{std::move(field), f, good_verdict(f, seed).is_zero()};
}

Expr JacobiStructure::bracket(const Expr& f, const Expr& g) const {
  require_usable();
  if (f.chart() != chart() || g.chart() != chart())
    throw DomainError("function lives on a different chart");
  Expr lam_part = apply(sharp(f), g);
  Expr rf = apply(reeb_, f);
  Expr rg = apply(reeb_, g);
  return lam_part + f * rg - g * rf;
}

ZeroVerdict JacobiStructure::good_verdict(const Expr& f, std::uint64_t seed) const {
  if (f.chart() != chart()) throw DomainError("function lives on a different chart");
  return apply(reeb_, f).is_zero(seed);
}

bool JacobiStructure::is_good(const Expr& f, std::uint64_t seed) const {
  return good_verdict(f, seed).is_zero();
}

namespace {

void enumerate_monomials(int dim, int pos, int budget, Mono& cur, std::vector<Mono>& out) {
  if (pos == dim) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= budget; ++e) {
    cur[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(e);
    enumerate_monomials(dim, pos + 1, budget - e, cur, out);
  }
  cur[static_cast<std::size_t>(pos)] = 0;
}

void require_polynomial(const MultiVector& m, const char* what) {
  for (const auto& [key, c] : m.components())
    if (!c.is_polynomial())
      throw InvalidArgumentError(std::string(what) +
                                 " must have polynomial coefficients for the solver");
}

}  // namespace

std::optional<Expr> JacobiStructure::solve_hamiltonian(const MultiVector& x,
                                                       int max_degree) const {
  require_usable();
  if (x.degree() != 1) throw DomainError("solver target must be a vector field");
  if (x.chart() != chart()) throw DomainError("target lives on a different chart");
  if (max_degree < 0) throw InvalidArgumentError("max_degree must be nonnegative");
  require_polynomial(lambda_, "structure bivector");
  require_polynomial(reeb_, "structure vector field");
  require_polynomial(x, "solver target");

  int dim = chart().dim();
  std::vector<Mono> candidates;
  Mono cur(static_cast<std::size_t>(dim), 0);
  enumerate_monomials(dim, 0, max_degree, cur, candidates);

  // Column d of the system: the Hamiltonian field of each candidate monomial,
  // matched against the target coefficientwise per chart direction and mono.
  std::vector<MultiVector> columns;
  columns.reserve(candidates.size());
  for (const Mono& m : candidates) {
    Expr mono = Expr::one(chart());
    for (int v = 0; v < dim; ++v)
      for (std::uint32_t k = 0; k < m[static_cast<std::size_t>(v)]; ++k)
        mono = mono * Expr::coordinate(chart(), v);
    columns.push_back(sharp(mono) + reeb_ * mono);
  }

  std::map<std::pair<int, Mono>, int> row_of;
  auto row_id = [&](int d, const Mono& m) {
    auto [it, inserted] = row_of.emplace(std::make_pair(d, m),
                                         static_cast<int>(row_of.size()));
    return it->second;
  };
  auto poly_of_direction = [&](const MultiVector& v, int d) {
    return v.component({d}).num();
  };
  for (int d = 0; d < dim; ++d) {
    for (const auto& col : columns) {
      Poly p = poly_of_direction(col, d);
      for (const auto& [m, c] : p.terms()) row_id(d, m);
    }
    Poly px = poly_of_direction(x, d);
    for (const auto& [m, c] : px.terms()) row_id(d, m);
  }

  std::size_t nrows = row_of.size(), ncols = candidates.size();
  std::vector<std::vector<Rational>> a(nrows, std::vector<Rational>(ncols, Rational(0)));
  std::vector<Rational> b(nrows, Rational(0));
  for (int d = 0; d < dim; ++d) {
    for (std::size_t j = 0; j < ncols; ++j) {
      Poly p = poly_of_direction(columns[j], d);
      for (const auto& [m, c] : p.terms())
        a[static_cast<std::size_t>(row_of.at({d, m}))][j] = c;
    }
    Poly px = poly_of_direction(x, d);
    for (const auto& [m, c] : px.terms())
      b[static_cast<std::size_t>(row_of.at({d, m}))] = c;
  }

  // Gauss-Jordan over exact rationals; free coefficients stay zero.
  std::vector<int> pivot_row_of_col(ncols, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
    std::size_t r = row;
    while (r < nrows && a[r][col] == 0) ++r;
    if (r == nrows) continue;
    std::swap(a[r], a[row]);
    std::swap(b[r], b[row]);
    Rational inv = a[row][col];
    for (std::size_t j = col; j < ncols; ++j) a[row][j] /= inv;
    b[row] /= inv;
    for (std::size_t r2 = 0; r2 < nrows; ++r2) {
      if (r2 == row || a[r2][col] == 0) continue;
      Rational factor = a[r2][col];
      for (std::size_t j = col; j < ncols; ++j) a[r2][j] -= factor * a[row][j];
      b[r2] -= factor * b[row];
    }
    pivot_row_of_col[col] = static_cast<int>(row);
    ++row;
  }
  for (std::size_t r = row; r < nrows; ++r)
    if (b[r] != 0) return std::nullopt;

  Expr f = Expr::zero(chart());
  for (std::size_t col = 0; col < ncols; ++col) {
    if (pivot_row_of_col[col] < 0) continue;
    Rational coeff = b[static_cast<std::size_t>(pivot_row_of_col[col])];
    if (coeff == 0) continue;
    Expr mono = Expr::constant(chart(), coeff);
    const Mono& m = candidates[col];
    for (int v = 0; v < dim; ++v)
      for (std::uint32_t k = 0; k < m[static_cast<std::size_t>(v)]; ++k)
        mono = mono * Expr::coordinate(chart(), v);
    f = f + mono;
  }
  return f;
}

}  // namespace jlie
