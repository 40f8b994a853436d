#include "jlie/liesys.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>

#include "jlie/errors.hpp"
#include "jlie/poly.hpp"

namespace jlie {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::uint64_t kSpanSalt = 0x6A09E667F3BCC909ULL;

// One solution of a*x = b over exact rationals, free unknowns pinned to zero;
// nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> linsolve(std::vector<std::vector<Rational>> a,
                                              std::vector<Rational> b) {
  std::size_t nrows = a.size();
  std::size_t ncols = nrows == 0 ? 0 : a[0].size();
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
  std::vector<Rational> x(ncols, Rational(0));
  for (std::size_t col = 0; col < ncols; ++col)
    if (pivot_row_of_col[col] >= 0) x[col] = b[static_cast<std::size_t>(pivot_row_of_col[col])];
  return x;
}

// Same shape over BigFloat with partial pivoting; the tolerances separate
// genuine pivots and residuals from 128-bit rounding noise.
std::optional<std::vector<BigFloat>> linsolve_big(std::vector<std::vector<BigFloat>> a,
                                                  std::vector<BigFloat> b) {
  const BigFloat kPivotTol("1e-25"), kResidualTol("1e-18");
  std::size_t nrows = a.size();
  std::size_t ncols = nrows == 0 ? 0 : a[0].size();
  std::vector<int> pivot_row_of_col(ncols, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
    std::size_t best = row;
    for (std::size_t r = row; r < nrows; ++r)
      if (abs(a[r][col]) > abs(a[best][col])) best = r;
    if (abs(a[best][col]) <= kPivotTol) continue;
    std::swap(a[best], a[row]);
    std::swap(b[best], b[row]);
    BigFloat inv = a[row][col];
    for (std::size_t j = col; j < ncols; ++j) a[row][j] /= inv;
    b[row] /= inv;
    for (std::size_t r2 = 0; r2 < nrows; ++r2) {
      if (r2 == row) continue;
      BigFloat factor = a[r2][col];
      if (factor == 0) continue;
      for (std::size_t j = col; j < ncols; ++j) a[r2][j] -= factor * a[row][j];
      b[r2] -= factor * b[row];
    }
    pivot_row_of_col[col] = static_cast<int>(row);
    ++row;
  }
  for (std::size_t r = row; r < nrows; ++r)
    if (abs(b[r]) > kResidualTol) return std::nullopt;
  std::vector<BigFloat> x(ncols, BigFloat(0));
  for (std::size_t col = 0; col < ncols; ++col)
    if (pivot_row_of_col[col] >= 0) x[col] = b[static_cast<std::size_t>(pivot_row_of_col[col])];
  return x;
}

cpp_int floor_div(const cpp_int& num, const cpp_int& den) {
  cpp_int q = num / den;
  if ((num % den) != 0 && ((num < 0) != (den < 0))) --q;
  return q;
}

// Nearest small rational via continued-fraction convergents of the exact
// binary value; nullopt when no convergent with a modest denominator lands
// within tolerance. The caller re-checks any reconstruction symbolically.
std::optional<Rational> reconstruct_rational(const BigFloat& v) {
  Rational exact;
  try {
    exact = v.convert_to<Rational>();
  } catch (...) {
    return std::nullopt;
  }
  const cpp_int kMaxDen = 1000000;
  Rational tol = Rational(1, 1000000000000000LL);
  Rational mag = exact < 0 ? -exact : exact;
  if (mag > 1) tol *= mag;
  Rational rest = exact;
  cpp_int h_prev = 1, k_prev = 0, h_pp = 0, k_pp = 1;
  for (int it = 0; it < 128; ++it) {
    cpp_int a = floor_div(numerator(rest), denominator(rest));
    cpp_int h = a * h_prev + h_pp, k = a * k_prev + k_pp;
    if (k > kMaxDen) break;
    Rational cand(h, k);
    Rational err = exact - cand;
    if (err < 0) err = -err;
    if (err <= tol) return cand;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = Rational(1) / frac;
    h_pp = h_prev;
    k_pp = k_prev;
    h_prev = h;
    k_prev = k;
  }
  return std::nullopt;
}

bool all_polynomial(const std::vector<const MultiVector*>& fields) {
  for (const MultiVector* f : fields)
    for (const auto& [key, c] : f->components())
      if (!c.is_polynomial()) return false;
  return true;
}

bool all_exp_free(const std::vector<const MultiVector*>& fields) {
  for (const MultiVector* f : fields)
    for (const auto& [key, c] : f->components())
      if (c.atom_count() > 0) return false;
  return true;
}

// Seeded rational sample points on the {k/256 : |k| <= 512} box, skipping
// points where any field coefficient has a pole. The pole probe runs through
// the same evaluator the caller will use (exact for exp-free coefficients,
// BigFloat otherwise) so an accepted point cannot fail later.
std::vector<std::vector<Rational>> sample_points(const std::vector<const MultiVector*>& fields,
                                                 int dim, int wanted, bool exact_probe,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ kSpanSalt);
  std::vector<std::vector<Rational>> points;
  int budget = 40 * wanted;
  while (static_cast<int>(points.size()) < wanted && budget-- > 0) {
    std::vector<Rational> pt;
    pt.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      std::int64_t k = static_cast<std::int64_t>(rng() % 1025) - 512;
      pt.emplace_back(k, 256);
    }
    std::vector<BigFloat> big;
    if (!exact_probe) {
      big.reserve(pt.size());
      for (const Rational& c : pt) big.push_back(to_bigfloat(c));
    }
    bool ok = true;
    for (const MultiVector* f : fields) {
      for (const auto& [key, c] : f->components()) {
        try {
          if (exact_probe)
            c.evaluate_exact(pt);
          else
            c.evaluate_big(big);
        } catch (const PoleError&) {
          ok = false;
        }
        if (!ok) break;
      }
      if (!ok) break;
    }
    if (ok) points.push_back(std::move(pt));
  }
  if (static_cast<int>(points.size()) < wanted)
    throw EvalError("span test exhausted its resample budget; fields are singular on the sample box");
  return points;
}

MultiVector combine(const std::vector<MultiVector>& basis, const std::vector<Rational>& c,
                    const Chart& chart, int degree) {
  MultiVector sum(chart, degree);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (c[i] != 0) sum = sum + basis[i] * Expr::constant(chart, c[i]);
  return sum;
}

// Expansion coefficients of y over the basis, or nullopt when y is outside
// the span. Polynomial coefficients are matched monomial by monomial, which
// is exact in both directions. Otherwise the coefficients are solved at
// sampled points and the candidate combination is re-checked symbolically;
// `sampled` records that the span decision rested on sampling.
std::optional<std::vector<Rational>> try_express(const MultiVector& y,
                                                 const std::vector<MultiVector>& basis,
                                                 std::uint64_t seed, bool& sampled) {
  if (basis.empty())
    return y.is_structural_zero() ? std::optional<std::vector<Rational>>(std::vector<Rational>{})
                                  : std::nullopt;
  const Chart& chart = y.chart();
  int dim = chart.dim();
  std::vector<const MultiVector*> everything;
  for (const MultiVector& f : basis) everything.push_back(&f);
  everything.push_back(&y);

  if (all_polynomial(everything)) {
    std::map<std::pair<int, Mono>, int> row_of;
    auto row_id = [&](int d, const Mono& m) {
      auto [it, inserted] = row_of.emplace(std::make_pair(d, m), static_cast<int>(row_of.size()));
      return it->second;
    };
    for (const MultiVector* f : everything)
      for (const auto& [key, c] : f->components()) {
        Poly p = c.num();
        for (const auto& [m, coeff] : p.terms()) row_id(key[0], m);
      }
    std::vector<std::vector<Rational>> a(row_of.size(),
                                         std::vector<Rational>(basis.size(), Rational(0)));
    std::vector<Rational> b(row_of.size(), Rational(0));
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (const auto& [key, c] : basis[j].components()) {
        Poly p = c.num();
        for (const auto& [m, coeff] : p.terms())
          a[static_cast<std::size_t>(row_of.at({key[0], m}))][j] = coeff;
      }
    for (const auto& [key, c] : y.components()) {
      Poly p = c.num();
      for (const auto& [m, coeff] : p.terms())
        b[static_cast<std::size_t>(row_of.at({key[0], m}))] = coeff;
    }
    return linsolve(std::move(a), std::move(b));
  }

  sampled = true;
  bool exp_free = all_exp_free(everything);
  int wanted = std::max(20, 2 * dim);
  for (int round = 0; round < 2; ++round) {
    std::vector<std::vector<Rational>> pts =
        sample_points(everything, dim, wanted * (round == 0 ? 1 : 3), exp_free, seed + round);
    std::size_t nrows = pts.size() * static_cast<std::size_t>(dim);
    std::optional<std::vector<Rational>> candidate;
    if (exp_free) {
      std::vector<std::vector<Rational>> a(nrows, std::vector<Rational>(basis.size(), Rational(0)));
      std::vector<Rational> b(nrows, Rational(0));
      std::size_t row = 0;
      for (const auto& pt : pts)
        for (int d = 0; d < dim; ++d, ++row) {
          for (std::size_t j = 0; j < basis.size(); ++j)
            a[row][j] = basis[j].component({d}).evaluate_exact(pt);
          b[row] = y.component({d}).evaluate_exact(pt);
        }
      candidate = linsolve(std::move(a), std::move(b));
      // Exact arithmetic: an inconsistent sampled system already rules out
      // any identity y = sum c_i X_i.
      if (!candidate) return std::nullopt;
    } else {
      std::vector<std::vector<BigFloat>> a(nrows, std::vector<BigFloat>(basis.size(), BigFloat(0)));
      std::vector<BigFloat> b(nrows, BigFloat(0));
      std::size_t row = 0;
      for (const auto& pt : pts) {
        std::vector<BigFloat> big;
        big.reserve(pt.size());
        for (const Rational& c : pt) big.push_back(to_bigfloat(c));
        for (int d = 0; d < dim; ++d, ++row) {
          for (std::size_t j = 0; j < basis.size(); ++j)
            a[row][j] = basis[j].component({d}).evaluate_big(big);
          b[row] = y.component({d}).evaluate_big(big);
        }
      }
      auto sol = linsolve_big(std::move(a), std::move(b));
      if (!sol) return std::nullopt;
      std::vector<Rational> rec;
      rec.reserve(sol->size());
      for (const BigFloat& v : *sol) {
        auto r = reconstruct_rational(v);
        if (!r) return std::nullopt;
        rec.push_back(*r);
      }
      candidate = std::move(rec);
    }
    if (combine(basis, *candidate, chart, y.degree()) == y) return candidate;
  }
  return std::nullopt;
}

}  // namespace

const Rational& VGAlgebra::c(int i, int j, int k) const {
  return structure_constants.at(static_cast<std::size_t>(i))
      .at(static_cast<std::size_t>(j))
      .at(static_cast<std::size_t>(k));
}

nlohmann::ordered_json VGAlgebra::to_json() const {
  nlohmann::ordered_json out;
  out["dim"] = dim();
  out["probabilistic"] = probabilistic;
  out["basis"] = nlohmann::ordered_json::array();
  for (const MultiVector& f : basis) out["basis"].push_back(f.to_json());
  nlohmann::ordered_json cs = nlohmann::ordered_json::object();
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k)
        if (c(i, j, k) != 0)
          cs[std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1)] =
              to_string(c(i, j, k));
  out["structure_constants"] = std::move(cs);
  return out;
}

ClosureResult lie_closure(const std::vector<MultiVector>& fields, int max_dim,
                          std::uint64_t seed) {
  if (max_dim < static_cast<int>(fields.size()))
    throw InvalidArgumentError("max_dim must be at least the number of generating fields");
  if (fields.empty()) throw InvalidArgumentError("closure needs at least one generating field");
  ClosureResult result;
  const Chart& chart = fields[0].chart();
  for (const MultiVector& f : fields) {
    if (f.degree() != 1) throw DomainError("closure expects vector fields");
    if (f.chart() != chart) throw DomainError("closure fields live on different charts");
  }

  bool sampled = false;
  std::vector<MultiVector> basis;
  for (const MultiVector& f : fields) {
    if (f.is_structural_zero()) continue;
    if (!try_express(f, basis, seed, sampled)) basis.push_back(f);
  }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> pair_coeffs;
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      MultiVector br = lie_bracket(basis[i], basis[j]);
      if (br.is_structural_zero()) {
        pair_coeffs[{i, j}] = {};
        continue;
      }
      auto coeffs = try_express(br, basis, seed, sampled);
      if (coeffs) {
        pair_coeffs[{i, j}] = std::move(*coeffs);
        continue;
      }
      if (static_cast<int>(basis.size()) >= max_dim) {
        result.verdict = ClosureResult::Verdict::ExceedsBound;
        result.reached_dim = static_cast<int>(basis.size()) + 1;
        return result;
      }
      std::vector<Rational> unit(basis.size() + 1, Rational(0));
      unit.back() = Rational(1);
      pair_coeffs[{i, j}] = std::move(unit);
      basis.push_back(std::move(br));
    }

  std::size_t r = basis.size();
  VGAlgebra algebra{chart, std::move(basis), sampled, {}};
  algebra.structure_constants.assign(
      r, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, Rational(0))));
  for (const auto& [pair, coeffs] : pair_coeffs)
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      algebra.structure_constants[pair.first][pair.second][k] = coeffs[k];
      algebra.structure_constants[pair.second][pair.first][k] = -coeffs[k];
    }
  result.verdict = ClosureResult::Verdict::Closed;
  result.reached_dim = static_cast<int>(r);
  result.algebra = std::move(algebra);
  return result;
}

std::vector<std::optional<Expr>> is_hamiltonian_algebra(const JacobiStructure& j,
                                                        const VGAlgebra& v, int max_degree) {
  std::vector<std::optional<Expr>> out;
  out.reserve(v.basis.size());
  for (const MultiVector& x : v.basis) out.push_back(j.solve_hamiltonian(x, max_degree));
  return out;
}

MultiVector TDepVectorField::frozen(const Rational& tau) const {
  MultiVector sum(algebra.chart, 1);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    Rational w = coefficients[i].evaluate_exact({tau});
    if (w != 0) sum = sum + algebra.basis[i] * Expr::constant(algebra.chart, w);
  }
  return sum;
}

std::vector<double> TDepVectorField::weights(double tau) const {
  std::vector<double> w;
  w.reserve(coefficients.size());
  for (const Expr& b : coefficients) w.push_back(b.evaluate({tau}));
  return w;
}

TDepVectorField assemble_tdvf(VGAlgebra v, std::vector<Expr> b) {
  if (static_cast<int>(b.size()) != v.dim())
    throw InvalidArgumentError("coefficient count does not match the basis dimension");
  const Chart time_chart = Chart::make({"t"});
  for (const Expr& e : b)
    if (!(e.chart() == time_chart))
      throw InvalidArgumentError("time coefficients must live on the chart [\"t\"]");
  return TDepVectorField{std::move(v), std::move(b)};
}

nlohmann::ordered_json FunctionAlgebra::to_json() const {
  nlohmann::ordered_json out;
  out["generators"] = nlohmann::ordered_json::object();
  for (const auto& [name, g] : generators) out["generators"][name] = g.print();
  nlohmann::ordered_json tab = nlohmann::ordered_json::object();
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      for (int k = 0; k < size(); ++k) {
        const Rational& c = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                 [static_cast<std::size_t>(k)];
        if (c != 0)
          tab[std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
              std::to_string(k + 1)] = to_string(c);
      }
  out["table"] = std::move(tab);
  return out;
}

FunctionAlgebra build_function_algebra(const JacobiStructure& j, const VGAlgebra& v,
                                       const std::vector<Expr>& hams, std::uint64_t seed) {
  int r = v.dim();
  if (static_cast<int>(hams.size()) != r)
    throw InvalidArgumentError("need exactly one Hamiltonian function per basis field");
  for (int i = 0; i < r; ++i) {
    if (!j.is_good(hams[static_cast<std::size_t>(i)], seed))
      throw InvalidArgumentError("function algebra construction requires good functions");
    HamiltonianPair p = j.hamiltonian_vf(hams[static_cast<std::size_t>(i)], seed);
    if (!(p.field == v.basis[static_cast<std::size_t>(i)]))
      throw InvalidArgumentError("function " + std::to_string(i + 1) +
                                 " is not a Hamiltonian function of basis field " +
                                 std::to_string(i + 1));
  }

  const Chart& chart = j.chart();
  std::vector<std::pair<std::string, Expr>> gens;
  for (int i = 0; i < r; ++i)
    gens.emplace_back("h" + std::to_string(i + 1), hams[static_cast<std::size_t>(i)]);

  // Central defects: s_ij = {h_i,h_j} - sum_k c_ijk h_k for i < j. Nonzero
  // ones join the generator list; all must have a vanishing Hamiltonian
  // field, otherwise the pair (V, hams) is not a consistent lift.
  std::map<std::pair<int, int>, int> s_index;
  std::map<std::pair<int, int>, std::vector<Rational>> h_rows;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      Expr s = j.bracket(hams[static_cast<std::size_t>(a)], hams[static_cast<std::size_t>(b)]);
      std::vector<Rational> row;
      for (int k = 0; k < r; ++k) {
        const Rational& c = v.c(a, b, k);
        row.push_back(c);
        if (c != 0) s = s - Expr::constant(chart, c) * hams[static_cast<std::size_t>(k)];
      }
      if (!s.is_structural_zero()) {
        HamiltonianPair sp = j.hamiltonian_vf(s, seed);
        if (!sp.field.is_structural_zero())
          throw InvalidArgumentError(
              "central defect s[" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
              "] has a nonzero Hamiltonian field; the lift is inconsistent");
        s_index[{a, b}] = static_cast<int>(gens.size());
        gens.emplace_back("s[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]", s);
      }
      h_rows[{a, b}] = std::move(row);
    }

  int n = static_cast<int>(gens.size());
  std::vector<std::vector<std::vector<Rational>>> table(
      static_cast<std::size_t>(n),
      std::vector<std::vector<Rational>>(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n),
                                                               Rational(0))));
  for (const auto& [ab, row] : h_rows) {
    auto [a, b] = ab;
    for (int k = 0; k < r; ++k) {
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] =
          row[static_cast<std::size_t>(k)];
      table[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] =
          -row[static_cast<std::size_t>(k)];
    }
    auto it = s_index.find(ab);
    if (it != s_index.end()) {
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
           [static_cast<std::size_t>(it->second)] = Rational(1);
      table[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]
           [static_cast<std::size_t>(it->second)] = Rational(-1);
    }
  }

  // The defects must be central: every bracket against a generator has to
  // cancel structurally, which also certifies the table rows involving them.
  for (const auto& [ab, idx] : s_index)
    for (int g = 0; g < n; ++g) {
      Expr br = j.bracket(gens[static_cast<std::size_t>(idx)].second,
                          gens[static_cast<std::size_t>(g)].second);
      if (!br.is_structural_zero())
        throw InvalidArgumentError("central defect s[" + std::to_string(ab.first + 1) + "," +
                                   std::to_string(ab.second + 1) + "] fails to be central");
    }

  return FunctionAlgebra{j, std::move(gens), std::move(table)};
}

bool check_constant_of_motion(const JacobiStructure& j, const Expr& f, const FunctionAlgebra& a,
                              std::uint64_t seed) {
  for (const auto& [name, g] : a.generators)
    if (!j.bracket(f, g).is_zero(seed).is_zero()) return false;
  return true;
}

}  // namespace jlie
