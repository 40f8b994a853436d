#include "jlie/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <random>

#include "jlie/errors.hpp"

namespace jlie {

namespace mp = boost::multiprecision;

struct Expr::Atom {
  Expr arg;
  std::string key;  // canonical print of arg; atom identity and ordering
};

struct Expr::Impl {
  std::vector<std::shared_ptr<const Atom>> atoms;  // sorted by key, unique
  Poly num;  // nvars == chart.dim() + atoms.size()
  Poly den;
};

namespace {

const char* zero_status_name(ZeroStatus s) {
  switch (s) {
    case ZeroStatus::ProvenZero: return "proven_zero";
    case ZeroStatus::ProvenNonzero: return "proven_nonzero";
    case ZeroStatus::ProbablyZero: return "probably_zero";
    case ZeroStatus::ProbablyNonzero: return "probably_nonzero";
  }
  return "?";
}

constexpr double kZeroTolerance = 1e-30;
constexpr int kMinSamples = 20;

std::string format_magnitude(const BigFloat& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v.convert_to<double>());
  return buf;
}

}  // namespace

const char* ZeroVerdict::name() const { return zero_status_name(status); }

ZeroVerdict combine_verdicts(const std::vector<ZeroVerdict>& parts) {
  const ZeroVerdict* probable_nonzero = nullptr;
  bool all_proven = true;
  int min_samples = 0;
  double tol = 0.0;
  for (const auto& v : parts) {
    if (v.status == ZeroStatus::ProvenNonzero) return v;
    if (v.status == ZeroStatus::ProbablyNonzero && !probable_nonzero)
      probable_nonzero = &v;
    if (!v.proven()) {
      all_proven = false;
      min_samples = min_samples == 0 ? v.samples : std::min(min_samples, v.samples);
      tol = std::max(tol, v.tolerance);
    }
  }
  if (probable_nonzero) return *probable_nonzero;
  if (all_proven) return ZeroVerdict::proven_zero();
  ZeroVerdict v;
  v.status = ZeroStatus::ProbablyZero;
  v.samples = min_samples;
  v.tolerance = tol;
  return v;
}

// ---------------------------------------------------------------------------
// Construction and canonicalization

namespace {

using AtomPtr = std::shared_ptr<const Expr::Atom>;

}  // namespace

// Builds the canonical Impl: reduce num/den, scale the denominator to
// integer-primitive positive-leading form, drop unused atoms.
static std::shared_ptr<const Expr::Impl> normalize_impl(
    int dim, std::vector<AtomPtr> atoms, Poly num, Poly den, bool reduce_gcd) {
  if (den.is_zero()) throw DivisionByZeroError("denominator is identically zero");
  auto impl = std::make_shared<Expr::Impl>();
  if (num.is_zero()) {
    impl->num = Poly(dim);
    impl->den = Poly::constant(dim, Rational(1));
    return impl;
  }
  if (reduce_gcd) {
    Poly g = poly_gcd(num, den);
    if (!(g.is_constant() && g.constant_value() == 1)) {
      num = poly_divexact(num, g);
      den = poly_divexact(den, g);
    }
  }
  Rational f;
  den = poly_make_primitive(den, &f);
  num = num.scaled(f);

  // Prune atoms that no longer occur.
  int nvars = dim + static_cast<int>(atoms.size());
  std::vector<bool> used(atoms.size(), false);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    used[i] = num.uses(dim + static_cast<int>(i)) || den.uses(dim + static_cast<int>(i));
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    std::vector<AtomPtr> kept;
    std::vector<int> map(static_cast<std::size_t>(nvars), -1);
    for (int v = 0; v < dim; ++v) map[static_cast<std::size_t>(v)] = v;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (used[i]) {
        map[static_cast<std::size_t>(dim) + i] = dim + static_cast<int>(kept.size());
        kept.push_back(atoms[i]);
      }
    int new_nvars = dim + static_cast<int>(kept.size());
    num = num.remapped(new_nvars, map);
    den = den.remapped(new_nvars, map);
    atoms = std::move(kept);
  }
  impl->atoms = std::move(atoms);
  impl->num = std::move(num);
  impl->den = std::move(den);
  return impl;
}

Expr Expr::constant(const Chart& chart, const Rational& c) {
  int dim = chart.dim();
  return Expr(chart, normalize_impl(dim, {}, Poly::constant(dim, c),
                                    Poly::constant(dim, Rational(1)), false));
}

Expr Expr::coordinate(const Chart& chart, int index) {
  if (index < 0 || index >= chart.dim())
    throw DomainError("coordinate index out of range");
  int dim = chart.dim();
  return Expr(chart, normalize_impl(dim, {}, Poly::variable(dim, index),
                                    Poly::constant(dim, Rational(1)), false));
}

Expr Expr::coordinate(const Chart& chart, const std::string& name) {
  return coordinate(chart, chart.index_of(name));
}

// Merges two atom tables into one sorted table and remaps both polynomial
// pairs into the merged variable space.
namespace {
struct MergedOperands {
  std::vector<AtomPtr> atoms;
  Poly na, da, nb, db;
};

MergedOperands merge_operands(int dim, const Expr::Impl& a, const Expr::Impl& b) {
  MergedOperands m;
  std::vector<int> posa(a.atoms.size()), posb(b.atoms.size());
  std::size_t i = 0, j = 0;
  while (i < a.atoms.size() || j < b.atoms.size()) {
    bool take_a;
    bool both = false;
    if (i >= a.atoms.size()) take_a = false;
    else if (j >= b.atoms.size()) take_a = true;
    else {
      int cmp = a.atoms[i]->key.compare(b.atoms[j]->key);
      take_a = cmp <= 0;
      both = cmp == 0;
    }
    int pos = static_cast<int>(m.atoms.size());
    if (take_a) {
      m.atoms.push_back(a.atoms[i]);
      posa[i++] = pos;
      if (both) posb[j++] = pos;
    } else {
      m.atoms.push_back(b.atoms[j]);
      posb[j++] = pos;
    }
  }
  int nvars = dim + static_cast<int>(m.atoms.size());
  auto build_map = [&](const std::vector<int>& pos) {
    std::vector<int> map(static_cast<std::size_t>(dim) + pos.size());
    for (int v = 0; v < dim; ++v) map[static_cast<std::size_t>(v)] = v;
    for (std::size_t k = 0; k < pos.size(); ++k)
      map[static_cast<std::size_t>(dim) + k] = dim + pos[k];
    return map;
  };
  auto mapa = build_map(posa), mapb = build_map(posb);
  m.na = a.num.remapped(nvars, mapa);
  m.da = a.den.remapped(nvars, mapa);
  m.nb = b.num.remapped(nvars, mapb);
  m.db = b.den.remapped(nvars, mapb);
  return m;
}

void require_same_chart(const Chart& a, const Chart& b) {
  if (a != b) throw DomainError("operands live on different charts");
}
}  // namespace

Expr Expr::operator-() const {
  return Expr(chart_, normalize_impl(chart_.dim(), impl_->atoms,
                                     -impl_->num, impl_->den, false));
}

Expr Expr::operator+(const Expr& o) const {
  require_same_chart(chart_, o.chart_);
  auto m = merge_operands(chart_.dim(), *impl_, *o.impl_);
  return Expr(chart_, normalize_impl(chart_.dim(), std::move(m.atoms),
                                     m.na * m.db + m.nb * m.da, m.da * m.db, true));
}

Expr Expr::operator-(const Expr& o) const {
  require_same_chart(chart_, o.chart_);
  auto m = merge_operands(chart_.dim(), *impl_, *o.impl_);
  return Expr(chart_, normalize_impl(chart_.dim(), std::move(m.atoms),
                                     m.na * m.db - m.nb * m.da, m.da * m.db, true));
}

Expr Expr::operator*(const Expr& o) const {
  require_same_chart(chart_, o.chart_);
  auto m = merge_operands(chart_.dim(), *impl_, *o.impl_);
  return Expr(chart_, normalize_impl(chart_.dim(), std::move(m.atoms),
                                     m.na * m.nb, m.da * m.db, true));
}

Expr Expr::operator/(const Expr& o) const {
  require_same_chart(chart_, o.chart_);
  if (o.impl_->num.is_zero())
    throw DivisionByZeroError("division by an expression that is identically zero");
  auto m = merge_operands(chart_.dim(), *impl_, *o.impl_);
  return Expr(chart_, normalize_impl(chart_.dim(), std::move(m.atoms),
                                     m.na * m.db, m.da * m.nb, true));
}

Expr Expr::pow(int k) const {
  if (k == 0) return one(chart_);
  if (k > 0) {
    auto ku = static_cast<std::uint32_t>(k);
    // num and den are coprime, so their powers are too.
    return Expr(chart_, normalize_impl(chart_.dim(), impl_->atoms,
                                       impl_->num.pow(ku), impl_->den.pow(ku), false));
  }
  if (impl_->num.is_zero())
    throw DivisionByZeroError("zero raised to a negative power");
  auto ku = static_cast<std::uint32_t>(-(k + 1)) + 1u;
  return Expr(chart_, normalize_impl(chart_.dim(), impl_->atoms,
                                     impl_->den.pow(ku), impl_->num.pow(ku), false));
}

Expr exp(const Expr& u) {
  if (u.is_structural_zero()) return Expr::one(u.chart());
  auto atom = std::make_shared<const Expr::Atom>(Expr::Atom{u, u.print()});
  int dim = u.chart().dim();
  return Expr(u.chart(),
              normalize_impl(dim, {atom}, Poly::variable(dim + 1, dim),
                             Poly::constant(dim + 1, Rational(1)), false));
}

// ---------------------------------------------------------------------------
// Predicates and accessors

bool Expr::is_structural_zero() const { return impl_->num.is_zero(); }
bool Expr::is_exp_free() const { return impl_->atoms.empty(); }

bool Expr::is_polynomial() const {
  return impl_->atoms.empty() && impl_->den.is_constant();
}

bool Expr::is_constant() const {
  return impl_->atoms.empty() && impl_->num.is_constant() && impl_->den.is_constant();
}

Rational Expr::constant_value() const {
  if (!is_constant()) throw InvalidArgumentError("expression is not constant");
  if (impl_->num.is_zero()) return Rational(0);
  return impl_->num.constant_value() / impl_->den.constant_value();
}

bool Expr::depends_on(int coord) const {
  if (coord < 0 || coord >= chart_.dim())
    throw DomainError("coordinate index out of range");
  if (impl_->num.uses(coord) || impl_->den.uses(coord)) return true;
  for (const auto& a : impl_->atoms)
    if (a->arg.depends_on(coord)) return true;
  return false;
}

std::uint64_t Expr::polynomial_degree() const {
  if (!is_polynomial())
    throw InvalidArgumentError("polynomial_degree on a non-polynomial expression");
  return impl_->num.total_degree();
}

bool Expr::operator==(const Expr& o) const {
  if (impl_ == o.impl_) return chart_ == o.chart_;
  if (chart_ != o.chart_) return false;
  if (impl_->atoms.size() != o.impl_->atoms.size()) return false;
  for (std::size_t i = 0; i < impl_->atoms.size(); ++i)
    if (impl_->atoms[i]->key != o.impl_->atoms[i]->key) return false;
  return impl_->num == o.impl_->num && impl_->den == o.impl_->den;
}

const Poly& Expr::num() const { return impl_->num; }
const Poly& Expr::den() const { return impl_->den; }
int Expr::atom_count() const { return static_cast<int>(impl_->atoms.size()); }
const Expr& Expr::atom_arg(int i) const {
  return impl_->atoms[static_cast<std::size_t>(i)]->arg;
}
const std::string& Expr::atom_key(int i) const {
  return impl_->atoms[static_cast<std::size_t>(i)]->key;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string mono_string(const Mono& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[v];
    if (m[v] > 1) out += "^" + std::to_string(m[v]);
  }
  return out;
}

std::string poly_string(const Poly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  // Reverse map order = grlex descending.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c < 0 ? Rational(-c) : c;
    std::string ms = mono_string(m, names);
    std::string term;
    if (ms.empty()) term = a.str();
    else if (a == 1) term = ms;
    else term = a.str() + "*" + ms;
    if (out.empty()) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

// A denominator may be printed bare only when it is a coefficient-1 power of
// a single variable; anything else needs parentheses to survive re-parsing.
bool den_prints_bare(const Poly& p) {
  if (p.terms().size() != 1) return false;
  const auto& [m, c] = *p.terms().begin();
  if (c != 1) return false;
  int nonzero = 0;
  for (auto e : m) nonzero += e != 0 ? 1 : 0;
  return nonzero == 1;
}

}  // namespace

std::string Expr::print() const {
  std::vector<std::string> names = chart_.coords();
  for (const auto& a : impl_->atoms) names.push_back("exp(" + a->key + ")");
  const Poly& num = impl_->num;
  const Poly& den = impl_->den;
  if (den.is_constant()) return poly_string(num, names);
  std::string ns = poly_string(num, names);
  if (num.terms().size() > 1) ns = "(" + ns + ")";
  std::string ds = poly_string(den, names);
  if (!den_prints_bare(den)) ds = "(" + ds + ")";
  return ns + "/" + ds;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(const Chart& chart, std::string_view text) : chart_(chart), s_(text) {}

  Expr run() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (eat('+')) e = e + parse_term();
      else if (eat('-')) e = e - parse_term();
      else return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (eat('*')) e = e * parse_factor();
      else if (eat('/')) e = e / parse_factor();
      else return e;
    }
  }

  Expr parse_factor() {
    bool neg = eat('-');
    Expr e = parse_atom();
    if (eat('^')) e = e.pow(parse_exponent());
    return neg ? -e : e;
  }

  int parse_exponent() {
    skip_ws();
    bool neg = eat('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected integer exponent", pos_);
    if (pos_ - start > 4) throw ParseError("exponent too large", start);
    int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (k > 1000) throw ParseError("exponent too large", start);
    return neg ? -k : k;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Expr::constant(chart_, Rational(BigInt(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "exp") {
        expect('(');
        Expr arg = parse_expr();
        expect(')');
        return exp(arg);
      }
      if (!chart_.has(name))
        throw ParseError("unknown identifier '" + name + "'", start);
      return Expr::coordinate(chart_, name);
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Chart chart_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(const Chart& chart, std::string_view text) {
  return Parser(chart, text).run();
}

// ---------------------------------------------------------------------------
// Differentiation

Expr Expr::differentiate(int coord) const {
  if (coord < 0 || coord >= chart_.dim())
    throw DomainError("coordinate index out of range");
  int dim = chart_.dim();
  auto wrap = [&](Poly p) {
    int nv = dim + static_cast<int>(impl_->atoms.size());
    return Expr(chart_, normalize_impl(dim, impl_->atoms, std::move(p),
                                       Poly::constant(nv, Rational(1)), false));
  };
  // Total derivative of a polynomial in (coords, atoms): formal coordinate
  // part plus the chain-rule contribution of each atom, d exp(u) = exp(u) du.
  auto dpoly = [&](const Poly& p) {
    Expr acc = wrap(p.derivative(coord));
    for (std::size_t i = 0; i < impl_->atoms.size(); ++i) {
      Poly factor = p.scaled_by_exponent(dim + static_cast<int>(i));
      if (factor.is_zero()) continue;
      acc = acc + wrap(std::move(factor)) * impl_->atoms[i]->arg.differentiate(coord);
    }
    return acc;
  };
  if (impl_->den.is_constant()) return dpoly(impl_->num);
  Expr n = wrap(impl_->num), d = wrap(impl_->den);
  return (dpoly(impl_->num) * d - n * dpoly(impl_->den)) / (d * d);
}

Expr Expr::differentiate(const std::string& coord) const {
  return differentiate(chart_.index_of(coord));
}

// ---------------------------------------------------------------------------
// Evaluation

Rational Expr::evaluate_exact(const std::vector<Rational>& point) const {
  if (!impl_->atoms.empty())
    throw EvalError("exact evaluation requires an exp-free expression");
  if (static_cast<int>(point.size()) != chart_.dim())
    throw DomainError("point dimension does not match chart");
  Rational d = impl_->den.evaluate(point);
  if (d == 0) throw PoleError("denominator vanishes at the evaluation point");
  return impl_->num.evaluate(point) / d;
}

double Expr::evaluate(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != chart_.dim())
    throw DomainError("point dimension does not match chart");
  std::vector<double> vals = point;
  vals.reserve(point.size() + impl_->atoms.size());
  for (const auto& a : impl_->atoms) vals.push_back(std::exp(a->arg.evaluate(point)));
  double d = impl_->den.evaluate(vals);
  if (d == 0.0) throw PoleError("denominator vanishes at the evaluation point");
  return impl_->num.evaluate(vals) / d;
}

BigFloat Expr::evaluate_big(const std::vector<BigFloat>& point) const {
  if (static_cast<int>(point.size()) != chart_.dim())
    throw DomainError("point dimension does not match chart");
  std::vector<BigFloat> vals = point;
  vals.reserve(point.size() + impl_->atoms.size());
  for (const auto& a : impl_->atoms) vals.push_back(exp(a->arg.evaluate_big(point)));
  BigFloat d = impl_->den.evaluate(vals);
  if (d == 0) throw PoleError("denominator vanishes at the evaluation point");
  return impl_->num.evaluate(vals) / d;
}

// ---------------------------------------------------------------------------
// Zero testing

namespace {

// Guarded high-precision evaluation: false when any denominator along the way
// comes within kPoleGuard of zero, so the sampler can retry elsewhere.
constexpr double kPoleGuard = 1e-25;

bool eval_big_guarded(const Expr& e, const std::vector<BigFloat>& point, BigFloat& out);

bool eval_impl_guarded(const Expr& e, const std::vector<BigFloat>& point,
                       BigFloat& num_out, BigFloat& den_out) {
  std::vector<BigFloat> vals = point;
  for (int i = 0; i < e.atom_count(); ++i) {
    BigFloat a;
    if (!eval_big_guarded(e.atom_arg(i), point, a)) return false;
    vals.push_back(exp(a));
  }
  den_out = e.den().evaluate(vals);
  if (abs(den_out) < BigFloat(kPoleGuard)) return false;
  num_out = e.num().evaluate(vals);
  return true;
}

bool eval_big_guarded(const Expr& e, const std::vector<BigFloat>& point, BigFloat& out) {
  BigFloat n, d;
  if (!eval_impl_guarded(e, point, n, d)) return false;
  out = n / d;
  return true;
}

}  // namespace

ZeroVerdict Expr::is_zero(std::uint64_t seed) const {
  if (impl_->num.is_zero()) return ZeroVerdict::proven_zero();
  if (impl_->atoms.empty()) {
    ZeroVerdict v;
    v.status = ZeroStatus::ProvenNonzero;
    return v;
  }
  int dim = chart_.dim();
  int wanted = std::max(kMinSamples, 2 * (dim + atom_count()));
  std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ULL);
  int budget = 40 * wanted;
  int good = 0;
  std::vector<Rational> rpoint(static_cast<std::size_t>(dim));
  std::vector<BigFloat> fpoint(static_cast<std::size_t>(dim));
  while (budget-- > 0 && good < wanted) {
    for (int i = 0; i < dim; ++i) {
      auto k = static_cast<std::int64_t>(rng() % 1025u) - 512;
      rpoint[static_cast<std::size_t>(i)] = Rational(k, 256);
      fpoint[static_cast<std::size_t>(i)] = BigFloat(k) / 256;
    }
    BigFloat v;
    if (!eval_big_guarded(*this, fpoint, v)) continue;
    ++good;
    if (abs(v) > BigFloat(kZeroTolerance)) {
      ZeroVerdict out;
      out.status = ZeroStatus::ProbablyNonzero;
      out.samples = good;
      out.tolerance = kZeroTolerance;
      for (int i = 0; i < dim; ++i)
        out.witness.emplace_back(chart_.coord(i), rpoint[static_cast<std::size_t>(i)].str());
      out.witness_value = format_magnitude(v);
      return out;
    }
  }
  if (good >= wanted) {
    ZeroVerdict out;
    out.status = ZeroStatus::ProbablyZero;
    out.samples = good;
    out.tolerance = kZeroTolerance;
    return out;
  }
  throw EvalError("zero test exhausted its resample budget; expression is singular on the sample box");
}

// ---------------------------------------------------------------------------
// Common denominators

std::vector<Poly> Expr::numerators_over_common_denominator(const std::vector<Expr>& es) {
  if (es.empty()) return {};
  const Chart& chart = es.front().chart_;
  int dim = chart.dim();
  // Union of all atom tables, sorted by key.
  std::vector<AtomPtr> atoms;
  for (const auto& e : es) {
    require_same_chart(chart, e.chart_);
    for (const auto& a : e.impl_->atoms) {
      auto it = std::lower_bound(
          atoms.begin(), atoms.end(), a->key,
          [](const AtomPtr& p, const std::string& k) { return p->key < k; });
      if (it == atoms.end() || (*it)->key != a->key) atoms.insert(it, a);
    }
  }
  int nvars = dim + static_cast<int>(atoms.size());
  auto remap_into_union = [&](const Expr& e, const Poly& p) {
    std::vector<int> map(static_cast<std::size_t>(dim + e.atom_count()));
    for (int v = 0; v < dim; ++v) map[static_cast<std::size_t>(v)] = v;
    for (int i = 0; i < e.atom_count(); ++i) {
      auto it = std::lower_bound(
          atoms.begin(), atoms.end(), e.impl_->atoms[static_cast<std::size_t>(i)]->key,
          [](const AtomPtr& p, const std::string& k) { return p->key < k; });
      map[static_cast<std::size_t>(dim + i)] = dim + static_cast<int>(it - atoms.begin());
    }
    return p.remapped(nvars, map);
  };
  Poly common = Poly::constant(nvars, Rational(1));
  std::vector<Poly> dens;
  dens.reserve(es.size());
  for (const auto& e : es) {
    dens.push_back(remap_into_union(e, e.impl_->den));
    common = poly_lcm(common, dens.back());
  }
  std::vector<Poly> nums;
  nums.reserve(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    Poly n = remap_into_union(es[i], es[i].impl_->num);
    nums.push_back(n * poly_divexact(common, dens[i]));
  }
  return nums;
}

}  // namespace jlie
