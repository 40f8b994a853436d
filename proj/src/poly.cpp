#include "jlie/poly.hpp"

#include <algorithm>

#include "jlie/errors.hpp"

namespace jlie {

namespace mp = boost::multiprecision;

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.emplace(Mono(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw InternalError("poly variable index out of range");
  Poly p(nvars);
  Mono m(static_cast<std::size_t>(nvars), 0);
  m[static_cast<std::size_t>(index)] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw InternalError("constant_value on non-constant polynomial");
  return terms_.begin()->second;
}

std::uint64_t Poly::total_degree() const {
  return terms_.empty() ? 0 : mono_degree(terms_.rbegin()->first);
}

std::uint32_t Poly::degree_in(int var) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<std::size_t>(var)]);
  return d;
}

bool Poly::uses(int var) const {
  for (const auto& [m, c] : terms_)
    if (m[static_cast<std::size_t>(var)] != 0) return true;
  return false;
}

const Mono& Poly::leading_mono() const {
  if (terms_.empty()) throw InternalError("leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& Poly::leading_coeff() const {
  if (terms_.empty()) throw InternalError("leading term of zero polynomial");
  return terms_.rbegin()->second;
}

void Poly::add_term(const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(nvars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Mono m(ma);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r(nvars_);
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Poly Poly::pow(std::uint32_t k) const {
  Poly r = Poly::constant(nvars_, Rational(1));
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r(nvars_);
  auto v = static_cast<std::size_t>(var);
  for (const auto& [m, c] : terms_) {
    if (m[v] == 0) continue;
    Mono d(m);
    Rational k(d[v]);
    d[v] -= 1;
    r.add_term(d, c * k);
  }
  return r;
}

Poly Poly::scaled_by_exponent(int var) const {
  Poly r(nvars_);
  auto v = static_cast<std::size_t>(var);
  for (const auto& [m, c] : terms_) {
    if (m[v] == 0) continue;
    r.add_term(m, c * Rational(m[v]));
  }
  return r;
}

Poly Poly::substituted(int var, const Rational& value) const {
  Poly r(nvars_);
  auto v = static_cast<std::size_t>(var);
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    for (std::uint32_t k = 0; k < m[v]; ++k) coeff *= value;
    Mono mm(m);
    mm[v] = 0;
    r.add_term(mm, coeff);
  }
  return r;
}

Poly Poly::remapped(int new_nvars, const std::vector<int>& map) const {
  Poly r(new_nvars);
  for (const auto& [m, c] : terms_) {
    Mono mm(static_cast<std::size_t>(new_nvars), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (map[i] < 0) throw InternalError("remap drops a used variable");
      mm[static_cast<std::size_t>(map[i])] = m[i];
    }
    r.add_term(mm, c);
  }
  return r;
}

Poly poly_divexact(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw InternalError("division by zero polynomial");
  if (d.is_constant()) return p.scaled(Rational(1) / d.constant_value());
  Poly q(p.nvars());
  Poly r = p;
  const Mono& ld = d.leading_mono();
  const Rational& lc = d.leading_coeff();
  while (!r.is_zero()) {
    const Mono& lr = r.leading_mono();
    Mono t(lr);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < ld[i]) throw InternalError("inexact polynomial division");
      t[i] -= ld[i];
    }
    Rational c = r.leading_coeff() / lc;
    Poly mono(p.nvars());
    mono.add_term(t, c);
    q = q + mono;
    r = r - mono * d;
  }
  return q;
}

namespace {

// Coefficient of var^k, with var's exponent zeroed out.
Poly coeff_of_power(const Poly& p, int var, std::uint32_t k) {
  Poly r(p.nvars());
  auto v = static_cast<std::size_t>(var);
  for (const auto& [m, c] : p.terms()) {
    if (m[v] != k) continue;
    Mono mm(m);
    mm[v] = 0;
    r.add_term(mm, c);
  }
  return r;
}

Poly content_in(const Poly& p, int var) {
  Poly g(p.nvars());
  std::uint32_t d = p.degree_in(var);
  for (std::uint32_t k = 0; k <= d; ++k) {
    Poly c = coeff_of_power(p, var, k);
    if (!c.is_zero()) g = poly_gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

// Pseudo-remainder of a by b in var; requires deg_var(b) >= 1.
Poly prem(Poly a, const Poly& b, int var) {
  std::uint32_t db = b.degree_in(var);
  Poly lb = coeff_of_power(b, var, db);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    std::uint32_t da = a.degree_in(var);
    Poly la = coeff_of_power(a, var, da);
    Poly shift = Poly::variable(a.nvars(), var).pow(da - db);
    a = lb * a - la * shift * b;
  }
  return a;
}

int max_used_var(const Poly& a, const Poly& b) {
  for (int v = a.nvars() - 1; v >= 0; --v)
    if (a.uses(v) || b.uses(v)) return v;
  return -1;
}

}  // namespace

Poly poly_make_primitive(const Poly& p, Rational* factor) {
  if (factor) *factor = Rational(1);
  if (p.is_zero()) return p;
  BigInt den_lcm = 1, num_gcd = 0;
  for (const auto& [m, c] : p.terms()) {
    den_lcm = mp::lcm(den_lcm, mp::denominator(c));
    num_gcd = mp::gcd(num_gcd, mp::numerator(c));
  }
  Rational f(den_lcm, num_gcd);  // num_gcd > 0 since p != 0
  Poly scaled = p.scaled(f);
  if (scaled.leading_coeff() < 0) {
    f = -f;
    scaled = -scaled;
  }
  if (factor) *factor = f;
  return scaled;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? b : poly_make_primitive(b);
  if (b.is_zero()) return poly_make_primitive(a);
  if (a.is_constant() || b.is_constant())
    return Poly::constant(a.nvars(), Rational(1));
  int v = max_used_var(a, b);
  if (!a.uses(v)) return poly_gcd(a, content_in(b, v));
  if (!b.uses(v)) return poly_gcd(content_in(a, v), b);

  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly A = poly_divexact(a, ca);
  Poly B = poly_divexact(b, cb);
  Poly cg = poly_gcd(ca, cb);

  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  while (!B.is_zero()) {
    if (B.degree_in(v) == 0) {
      // Both sides are primitive in v, so a v-free remainder forces a
      // constant gcd of the primitive parts.
      return poly_make_primitive(cg);
    }
    Poly R = prem(A, B, v);
    A = B;
    if (!R.is_zero()) {
      R = poly_divexact(R, content_in(R, v));
      R = poly_make_primitive(R);
    }
    B = R;
  }
  Poly result = poly_divexact(A, content_in(A, v)) * cg;
  return poly_make_primitive(result);
}

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.nvars());
  return poly_make_primitive(poly_divexact(a * b, poly_gcd(a, b)));
}

}  // namespace jlie
