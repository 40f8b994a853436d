#include "jlie/multivector.hpp"

#include <algorithm>

#include "jlie/errors.hpp"

namespace jlie {

namespace {

// Insertion sort returning the permutation sign; 0 when an index repeats.
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

void require_chart(const Chart& a, const Chart& b) {
  if (a != b) throw DomainError("multivector operands live on different charts");
}

}  // namespace

MultiVector::MultiVector(Chart chart, int degree)
    : chart_(std::move(chart)), degree_(degree) {
  if (degree < 0) throw DomainError("multivector degree must be nonnegative");
}

MultiVector MultiVector::scalar(const Expr& f) {
  MultiVector m(f.chart(), 0);
  m.add_term({}, f);
  return m;
}

void MultiVector::add_term(const std::vector<int>& indices, const Expr& coeff) {
  if (static_cast<int>(indices.size()) != degree_)
    throw DomainError("index tuple length does not match multivector degree");
  require_chart(chart_, coeff.chart());
  for (int i : indices)
    if (i < 0 || i >= chart_.dim())
      throw DomainError("blade index out of range");
  std::vector<int> key = indices;
  int sign = sort_with_sign(key);
  if (sign == 0 || coeff.is_structural_zero()) return;
  Expr add = sign < 0 ? -coeff : coeff;
  auto it = components_.find(key);
  if (it == components_.end()) {
    components_.emplace(std::move(key), std::move(add));
    return;
  }
  it->second = it->second + add;
  if (it->second.is_structural_zero()) components_.erase(it);
}

Expr MultiVector::component(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != degree_)
    throw DomainError("index tuple length does not match multivector degree");
  std::vector<int> key = indices;
  int sign = sort_with_sign(key);
  if (sign == 0) return Expr::zero(chart_);
  auto it = components_.find(key);
  if (it == components_.end()) return Expr::zero(chart_);
  return sign < 0 ? -it->second : it->second;
}

ZeroVerdict MultiVector::is_zero(std::uint64_t seed) const {
  std::vector<ZeroVerdict> parts;
  parts.reserve(components_.size());
  for (const auto& [key, c] : components_) parts.push_back(c.is_zero(seed));
  return combine_verdicts(parts);
}

MultiVector MultiVector::operator-() const {
  MultiVector out(chart_, degree_);
  for (const auto& [key, c] : components_) out.components_.emplace(key, -c);
  return out;
}

MultiVector MultiVector::operator+(const MultiVector& o) const {
  require_chart(chart_, o.chart_);
  if (degree_ != o.degree_) throw DomainError("cannot add multivectors of different degree");
  MultiVector out = *this;
  for (const auto& [key, c] : o.components_) out.add_term(key, c);
  return out;
}

MultiVector MultiVector::operator-(const MultiVector& o) const { return *this + (-o); }

MultiVector MultiVector::operator*(const Expr& f) const {
  require_chart(chart_, f.chart());
  MultiVector out(chart_, degree_);
  if (f.is_structural_zero()) return out;
  for (const auto& [key, c] : components_) {
    Expr prod = c * f;
    if (!prod.is_structural_zero()) out.components_.emplace(key, std::move(prod));
  }
  return out;
}

bool MultiVector::operator==(const MultiVector& o) const {
  return chart_ == o.chart_ && degree_ == o.degree_ && components_ == o.components_;
}

std::string MultiVector::print() const {
  if (components_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : components_) {
    std::string blade;
    for (int i : key) {
      if (!blade.empty()) blade += "^";
      blade += "d" + chart_.coord(i);
    }
    std::string cs = c.print();
    std::string term;
    if (blade.empty()) term = cs;
    else if (cs == "1") term = blade;
    else if (cs == "-1") term = "-" + blade;
    else {
      if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
      term = cs + " * " + blade;
    }
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out;
}

nlohmann::ordered_json MultiVector::to_json() const {
  nlohmann::ordered_json comps = nlohmann::ordered_json::object();
  for (const auto& [key, c] : components_) {
    std::string k;
    for (int i : key) {
      if (!k.empty()) k += ",";
      k += std::to_string(i);
    }
    comps[k] = c.print();
  }
  nlohmann::ordered_json j;
  j["degree"] = degree_;
  j["components"] = comps;
  return j;
}

MultiVector MultiVector::from_json(const Chart& chart, const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("components"))
    throw ParseError("multivector JSON needs 'degree' and 'components'");
  if (!j["degree"].is_number_integer())
    throw ParseError("multivector degree must be an integer");
  MultiVector out(chart, j["degree"].get<int>());
  const auto& comps = j["components"];
  if (!comps.is_object()) throw ParseError("multivector 'components' must be an object");
  for (auto it = comps.begin(); it != comps.end(); ++it) {
    std::vector<int> idx;
    const std::string& key = it.key();
    std::size_t pos = 0;
    while (pos < key.size()) {
      std::size_t comma = key.find(',', pos);
      std::string part = key.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
      try {
        idx.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw ParseError("bad component key '" + key + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!it.value().is_string())
      throw ParseError("component '" + key + "' must be an expression string");
    out.add_term(idx, Expr::parse(chart, it.value().get<std::string>()));
  }
  return out;
}

// ---------------------------------------------------------------------------

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  require_chart(a.chart(), b.chart());
  MultiVector out(a.chart(), a.degree() + b.degree());
  for (const auto& [ka, ca] : a.components())
    for (const auto& [kb, cb] : b.components()) {
      std::vector<int> key = ka;
      key.insert(key.end(), kb.begin(), kb.end());
      out.add_term(key, ca * cb);
    }
  return out;
}

Expr apply(const MultiVector& x, const Expr& f) {
  require_chart(x.chart(), f.chart());
  if (x.degree() != 1) throw DomainError("apply needs a vector field");
  Expr acc = Expr::zero(x.chart());
  for (const auto& [key, c] : x.components()) acc = acc + c * f.differentiate(key[0]);
  return acc;
}

MultiVector contract_with_df(const MultiVector& p, const Expr& f) {
  require_chart(p.chart(), f.chart());
  if (p.degree() == 0) return MultiVector(p.chart(), 0);
  MultiVector out(p.chart(), p.degree() - 1);
  for (const auto& [key, c] : p.components())
    for (std::size_t k = 0; k < key.size(); ++k) {
      Expr d = f.differentiate(key[k]);
      if (d.is_structural_zero()) continue;
      std::vector<int> rest;
      rest.reserve(key.size() - 1);
      for (std::size_t m = 0; m < key.size(); ++m)
        if (m != k) rest.push_back(key[m]);
      Expr coeff = c * d;
      if (k % 2 == 1) coeff = -coeff;
      out.add_term(rest, coeff);
    }
  return out;
}

MultiVector lie_bracket(const MultiVector& x, const MultiVector& y) {
  require_chart(x.chart(), y.chart());
  if (x.degree() != 1 || y.degree() != 1)
    throw DomainError("lie_bracket needs two vector fields");
  MultiVector out(x.chart(), 1);
  for (const auto& [ky, cy] : y.components())
    out.add_term(ky, apply(x, cy));
  for (const auto& [kx, cx] : x.components())
    out.add_term(kx, -apply(y, cx));
  return out;
}

MultiVector schouten(const MultiVector& p, const MultiVector& q) {
  require_chart(p.chart(), q.chart());
  const Chart& chart = p.chart();
  int dp = p.degree(), dq = q.degree();
  if (dp == 0 && dq == 0) return MultiVector(chart, 0);
  if (dp == 0) return contract_with_df(q, p.component({}));
  if (dq == 0) return contract_with_df(p, q.component({}));

  MultiVector out(chart, dp + dq - 1);
  int pre = (dp + 1) % 2 == 0 ? 1 : -1;
  for (const auto& [ka, f] : p.components())
    for (const auto& [kb, g] : q.components())
      for (int i = 1; i <= dp; ++i)
        for (int j = 1; j <= dq; ++j) {
          int a = ka[static_cast<std::size_t>(i - 1)];
          int b = kb[static_cast<std::size_t>(j - 1)];
          // Lie bracket of factor i of f*blade(ka) against factor j of
          // g*blade(kb); the coefficient rides on the first factor.
          std::vector<std::pair<Expr, int>> born;
          Expr scale = Expr::one(chart);
          if (i == 1 && j == 1) {
            born.emplace_back(f * g.differentiate(a), b);
            born.emplace_back(-(g * f.differentiate(b)), a);
          } else if (i == 1) {
            born.emplace_back(-f.differentiate(b), a);
            scale = g;
          } else if (j == 1) {
            born.emplace_back(g.differentiate(a), b);
            scale = f;
          } else {
            continue;
          }
          int sgn = pre * ((i + j) % 2 == 0 ? 1 : -1);
          std::vector<int> rest;
          rest.reserve(static_cast<std::size_t>(dp + dq - 2));
          for (int m = 0; m < dp; ++m)
            if (m != i - 1) rest.push_back(ka[static_cast<std::size_t>(m)]);
          for (int m = 0; m < dq; ++m)
            if (m != j - 1) rest.push_back(kb[static_cast<std::size_t>(m)]);
          for (auto& [c, e] : born) {
            if (c.is_structural_zero()) continue;
            std::vector<int> key;
            key.reserve(rest.size() + 1);
            key.push_back(e);
            key.insert(key.end(), rest.begin(), rest.end());
            Expr coeff = scale * c;
            if (sgn < 0) coeff = -coeff;
            out.add_term(key, coeff);
          }
        }
  return out;
}

}  // namespace jlie
