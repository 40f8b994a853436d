#include "jlie/chart.hpp"

#include <cctype>

#include "jlie/errors.hpp"

namespace jlie {

namespace {
bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}
}  // namespace

Chart Chart::make(std::vector<std::string> coords, std::string name) {
  if (coords.empty()) throw DomainError("chart needs at least one coordinate");
  auto d = std::make_shared<Data>();
  d->name = std::move(name);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!valid_identifier(coords[i]))
      throw DomainError("coordinate name '" + coords[i] + "' is not an identifier");
    if (coords[i] == "exp")
      throw DomainError("coordinate name 'exp' collides with the exponential");
    if (!d->index.emplace(coords[i], static_cast<int>(i)).second)
      throw DomainError("duplicate coordinate name '" + coords[i] + "'");
  }
  d->coords = std::move(coords);
  return Chart(std::move(d));
}

const std::string& Chart::coord(int i) const {
  if (i < 0 || i >= dim()) throw DomainError("coordinate index out of range");
  return d_->coords[static_cast<std::size_t>(i)];
}

int Chart::index_of(const std::string& coord) const {
  auto it = d_->index.find(coord);
  if (it == d_->index.end())
    throw DomainError("unknown coordinate '" + coord + "' on chart [" + [this] {
      std::string s;
      for (const auto& c : d_->coords) {
        if (!s.empty()) s += ",";
        s += c;
      }
      return s;
    }() + "]");
  return it->second;
}

bool Chart::has(const std::string& coord) const {
  return d_->index.count(coord) != 0;
}

}  // namespace jlie
