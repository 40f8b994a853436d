#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace jlie {

// An ordered list of coordinate names on an open subset of R^n. Charts are
// immutable and cheap to copy; everything downstream (expressions,
// multivectors, structures) is pinned to one chart and cross-chart mixing is
// rejected. Two charts are interchangeable iff their coordinate lists match.
class Chart {
 public:
  // Coordinate names must be distinct identifiers ([A-Za-z_][A-Za-z0-9_]*),
  // and there must be at least one. Throws DomainError otherwise.
  static Chart make(std::vector<std::string> coords, std::string name = "chart");

  int dim() const { return static_cast<int>(d_->coords.size()); }
  const std::string& name() const { return d_->name; }
  const std::vector<std::string>& coords() const { return d_->coords; }
  const std::string& coord(int i) const;

  // Index of a coordinate name; throws DomainError if unknown.
  int index_of(const std::string& coord) const;
  bool has(const std::string& coord) const;

  // Equality of coordinate lists (names are labels, not identity).
  friend bool operator==(const Chart& a, const Chart& b) {
    return a.d_ == b.d_ || a.d_->coords == b.d_->coords;
  }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  struct Data {
    std::string name;
    std::vector<std::string> coords;
    std::map<std::string, int> index;
  };
  explicit Chart(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

}  // namespace jlie
