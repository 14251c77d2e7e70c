#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace wmpg {

using VertexId = std::size_t;

/// Dense subset of {0, ..., n-1}.
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe, false) {}
  VertexSet(std::size_t universe, std::initializer_list<VertexId> members) : bits_(universe, false) {
    for (VertexId v : members) insert(v);
  }
  VertexSet(std::size_t universe, const std::vector<VertexId>& members) : bits_(universe, false) {
    for (VertexId v : members) insert(v);
  }

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    s.bits_.assign(universe, true);
    s.count_ = universe;
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(VertexId v) const { return v < bits_.size() && bits_[v]; }

  void insert(VertexId v) {
    if (v >= bits_.size()) throw std::out_of_range("vertex outside the set universe");
    if (!bits_[v]) {
      bits_[v] = true;
      ++count_;
    }
  }
  void erase(VertexId v) {
    if (contains(v)) {
      bits_[v] = false;
      --count_;
    }
  }

  std::vector<VertexId> members() const {
    std::vector<VertexId> out;
    out.reserve(count_);
    for (VertexId v = 0; v < bits_.size(); ++v)
      if (bits_[v]) out.push_back(v);
    return out;
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (VertexId v = 0; v < o.bits_.size(); ++v)
      if (o.bits_[v]) insert(v);
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (VertexId v = 0; v < o.bits_.size(); ++v)
      if (o.bits_[v]) erase(v);
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (VertexId v = 0; v < bits_.size(); ++v)
      if (bits_[v] && !o.contains(v)) erase(v);
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }

  bool subset_of(const VertexSet& o) const {
    for (VertexId v = 0; v < bits_.size(); ++v)
      if (bits_[v] && !o.contains(v)) return false;
    return true;
  }
  bool intersects(const VertexSet& o) const {
    for (VertexId v = 0; v < bits_.size(); ++v)
      if (bits_[v] && o.contains(v)) return true;
    return false;
  }

private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

}  // namespace wmpg
