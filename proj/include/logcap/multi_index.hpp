#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace logcap {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponent vector R = (r_1, ..., r_m) with nonnegative entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t m) : entries_(m, 0) {}
  MultiIndex(std::initializer_list<int> values) : entries_(values) { validate(); }
  explicit MultiIndex(std::vector<int> values) : entries_(std::move(values)) { validate(); }

  static MultiIndex ones(std::size_t m) { return MultiIndex(std::vector<int>(m, 1)); }
  static MultiIndex unit(std::size_t m, std::size_t i, int value = 1) {
    MultiIndex out(m);
    out.entries_.at(i) = value;
    out.validate();
    return out;
  }

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int at(std::size_t i) const { return entries_.at(i); }
  void set(std::size_t i, int value) {
    if (value < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
    entries_.at(i) = value;
  }

  /// |R|_1
  int total() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int v) { return v == 0; });
  }

  std::span<const int> values() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Componentwise a <= b.
  bool divides(const MultiIndex& other) const {
    require_same_size(other);
    for (std::size_t i = 0; i < size(); ++i)
      if (entries_[i] > other.entries_[i]) return false;
    return true;
  }

  MultiIndex operator+(const MultiIndex& other) const {
    require_same_size(other);
    MultiIndex out(*this);
    for (std::size_t i = 0; i < size(); ++i) out.entries_[i] += other.entries_[i];
    return out;
  }

  /// Componentwise difference; requires other.divides(*this).
  MultiIndex operator-(const MultiIndex& other) const {
    if (!other.divides(*this)) throw std::invalid_argument("multi-index difference would be negative");
    MultiIndex out(*this);
    for (std::size_t i = 0; i < size(); ++i) out.entries_[i] -= other.entries_[i];
    return out;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ",";
      out += std::to_string(entries_[i]);
    }
    return out + ")";
  }

  void require_same_size(const MultiIndex& other) const {
    if (other.size() != size())
      throw DimensionError("multi-index length " + std::to_string(other.size()) + " != " +
                           std::to_string(size()));
  }

 private:
  void validate() const {
    for (int v : entries_)
      if (v < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
  }

  std::vector<int> entries_;
};

/// Graded lexicographic order: total degree first, then lexicographic with x_1 largest.
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int ta = a.total();
    int tb = b.total();
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Calls visit(R) for every R in the box prod_i [0, upper_i], in graded-lex order.
template <class Visit>
void for_each_in_box(const std::vector<int>& upper, Visit&& visit) {
  std::vector<MultiIndex> all;
  const std::size_t m = upper.size();
  std::vector<int> cur(m, 0);
  for (int u : upper)
    if (u < 0) return;
  while (true) {
    all.emplace_back(cur);
    std::size_t i = 0;
    while (i < m && cur[i] == upper[i]) cur[i++] = 0;
    if (i == m) break;
    ++cur[i];
  }
  std::sort(all.begin(), all.end(), GrlexLess{});
  for (const auto& r : all) visit(r);
}

/// Calls visit(R) for every R in Z_+^m with |R|_1 == total (graded-lex order).
template <class Visit>
void for_each_composition(std::size_t m, int total, Visit&& visit) {
  if (m == 0) {
    if (total == 0) visit(MultiIndex{});
    return;
  }
  std::vector<int> cur(m, 0);
  // Recursive generation in lex-descending order, which is grlex within a fixed degree.
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i + 1 == m) {
      cur[i] = remaining;
      visit(MultiIndex(cur));
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  rec(rec, 0, total);
}

}  // namespace logcap
