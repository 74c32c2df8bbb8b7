#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace limlaw {

// Ordered list of positive part sizes. This is the canonical encoding shared by
// convex linear orders (class sizes), layered permutations (block sizes),
// compositions (part sizes) and fractured orders. Points are numbered
// 0..size()-1 in left-to-right order.
class PartSequence {
 public:
  // Throws std::invalid_argument on an empty list or a part < 1.
  explicit PartSequence(std::vector<int> parts);

  // The one-point structure.
  static PartSequence bullet() { return PartSequence({1}); }

  // Comma-separated literal such as "2,1,3"; whitespace is ignored.
  static PartSequence parse(std::string_view text);

  [[nodiscard]] std::span<const int> parts() const { return parts_; }
  [[nodiscard]] std::size_t num_parts() const { return parts_.size(); }
  [[nodiscard]] int part(std::size_t i) const { return parts_[i]; }
  [[nodiscard]] int last_part() const { return parts_.back(); }
  [[nodiscard]] int size() const { return size_; }

  // Part index of every point, in point order.
  [[nodiscard]] std::vector<int> class_of_points() const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const PartSequence&, const PartSequence&) = default;
  friend auto operator<=>(const PartSequence& a, const PartSequence& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

// All 2^(n-1) part sequences summing to n, in lexicographic order.
std::vector<PartSequence> all_shapes(int n);

}  // namespace limlaw

template <>
struct std::hash<limlaw::PartSequence> {
  std::size_t operator()(const limlaw::PartSequence& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : p.parts()) {
      h ^= static_cast<std::size_t>(v);
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};
