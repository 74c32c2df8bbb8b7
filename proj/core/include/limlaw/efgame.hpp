#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limlaw/relational.hpp"
#include "limlaw/structures.hpp"

namespace limlaw {

// A position of the Ehrenfeucht-Fraisse game: points already paired between
// the two structures and the number of rounds still to play.
struct GameConfig {
  const RelationalView& left;
  const RelationalView& right;
  std::vector<std::pair<int, int>> pairs;
  int rounds_left = 0;
};

enum class GameOutcome { duplicator, spoiler, budget_exhausted };

// True when the paired points induce an injective map preserving every
// relation of the signature in both directions.
bool is_partial_isomorphism(const RelationalView& left, const RelationalView& right,
                            const std::vector<std::pair<int, int>>& pairs);

// Exhaustive game-tree search that works for any pair of relational views.
// Positions are memoized on (rounds left, sorted pairs); branches are cut as
// soon as the partial map breaks. The memo lives as long as the solver, so one
// solver should only be reused for the same pair of structures.
class EfSolver {
 public:
  static constexpr std::uint64_t unlimited = std::numeric_limits<std::uint64_t>::max();

  explicit EfSolver(std::uint64_t node_budget = unlimited) : budget_(node_budget) {}

  GameOutcome solve(const GameConfig& cfg);
  [[nodiscard]] std::uint64_t nodes_visited() const { return nodes_; }

 private:
  bool search(const RelationalView& a, const RelationalView& b,
              std::vector<std::pair<int, int>>& pairs, int rounds);
  bool extends(const RelationalView& a, const RelationalView& b,
               const std::vector<std::pair<int, int>>& pairs, int p, int q) const;

  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<std::string, bool> memo_;
};

// Unbounded search from cfg.
bool duplicator_wins(const GameConfig& cfg);

// a and b agree on all sentences of quantifier depth <= k. Throws InputError
// when the signatures differ.
bool equiv_k(const RelationalView& a, const RelationalView& b, int k);

// Budgeted variant; nodes_visited receives the search size when non-null.
GameOutcome equiv_k_budgeted(const RelationalView& a, const RelationalView& b, int k,
                             std::uint64_t node_budget, std::uint64_t* nodes_visited = nullptr);

// Stretch of a convex linear order between two played points (or a structure
// end). An attached end block lies in the class of the adjacent played point.
struct MarkedSegment {
  std::vector<int> parts;
  bool left_attached = false;
  bool right_attached = false;

  static MarkedSegment whole(const PartSequence& shape) {
    return {{shape.parts().begin(), shape.parts().end()}, false, false};
  }

  friend bool operator==(const MarkedSegment&, const MarkedSegment&) = default;
};

// Decides the k-round game on marked segments of convex linear orders by
// splitting at each possible move: a move cuts the segment into a left and a
// right part that are played independently afterwards. Each segment gets an
// interned type id per round count; two segments are equivalent iff their ids
// match. Not thread-safe; use one instance per thread.
class SegmentGame {
 public:
  int type_of(const MarkedSegment& s, int k);
  int type_of(const ConvexLinearOrder& c, int k) { return type_of(MarkedSegment::whole(c.shape), k); }

  bool equivalent(const MarkedSegment& s, const MarkedSegment& t, int k) {
    return type_of(s, k) == type_of(t, k);
  }
  bool equivalent(const ConvexLinearOrder& a, const ConvexLinearOrder& b, int k) {
    return type_of(a, k) == type_of(b, k);
  }

  [[nodiscard]] std::size_t memo_size() const { return memo_.size(); }

 private:
  struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept;
  };

  std::unordered_map<std::vector<int>, int, VectorHash> memo_;
  std::vector<std::unordered_map<std::vector<int>, int, VectorHash>> interned_;
};

// Uses a thread-local SegmentGame.
bool fast_equiv_convex(const MarkedSegment& s, const MarkedSegment& t, int k);
bool fast_equiv_convex(const ConvexLinearOrder& a, const ConvexLinearOrder& b, int k);

// Caps every part at 2^k - 1 and truncates runs of more than 2^k - 1 equal
// consecutive parts to 2^k - 1 copies. The result is returned only when the
// segment game confirms it is k-equivalent to c; otherwise c comes back.
ConvexLinearOrder reduce_representative(const ConvexLinearOrder& c, int k, SegmentGame& game);
ConvexLinearOrder reduce_representative(const ConvexLinearOrder& c, int k);

}  // namespace limlaw
