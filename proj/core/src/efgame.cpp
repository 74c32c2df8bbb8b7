#include "limlaw/efgame.hpp"

#include <algorithm>
#include <array>

#include "limlaw/errors.hpp"

namespace limlaw {
namespace {

struct BudgetSignal {};

bool same_atomic_type(const RelationalView& a, const RelationalView& b, int p, int q, int x,
                      int y) {
  if ((p == x) != (q == y)) return false;
  for (Relation r : a.signature().relations()) {
    if (a.holds(r, p, x) != b.holds(r, q, y)) return false;
    if (a.holds(r, x, p) != b.holds(r, y, q)) return false;
  }
  return true;
}

std::string memo_key(const std::vector<std::pair<int, int>>& pairs, int rounds) {
  std::string key;
  key.reserve(1 + pairs.size() * 4);
  key.push_back(static_cast<char>(rounds));
  for (const auto& [x, y] : pairs) {
    key.push_back(static_cast<char>(x & 0xff));
    key.push_back(static_cast<char>(x >> 8));
    key.push_back(static_cast<char>(y & 0xff));
    key.push_back(static_cast<char>(y >> 8));
  }
  return key;
}

}  // namespace

bool is_partial_isomorphism(const RelationalView& left, const RelationalView& right,
                            const std::vector<std::pair<int, int>>& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i; j < pairs.size(); ++j) {
      if (!same_atomic_type(left, right, pairs[i].first, pairs[i].second, pairs[j].first,
                            pairs[j].second)) {
        return false;
      }
    }
  }
  return true;
}

bool EfSolver::extends(const RelationalView& a, const RelationalView& b,
                       const std::vector<std::pair<int, int>>& pairs, int p, int q) const {
  if (!same_atomic_type(a, b, p, q, p, q)) return false;
  for (const auto& [x, y] : pairs) {
    if (!same_atomic_type(a, b, p, q, x, y)) return false;
  }
  return true;
}

bool EfSolver::search(const RelationalView& a, const RelationalView& b,
                      std::vector<std::pair<int, int>>& pairs, int rounds) {
  if (rounds == 0) return true;
  if (++nodes_ > budget_) throw BudgetSignal{};

  std::sort(pairs.begin(), pairs.end());
  const std::string key = memo_key(pairs, rounds);
  if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::vector<char> used_a(static_cast<std::size_t>(a.size()), 0);
  std::vector<char> used_b(static_cast<std::size_t>(b.size()), 0);
  for (const auto& [x, y] : pairs) {
    used_a[static_cast<std::size_t>(x)] = 1;
    used_b[static_cast<std::size_t>(y)] = 1;
  }

  bool result = true;
  // Replaying an already chosen point never helps Spoiler: Duplicator answers
  // with its partner and the position is unchanged.
  for (int side = 0; side < 2 && result; ++side) {
    const RelationalView& spoil = side == 0 ? a : b;
    const RelationalView& dup = side == 0 ? b : a;
    const auto& used_spoil = side == 0 ? used_a : used_b;
    const auto& used_dup = side == 0 ? used_b : used_a;
    for (int p = 0; p < spoil.size() && result; ++p) {
      if (used_spoil[static_cast<std::size_t>(p)]) continue;
      bool answered = false;
      for (int q = 0; q < dup.size() && !answered; ++q) {
        if (used_dup[static_cast<std::size_t>(q)]) continue;
        const int pa = side == 0 ? p : q;
        const int pb = side == 0 ? q : p;
        if (!extends(a, b, pairs, pa, pb)) continue;
        std::vector<std::pair<int, int>> next = pairs;
        next.emplace_back(pa, pb);
        answered = search(a, b, next, rounds - 1);
      }
      result = answered;
    }
  }
  memo_.emplace(key, result);
  return result;
}

GameOutcome EfSolver::solve(const GameConfig& cfg) {
  if (!(cfg.left.signature() == cfg.right.signature())) {
    throw InputError("EF game between structures of different signatures");
  }
  if (!is_partial_isomorphism(cfg.left, cfg.right, cfg.pairs)) return GameOutcome::spoiler;
  std::vector<std::pair<int, int>> pairs = cfg.pairs;
  try {
    return search(cfg.left, cfg.right, pairs, cfg.rounds_left) ? GameOutcome::duplicator
                                                                : GameOutcome::spoiler;
  } catch (const BudgetSignal&) {
    return GameOutcome::budget_exhausted;
  }
}

bool duplicator_wins(const GameConfig& cfg) {
  EfSolver solver;
  return solver.solve(cfg) == GameOutcome::duplicator;
}

GameOutcome equiv_k_budgeted(const RelationalView& a, const RelationalView& b, int k,
                             std::uint64_t node_budget, std::uint64_t* nodes_visited) {
  EfSolver solver(node_budget);
  const GameOutcome out = solver.solve(GameConfig{a, b, {}, k});
  if (nodes_visited != nullptr) *nodes_visited = solver.nodes_visited();
  return out;
}

bool equiv_k(const RelationalView& a, const RelationalView& b, int k) {
  return equiv_k_budgeted(a, b, k, EfSolver::unlimited) == GameOutcome::duplicator;
}

std::size_t SegmentGame::VectorHash::operator()(const std::vector<int>& v) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int x : v) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

int SegmentGame::type_of(const MarkedSegment& s, int k) {
  if (k <= 0) return 0;
  const bool empty = s.parts.empty();
  const bool la = s.left_attached && !empty;
  const bool ra = s.right_attached && !empty;

  std::vector<int> key;
  key.reserve(s.parts.size() + 2);
  key.push_back(k);
  key.push_back((la ? 1 : 0) | (ra ? 2 : 0));
  key.insert(key.end(), s.parts.begin(), s.parts.end());
  if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

  // One entry per possible move: the new point's E-relation to the two
  // boundaries, then the (k-1)-types of the pieces on either side of it.
  std::vector<std::array<int, 3>> moves;
  const std::size_t last = s.parts.empty() ? 0 : s.parts.size() - 1;
  MarkedSegment left;
  MarkedSegment right;
  for (std::size_t i = 0; i < s.parts.size(); ++i) {
    const int size = s.parts[i];
    for (int l = 0; l < size; ++l) {
      const int r = size - 1 - l;
      left.parts.assign(s.parts.begin(), s.parts.begin() + static_cast<std::ptrdiff_t>(i));
      if (l > 0) left.parts.push_back(l);
      left.left_attached = la && !left.parts.empty();
      left.right_attached = l > 0;

      right.parts.clear();
      if (r > 0) right.parts.push_back(r);
      right.parts.insert(right.parts.end(), s.parts.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                         s.parts.end());
      right.left_attached = r > 0;
      right.right_attached = ra && !right.parts.empty();

      const int boundary = ((i == 0 && la) ? 1 : 0) | ((i == last && ra) ? 2 : 0);
      moves.push_back({boundary, type_of(left, k - 1), type_of(right, k - 1)});
    }
  }
  std::sort(moves.begin(), moves.end());
  moves.erase(std::unique(moves.begin(), moves.end()), moves.end());

  std::vector<int> signature;
  signature.reserve(moves.size() * 3);
  for (const auto& m : moves) signature.insert(signature.end(), m.begin(), m.end());
  if (interned_.size() <= static_cast<std::size_t>(k)) interned_.resize(static_cast<std::size_t>(k) + 1);
  auto& table = interned_[static_cast<std::size_t>(k)];
  const int id = table.try_emplace(std::move(signature), static_cast<int>(table.size())).first->second;
  memo_.emplace(std::move(key), id);
  return id;
}

bool fast_equiv_convex(const MarkedSegment& s, const MarkedSegment& t, int k) {
  thread_local SegmentGame game;
  return game.equivalent(s, t, k);
}

bool fast_equiv_convex(const ConvexLinearOrder& a, const ConvexLinearOrder& b, int k) {
  return fast_equiv_convex(MarkedSegment::whole(a.shape), MarkedSegment::whole(b.shape), k);
}

ConvexLinearOrder reduce_representative(const ConvexLinearOrder& c, int k, SegmentGame& game) {
  const int cap = k >= 1 && k < 30 ? (1 << k) - 1 : (k <= 0 ? 1 : std::numeric_limits<int>::max());
  std::vector<int> capped;
  for (int p : c.shape.parts()) capped.push_back(std::min(p, cap));
  std::vector<int> reduced;
  int run = 0;
  for (std::size_t i = 0; i < capped.size(); ++i) {
    run = (i > 0 && capped[i] == capped[i - 1]) ? run + 1 : 1;
    if (run <= cap) reduced.push_back(capped[i]);
  }
  ConvexLinearOrder candidate{PartSequence(std::move(reduced))};
  if (candidate == c) return c;
  return game.equivalent(candidate, c, k) ? candidate : c;
}

ConvexLinearOrder reduce_representative(const ConvexLinearOrder& c, int k) {
  thread_local SegmentGame game;
  return reduce_representative(c, k, game);
}

}  // namespace limlaw
