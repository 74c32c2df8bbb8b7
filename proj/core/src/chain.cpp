#include "limlaw/chain.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "limlaw/efgame.hpp"
#include "limlaw/errors.hpp"

namespace limlaw {
namespace {

GameOutcome oracle(const ConvexLinearOrder& a, const ConvexLinearOrder& b, int k,
                   std::uint64_t budget) {
  const RelationalView va(Theory::convex, a.shape);
  const RelationalView vb(Theory::convex, b.shape);
  const GameOutcome out = equiv_k_budgeted(va, vb, k, budget);
  if (out == GameOutcome::budget_exhausted) {
    throw BudgetExhausted("equivalence budget exhausted deciding " + a.shape.to_string() +
                          " vs " + b.shape.to_string() + " at k=" + std::to_string(k));
  }
  return out;
}

void confirm(bool expected_equivalent, const ConvexLinearOrder& a, const ConvexLinearOrder& b,
             int k, std::uint64_t budget) {
  const bool equivalent = oracle(a, b, k, budget) == GameOutcome::duplicator;
  if (equivalent != expected_equivalent) {
    throw VerificationFailure("segment game and game-tree oracle disagree on " +
                              a.shape.to_string() + " vs " + b.shape.to_string() +
                              " at k=" + std::to_string(k) + " (oracle says " +
                              (equivalent ? "equivalent" : "inequivalent") + ")");
  }
}

// Tarjan's algorithm. Components come out in reverse topological order: every
// component is emitted after all components reachable from it.
std::vector<std::vector<int>> strongly_connected_components(const Chain& chain) {
  const int n = static_cast<int>(chain.states.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  struct Frame {
    int v;
    int edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto v = static_cast<std::size_t>(f.v);
      if (f.edge < 2) {
        const int w = f.edge == 0 ? chain.states[v].succ_plus : chain.states[v].succ_hat;
        ++f.edge;
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] == -1) {
          index[wi] = low[wi] = counter++;
          stack.push_back(w);
          on_stack[wi] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[wi]) {
          low[v] = std::min(low[v], index[wi]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> component;
        int w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          component.push_back(w);
        } while (w != f.v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      const int finished = f.v;
      frames.pop_back();
      if (!frames.empty()) {
        const auto parent = static_cast<std::size_t>(frames.back().v);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return components;
}

std::vector<int> component_of(const std::vector<std::vector<int>>& components, std::size_t n) {
  std::vector<int> out(n, -1);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (int v : components[c]) out[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  return out;
}

std::array<int, 2> successors(const Chain& chain, int v) {
  const auto& s = chain.states[static_cast<std::size_t>(v)];
  return {s.succ_plus, s.succ_hat};
}

// Period of a strongly connected component: gcd over its internal edges
// u -> w of level(u) + 1 - level(w), with levels from a BFS inside it.
// Zero when the component has no internal edge.
int component_period(const Chain& chain, const std::vector<int>& component,
                     const std::vector<int>& comp_of, int self) {
  std::unordered_map<int, int> level;
  std::deque<int> queue{component.front()};
  level[component.front()] = 0;
  int period = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : successors(chain, u)) {
      if (comp_of[static_cast<std::size_t>(w)] != self) continue;
      const auto it = level.find(w);
      if (it == level.end()) {
        level[w] = level[u] + 1;
        queue.push_back(w);
      } else {
        period = std::gcd(period, std::abs(level[u] + 1 - it->second));
      }
    }
  }
  return period;
}

}  // namespace

Chain build_chain(int k, const AcceptPredicate& accept, const ChainOptions& options) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  SegmentGame game;
  Chain chain;
  chain.k = k;
  chain.start = 0;
  chain.states.push_back(ChainState{0, bullet(), false, 0, 0});
  std::unordered_map<int, int> state_of_type{{game.type_of(bullet(), k), 0}};

  std::vector<int> level{0};
  for (std::size_t next = 0; next < chain.states.size(); ++next) {
    if (options.horizon >= 0 && level[next] >= options.horizon) {
      chain.states[next].expanded = false;
      continue;
    }
    for (BuildStep step : {BuildStep::plus_bullet, BuildStep::hat}) {
      const ConvexLinearOrder grown = apply(chain.states[next].representative, step);
      const ConvexLinearOrder reduced = reduce_representative(grown, k, game);
      if (options.verify_with_oracle && !(reduced == grown)) {
        confirm(true, grown, reduced, k, options.oracle_budget);
      }
      const int type = game.type_of(reduced, k);
      int target = 0;
      if (const auto it = state_of_type.find(type); it != state_of_type.end()) {
        target = it->second;
        if (options.verify_with_oracle) {
          confirm(true, reduced, chain.states[static_cast<std::size_t>(target)].representative, k,
                  options.oracle_budget);
        }
      } else {
        if (options.verify_with_oracle) {
          for (const auto& existing : chain.states) {
            confirm(false, reduced, existing.representative, k, options.oracle_budget);
          }
        }
        if (chain.states.size() >= options.max_states) {
          throw BudgetExhausted("chain for k=" + std::to_string(k) + " exceeds " +
                                std::to_string(options.max_states) + " states");
        }
        target = static_cast<int>(chain.states.size());
        state_of_type.emplace(type, target);
        chain.states.push_back(ChainState{target, reduced, false, target, target});
        level.push_back(level[next] + 1);
      }
      auto& state = chain.states[next];
      (step == BuildStep::plus_bullet ? state.succ_plus : state.succ_hat) = target;
    }
  }
  if (accept) label_accepting(chain, accept);
  return chain;
}

void label_accepting(Chain& chain, const AcceptPredicate& accept) {
  for (auto& s : chain.states) s.accepting = accept ? accept(s.representative) : false;
}

void validate(const Chain& chain) {
  const auto n = static_cast<int>(chain.states.size());
  if (n == 0) throw std::invalid_argument("chain has no states");
  if (chain.start < 0 || chain.start >= n) throw std::invalid_argument("start state out of range");
  for (int i = 0; i < n; ++i) {
    const auto& s = chain.states[static_cast<std::size_t>(i)];
    if (s.id != i) throw std::invalid_argument("state ids must be 0..n-1 in order");
    if (s.succ_plus < 0 || s.succ_plus >= n || s.succ_hat < 0 || s.succ_hat >= n) {
      throw std::invalid_argument("successor of state " + std::to_string(i) + " out of range");
    }
  }
}

void verify_representatives(const Chain& chain, std::uint64_t budget_per_pair) {
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    for (std::size_t j = i + 1; j < chain.states.size(); ++j) {
      confirm(false, chain.states[i].representative, chain.states[j].representative, chain.k,
              budget_per_pair);
    }
  }
}

RationalMatrix transition_matrix(const Chain& chain) {
  validate(chain);
  const std::size_t n = chain.states.size();
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  const Rational half(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    m[i][static_cast<std::size_t>(chain.states[i].succ_plus)] += half;
    m[i][static_cast<std::size_t>(chain.states[i].succ_hat)] += half;
  }
  return m;
}

bool is_truncated(const Chain& chain) {
  return std::any_of(chain.states.begin(), chain.states.end(),
                     [](const ChainState& s) { return !s.expanded; });
}

std::vector<ChainComponent> chain_components(const Chain& chain) {
  validate(chain);
  if (is_truncated(chain)) throw std::invalid_argument("chain is truncated at a horizon");
  const auto components = strongly_connected_components(chain);
  const auto comp_of = component_of(components, chain.states.size());
  std::vector<ChainComponent> out;
  for (std::size_t c = 0; c < components.size(); ++c) {
    ChainComponent info;
    info.states = components[c];
    info.closed = std::all_of(info.states.begin(), info.states.end(), [&](int v) {
      const auto succ = successors(chain, v);
      return comp_of[static_cast<std::size_t>(succ[0])] == static_cast<int>(c) &&
             comp_of[static_cast<std::size_t>(succ[1])] == static_cast<int>(c);
    });
    info.period = component_period(chain, components[c], comp_of, static_cast<int>(c));
    out.push_back(std::move(info));
  }
  return out;
}

bool check_fully_aperiodic(const Chain& chain) {
  for (const auto& c : chain_components(chain)) {
    if (c.closed && c.period != 1) return false;
  }
  return true;
}

RationalMatrix solve_linear_system(RationalMatrix a, RationalMatrix b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = 1 / a[col][col];
    for (auto& v : a[col]) v *= inv;
    for (auto& v : b[col]) v *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      for (std::size_t j = 0; j < b[row].size(); ++j) b[row][j] -= factor * b[col][j];
    }
  }
  return b;
}

Distribution limiting_distribution(const Chain& chain) {
  const auto components = chain_components(chain);
  const std::size_t n = chain.states.size();
  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (int v : components[c].states) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  }
  for (const auto& c : components) {
    if (c.closed && c.period != 1) {
      throw PeriodicChain("chain is not fully aperiodic: closed class of state " +
                          std::to_string(c.states.front()) + " has period " +
                          std::to_string(c.period));
    }
  }

  const Rational half(1, 2);
  Distribution limit(n, Rational(0));
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (!components[c].closed) continue;
    const auto& sink = components[c].states;

    // Absorption probability into this closed class, solved one component
    // at a time; successors' components always come earlier in the list.
    std::vector<Rational> absorb(n, Rational(0));
    for (int v : sink) absorb[static_cast<std::size_t>(v)] = 1;
    for (std::size_t t = 0; t < components.size(); ++t) {
      if (components[t].closed) continue;
      const auto& comp = components[t].states;
      std::unordered_map<int, std::size_t> local;
      for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
      RationalMatrix a(comp.size(), std::vector<Rational>(comp.size(), Rational(0)));
      RationalMatrix rhs(comp.size(), std::vector<Rational>(1, Rational(0)));
      for (std::size_t i = 0; i < comp.size(); ++i) {
        a[i][i] += 1;
        for (int w : successors(chain, comp[i])) {
          if (const auto it = local.find(w); it != local.end()) {
            a[i][it->second] -= half;
          } else {
            rhs[i][0] += half * absorb[static_cast<std::size_t>(w)];
          }
        }
      }
      const auto x = solve_linear_system(std::move(a), std::move(rhs));
      for (std::size_t i = 0; i < comp.size(); ++i) absorb[static_cast<std::size_t>(comp[i])] = x[i][0];
    }
    const Rational reach = absorb[static_cast<std::size_t>(chain.start)];
    if (reach == 0) continue;

    // Stationary distribution of the closed class: pi = pi P with sum 1.
    std::unordered_map<int, std::size_t> local;
    for (std::size_t i = 0; i < sink.size(); ++i) local[sink[i]] = i;
    const std::size_t m = sink.size();
    RationalMatrix a(m, std::vector<Rational>(m, Rational(0)));
    RationalMatrix rhs(m, std::vector<Rational>(1, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
      a[i][i] -= 1;
      for (int w : successors(chain, sink[i])) a[local.at(w)][i] += half;
    }
    for (std::size_t j = 0; j < m; ++j) a[0][j] = 1;
    rhs[0][0] = 1;
    const auto pi = solve_linear_system(std::move(a), std::move(rhs));
    for (std::size_t i = 0; i < m; ++i) limit[static_cast<std::size_t>(sink[i])] = pi[i][0] * reach;
  }
  return limit;
}

Distribution distribution_after(const Chain& chain, std::uint64_t steps) {
  validate(chain);
  const std::size_t n = chain.states.size();
  // Numerators over the common denominator 2^t.
  std::vector<mpz_class> current(n, mpz_class(0));
  std::vector<mpz_class> next(n, mpz_class(0));
  current[static_cast<std::size_t>(chain.start)] = 1;
  for (std::uint64_t t = 0; t < steps; ++t) {
    for (auto& v : next) v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (current[i] == 0) continue;
      next[static_cast<std::size_t>(chain.states[i].succ_plus)] += current[i];
      next[static_cast<std::size_t>(chain.states[i].succ_hat)] += current[i];
    }
    std::swap(current, next);
  }
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 2, steps);
  Distribution out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = Rational(current[i], denominator);
    out[i].canonicalize();
  }
  return out;
}

Rational accepting_mass(const Chain& chain, const Distribution& distribution) {
  Rational total(0);
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    if (chain.states[i].accepting) total += distribution[i];
  }
  return total;
}

}  // namespace limlaw
