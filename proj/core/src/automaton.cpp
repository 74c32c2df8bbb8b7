#include "limlaw/automaton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

#include "limlaw/errors.hpp"
#include "limlaw/structures.hpp"

namespace limlaw {
namespace {

constexpr int kNewClass = 1;

struct Dfa {
  std::vector<int> vars;  // sorted variable ids; bit i+1 marks vars[i]
  int start = 0;
  std::vector<int> delta;
  std::vector<char> accept;

  [[nodiscard]] int letters() const { return 1 << (1 + static_cast<int>(vars.size())); }
  [[nodiscard]] int size() const { return static_cast<int>(accept.size()); }
  [[nodiscard]] int next(int s, int a) const {
    return delta[static_cast<std::size_t>(s) * static_cast<std::size_t>(letters()) +
                 static_cast<std::size_t>(a)];
  }
};

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class Compiler {
 public:
  explicit Compiler(std::uint64_t max_states) : max_states_(max_states) {}

  Dfa compile(const Formula& f, std::map<std::string, int>& env, int& next_id) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::truth:
      case K::falsity:
        return constant(f.kind() == K::truth);
      case K::atom:
      case K::equals: {
        const int x = lookup(env, f.lhs());
        const int y = lookup(env, f.rhs());
        if (f.kind() == K::equals) return x == y ? validity({x}) : equal(x, y);
        if (f.relation() == Relation::less) return x == y ? empty({x}) : less(x, y);
        if (f.relation() == Relation::equiv) return x == y ? validity({x}) : same_class(x, y);
        throw InputError("automaton: relation " + std::string(to_string(f.relation())) +
                         " is not in the convex language");
      }
      case K::negation:
        return complement(compile(f.operand(), env, next_id));
      case K::conjunction:
      case K::disjunction:
      case K::implication:
      case K::biconditional: {
        const Dfa a = compile(f.left(), env, next_id);
        const Dfa b = compile(f.right(), env, next_id);
        std::function<bool(bool, bool)> op;
        if (f.kind() == K::conjunction) op = [](bool p, bool q) { return p && q; };
        if (f.kind() == K::disjunction) op = [](bool p, bool q) { return p || q; };
        if (f.kind() == K::implication) op = [](bool p, bool q) { return !p || q; };
        if (f.kind() == K::biconditional) op = [](bool p, bool q) { return p == q; };
        return combine(a, b, op);
      }
      case K::exists:
      case K::forall: {
        const int id = next_id++;
        const auto saved = env.find(f.variable()) == env.end()
                               ? std::optional<int>{}
                               : std::optional<int>{env[f.variable()]};
        env[f.variable()] = id;
        Dfa body = compile(f.operand(), env, next_id);
        if (saved) env[f.variable()] = *saved; else env.erase(f.variable());
        if (f.kind() == K::exists) return project(body, id);
        return complement(project(complement(body), id));
      }
    }
    throw std::logic_error("unknown formula kind");
  }

  Dfa minimize(const Dfa& d) {
    const int letters = d.letters();
    std::vector<int> order{d.start};
    std::vector<int> index(static_cast<std::size_t>(d.size()), -1);
    index[static_cast<std::size_t>(d.start)] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int a = 0; a < letters; ++a) {
        const int t = d.next(order[i], a);
        if (index[static_cast<std::size_t>(t)] < 0) {
          index[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
          order.push_back(t);
        }
      }
    }
    const std::size_t n = order.size();
    std::vector<int> cls(n);
    for (std::size_t i = 0; i < n; ++i) cls[i] = d.accept[static_cast<std::size_t>(order[i])] ? 1 : 0;
    std::size_t classes = 0;
    std::vector<int> sig(static_cast<std::size_t>(letters) + 1);
    while (true) {
      std::unordered_map<std::vector<int>, int, VectorHash> ids;
      std::vector<int> refined(n);
      for (std::size_t i = 0; i < n; ++i) {
        sig[0] = cls[i];
        for (int a = 0; a < letters; ++a) {
          sig[static_cast<std::size_t>(a) + 1] =
              cls[static_cast<std::size_t>(index[static_cast<std::size_t>(d.next(order[i], a))])];
        }
        refined[i] = ids.try_emplace(sig, static_cast<int>(ids.size())).first->second;
      }
      cls = std::move(refined);
      if (ids.size() == classes) break;
      classes = ids.size();
    }

    // Renumber classes in breadth-first order from the start.
    Dfa out;
    out.vars = d.vars;
    std::vector<int> rename(classes, -1);
    std::vector<std::size_t> witness;
    rename[static_cast<std::size_t>(cls[0])] = 0;
    witness.push_back(0);
    for (std::size_t i = 0; i < witness.size(); ++i) {
      for (int a = 0; a < letters; ++a) {
        const auto t = static_cast<std::size_t>(index[static_cast<std::size_t>(d.next(order[witness[i]], a))]);
        const auto c = static_cast<std::size_t>(cls[t]);
        if (rename[c] < 0) {
          rename[c] = static_cast<int>(witness.size());
          witness.push_back(t);
        }
      }
    }
    out.accept.resize(witness.size());
    out.delta.resize(witness.size() * static_cast<std::size_t>(letters));
    for (std::size_t s = 0; s < witness.size(); ++s) {
      out.accept[s] = d.accept[static_cast<std::size_t>(order[witness[s]])];
      for (int a = 0; a < letters; ++a) {
        const auto t = static_cast<std::size_t>(index[static_cast<std::size_t>(d.next(order[witness[s]], a))]);
        out.delta[s * static_cast<std::size_t>(letters) + static_cast<std::size_t>(a)] =
            rename[static_cast<std::size_t>(cls[t])];
      }
    }
    return out;
  }

 private:
  static int lookup(const std::map<std::string, int>& env, const std::string& name) {
    const auto it = env.find(name);
    if (it == env.end()) throw InputError("automaton: unbound variable " + name);
    return it->second;
  }

  void guard(std::size_t states) const {
    if (states > max_states_) {
      throw BudgetExhausted("automaton construction exceeded " + std::to_string(max_states_) +
                            " states");
    }
  }

  // Tabulates a small machine given by a step function.
  static Dfa tabulate(std::vector<int> vars, int states, const std::function<int(int, int)>& step,
                      const std::function<bool(int)>& accepting) {
    Dfa d;
    d.vars = std::move(vars);
    const int letters = d.letters();
    d.accept.resize(static_cast<std::size_t>(states));
    d.delta.resize(static_cast<std::size_t>(states) * static_cast<std::size_t>(letters));
    for (int s = 0; s < states; ++s) {
      d.accept[static_cast<std::size_t>(s)] = accepting(s);
      for (int a = 0; a < letters; ++a) {
        d.delta[static_cast<std::size_t>(s) * static_cast<std::size_t>(letters) + static_cast<std::size_t>(a)] =
            step(s, a);
      }
    }
    return d;
  }

  static Dfa constant(bool value) {
    return tabulate({}, 1, [](int, int) { return 0; }, [value](int) { return value; });
  }

  // Accepts the words marking each variable exactly once.
  static Dfa validity(std::vector<int> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    const int full = (1 << vars.size()) - 1;
    const int dead = full + 1;
    return tabulate(
        vars, dead + 1,
        [dead](int s, int a) {
          const int marks = a >> 1;
          if (s == dead || (s & marks) != 0) return dead;
          return s | marks;
        },
        [full](int s) { return s == full; });
  }

  static Dfa empty(std::vector<int> vars) {
    return tabulate(std::move(vars), 1, [](int, int) { return 0; }, [](int) { return false; });
  }

  // Two-variable atoms. States: 0 nothing marked, 1 only x, 2 only y,
  // 3 both (accepting), 4 dead.
  static Dfa pair_atom(int x, int y, const std::function<int(int, bool, bool, bool)>& step) {
    std::vector<int> vars{std::min(x, y), std::max(x, y)};
    const int bx = x < y ? 2 : 4;
    const int by = x < y ? 4 : 2;
    return tabulate(
        vars, 5,
        [&](int s, int a) {
          if (s == 4) return 4;
          const bool hx = (a & bx) != 0;
          const bool hy = (a & by) != 0;
          if (s == 3) return (hx || hy) ? 4 : 3;
          if ((s == 1 && hx) || (s == 2 && hy)) return 4;
          return step(s, hx, hy, (a & kNewClass) != 0);
        },
        [](int s) { return s == 3; });
  }

  static Dfa less(int x, int y) {
    return pair_atom(x, y, [](int s, bool hx, bool hy, bool) {
      if (s == 0) return hx && hy ? 4 : hx ? 1 : hy ? 4 : 0;
      return hy ? 3 : 1;  // s == 1
    });
  }

  static Dfa equal(int x, int y) {
    return pair_atom(x, y, [](int s, bool hx, bool hy, bool) {
      if (s == 0) return hx && hy ? 3 : (hx || hy) ? 4 : 0;
      return 4;
    });
  }

  static Dfa same_class(int x, int y) {
    return pair_atom(x, y, [](int s, bool hx, bool hy, bool fresh) {
      if (s == 0) return hx && hy ? 3 : hx ? 1 : hy ? 2 : 0;
      if (fresh) return 4;  // a new class opens before the second mark
      const bool second = s == 1 ? hy : hx;
      return second ? 3 : s;
    });
  }

  // Same states, letters widened to a superset of variables.
  static Dfa widen(const Dfa& d, const std::vector<int>& vars) {
    if (d.vars == vars) return d;
    Dfa out;
    out.vars = vars;
    out.start = d.start;
    out.accept = d.accept;
    const int letters = out.letters();
    std::vector<int> source(static_cast<std::size_t>(letters));
    for (int a = 0; a < letters; ++a) {
      int b = a & kNewClass;
      for (std::size_t i = 0; i < d.vars.size(); ++i) {
        const auto pos = std::lower_bound(vars.begin(), vars.end(), d.vars[i]) - vars.begin();
        if ((a >> (1 + pos)) & 1) b |= 1 << (1 + i);
      }
      source[static_cast<std::size_t>(a)] = b;
    }
    out.delta.resize(static_cast<std::size_t>(d.size()) * static_cast<std::size_t>(letters));
    for (int s = 0; s < d.size(); ++s) {
      for (int a = 0; a < letters; ++a) {
        out.delta[static_cast<std::size_t>(s) * static_cast<std::size_t>(letters) + static_cast<std::size_t>(a)] =
            d.next(s, source[static_cast<std::size_t>(a)]);
      }
    }
    return out;
  }

  Dfa product(const Dfa& a, const Dfa& b, const std::function<bool(bool, bool)>& op) {
    const int letters = a.letters();
    Dfa out;
    out.vars = a.vars;
    std::unordered_map<std::uint64_t, int> ids;
    std::vector<std::pair<int, int>> states{{a.start, b.start}};
    const auto key = [](int p, int q) {
      return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) << 32) |
             static_cast<std::uint32_t>(q);
    };
    ids[key(a.start, b.start)] = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto [p, q] = states[i];
      out.accept.push_back(op(a.accept[static_cast<std::size_t>(p)] != 0,
                              b.accept[static_cast<std::size_t>(q)] != 0));
      for (int l = 0; l < letters; ++l) {
        const int np = a.next(p, l);
        const int nq = b.next(q, l);
        const auto [it, fresh] = ids.try_emplace(key(np, nq), static_cast<int>(states.size()));
        if (fresh) {
          states.emplace_back(np, nq);
          guard(states.size());
        }
        out.delta.push_back(it->second);
      }
    }
    return out;
  }

  Dfa combine(const Dfa& a, const Dfa& b, const std::function<bool(bool, bool)>& op) {
    std::vector<int> vars;
    std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(vars));
    const Dfa joined = product(widen(a, vars), widen(b, vars), op);
    return minimize(product(joined, validity(vars), [](bool p, bool q) { return p && q; }));
  }

  Dfa complement(const Dfa& d) {
    Dfa flipped = d;
    for (auto& acc : flipped.accept) acc = acc ? 0 : 1;
    return minimize(product(flipped, validity(d.vars), [](bool p, bool q) { return p && q; }));
  }

  Dfa project(const Dfa& d, int id) {
    const auto it = std::find(d.vars.begin(), d.vars.end(), id);
    if (it == d.vars.end()) return d;
    const int t = static_cast<int>(it - d.vars.begin());
    Dfa out;
    out.vars = d.vars;
    out.vars.erase(out.vars.begin() + t);
    const int letters = out.letters();
    const int low_mask = (1 << (1 + t)) - 1;

    std::unordered_map<std::vector<int>, int, VectorHash> ids;
    std::vector<std::vector<int>> sets{{d.start}};
    ids[sets[0]] = 0;
    std::vector<int> target;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      bool acc = false;
      for (int s : sets[i]) acc = acc || d.accept[static_cast<std::size_t>(s)] != 0;
      out.accept.push_back(acc);
      for (int b = 0; b < letters; ++b) {
        const int base = (b & low_mask) | ((b & ~low_mask) << 1);
        target.clear();
        for (int s : sets[i]) {
          target.push_back(d.next(s, base));
          target.push_back(d.next(s, base | (1 << (1 + t))));
        }
        std::sort(target.begin(), target.end());
        target.erase(std::unique(target.begin(), target.end()), target.end());
        const auto [pos, fresh] = ids.try_emplace(target, static_cast<int>(sets.size()));
        if (fresh) {
          sets.push_back(target);
          guard(sets.size());
        }
        out.delta.push_back(pos->second);
      }
    }
    return minimize(out);
  }

  std::uint64_t max_states_;
};

}  // namespace

Automaton compile_automaton(const Formula& convex_formula, std::uint64_t max_states) {
  Compiler compiler(max_states);
  std::map<std::string, int> env;
  int next_id = 0;
  Automaton out;
  for (const auto& v : free_variables(convex_formula)) {
    env[v] = next_id++;
    out.variables.push_back(v);
  }
  std::vector<int> free_ids(out.variables.size());
  for (std::size_t i = 0; i < free_ids.size(); ++i) free_ids[i] = static_cast<int>(i);

  Dfa d = compiler.compile(convex_formula, env, next_id);
  if (d.vars != free_ids) {
    // Free variables that only occur under constant subformulas still get a track.
    Dfa wide;
    wide.vars = free_ids;
    wide.start = d.start;
    wide.accept = d.accept;
    const int letters = wide.letters();
    for (int s = 0; s < d.size(); ++s) {
      for (int a = 0; a < letters; ++a) {
        int b = a & kNewClass;
        for (std::size_t i = 0; i < d.vars.size(); ++i) {
          if ((a >> (1 + d.vars[i])) & 1) b |= 1 << (1 + i);
        }
        wide.delta.push_back(d.next(s, b));
      }
    }
    d = std::move(wide);
  }
  out.start = d.start;
  out.delta = std::move(d.delta);
  out.accepting = std::move(d.accept);
  return out;
}

bool automaton_accepts(const Automaton& automaton, const PartSequence& shape) {
  if (!automaton.variables.empty()) throw InputError("automaton has free variables");
  int s = automaton.start;
  for (int part : shape.parts()) {
    s = automaton.next(s, kNewClass);
    for (int i = 1; i < part; ++i) s = automaton.next(s, 0);
  }
  return automaton.accepting[static_cast<std::size_t>(s)] != 0;
}

Chain sentence_chain(const Formula& convex_sentence, int k, std::uint64_t max_states) {
  if (!is_sentence(convex_sentence)) throw InputError("formula has free variables");
  const Automaton a = compile_automaton(convex_sentence, max_states);

  // Re-minimize from the state reached after the first point.
  Dfa d;
  d.start = a.next(a.start, kNewClass);
  d.delta = a.delta;
  d.accept = a.accepting;
  const Dfa m = Compiler(max_states).minimize(d);

  Chain chain;
  chain.k = k;
  chain.start = 0;
  std::vector<int> state_of(static_cast<std::size_t>(m.size()), -1);
  std::vector<int> dfa_of{m.start};
  state_of[static_cast<std::size_t>(m.start)] = 0;
  chain.states.push_back(ChainState{0, bullet(), m.accept[static_cast<std::size_t>(m.start)] != 0, 0, 0});
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    for (BuildStep step : {BuildStep::plus_bullet, BuildStep::hat}) {
      const int t = m.next(dfa_of[i], step == BuildStep::plus_bullet ? kNewClass : 0);
      int& id = state_of[static_cast<std::size_t>(t)];
      if (id < 0) {
        id = static_cast<int>(chain.states.size());
        dfa_of.push_back(t);
        chain.states.push_back(ChainState{id, apply(chain.states[i].representative, step),
                                          m.accept[static_cast<std::size_t>(t)] != 0, id, id});
      }
      (step == BuildStep::plus_bullet ? chain.states[i].succ_plus : chain.states[i].succ_hat) = id;
    }
  }
  return chain;
}

}  // namespace limlaw
