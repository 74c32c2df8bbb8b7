// Acceptance checks. `acceptance` runs all of them, `acceptance 3 7` only
// the listed ones. One PASS/FAIL line per check; exit 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "limlaw/automaton.hpp"
#include "limlaw/chain.hpp"
#include "limlaw/efgame.hpp"
#include "limlaw/errors.hpp"
#include "limlaw/evaluate.hpp"
#include "limlaw/limit.hpp"
#include "limlaw/translate.hpp"
#include "support/battery.hpp"
#include "support/oracles.hpp"

using namespace limlaw;
using limlaw::testing::battery;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    pass = false;
    detail << why << "; ";
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void time_limit(Outcome& o, Clock::time_point t0, double limit) {
  const double s = seconds_since(t0);
  if (s > limit) o.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit) + " s");
}

Formula sentence_of(const testing::BatterySentence& b) {
  return parse_sentence(b.text, Signature(b.theory));
}

Formula convex_of(const testing::BatterySentence& b) {
  return translate_to_convex(b.theory, sentence_of(b));
}

int run_steps(const Chain& chain, const PartSequence& shape) {
  int s = chain.start;
  for (BuildStep step : decompose(ConvexLinearOrder{shape})) {
    const auto& st = chain.states[static_cast<std::size_t>(s)];
    s = step == BuildStep::plus_bullet ? st.succ_plus : st.succ_hat;
  }
  return s;
}

std::string q(const Rational& r) { return exact_string(r); }

// 1. Structure counts per size.
void shape_counts(Outcome& o) {
  const auto t0 = Clock::now();
  for (int n = 1; n <= 14; ++n) {
    const std::size_t expected = std::size_t{1} << (n - 1);
    // convex: distinct step sequences replay to distinct orders of size n
    std::set<PartSequence> convex;
    for (std::uint32_t mask = 0; mask < expected; ++mask) {
      std::vector<BuildStep> steps;
      for (int i = 0; i < n - 1; ++i) steps.push_back((mask >> i) & 1u ? BuildStep::hat : BuildStep::plus_bullet);
      convex.insert(replay(steps).shape);
    }
    // compositions: independent recursive enumeration of positive tuples
    std::size_t compositions = 0;
    std::function<void(int)> count = [&](int rest) {
      if (rest == 0) {
        ++compositions;
        return;
      }
      for (int first = 1; first <= rest; ++first) count(rest - first);
    };
    count(n);
    // layered: distinct valid layered permutations reached from the shapes
    std::set<std::vector<int>> layered;
    for (const auto& s : all_shapes(n)) {
      const auto p = LayeredPermutation{s}.one_line();
      if (!testing::is_layered(p)) o.fail("not layered: " + LayeredPermutation{s}.one_line_string());
      layered.insert(p);
    }
    if (convex.size() != expected) o.fail("convex n=" + std::to_string(n));
    if (all_shapes(n).size() != expected) o.fail("all_shapes n=" + std::to_string(n));
    if (compositions != expected) o.fail("compositions n=" + std::to_string(n));
    if (layered.size() != expected) o.fail("layered n=" + std::to_string(n));
    // for small n, brute force over every permutation
    if (n <= 9) {
      std::vector<int> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 1);
      std::size_t found = 0;
      do {
        if (testing::is_layered(p)) ++found;
      } while (std::next_permutation(p.begin(), p.end()));
      if (found != expected) o.fail("layered permutations of " + std::to_string(n) + ": " + std::to_string(found));
    }
  }
  o.detail << "n <= 14, all three classes have 2^(n-1) members, layered brute-forced to n = 9";
  time_limit(o, t0, 10);
}

// 2. All-singleton orders: n ~k m iff n = m or both >= 2^k - 1.
void all_singletons(Outcome& o) {
  const auto t0 = Clock::now();
  std::vector<RelationalView> orders;
  for (int n = 1; n <= 20; ++n) orders.emplace_back(Theory::convex, PartSequence(std::vector<int>(static_cast<std::size_t>(n), 1)));
  int decided = 0;
  for (int k = 0; k <= 4; ++k) {
    const int t = (1 << k) - 1;
    for (int n = 1; n <= 20; ++n) {
      for (int m = n; m <= 20; ++m) {
        const bool expected = n == m || (n >= t && m >= t);
        const bool got = equiv_k(orders[static_cast<std::size_t>(n - 1)], orders[static_cast<std::size_t>(m - 1)], k);
        ++decided;
        if (got != expected) {
          o.fail("k=" + std::to_string(k) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
        }
      }
    }
  }
  o.detail << decided << " pairs decided by the game solver, n,m <= 20, k <= 4";
  time_limit(o, t0, 120);
}

// 3. Segment game vs generic solver on all shapes of size <= 7.
void segment_vs_solver(Outcome& o) {
  const auto t0 = Clock::now();
  const auto shapes = testing::shapes_up_to(7);
  std::vector<RelationalView> views;
  for (const auto& s : shapes) views.emplace_back(Theory::convex, s);
  SegmentGame game;
  long pairs = 0, disagreements = 0;
  for (int k = 1; k <= 3; ++k) {
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      for (std::size_t j = i + 1; j < shapes.size(); ++j) {
        const bool fast = game.equivalent(ConvexLinearOrder{shapes[i]}, ConvexLinearOrder{shapes[j]}, k);
        const bool slow = equiv_k(views[i], views[j], k);
        ++pairs;
        if (fast != slow) {
          ++disagreements;
          o.fail(shapes[i].to_string() + " vs " + shapes[j].to_string() + " k=" + std::to_string(k));
        }
      }
    }
  }
  o.detail << shapes.size() << " shapes, " << pairs << " pairs over k = 1..3, " << disagreements << " disagreements";
  time_limit(o, t0, 300);
}

// 4. Congruence of oplus and hat.
void congruence(Outcome& o) {
  const auto t0 = Clock::now();
  const auto shapes = testing::shapes_up_to(6);
  std::mt19937_64 rng(2024);
  std::map<int, std::vector<int>> partition;
  for (int k = 1; k <= 3; ++k) partition[k] = testing::oracle_partition(Theory::convex, shapes, k);
  // equivalent partner for shape i, preferring a different shape
  const auto partner = [&](int k, std::size_t i) {
    std::vector<std::size_t> same;
    for (std::size_t j = 0; j < shapes.size(); ++j)
      if (j != i && partition[k][j] == partition[k][i]) same.push_back(j);
    if (same.empty()) return i;
    return same[static_cast<std::size_t>(rng() % same.size())];
  };
  const auto eq = [](const ConvexLinearOrder& a, const ConvexLinearOrder& b, int k) {
    return equiv_k(RelationalView(Theory::convex, a.shape), RelationalView(Theory::convex, b.shape), k);
  };
  int plus_violations = 0, hat_violations = 0, distinct_pairs = 0;
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + t % 3;
    const auto i = static_cast<std::size_t>(rng() % shapes.size());
    const auto i2 = static_cast<std::size_t>(rng() % shapes.size());
    const auto j = partner(k, i), j2 = partner(k, i2);
    if (j != i || j2 != i2) ++distinct_pairs;
    const ConvexLinearOrder m{shapes[i]}, m2{shapes[i2]}, nn{shapes[j]}, n2{shapes[j2]};
    if (!eq(oplus(m, m2), oplus(nn, n2), k)) {
      ++plus_violations;
      o.fail("oplus " + shapes[i].to_string() + "|" + shapes[i2].to_string());
    }
  }
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + t % 3;
    const auto i = static_cast<std::size_t>(rng() % shapes.size());
    const auto j = partner(k, i);
    if (j != i) ++distinct_pairs;
    if (!eq(hat(ConvexLinearOrder{shapes[i]}), hat(ConvexLinearOrder{shapes[j]}), k)) {
      ++hat_violations;
      o.fail("hat " + shapes[i].to_string());
    }
  }
  o.detail << "200 oplus + 200 hat instances, " << distinct_pairs << " with non-identical partners, violations "
           << plus_violations << " / " << hat_violations;
}

// 5. Aperiodicity of every battery chain for k <= 3, and the 2-cycle control.
void aperiodicity(Outcome& o) {
  LimitEngine engine;
  int chains = 0;
  for (const auto& b : battery()) {
    const Formula f = sentence_of(b);
    for (int k = std::max(0, quantifier_depth(convex_of(b))); k <= 3; ++k) {
      const auto r = engine.limit(b.theory, f, k);
      ++chains;
      if (!check_fully_aperiodic(r.chain)) o.fail(b.name + " k=" + std::to_string(k));
    }
  }
  // the full class chains for k <= 2, labeled by each battery sentence that fits
  for (int k = 0; k <= 2; ++k) {
    Chain classes = build_chain(k);
    for (const auto& b : battery()) {
      const Formula g = convex_of(b);
      if (quantifier_depth(g) > k) continue;
      label_accepting(classes, [&](const ConvexLinearOrder& c) {
        return evaluate(RelationalView(Theory::convex, c.shape), g);
      });
      ++chains;
      if (!check_fully_aperiodic(classes)) o.fail("class chain k=" + std::to_string(k) + " " + b.name);
    }
  }
  Chain cycle;
  cycle.states.resize(2);
  cycle.states[0].id = 0;
  cycle.states[0].succ_plus = cycle.states[0].succ_hat = 1;
  cycle.states[1].id = 1;
  cycle.states[1].succ_plus = cycle.states[1].succ_hat = 0;
  cycle.states[1].representative = ConvexLinearOrder{PartSequence({2})};
  const bool control = check_fully_aperiodic(cycle);
  if (control) o.fail("2-cycle reported aperiodic");
  o.detail << chains << " chains aperiodic, 2-cycle control " << (control ? "true" : "false");
}

// 6. Pushforward of the uniform measure, exact, k <= 3 and n <= 12.
void pushforward(Outcome& o) {
  const auto t0 = Clock::now();
  long shapes_checked = 0, oracle_checks = 0;
  std::ostringstream sizes;
  for (int k = 0; k <= 3; ++k) {
    ChainOptions options;
    options.horizon = 11;
    const Chain chain = build_chain(k, {}, options);
    sizes << "k=" << k << ":" << chain.states.size() << (is_truncated(chain) ? "(h11)" : "") << " ";
    SegmentGame game;
    std::map<int, int> by_type;
    for (const auto& s : chain.states) by_type.emplace(game.type_of(s.representative, k), s.id);
    for (int n = 1; n <= 12; ++n) {
      const auto shapes = all_shapes(n);
      std::vector<Rational> classified(chain.states.size(), 0);
      const Rational unit(1, static_cast<long>(shapes.size()));
      for (const auto& s : shapes) {
        const auto it = by_type.find(game.type_of(ConvexLinearOrder{s}, k));
        if (it == by_type.end()) {
          o.fail("no state for " + s.to_string() + " k=" + std::to_string(k));
          continue;
        }
        const auto& rep = chain.states[static_cast<std::size_t>(it->second)].representative;
        if (!equiv_k(RelationalView(Theory::convex, s), RelationalView(Theory::convex, rep.shape), k)) {
          o.fail("solver rejects " + s.to_string() + " ~ " + rep.shape.to_string());
        }
        ++oracle_checks;
        classified[static_cast<std::size_t>(it->second)] += unit;
        ++shapes_checked;
      }
      if (distribution_after(chain, static_cast<std::uint64_t>(n - 1)) != classified) {
        o.fail("k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
    }
  }
  o.detail << "states " << sizes.str() << "; " << shapes_checked << " shape classifications, each confirmed by the solver";
  time_limit(o, t0, 300);
}

// 7. Exact limits plus closed-form counts for n <= 14.
void exact_limits(Outcome& o) {
  struct Case {
    Theory theory;
    std::string text;
    Rational limit;
    std::function<long(int)> count;  // satisfying shapes of size n
  };
  const auto pow2 = [](int e) { return e < 0 ? 0L : 1L << e; };
  const std::vector<Case> cases = {
      {Theory::convex, "exists x. exists y. (x E y & !(x = y))", Rational(1), [&](int n) { return pow2(n - 1) - 1; }},
      {Theory::convex, battery()[2].text, Rational(1, 2), [&](int n) { return n >= 2 ? pow2(n - 2) : 0; }},
      {Theory::convex, battery()[3].text, Rational(1, 4), [&](int n) { return n >= 3 ? pow2(n - 3) : n - 1; }},
      {Theory::layered, "exists x. exists y. (x <1 y & y <2 x)", Rational(1), [&](int n) { return pow2(n - 1) - 1; }},
      {Theory::convex, "exists x. x = x", Rational(1), [&](int n) { return pow2(n - 1); }},
  };
  LimitEngine engine;
  std::ostringstream got;
  for (const auto& c : cases) {
    const Formula f = parse_sentence(c.text, Signature(c.theory));
    const Rational p = limit_probability(c.theory, f);
    const auto r = engine.limit(c.theory, f);
    got << q(p) << " ";
    if (p != c.limit || r.probability != c.limit) o.fail(c.text + " -> " + q(p));
    const CompiledFormula check(f, Signature(c.theory));
    for (int n = 1; n <= 14; ++n) {
      long hits = 0;
      for (const auto& s : all_shapes(n)) hits += check(RelationalView(c.theory, s)) ? 1 : 0;
      if (hits != c.count(n)) o.fail(c.text + " count n=" + std::to_string(n));
      const Rational chain_mass = accepting_mass(r.chain, distribution_after(r.chain, static_cast<std::uint64_t>(n - 1)));
      Rational fraction(hits, pow2(n - 1));
      fraction.canonicalize();
      if (chain_mass != fraction) o.fail(c.text + " chain mass n=" + std::to_string(n));
    }
  }
  o.detail << "limits " << got.str() << "; closed-form counts and chain masses match for n <= 14";
}

// 8. Exact limit vs 10^4 iterated steps.
void exact_vs_iterated(Outcome& o) {
  const auto check = [&](const Chain& chain, const std::string& what, Rational& worst) {
    const auto exact = limiting_distribution(chain);
    const auto iterated = distribution_after(chain, 10'000);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      Rational gap = exact[i] - iterated[i];
      if (gap < 0) gap = -gap;
      worst = std::max(worst, gap);
      if (gap >= Rational(1, 1'000'000'000)) o.fail(what + " state " + std::to_string(i));
    }
  };
  Rational worst = 0;
  int chains = 0;
  LimitEngine engine;
  for (const auto& b : battery()) {
    check(engine.limit(b.theory, sentence_of(b)).chain, b.name, worst);
    ++chains;
  }
  for (int k = 0; k <= 2; ++k) {
    check(build_chain(k), "class chain k=" + std::to_string(k), worst);
    ++chains;
  }
  o.detail << chains << " chains, worst max-norm gap ";
  if (worst == 0) {
    o.detail << "0";
  } else {
    // a double underflows here, so report the binary magnitude
    const long bits = static_cast<long>(mpz_sizeinbase(worst.get_den_mpz_t(), 2)) -
                      static_cast<long>(mpz_sizeinbase(worst.get_num_mpz_t(), 2));
    o.detail << "about 2^-" << bits;
  }
}

// 9. M |= phi iff f(M) |= g(phi) for layered permutations and compositions.
void transfer(Outcome& o) {
  const auto t0 = Clock::now();
  long checks = 0, violations = 0;
  for (const auto& b : battery()) {
    const Formula phi = sentence_of(b);
    const auto used = relations_used(phi);
    for (Theory t : {Theory::layered, Theory::composition, Theory::fractured}) {
      const Signature sig(t);
      if (!std::all_of(used.begin(), used.end(), [&](Relation r) { return sig.contains(r); })) continue;
      const Formula g = translate_to_convex(t, phi);
      for (int n = 1; n <= 8; ++n) {
        for (const auto& s : all_shapes(n)) {
          bool source;
          PartSequence image = s;
          if (t == Theory::layered) {
            const LayeredPermutation p{s};
            source = testing::naive_eval(testing::permutation_view(p.one_line()), phi);
            image = layered_to_convex(p).shape;
          } else {
            const std::vector<int> parts(s.parts().begin(), s.parts().end());
            source = testing::naive_eval(testing::naive_view(t, parts), phi);
            image = fractured_to_convex(expand_composition(CompositionStructure{s})).shape;
          }
          ++checks;
          if (source != testing::naive_eval(RelationalView(Theory::convex, image), g)) {
            ++violations;
            o.fail(b.name + " on " + s.to_string());
          }
        }
      }
    }
  }
  o.detail << checks << " (structure, sentence) checks up to size 8, " << violations << " violations";
  time_limit(o, t0, 120);
}

// 10. Monte Carlo at n = 2000.
void monte_carlo(Outcome& o) {
  const auto t0 = Clock::now();
  LimitEngine engine;
  const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  double worst = 0;
  for (const auto& b : battery()) {
    const Formula f = sentence_of(b);
    const auto e = estimate_probability(b.theory, f, 2000, 200'000, 42, threads);
    const Rational limit = engine.limit(b.theory, f).probability;
    const double gap = std::abs(e.estimate.get_d() - limit.get_d());
    worst = std::max(worst, gap);
    if (gap >= 0.01) o.fail(b.name + " estimate " + decimal_string(e.estimate) + " limit " + q(limit));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", worst);
  o.detail << "10 sentences, 2e5 samples each, worst gap " << buf;
  time_limit(o, t0, 120);
}

struct Check {
  const char* name;
  void (*run)(Outcome&);
};

const Check checks[] = {
    {"shape counts", shape_counts},
    {"all-singleton equivalence threshold", all_singletons},
    {"segment game matches the game solver", segment_vs_solver},
    {"congruence of oplus and hat", congruence},
    {"full aperiodicity", aperiodicity},
    {"pushforward exactness", pushforward},
    {"exact limits", exact_limits},
    {"exact vs iterated distribution", exact_vs_iterated},
    {"transfer property", transfer},
    {"Monte Carlo at n = 2000", monte_carlo},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= 10; ++i) selected.push_back(i);
  }
  bool all = true;
  for (int index : selected) {
    if (index < 1 || index > 10) {
      std::cerr << "no check " << index << "\n";
      return 2;
    }
    const Check& c = checks[index - 1];
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f s", seconds_since(t0));
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << index << "] " << c.name << " (" << secs << "): "
              << o.detail.str() << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
