#include "limlaw/limit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "limlaw/automaton.hpp"
#include "limlaw/errors.hpp"
#include "limlaw/evaluate.hpp"
#include "limlaw/relational.hpp"
#include "limlaw/translate.hpp"

namespace limlaw {

const LimitEngine::Entry* LimitEngine::class_chain(int k) {
  std::lock_guard lock(mutex_);
  if (const auto it = cache_.find(k); it != cache_.end()) return it->second ? &*it->second : nullptr;
  ChainOptions capped = options_;
  capped.max_states = std::min(options_.max_states, cross_check_states_);
  capped.horizon = -1;
  std::optional<Entry> e;
  try {
    Entry built;
    built.chain = build_chain(k, {}, capped);
    built.limit = limiting_distribution(built.chain);
    e = std::move(built);
  } catch (const BudgetExhausted&) {
  } catch (const PeriodicChain& p) {
    throw VerificationFailure("chain of " + std::to_string(k) + "-classes: " + p.what());
  }
  const auto& slot = cache_.emplace(k, std::move(e)).first->second;
  return slot ? &*slot : nullptr;
}

Chain LimitEngine::chain(int k) {
  if (const Entry* e = class_chain(k)) return e->chain;
  ChainOptions plain = options_;
  plain.horizon = -1;
  return build_chain(k, {}, plain);
}

namespace {

int run_steps(const Chain& chain, const ConvexLinearOrder& c) {
  int s = chain.start;
  for (BuildStep step : decompose(c)) {
    const auto& st = chain.states[static_cast<std::size_t>(s)];
    s = step == BuildStep::plus_bullet ? st.succ_plus : st.succ_hat;
  }
  return s;
}

}  // namespace

LimitResult LimitEngine::limit(Theory theory, const Formula& sentence, std::optional<int> k_override) {
  if (!is_sentence(sentence)) throw InputError("formula has free variables");
  check_signature(sentence, Signature(theory));

  LimitResult result;
  result.convex_sentence = translate_to_convex(theory, sentence);
  result.quantifier_depth = quantifier_depth(result.convex_sentence);
  result.k = result.quantifier_depth;
  if (k_override) {
    if (*k_override < result.quantifier_depth) {
      throw InputError("k override " + std::to_string(*k_override) +
                       " is below the quantifier depth " +
                       std::to_string(result.quantifier_depth));
    }
    result.k = *k_override;
  }

  const CompiledFormula check(result.convex_sentence, Signature(Theory::convex));
  const auto holds = [&](const ConvexLinearOrder& c) {
    return check(RelationalView(Theory::convex, c.shape));
  };

  result.chain = sentence_chain(result.convex_sentence, result.k, options_.automaton_states);
  for (const auto& s : result.chain.states) {
    if (holds(s.representative) != s.accepting) {
      throw VerificationFailure("automaton labels state " + std::to_string(s.id) + " (" +
                                s.representative.shape.to_string() + ") " +
                                (s.accepting ? "accepting" : "rejecting") +
                                " but the evaluator disagrees");
    }
  }
  for (const auto& c : chain_components(result.chain)) {
    if (c.closed && c.period != 1) {
      throw VerificationFailure("closed class of state " + std::to_string(c.states.front()) +
                                " has period " + std::to_string(c.period));
    }
  }
  result.limit = limiting_distribution(result.chain);
  result.probability = accepting_mass(result.chain, result.limit);

  if (const Entry* e = class_chain(result.k)) {
    result.class_count = e->chain.states.size();
    Chain classes = e->chain;
    label_accepting(classes, holds);
    for (const auto& s : classes.states) {
      const int image = run_steps(result.chain, s.representative);
      const auto& lumped = result.chain.states[static_cast<std::size_t>(image)];
      const int plus = run_steps(result.chain, classes.states[static_cast<std::size_t>(s.succ_plus)].representative);
      const int hat = run_steps(result.chain, classes.states[static_cast<std::size_t>(s.succ_hat)].representative);
      if (lumped.accepting != s.accepting || plus != lumped.succ_plus || hat != lumped.succ_hat) {
        throw VerificationFailure("class " + s.representative.shape.to_string() +
                                  " does not lump onto state " + std::to_string(image) + " (" +
                                  lumped.representative.shape.to_string() + ")");
      }
    }
    const Rational direct = accepting_mass(classes, e->limit);
    if (direct != result.probability) {
      throw VerificationFailure("limit over " + std::to_string(result.k) + "-classes is " +
                                exact_string(direct) + " but the lumped chain gives " +
                                exact_string(result.probability));
    }
  }
  return result;
}

Rational limit_probability(Theory theory, const Formula& sentence) {
  LimitEngine engine;
  return engine.limit(theory, sentence).probability;
}

double wilson_half_width(std::uint64_t hits, std::uint64_t samples, double z) {
  if (samples == 0) return 1.0;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  return z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t count_hits(const CompiledFormula& check, Theory theory, int n, std::uint64_t seed,
                         std::uint64_t first, std::uint64_t last) {
  std::uint64_t hits = 0;
  std::vector<int> class_of;
  for (std::uint64_t i = first; i < last; ++i) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(i)));
    sample_classes(n, rng, class_of);
    const RelationalView view = RelationalView::from_classes(theory, class_of);
    if (check(view)) ++hits;
  }
  return hits;
}

}  // namespace

Estimate estimate_probability(Theory theory, const Formula& sentence, int n,
                              std::uint64_t samples, std::uint64_t seed, int threads) {
  if (n < 1) throw InputError("sample size n must be at least 1");
  if (samples < 1) throw InputError("number of samples must be at least 1");
  if (!is_sentence(sentence)) throw InputError("formula has free variables");
  const CompiledFormula check(sentence, Signature(theory));

  const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
  std::vector<std::uint64_t> partial(workers, 0);
  const auto range = [&](std::uint64_t w) { return samples * w / workers; };
  if (workers == 1) {
    partial[0] = count_hits(check, theory, n, seed, 0, samples);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] { partial[w] = count_hits(check, theory, n, seed, range(w), range(w + 1)); });
    }
    for (auto& t : pool) t.join();
  }

  Estimate out;
  out.samples = samples;
  for (auto h : partial) out.hits += h;
  out.estimate = Rational(mpz_class(std::to_string(out.hits)), mpz_class(std::to_string(samples)));
  out.estimate.canonicalize();
  out.half_width = wilson_half_width(out.hits, samples, 2.5758293035489004);
  return out;
}

}  // namespace limlaw
