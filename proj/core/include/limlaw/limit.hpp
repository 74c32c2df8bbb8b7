#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>

#include "limlaw/chain.hpp"
#include "limlaw/formula.hpp"
#include "limlaw/signature.hpp"

namespace limlaw {

struct LimitResult {
  Rational probability;
  int quantifier_depth = 0;
  int k = 0;
  Formula convex_sentence = Formula::truth();
  Chain chain;          // M_phi for this sentence, labeled
  Distribution limit;   // limiting distribution of chain
  // Number of k-equivalence classes when the full class chain fit under the
  // cross-check cap; the limit was then recomputed on it and compared.
  std::optional<std::size_t> class_count;
};

// Computes exact limiting probabilities.
//
// The chain used for a sentence is M_phi lumped to the residuals of the
// sentence automaton (see sentence_chain). Each of its states is a union of
// k-classes and the lumping commutes with both transitions, so n-step
// distributions and limits of the accepting set agree with the full
// k-class chain. Whenever that full chain has at most cross_check_states
// states it is built as well and the two are compared: the lumping must
// commute with the transitions and the limits must coincide.
class LimitEngine {
 public:
  explicit LimitEngine(ChainOptions options = {}, std::size_t cross_check_states = 5'000)
      : options_(options), cross_check_states_(cross_check_states) {}

  // Sentence-independent chain of k-classes (all states non-accepting).
  // Throws BudgetExhausted beyond options.max_states.
  Chain chain(int k);

  // Translates to the convex language, takes k = max(quantifier depth,
  // k_override), builds M_phi and sums its limit over accepting states. A
  // k_override below the quantifier depth is an InputError; a periodic
  // chain or a failed cross-check is a VerificationFailure.
  LimitResult limit(Theory theory, const Formula& sentence, std::optional<int> k_override = {});

 private:
  struct Entry {
    Chain chain;
    Distribution limit;
  };
  const Entry* class_chain(int k);

  ChainOptions options_;
  std::size_t cross_check_states_;
  std::mutex mutex_;
  std::map<int, std::optional<Entry>> cache_;
};

Rational limit_probability(Theory theory, const Formula& sentence);

struct Estimate {
  Rational estimate;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double half_width = 0;  // 99% Wilson interval
};

// Model-checks the sentence on `samples` independent uniform structures of
// size n drawn in the theory itself (a uniform convex shape mapped through the
// theory's shape-preserving bijection). Sample i uses a generator seeded from
// (seed, i), so the result does not depend on the thread count.
Estimate estimate_probability(Theory theory, const Formula& sentence, int n,
                              std::uint64_t samples, std::uint64_t seed, int threads = 1);

double wilson_half_width(std::uint64_t hits, std::uint64_t samples, double z);

}  // namespace limlaw
