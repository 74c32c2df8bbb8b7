#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "limlaw/structures.hpp"

namespace limlaw {

using Rational = mpq_class;
using Distribution = std::vector<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;
using AcceptPredicate = std::function<bool(const ConvexLinearOrder&)>;

// One k-equivalence class of convex linear orders. succ_plus is the class of
// representative (+) bullet, succ_hat the class of hat(representative).
struct ChainState {
  int id = 0;
  ConvexLinearOrder representative{PartSequence::bullet()};
  bool accepting = false;
  int succ_plus = 0;
  int succ_hat = 0;
  // False for frontier states of a horizon-limited build; their successors
  // are self-loops standing in for the unexplored part.
  bool expanded = true;
};

// Markov chain over k-equivalence classes; each state moves to its two
// successors with probability 1/2 each.
struct Chain {
  int k = 0;
  std::vector<ChainState> states;
  int start = 0;
};

struct ChainOptions {
  // Confirm every identification, every new state and every representative
  // reduction with the generic game solver.
  bool verify_with_oracle = false;
  // Node budget per generic equivalence decision.
  std::uint64_t oracle_budget = 50'000'000;
  // Exceeding this many states raises BudgetExhausted.
  std::size_t max_states = 200'000;
  // When non-negative, states first reached after this many steps are left
  // unexpanded. distribution_after is exact up to that many steps.
  int horizon = -1;
  // Cap on intermediate automaton sizes when building a sentence's chain.
  std::uint64_t automaton_states = 2'000'000;
};

// Raised by limiting_distribution on a chain with a periodic state.
class PeriodicChain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Breadth-first closure from the one-point order. New successors are reduced,
// typed with the segment game and matched against the states found so far.
// Throws BudgetExhausted when an oracle decision runs out of budget or the
// state cap is hit, and VerificationFailure when the oracle disagrees with
// the segment game.
Chain build_chain(int k, const AcceptPredicate& accept = {}, const ChainOptions& options = {});

// Re-labels the accepting flags of an existing chain.
void label_accepting(Chain& chain, const AcceptPredicate& accept);

// Throws std::invalid_argument for dangling successor ids or a bad start.
void validate(const Chain& chain);

bool is_truncated(const Chain& chain);

// Re-checks with the generic solver that representatives are pairwise
// inequivalent. Throws VerificationFailure or BudgetExhausted.
void verify_representatives(const Chain& chain, std::uint64_t budget_per_pair);

RationalMatrix transition_matrix(const Chain& chain);

// A strongly connected component. closed means no transition leaves it;
// period is the gcd of its cycle lengths (0 when it has no internal edge).
struct ChainComponent {
  std::vector<int> states;
  bool closed = false;
  int period = 0;
};

// Components in reverse topological order (successors first). This and the
// two functions below reject truncated chains with std::invalid_argument.
std::vector<ChainComponent> chain_components(const Chain& chain);

// No cyclic partition P_0..P_{d-1}, d > 1, exists in which every state of P_i
// moves into P_{i+1} with probability 1. Such a partition can only live inside
// a closed component, so this holds iff every closed component has period 1.
// Transient components may have larger periods without affecting the limit.
bool check_fully_aperiodic(const Chain& chain);

// Exact limit of the n-step distribution from the start state: stationary
// mass of each closed class weighted by its absorption probability, zero on
// transient states. Throws PeriodicChain when the chain is not fully
// aperiodic.
Distribution limiting_distribution(const Chain& chain);

// Exact distribution after the given number of steps from the start state.
Distribution distribution_after(const Chain& chain, std::uint64_t steps);

// Sum of the distribution over accepting states.
Rational accepting_mass(const Chain& chain, const Distribution& distribution);

// Solves a * x = b column-wise over the rationals by Gauss-Jordan elimination.
// Throws std::domain_error when a is singular.
RationalMatrix solve_linear_system(RationalMatrix a, RationalMatrix b);

// Chain export. The JSON layout is {k, start, steps, states: [{id,
// representative, accepting, succ_plus, succ_hat}], limit: [{exact,
// decimal}]}. steps records that a size-n structure sits n-1 steps from
// start; limit is omitted when no distribution is given and states carry
// "expanded": false only on the frontier of a truncated chain.
std::string chain_to_json(const Chain& chain, const Distribution* limit = nullptr);
Chain chain_from_json(std::string_view text);
std::string chain_to_dot(const Chain& chain);

// "p/q" with q >= 1, and a 12-significant-digit decimal rendering.
std::string exact_string(const Rational& q);
std::string decimal_string(const Rational& q);

}  // namespace limlaw
