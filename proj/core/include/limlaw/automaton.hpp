#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "limlaw/chain.hpp"
#include "limlaw/formula.hpp"
#include "limlaw/part_sequence.hpp"

namespace limlaw {

// A convex linear order of size n is read as a word of n letters, one per
// point in order; bit 0 of a letter is set when the point opens a new class.
// Points i < j share a class iff no letter in positions i+1..j opens a class,
// so the relations <, E and = are regular over these words and every
// convex-language formula compiles to a finite automaton (free variables
// become extra tracks: bit i+1 marks the position of variables[i]).
struct Automaton {
  std::vector<std::string> variables;
  int start = 0;
  std::vector<int> delta;        // delta[state * letters() + letter]
  std::vector<char> accepting;

  [[nodiscard]] int letters() const { return 1 << (1 + static_cast<int>(variables.size())); }
  [[nodiscard]] int size() const { return static_cast<int>(accepting.size()); }
  [[nodiscard]] int next(int state, int letter) const {
    return delta[static_cast<std::size_t>(state) * static_cast<std::size_t>(letters()) +
                 static_cast<std::size_t>(letter)];
  }
};

// Minimal automaton accepting exactly the words (with each free variable
// marked once) that satisfy the formula. Only <, E and = may occur. Throws
// BudgetExhausted when an intermediate automaton exceeds max_states.
Automaton compile_automaton(const Formula& convex_formula, std::uint64_t max_states = 2'000'000);

// Runs a sentence automaton on a shape.
bool automaton_accepts(const Automaton& automaton, const PartSequence& shape);

// The chain M_phi reduced to its coarsest lumping that still separates
// accepting from rejecting states: states are the residuals of the sentence
// automaton reachable after the first point, each with a shortest
// representative. Every state is a union of k-equivalence classes, so
// representatives are pairwise inequivalent. k is recorded but not used.
Chain sentence_chain(const Formula& convex_sentence, int k, std::uint64_t max_states = 2'000'000);

}  // namespace limlaw
