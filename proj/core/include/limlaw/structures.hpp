#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "limlaw/part_sequence.hpp"

namespace limlaw {

// Linear order with an equivalence relation whose classes are intervals.
// shape holds the class sizes in order.
struct ConvexLinearOrder {
  PartSequence shape;
  friend bool operator==(const ConvexLinearOrder&, const ConvexLinearOrder&) = default;
};

// Increasing blocks of decreasing permutations; shape holds block sizes.
struct LayeredPermutation {
  PartSequence shape;

  // One-line notation, 1-based: blocks [2,1] give 2 1 3.
  [[nodiscard]] std::vector<int> one_line() const;
  [[nodiscard]] std::string one_line_string() const;

  friend bool operator==(const LayeredPermutation&, const LayeredPermutation&) = default;
};

// Equivalence relation with a linear order on classes only.
struct CompositionStructure {
  PartSequence shape;
  friend bool operator==(const CompositionStructure&, const CompositionStructure&) = default;
};

// Composition together with a linear order inside every class. The expansion
// is canonical: inside a class, p2 follows point numbering.
struct FracturedOrder {
  PartSequence shape;
  friend bool operator==(const FracturedOrder&, const FracturedOrder&) = default;
};

enum class BuildStep { plus_bullet, hat };

ConvexLinearOrder bullet();
ConvexLinearOrder oplus(const ConvexLinearOrder& left, const ConvexLinearOrder& right);
ConvexLinearOrder hat(const ConvexLinearOrder& c);
ConvexLinearOrder apply(const ConvexLinearOrder& c, BuildStep step);

// The unique sequence of size()-1 steps that rebuilds c from the one-point
// order.
std::vector<BuildStep> decompose(const ConvexLinearOrder& c);
ConvexLinearOrder replay(std::span<const BuildStep> steps);

// Uniform over the 2^(n-1) convex linear orders of size n: n-1 fair coin flips,
// each choosing between "- (+) bullet" and hat. Throws std::invalid_argument
// for n < 1.
ConvexLinearOrder sample_uniform(int n, std::mt19937_64& rng);

// Same distribution, writing the part index of each point into class_of
// (resized to n). This is the allocation-free path used by the sampler.
void sample_classes(int n, std::mt19937_64& rng, std::vector<int>& class_of);

ConvexLinearOrder layered_to_convex(const LayeredPermutation& p);
LayeredPermutation convex_to_layered(const ConvexLinearOrder& c);
FracturedOrder expand_composition(const CompositionStructure& c);
ConvexLinearOrder fractured_to_convex(const FracturedOrder& f);
CompositionStructure reduct(const FracturedOrder& f);

}  // namespace limlaw
