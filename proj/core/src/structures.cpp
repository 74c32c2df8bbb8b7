#include "limlaw/structures.hpp"

#include <stdexcept>

namespace limlaw {

std::vector<int> LayeredPermutation::one_line() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(shape.size()));
  int start = 0;
  for (int block : shape.parts()) {
    for (int v = start + block; v > start; --v) out.push_back(v);
    start += block;
  }
  return out;
}

std::string LayeredPermutation::one_line_string() const {
  std::string out;
  for (int v : one_line()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

ConvexLinearOrder bullet() { return {PartSequence::bullet()}; }

ConvexLinearOrder oplus(const ConvexLinearOrder& left, const ConvexLinearOrder& right) {
  std::vector<int> parts(left.shape.parts().begin(), left.shape.parts().end());
  parts.insert(parts.end(), right.shape.parts().begin(), right.shape.parts().end());
  return {PartSequence(std::move(parts))};
}

ConvexLinearOrder hat(const ConvexLinearOrder& c) {
  std::vector<int> parts(c.shape.parts().begin(), c.shape.parts().end());
  ++parts.back();
  return {PartSequence(std::move(parts))};
}

ConvexLinearOrder apply(const ConvexLinearOrder& c, BuildStep step) {
  return step == BuildStep::hat ? hat(c) : oplus(c, bullet());
}

std::vector<BuildStep> decompose(const ConvexLinearOrder& c) {
  // Peel the last point: a singleton last class came from - (+) bullet,
  // anything larger from hat.
  std::vector<BuildStep> steps;
  steps.reserve(static_cast<std::size_t>(c.shape.size() - 1));
  const auto parts = c.shape.parts();
  for (std::size_t i = parts.size(); i-- > 0;) {
    for (int grown = parts[i]; grown > 1; --grown) steps.push_back(BuildStep::hat);
    if (i > 0) steps.push_back(BuildStep::plus_bullet);
  }
  return {steps.rbegin(), steps.rend()};
}

ConvexLinearOrder replay(std::span<const BuildStep> steps) {
  std::vector<int> parts{1};
  for (BuildStep s : steps) {
    if (s == BuildStep::hat) {
      ++parts.back();
    } else {
      parts.push_back(1);
    }
  }
  return {PartSequence(std::move(parts))};
}

void sample_classes(int n, std::mt19937_64& rng, std::vector<int>& class_of) {
  if (n < 1) throw std::invalid_argument("sample size must be at least 1");
  class_of.resize(static_cast<std::size_t>(n));
  class_of[0] = 0;
  int cls = 0;
  std::uint64_t bits = 0;
  int available = 0;
  for (int i = 1; i < n; ++i) {
    if (available == 0) {
      bits = rng();
      available = 64;
    }
    // bit set: - (+) bullet opens a new class; clear: hat grows the last one.
    cls += static_cast<int>(bits & 1U);
    bits >>= 1;
    --available;
    class_of[static_cast<std::size_t>(i)] = cls;
  }
}

ConvexLinearOrder sample_uniform(int n, std::mt19937_64& rng) {
  std::vector<int> class_of;
  sample_classes(n, rng, class_of);
  std::vector<int> parts(static_cast<std::size_t>(class_of.back() + 1), 0);
  for (int c : class_of) ++parts[static_cast<std::size_t>(c)];
  return {PartSequence(std::move(parts))};
}

ConvexLinearOrder layered_to_convex(const LayeredPermutation& p) { return {p.shape}; }
LayeredPermutation convex_to_layered(const ConvexLinearOrder& c) { return {c.shape}; }
FracturedOrder expand_composition(const CompositionStructure& c) { return {c.shape}; }
ConvexLinearOrder fractured_to_convex(const FracturedOrder& f) { return {f.shape}; }
CompositionStructure reduct(const FracturedOrder& f) { return {f.shape}; }

}  // namespace limlaw
