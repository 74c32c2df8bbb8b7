#pragma once

#include "limlaw/formula.hpp"

namespace limlaw {

// Rewrites layered-permutation atoms into the convex language:
//   a <1 b  ~>  a < b
//   a <2 b  ~>  (a E b & b < a) | (!(a E b) & a < b)
// Throws InputError on any symbol outside {<1, <2}.
Formula translate_layered(const Formula& f);

// Rewrites composition (and fractured-order) atoms into the convex language:
//   a E b   ~>  a E b
//   a p1 b  ~>  !(a E b) & a < b
//   a p2 b  ~>  a E b & a < b
// Throws InputError on any symbol outside {E, p1, p2}.
Formula translate_composition(const Formula& f);

// Dispatches on the theory; convex sentences are returned unchanged after a
// signature check.
Formula translate_to_convex(Theory theory, const Formula& f);

}  // namespace limlaw
