#include "limlaw/signature.hpp"

#include <algorithm>

namespace limlaw {

std::string_view to_string(Theory theory) {
  switch (theory) {
    case Theory::convex: return "convex";
    case Theory::layered: return "layered";
    case Theory::composition: return "composition";
    case Theory::fractured: return "fractured";
  }
  return "?";
}

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::less: return "<";
    case Relation::equiv: return "E";
    case Relation::less1: return "<1";
    case Relation::less2: return "<2";
    case Relation::prec1: return "p1";
    case Relation::prec2: return "p2";
  }
  return "?";
}

std::optional<Theory> theory_from_string(std::string_view name) {
  for (Theory t : {Theory::convex, Theory::layered, Theory::composition, Theory::fractured}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::optional<Relation> relation_from_string(std::string_view spelling) {
  for (Relation r : {Relation::less, Relation::equiv, Relation::less1, Relation::less2,
                     Relation::prec1, Relation::prec2}) {
    if (to_string(r) == spelling) return r;
  }
  return std::nullopt;
}

Signature::Signature(Theory theory) : theory_(theory) {
  switch (theory) {
    case Theory::convex: relations_ = {Relation::less, Relation::equiv}; break;
    case Theory::layered: relations_ = {Relation::less1, Relation::less2}; break;
    case Theory::composition: relations_ = {Relation::equiv, Relation::prec1}; break;
    case Theory::fractured: relations_ = {Relation::equiv, Relation::prec1, Relation::prec2}; break;
  }
}

bool Signature::contains(Relation r) const {
  return std::find(relations_.begin(), relations_.end(), r) != relations_.end();
}

}  // namespace limlaw
