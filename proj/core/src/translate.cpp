#include "limlaw/translate.hpp"

#include <functional>

#include "limlaw/errors.hpp"

namespace limlaw {
namespace {

using AtomRule = std::function<Formula(Relation, const std::string&, const std::string&)>;

Formula rewrite_atoms(const Formula& f, const AtomRule& rule) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      return rule(f.relation(), f.lhs(), f.rhs());
    case Formula::Kind::equals:
    case Formula::Kind::truth:
    case Formula::Kind::falsity:
      return f;
    case Formula::Kind::negation:
      return Formula::negation(rewrite_atoms(f.operand(), rule));
    case Formula::Kind::exists:
      return Formula::exists(f.variable(), rewrite_atoms(f.operand(), rule));
    case Formula::Kind::forall:
      return Formula::forall(f.variable(), rewrite_atoms(f.operand(), rule));
    case Formula::Kind::conjunction:
      return Formula::conjunction(rewrite_atoms(f.left(), rule), rewrite_atoms(f.right(), rule));
    case Formula::Kind::disjunction:
      return Formula::disjunction(rewrite_atoms(f.left(), rule), rewrite_atoms(f.right(), rule));
    case Formula::Kind::implication:
      return Formula::implication(rewrite_atoms(f.left(), rule), rewrite_atoms(f.right(), rule));
    case Formula::Kind::biconditional:
      return Formula::biconditional(rewrite_atoms(f.left(), rule), rewrite_atoms(f.right(), rule));
  }
  return f;
}

[[noreturn]] void foreign(Relation r, std::string_view theory) {
  throw InputError("relation symbol '" + std::string(to_string(r)) + "' does not belong to the " +
                   std::string(theory) + " language");
}

}  // namespace

Formula translate_layered(const Formula& f) {
  return rewrite_atoms(f, [](Relation r, const std::string& a, const std::string& b) {
    switch (r) {
      case Relation::less1:
        return Formula::atom(Relation::less, a, b);
      case Relation::less2:
        return Formula::disjunction(
            Formula::conjunction(Formula::atom(Relation::equiv, a, b),
                                 Formula::atom(Relation::less, b, a)),
            Formula::conjunction(Formula::negation(Formula::atom(Relation::equiv, a, b)),
                                 Formula::atom(Relation::less, a, b)));
      default:
        foreign(r, "layered permutation");
    }
  });
}

Formula translate_composition(const Formula& f) {
  return rewrite_atoms(f, [](Relation r, const std::string& a, const std::string& b) {
    switch (r) {
      case Relation::equiv:
        return Formula::atom(Relation::equiv, a, b);
      case Relation::prec1:
        return Formula::conjunction(Formula::negation(Formula::atom(Relation::equiv, a, b)),
                                    Formula::atom(Relation::less, a, b));
      case Relation::prec2:
        return Formula::conjunction(Formula::atom(Relation::equiv, a, b),
                                    Formula::atom(Relation::less, a, b));
      default:
        foreign(r, "composition");
    }
  });
}

Formula translate_to_convex(Theory theory, const Formula& f) {
  switch (theory) {
    case Theory::convex:
      check_signature(f, Signature(Theory::convex));
      return f;
    case Theory::layered:
      return translate_layered(f);
    case Theory::composition:
      check_signature(f, Signature(Theory::composition));
      return translate_composition(f);
    case Theory::fractured:
      return translate_composition(f);
  }
  return f;
}

}  // namespace limlaw
