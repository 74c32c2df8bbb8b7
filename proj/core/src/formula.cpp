#include "limlaw/formula.hpp"

#include <algorithm>

#include "limlaw/errors.hpp"

namespace limlaw {

Formula Formula::atom(Relation relation, std::string lhs, std::string rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::atom;
  n->relation = relation;
  n->first = std::move(lhs);
  n->second = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::equals(std::string lhs, std::string rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::equals;
  n->first = std::move(lhs);
  n->second = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::truth() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::truth;
  return Formula(std::move(n));
}

Formula Formula::falsity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::falsity;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::negation;
  n->left = std::move(operand.node_);
  return Formula(std::move(n));
}

Formula Formula::binary(Kind kind, Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula left, Formula right) {
  return binary(Kind::conjunction, std::move(left), std::move(right));
}
Formula Formula::disjunction(Formula left, Formula right) {
  return binary(Kind::disjunction, std::move(left), std::move(right));
}
Formula Formula::implication(Formula left, Formula right) {
  return binary(Kind::implication, std::move(left), std::move(right));
}
Formula Formula::biconditional(Formula left, Formula right) {
  return binary(Kind::biconditional, std::move(left), std::move(right));
}

Formula Formula::exists(std::string variable, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::exists;
  n->first = std::move(variable);
  n->left = std::move(body.node_);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string variable, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::forall;
  n->first = std::move(variable);
  n->left = std::move(body.node_);
  return Formula(std::move(n));
}

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::conjunction:
    case Kind::disjunction:
    case Kind::implication:
    case Kind::biconditional:
      return true;
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::atom:
      return a.relation() == b.relation() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Formula::Kind::equals:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Formula::Kind::truth:
    case Formula::Kind::falsity:
      return true;
    case Formula::Kind::negation:
      return a.operand() == b.operand();
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      return a.variable() == b.variable() && a.operand() == b.operand();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

int quantifier_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::atom:
    case Formula::Kind::equals:
    case Formula::Kind::truth:
    case Formula::Kind::falsity:
      return 0;
    case Formula::Kind::negation:
      return quantifier_depth(f.operand());
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      return 1 + quantifier_depth(f.operand());
    default:
      return std::max(quantifier_depth(f.left()), quantifier_depth(f.right()));
  }
}

namespace {

void collect_free(const Formula& f, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::atom:
    case Formula::Kind::equals:
      if (!bound.contains(f.lhs())) out.insert(f.lhs());
      if (!bound.contains(f.rhs())) out.insert(f.rhs());
      return;
    case Formula::Kind::truth:
    case Formula::Kind::falsity:
      return;
    case Formula::Kind::negation:
      collect_free(f.operand(), bound, out);
      return;
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      const auto it = bound.insert(f.variable());
      collect_free(f.operand(), bound, out);
      bound.erase(it);
      return;
    }
    default:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
  }
}

void collect_relations(const Formula& f, std::set<Relation>& out) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      out.insert(f.relation());
      return;
    case Formula::Kind::equals:
    case Formula::Kind::truth:
    case Formula::Kind::falsity:
      return;
    case Formula::Kind::negation:
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      collect_relations(f.operand(), out);
      return;
    default:
      collect_relations(f.left(), out);
      collect_relations(f.right(), out);
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<Relation> relations_used(const Formula& f) {
  std::set<Relation> out;
  collect_relations(f, out);
  return out;
}

void check_signature(const Formula& f, const Signature& signature) {
  for (Relation r : relations_used(f)) {
    if (!signature.contains(r)) {
      throw InputError("relation symbol '" + std::string(to_string(r)) +
                       "' is not in the " + std::string(to_string(signature.theory())) +
                       " signature");
    }
  }
}

namespace {

std::string_view connective(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::conjunction: return " & ";
    case Formula::Kind::disjunction: return " | ";
    case Formula::Kind::implication: return " -> ";
    case Formula::Kind::biconditional: return " <-> ";
    default: return " ? ";
  }
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, std::string& out) {
  const bool wrap = f.is_binary() || f.is_quantifier();
  if (wrap) out += '(';
  print(f, out);
  if (wrap) out += ')';
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      out += f.lhs();
      out += ' ';
      out += to_string(f.relation());
      out += ' ';
      out += f.rhs();
      return;
    case Formula::Kind::equals:
      out += f.lhs();
      out += " = ";
      out += f.rhs();
      return;
    case Formula::Kind::truth:
      out += "true";
      return;
    case Formula::Kind::falsity:
      out += "false";
      return;
    case Formula::Kind::negation: {
      const Formula inner = f.operand();
      const bool bare = inner.kind() == Formula::Kind::negation ||
                        inner.kind() == Formula::Kind::truth ||
                        inner.kind() == Formula::Kind::falsity;
      out += '!';
      if (!bare) out += '(';
      print(inner, out);
      if (!bare) out += ')';
      return;
    }
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      out += f.kind() == Formula::Kind::exists ? "exists " : "forall ";
      out += f.variable();
      out += ". ";
      const Formula body = f.operand();
      if (body.is_binary()) {
        out += '(';
        print(body, out);
        out += ')';
      } else {
        print(body, out);
      }
      return;
    }
    default:
      print_operand(f.left(), out);
      out += connective(f.kind());
      print_operand(f.right(), out);
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace limlaw
