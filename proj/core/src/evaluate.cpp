#include "limlaw/evaluate.hpp"

#include <algorithm>
#include <utility>

#include "limlaw/errors.hpp"

namespace limlaw {
namespace {

template <class Node>
std::pair<int, int> range(const RelationalView& s, const Node& n, const int* env) {
  if (!s.positional()) return {0, s.size()};
  return {n.lo >= 0 ? env[n.lo] + 1 : 0, n.hi >= 0 ? env[n.hi] : s.size()};
}

void flatten(const Formula& f, Formula::Kind kind, std::vector<Formula>& out) {
  if (f.kind() == kind) {
    flatten(f.left(), kind, out);
    flatten(f.right(), kind, out);
  } else {
    out.push_back(f);
  }
}

Formula join(const std::vector<Formula>& parts, Formula::Kind kind) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    acc = kind == Formula::Kind::conjunction ? Formula::conjunction(acc, parts[i])
                                             : Formula::disjunction(acc, parts[i]);
  }
  return acc;
}

// Pushes quantifiers past the conjuncts (exists) or disjuncts (forall) that
// do not mention the bound variable. Sound on non-empty structures and turns
// guards like "x is the first point" into cheap early exits.
Formula miniscope(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::negation:
      return Formula::negation(miniscope(f.operand()));
    case K::conjunction:
      return Formula::conjunction(miniscope(f.left()), miniscope(f.right()));
    case K::disjunction:
      return Formula::disjunction(miniscope(f.left()), miniscope(f.right()));
    case K::implication:
      return Formula::implication(miniscope(f.left()), miniscope(f.right()));
    case K::biconditional:
      return Formula::biconditional(miniscope(f.left()), miniscope(f.right()));
    case K::exists:
    case K::forall: {
      const std::string& v = f.variable();
      const Formula body = miniscope(f.operand());
      const bool ex = f.kind() == K::exists;
      const auto bind = [&](const Formula& b) {
        return ex ? Formula::exists(v, b) : Formula::forall(v, b);
      };
      if (!ex && body.kind() == K::implication && free_variables(body.left()).count(v) == 0) {
        return Formula::implication(body.left(), bind(body.right()));
      }
      const K joint = ex ? K::conjunction : K::disjunction;
      std::vector<Formula> parts;
      flatten(body, joint, parts);
      std::vector<Formula> outside;
      std::vector<Formula> inside;
      for (const auto& p : parts) (free_variables(p).count(v) ? inside : outside).push_back(p);
      if (outside.empty()) return bind(body);
      if (inside.empty()) return join(outside, joint);
      outside.push_back(bind(join(inside, joint)));
      return join(outside, joint);
    }
    default:
      return f;
  }
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, const Signature& signature,
                                 std::vector<std::string> free_order)
    : signature_(signature), free_order_(std::move(free_order)) {
  check_signature(f, signature_);
  std::map<std::string, std::vector<int>> scope;
  for (const auto& name : free_order_) scope[name].push_back(slots_++);
  for (const auto& name : limlaw::free_variables(f)) {
    if (std::find(free_order_.begin(), free_order_.end(), name) == free_order_.end()) {
      throw InputError("free variable '" + name + "' is unassigned");
    }
  }
  root_ = lower(miniscope(f), scope);
}

int CompiledFormula::lower(const Formula& f, std::map<std::string, std::vector<int>>& scope) {
  const auto slot_of = [&](const std::string& v) { return scope.at(v).back(); };
  Node node{f.kind(), Relation::less, -1, -1};
  switch (f.kind()) {
    case Formula::Kind::atom:
      node.relation = f.relation();
      node.a = slot_of(f.lhs());
      node.b = slot_of(f.rhs());
      break;
    case Formula::Kind::equals:
      node.a = slot_of(f.lhs());
      node.b = slot_of(f.rhs());
      break;
    case Formula::Kind::truth:
    case Formula::Kind::falsity:
      break;
    case Formula::Kind::negation:
      node.b = lower(f.operand(), scope);
      break;
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      auto& stack = scope[f.variable()];
      node.a = slots_++;
      stack.push_back(node.a);
      const Formula body = f.operand();
      if (f.kind() == Formula::Kind::exists) {
        find_bounds(body, node, scope);
      } else if (body.kind() == Formula::Kind::implication) {
        find_bounds(body.left(), node, scope);
      }
      node.b = lower(f.operand(), scope);
      scope[f.variable()].pop_back();
      break;
    }
    default:
      node.a = lower(f.left(), scope);
      node.b = lower(f.right(), scope);
  }
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size()) - 1;
}

void CompiledFormula::find_bounds(const Formula& guard, Node& node,
                                  const std::map<std::string, std::vector<int>>& scope) const {
  std::vector<Formula> parts;
  flatten(guard, Formula::Kind::conjunction, parts);
  for (const auto& p : parts) {
    if (p.kind() != Formula::Kind::atom) continue;
    if (p.relation() != Relation::less && p.relation() != Relation::less1) continue;
    if (p.lhs() == p.rhs()) continue;
    const auto bound = [&](const std::string& other) { return scope.at(other).back(); };
    if (scope.at(p.lhs()).back() == node.a && node.hi < 0) node.hi = bound(p.rhs());
    if (scope.at(p.rhs()).back() == node.a && node.lo < 0) node.lo = bound(p.lhs());
  }
}

bool CompiledFormula::eval(const RelationalView& s, int index, int* env) const {
  const Node& n = nodes_[static_cast<std::size_t>(index)];
  switch (n.kind) {
    case Formula::Kind::atom:
      return s.holds(n.relation, env[n.a], env[n.b]);
    case Formula::Kind::equals:
      return env[n.a] == env[n.b];
    case Formula::Kind::truth:
      return true;
    case Formula::Kind::falsity:
      return false;
    case Formula::Kind::negation:
      return !eval(s, n.b, env);
    case Formula::Kind::conjunction:
      return eval(s, n.a, env) && eval(s, n.b, env);
    case Formula::Kind::disjunction:
      return eval(s, n.a, env) || eval(s, n.b, env);
    case Formula::Kind::implication:
      return !eval(s, n.a, env) || eval(s, n.b, env);
    case Formula::Kind::biconditional:
      return eval(s, n.a, env) == eval(s, n.b, env);
    case Formula::Kind::exists: {
      const auto [first, size] = range(s, n, env);
      for (int p = first; p < size; ++p) {
        env[n.a] = p;
        if (eval(s, n.b, env)) return true;
      }
      return false;
    }
    case Formula::Kind::forall: {
      const auto [first, size] = range(s, n, env);
      for (int p = first; p < size; ++p) {
        env[n.a] = p;
        if (!eval(s, n.b, env)) return false;
      }
      return true;
    }
  }
  return false;
}

bool CompiledFormula::operator()(const RelationalView& structure,
                                 std::span<const int> free_values) const {
  if (!(structure.signature() == signature_)) {
    throw InputError("signature mismatch: formula compiled for " +
                     std::string(to_string(signature_.theory())) + ", structure is " +
                     std::string(to_string(structure.theory())));
  }
  if (free_values.size() != free_order_.size()) {
    throw InputError("wrong number of values for free variables");
  }
  std::vector<int> env(static_cast<std::size_t>(slots_), 0);
  for (std::size_t i = 0; i < free_values.size(); ++i) {
    if (free_values[i] < 0 || free_values[i] >= structure.size()) {
      throw InputError("assigned point is outside the structure");
    }
    env[i] = free_values[i];
  }
  return eval(structure, root_, env.data());
}

bool evaluate(const RelationalView& structure, const Formula& f, const Assignment& env) {
  std::vector<std::string> order;
  std::vector<int> values;
  for (const auto& [name, point] : env) {
    order.push_back(name);
    values.push_back(point);
  }
  const CompiledFormula compiled(f, structure.signature(), std::move(order));
  return compiled(structure, values);
}

}  // namespace limlaw
