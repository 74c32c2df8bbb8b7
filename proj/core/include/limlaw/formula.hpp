#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "limlaw/signature.hpp"

namespace limlaw {

// Immutable first-order formula over binary relation symbols with equality.
// Subtrees are shared, so copies are cheap.
class Formula {
 public:
  enum class Kind {
    atom,
    equals,
    truth,
    falsity,
    negation,
    conjunction,
    disjunction,
    implication,
    biconditional,
    exists,
    forall,
  };

  static Formula atom(Relation relation, std::string lhs, std::string rhs);
  static Formula equals(std::string lhs, std::string rhs);
  static Formula truth();
  static Formula falsity();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula implication(Formula left, Formula right);
  static Formula biconditional(Formula left, Formula right);
  static Formula exists(std::string variable, Formula body);
  static Formula forall(std::string variable, Formula body);

  [[nodiscard]] Kind kind() const { return node_->kind; }
  [[nodiscard]] bool is_binary() const;
  [[nodiscard]] bool is_quantifier() const {
    return kind() == Kind::exists || kind() == Kind::forall;
  }

  // atom only
  [[nodiscard]] Relation relation() const { return node_->relation; }
  // atom and equals
  [[nodiscard]] const std::string& lhs() const { return node_->first; }
  [[nodiscard]] const std::string& rhs() const { return node_->second; }
  // quantifiers
  [[nodiscard]] const std::string& variable() const { return node_->first; }
  // negation and quantifiers
  [[nodiscard]] Formula operand() const { return Formula(node_->left); }
  // binary connectives
  [[nodiscard]] Formula left() const { return Formula(node_->left); }
  [[nodiscard]] Formula right() const { return Formula(node_->right); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind = Kind::truth;
    Relation relation = Relation::less;
    std::string first;
    std::string second;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Kind kind, Formula left, Formula right);

  std::shared_ptr<const Node> node_;
};

// Atom/Equals/True/False: 0; Not: same; binary: max; quantifier: 1 + body.
int quantifier_depth(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
inline bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

std::set<Relation> relations_used(const Formula& f);

// Throws InputError naming the first symbol outside the signature.
void check_signature(const Formula& f, const Signature& signature);

// Canonical rendering in the input grammar; parse(to_string(f)) == f.
std::string to_string(const Formula& f);

// Parses the infix grammar. Relation symbols must belong to the signature;
// the overload without a signature accepts every spelling.
Formula parse_formula(std::string_view text, const Signature& signature);
Formula parse_formula(std::string_view text);

// parse_formula plus a closedness check.
Formula parse_sentence(std::string_view text, const Signature& signature);

}  // namespace limlaw
