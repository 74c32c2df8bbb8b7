#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "limlaw/formula.hpp"
#include "limlaw/relational.hpp"

namespace limlaw {

using Assignment = std::map<std::string, int>;

// Tarski satisfaction. Quantifiers range over the points of the view and the
// innermost binding of a variable wins. Throws InputError when a free
// variable is unassigned or a symbol is outside the view's signature.
bool evaluate(const RelationalView& structure, const Formula& f, const Assignment& env = {});

// A formula lowered to a flat node array with variables resolved to slots,
// for repeated model checking of the same formula.
class CompiledFormula {
 public:
  // free_order fixes the slot order of the free variables; any free variable
  // missing from it is an error.
  CompiledFormula(const Formula& f, const Signature& signature,
                  std::vector<std::string> free_order = {});

  [[nodiscard]] const std::vector<std::string>& free_variables() const { return free_order_; }

  // free_values[i] is the point assigned to free_variables()[i].
  [[nodiscard]] bool operator()(const RelationalView& structure,
                                std::span<const int> free_values = {}) const;

 private:
  struct Node {
    Formula::Kind kind;
    Relation relation;
    int a;  // variable slot (atoms, equals, quantifiers) or left child
    int b;  // variable slot (atoms, equals) or right child / body
    // quantifiers: the bound point is known to lie strictly between these
    // slots' values (by a guard atom), -1 when unbounded
    int lo = -1;
    int hi = -1;
  };

  int lower(const Formula& f, std::map<std::string, std::vector<int>>& scope);
  void find_bounds(const Formula& guard, Node& node,
                   const std::map<std::string, std::vector<int>>& scope) const;
  bool eval(const RelationalView& s, int node, int* env) const;

  Signature signature_;
  std::vector<Node> nodes_;
  std::vector<std::string> free_order_;
  int root_ = 0;
  int slots_ = 0;
};

}  // namespace limlaw
