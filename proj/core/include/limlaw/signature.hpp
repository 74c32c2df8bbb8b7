#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace limlaw {

enum class Theory { convex, layered, composition, fractured };

// Binary relation symbols of the four languages. Equality is logical and is
// not listed here.
enum class Relation {
  less,    // <   convex
  equiv,   // E   convex, composition, fractured
  less1,   // <1  layered
  less2,   // <2  layered
  prec1,   // p1  composition, fractured
  prec2,   // p2  fractured
};

std::string_view to_string(Theory theory);
std::string_view to_string(Relation relation);

// Accepts "convex", "layered", "composition", "fractured".
std::optional<Theory> theory_from_string(std::string_view name);
std::optional<Relation> relation_from_string(std::string_view spelling);

class Signature {
 public:
  explicit Signature(Theory theory);

  [[nodiscard]] Theory theory() const { return theory_; }
  [[nodiscard]] std::span<const Relation> relations() const { return relations_; }
  [[nodiscard]] bool contains(Relation r) const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.theory_ == b.theory_;
  }

 private:
  Theory theory_;
  std::vector<Relation> relations_;
};

}  // namespace limlaw
