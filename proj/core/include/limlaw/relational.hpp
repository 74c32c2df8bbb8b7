#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "limlaw/part_sequence.hpp"
#include "limlaw/signature.hpp"

namespace limlaw {

// Read-only relational structure on points 0..size()-1. Either backed by a
// class assignment (the canonical labeling of a shape: classes are intervals
// and points are numbered in < / <1 order) or by explicit relation tables,
// which is what relabeled or hand-built structures use.
class RelationalView {
 public:
  RelationalView(Theory theory, const PartSequence& shape);

  // class_of must be non-decreasing, start at 0 and step by at most 1.
  static RelationalView from_classes(Theory theory, std::vector<int> class_of);

  // tables[r] is a row-major size*size matrix for signature.relations()[r].
  static RelationalView from_tables(Theory theory, int size,
                                    std::vector<std::vector<bool>> tables);

  // Point p of this view becomes point new_label[p] of the result.
  [[nodiscard]] RelationalView relabeled(std::span<const int> new_label) const;

  [[nodiscard]] const Signature& signature() const { return signature_; }
  [[nodiscard]] Theory theory() const { return signature_.theory(); }
  [[nodiscard]] int size() const { return size_; }
  // Class-backed views order points by number under < and <1.
  [[nodiscard]] bool positional() const { return tables_.empty(); }

  [[nodiscard]] bool holds(Relation r, int i, int j) const {
    if (!tables_.empty()) return table_lookup(r, i, j);
    const int ci = class_of_[i];
    const int cj = class_of_[j];
    switch (r) {
      case Relation::less:
      case Relation::less1:
        return i < j;
      case Relation::equiv:
        return ci == cj;
      case Relation::less2:
        return ci == cj ? j < i : i < j;
      case Relation::prec1:
        return ci < cj;
      case Relation::prec2:
        return ci == cj && i < j;
    }
    return false;
  }

 private:
  explicit RelationalView(Theory theory) : signature_(theory) {}
  [[nodiscard]] bool table_lookup(Relation r, int i, int j) const;

  Signature signature_;
  int size_ = 0;
  std::vector<int> class_of_;
  std::vector<std::vector<bool>> tables_;
};

inline RelationalView as_relational(Theory theory, const PartSequence& shape) {
  return {theory, shape};
}

// Throws InputError for an unknown theory name.
RelationalView as_relational(std::string_view theory, const PartSequence& shape);

}  // namespace limlaw
