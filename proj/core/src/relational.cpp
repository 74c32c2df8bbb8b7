#include "limlaw/relational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "limlaw/errors.hpp"

namespace limlaw {

RelationalView::RelationalView(Theory theory, const PartSequence& shape)
    : signature_(theory), size_(shape.size()), class_of_(shape.class_of_points()) {}

RelationalView RelationalView::from_classes(Theory theory, std::vector<int> class_of) {
  if (class_of.empty() || class_of.front() != 0) {
    throw std::invalid_argument("class assignment must start at class 0");
  }
  for (std::size_t i = 1; i < class_of.size(); ++i) {
    const int step = class_of[i] - class_of[i - 1];
    if (step != 0 && step != 1) throw std::invalid_argument("classes must be consecutive intervals");
  }
  RelationalView v(theory);
  v.size_ = static_cast<int>(class_of.size());
  v.class_of_ = std::move(class_of);
  return v;
}

RelationalView RelationalView::from_tables(Theory theory, int size,
                                           std::vector<std::vector<bool>> tables) {
  RelationalView v(theory);
  if (size < 1) throw std::invalid_argument("structures need at least one point");
  if (tables.size() != v.signature_.relations().size()) {
    throw std::invalid_argument("one table per relation symbol is required");
  }
  const auto cells = static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
  for (const auto& t : tables) {
    if (t.size() != cells) throw std::invalid_argument("relation table has the wrong size");
  }
  v.size_ = size;
  v.tables_ = std::move(tables);
  return v;
}

RelationalView RelationalView::relabeled(std::span<const int> new_label) const {
  if (new_label.size() != static_cast<std::size_t>(size_)) {
    throw std::invalid_argument("relabeling must cover every point");
  }
  std::vector<int> seen(new_label.begin(), new_label.end());
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < size_; ++i) {
    if (seen[static_cast<std::size_t>(i)] != i) throw std::invalid_argument("relabeling is not a permutation");
  }
  const auto n = static_cast<std::size_t>(size_);
  std::vector<std::vector<bool>> tables;
  for (Relation r : signature_.relations()) {
    std::vector<bool> t(n * n);
    for (int i = 0; i < size_; ++i) {
      for (int j = 0; j < size_; ++j) {
        const auto a = static_cast<std::size_t>(new_label[static_cast<std::size_t>(i)]);
        const auto b = static_cast<std::size_t>(new_label[static_cast<std::size_t>(j)]);
        t[a * n + b] = holds(r, i, j);
      }
    }
    tables.push_back(std::move(t));
  }
  return from_tables(theory(), size_, std::move(tables));
}

bool RelationalView::table_lookup(Relation r, int i, int j) const {
  const auto rels = signature_.relations();
  const auto it = std::find(rels.begin(), rels.end(), r);
  if (it == rels.end()) return false;
  const auto& t = tables_[static_cast<std::size_t>(it - rels.begin())];
  return t[static_cast<std::size_t>(i) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(j)];
}

RelationalView as_relational(std::string_view theory, const PartSequence& shape) {
  const auto t = theory_from_string(theory);
  if (!t) throw InputError("unknown theory '" + std::string(theory) + "'");
  return {*t, shape};
}

}  // namespace limlaw
