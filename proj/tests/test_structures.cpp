#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "limlaw/relational.hpp"
#include "limlaw/structures.hpp"
#include "support/oracles.hpp"

using namespace limlaw;
using limlaw::testing::naive_view;

namespace {

ConvexLinearOrder C(std::vector<int> parts) { return {PartSequence(std::move(parts))}; }

std::vector<int> parts_of(const ConvexLinearOrder& c) {
  return {c.shape.parts().begin(), c.shape.parts().end()};
}

bool same_tables(const RelationalView& a, const RelationalView& b) {
  if (a.size() != b.size() || a.theory() != b.theory()) return false;
  for (Relation r : a.signature().relations()) {
    for (int i = 0; i < a.size(); ++i) {
      for (int j = 0; j < a.size(); ++j) {
        if (a.holds(r, i, j) != b.holds(r, i, j)) return false;
      }
    }
  }
  return true;
}

ConvexLinearOrder random_shape(std::mt19937_64& rng, int max_size) {
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_size));
  return sample_uniform(n, rng);
}

}  // namespace

TEST_CASE("part sequences reject empty lists and non-positive parts") {
  CHECK_THROWS(PartSequence(std::vector<int>{}));
  CHECK_THROWS(PartSequence({2, 0}));
  CHECK_THROWS(PartSequence::parse(""));
  CHECK_THROWS(PartSequence::parse("1,,2"));
  CHECK_THROWS(PartSequence::parse("1,-2"));
  CHECK(PartSequence::parse(" 2, 1 ,3").to_string() == "2,1,3");
  CHECK(PartSequence::parse("2,1,3").size() == 6);
}

TEST_CASE("classes are intervals in every shape up to size 8") {
  for (const auto& s : limlaw::testing::shapes_up_to(8)) {
    const RelationalView v(Theory::convex, s);
    for (int i = 0; i < v.size(); ++i)
      for (int j = i + 1; j < v.size(); ++j)
        for (int l = j + 1; l < v.size(); ++l)
          if (v.holds(Relation::equiv, i, l)) CHECK(v.holds(Relation::equiv, i, j));
  }
}

TEST_CASE("oplus concatenates") {
  CHECK(parts_of(oplus(C({2, 1}), C({3}))) == std::vector<int>{2, 1, 3});
  CHECK(parts_of(oplus(C({1}), C({1}))) == std::vector<int>{1, 1});
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_shape(rng, 8);
    const auto b = random_shape(rng, 8);
    const auto ab = oplus(a, b);
    CHECK(ab.shape.size() == a.shape.size() + b.shape.size());
    // independent construction: block-diagonal E tables, < everywhere forward
    const auto va = naive_view(Theory::convex, parts_of(a));
    const auto vb = naive_view(Theory::convex, parts_of(b));
    const int n = va.size() + vb.size();
    std::vector<std::vector<bool>> tables;
    const Signature sig(Theory::convex);
    for (Relation r : sig.relations()) {
      std::vector<bool> t(static_cast<std::size_t>(n * n));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const bool li = i < va.size();
          const bool lj = j < va.size();
          bool v;
          if (r == Relation::less) {
            v = i < j;
          } else if (li && lj) {
            v = va.holds(r, i, j);
          } else if (!li && !lj) {
            v = vb.holds(r, i - va.size(), j - va.size());
          } else {
            v = false;
          }
          t[static_cast<std::size_t>(i * n + j)] = v;
        }
      }
      tables.push_back(std::move(t));
    }
    CHECK(same_tables(RelationalView(Theory::convex, ab.shape),
                      RelationalView::from_tables(Theory::convex, n, std::move(tables))));
  }
}

TEST_CASE("hat grows the last class") {
  CHECK(parts_of(hat(C({1}))) == std::vector<int>{2});
  CHECK(parts_of(hat(C({2, 1}))) == std::vector<int>{2, 2});
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto c = random_shape(rng, 10);
    const auto h = hat(c);
    const auto v = naive_view(Theory::convex, parts_of(h));
    const int last = v.size() - 1;
    int members = 0;
    for (int i = 0; i < v.size(); ++i) members += v.holds(Relation::equiv, i, last) ? 1 : 0;
    CHECK(members == c.shape.last_part() + 1);
    CHECK(h.shape.num_parts() == c.shape.num_parts());
  }
}

TEST_CASE("decompose reads the last class") {
  CHECK(decompose(C({1, 1})) == std::vector<BuildStep>{BuildStep::plus_bullet});
  CHECK(decompose(C({2})) == std::vector<BuildStep>{BuildStep::hat});
  CHECK(decompose(C({1})).empty());
}

TEST_CASE("decompose is a bijection onto step sequences up to size 10") {
  for (int n = 1; n <= 10; ++n) {
    std::set<std::vector<BuildStep>> seen;
    for (const auto& s : all_shapes(n)) {
      const ConvexLinearOrder c{s};
      const auto steps = decompose(c);
      CHECK(steps.size() == static_cast<std::size_t>(n - 1));
      CHECK(replay(steps) == c);
      seen.insert(steps);
    }
    CHECK(seen.size() == (std::size_t{1} << (n - 1)));
    // every step sequence replays to a size-n order that decomposes back
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<BuildStep> steps;
      for (int i = 0; i < n - 1; ++i) {
        steps.push_back((mask >> i) & 1u ? BuildStep::hat : BuildStep::plus_bullet);
      }
      const auto c = replay(steps);
      CHECK(c.shape.size() == n);
      CHECK(decompose(c) == steps);
    }
  }
}

TEST_CASE("uniform sampling") {
  std::mt19937_64 rng(3);
  CHECK(parts_of(sample_uniform(1, rng)) == std::vector<int>{1});
  CHECK_THROWS(sample_uniform(0, rng));

  // n = 3: four shapes, chi-square with 3 degrees of freedom
  std::map<std::vector<int>, int> counts;
  const int draws = 100'000;
  for (int i = 0; i < draws; ++i) counts[parts_of(sample_uniform(3, rng))]++;
  CHECK(counts.size() == 4);
  double chi = 0;
  for (const auto& [shape, c] : counts) {
    const double e = draws / 4.0;
    chi += (c - e) * (c - e) / e;
  }
  CHECK(chi < 16.27);  // 0.999 quantile

  std::map<std::vector<int>, int> six;
  for (int i = 0; i < draws; ++i) six[parts_of(sample_uniform(6, rng))]++;
  CHECK(six.size() == 32);
  const double p = 1.0 / 32;
  const double sigma = std::sqrt(draws * p * (1 - p));
  for (const auto& [shape, c] : six) CHECK(std::abs(c - draws * p) < 5 * sigma);
}

TEST_CASE("sample_classes matches sample_uniform") {
  std::mt19937_64 a(9), b(9);
  std::vector<int> cls;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 17;
    const auto c = sample_uniform(n, a);
    sample_classes(n, b, cls);
    CHECK(cls == c.shape.class_of_points());
  }
}

TEST_CASE("layered permutations") {
  const LayeredPermutation p{PartSequence({2, 1})};
  CHECK(p.one_line() == std::vector<int>{2, 1, 3});
  CHECK(p.one_line_string() == "2 1 3");
  CHECK(LayeredPermutation{PartSequence({1})}.one_line() == std::vector<int>{1});
  CHECK(parts_of(layered_to_convex(p)) == std::vector<int>{2, 1});
  CHECK(parts_of(layered_to_convex(LayeredPermutation{PartSequence({1, 1, 1})})) ==
        std::vector<int>{1, 1, 1});

  for (int n = 1; n <= 10; ++n) {
    for (const auto& s : all_shapes(n)) {
      const LayeredPermutation l{s};
      CHECK(limlaw::testing::is_layered(l.one_line()));
      CHECK(convex_to_layered(layered_to_convex(l)) == l);
      const ConvexLinearOrder c{s};
      CHECK(layered_to_convex(convex_to_layered(c)) == c);
    }
  }
}

TEST_CASE("layered image: E holds exactly where <1 and <2 disagree") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& s : all_shapes(n)) {
      const LayeredPermutation l{s};
      const auto perm = limlaw::testing::permutation_view(l.one_line());
      const RelationalView image(Theory::convex, layered_to_convex(l).shape);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          const bool disagree = perm.holds(Relation::less1, i, j) != perm.holds(Relation::less2, i, j);
          CHECK(image.holds(Relation::equiv, i, j) == disagree);
        }
      }
    }
  }
}

TEST_CASE("fractured expansion satisfies the fractured-order axioms") {
  const auto f = expand_composition(CompositionStructure{PartSequence({2, 1})});
  const RelationalView v21(Theory::fractured, f.shape);
  CHECK(v21.holds(Relation::prec2, 0, 1));
  CHECK_FALSE(v21.holds(Relation::prec2, 1, 0));
  const RelationalView v111(Theory::fractured,
                            expand_composition(CompositionStructure{PartSequence({1, 1, 1})}).shape);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK_FALSE(v111.holds(Relation::prec2, i, j));

  for (int n = 1; n <= 8; ++n) {
    for (const auto& s : all_shapes(n)) {
      const RelationalView v(Theory::fractured, expand_composition(CompositionStructure{s}).shape);
      const auto E = [&](int a, int b) { return v.holds(Relation::equiv, a, b); };
      const auto p1 = [&](int a, int b) { return v.holds(Relation::prec1, a, b); };
      const auto p2 = [&](int a, int b) { return v.holds(Relation::prec2, a, b); };
      for (int a = 0; a < n; ++a) {
        CHECK(E(a, a));
        CHECK_FALSE(p1(a, a));
        CHECK_FALSE(p2(a, a));
        for (int b = 0; b < n; ++b) {
          CHECK(E(a, b) == E(b, a));
          if (a != b) {
            CHECK((p1(a, b) || p1(b, a)) == !E(a, b));
            CHECK((p2(a, b) || p2(b, a)) == E(a, b));
          }
          for (int c = 0; c < n; ++c) {
            if (E(a, b) && E(b, c)) CHECK(E(a, c));
            if (p1(a, b) && p1(b, c)) CHECK(p1(a, c));
            if (p2(a, b) && p2(b, c)) CHECK(p2(a, c));
            if (E(a, c) && p1(a, b)) CHECK(p1(c, b));
          }
        }
      }
    }
  }
}

TEST_CASE("fractured orders and convex orders share shapes") {
  CHECK(parts_of(fractured_to_convex(FracturedOrder{PartSequence({2, 1})})) == std::vector<int>{2, 1});
  for (int n = 1; n <= 10; ++n) {
    std::set<PartSequence> images;
    for (const auto& s : all_shapes(n)) {
      const auto c = fractured_to_convex(expand_composition(CompositionStructure{s}));
      CHECK(c.shape.size() == n);
      images.insert(c.shape);
      CHECK(reduct(expand_composition(CompositionStructure{s})) == CompositionStructure{s});
    }
    CHECK(images.size() == (std::size_t{1} << (n - 1)));
  }
  // pointwise: <  is p1 or p2, E is E
  for (int n = 1; n <= 8; ++n) {
    for (const auto& s : all_shapes(n)) {
      const RelationalView f(Theory::fractured, s);
      const RelationalView c(Theory::convex, fractured_to_convex(FracturedOrder{s}).shape);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          CHECK(c.holds(Relation::less, i, j) ==
                (f.holds(Relation::prec1, i, j) || f.holds(Relation::prec2, i, j)));
          CHECK(c.holds(Relation::equiv, i, j) == f.holds(Relation::equiv, i, j));
        }
      }
    }
  }
}

TEST_CASE("relational views agree with point-level tables") {
  const RelationalView c(Theory::convex, PartSequence({2, 1}));
  CHECK(c.holds(Relation::equiv, 0, 1));
  CHECK_FALSE(c.holds(Relation::equiv, 1, 2));
  CHECK(c.holds(Relation::less, 0, 2));
  const RelationalView l(Theory::layered, PartSequence({2, 1}));
  CHECK(l.holds(Relation::less2, 1, 0));
  CHECK(l.holds(Relation::less2, 0, 2));
  const RelationalView m(Theory::composition, PartSequence({2, 1}));
  CHECK(m.holds(Relation::prec1, 0, 2));
  CHECK_FALSE(m.holds(Relation::prec1, 0, 1));

  for (Theory t : {Theory::convex, Theory::layered, Theory::composition, Theory::fractured}) {
    for (const auto& s : limlaw::testing::shapes_up_to(7)) {
      const std::vector<int> parts(s.parts().begin(), s.parts().end());
      CHECK(same_tables(RelationalView(t, s), naive_view(t, parts)));
    }
  }
  // the layered view is the permutation's own view
  for (const auto& s : limlaw::testing::shapes_up_to(7)) {
    CHECK(same_tables(RelationalView(Theory::layered, s),
                      limlaw::testing::permutation_view(LayeredPermutation{s}.one_line())));
  }
}

TEST_CASE("relabeling preserves the structure up to isomorphism") {
  const RelationalView v(Theory::convex, PartSequence({2, 1, 3}));
  std::vector<int> perm{5, 4, 3, 2, 1, 0};
  const auto w = v.relabeled(perm);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(w.holds(Relation::less, perm[i], perm[j]) == v.holds(Relation::less, i, j));
}
