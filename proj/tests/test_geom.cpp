#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracle.hpp"
#include "qhcodes/error.hpp"
#include "qhcodes/geom.hpp"

using namespace qh;

namespace {

Vec vec(std::initializer_list<std::uint32_t> xs) {
  Vec v;
  for (auto x : xs) v.push_back(FieldElem{x});
  return v;
}

Vec random_vec(std::mt19937_64& rng, const Field& f, std::size_t n) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
  Vec v(n);
  for (auto& x : v) x = FieldElem{pick(rng)};
  return v;
}

}  // namespace

TEST(Geom, PointCounts) {
  EXPECT_EQ(enumerate_points(Field::make(2, 2), 1).size(), 5u);
  EXPECT_EQ(enumerate_points(Field::make(3, 2), 3).size(), 820u);
  EXPECT_EQ(enumerate_points(Field::make(2, 2), 3).size(), 85u);
  EXPECT_EQ(enumerate_hyperplanes(Field::make(3, 2), 3).size(), 820u);
  EXPECT_EQ(projective_count(9, 3), 820u);
  EXPECT_EQ(gaussian_binomial(9, 4, 2), 7462u);
}

// Canonical order matches a brute-force lexicographic enumeration.
TEST(Geom, CanonicalOrderMatchesOracle) {
  for (auto [p, m, r] : std::vector<std::tuple<std::uint32_t, std::uint32_t, unsigned>>{{2, 2, 3}, {3, 2, 2}, {5, 1, 3}}) {
    const auto f = Field::make(p, m);
    const oracle::NaiveField nf{p, f->modulus()};
    const auto expected = oracle::points(nf, r);
    const ProjectiveSpace s(f, r);
    ASSERT_EQ(s.num_points(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const auto c = s.coords(i);
      for (unsigned j = 0; j <= r; ++j) ASSERT_EQ(c[j].value, expected[i][j]);
      EXPECT_EQ(s.index_of(c), i);
    }
  }
}

TEST(Geom, NormalizationIsCanonical) {
  const auto f = Field::make(3, 2);
  const ProjectiveSpace s(f, 3);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    Vec v = random_vec(rng, *f, 4);
    if (std::all_of(v.begin(), v.end(), [](FieldElem x) { return x.value == 0; })) continue;
    const Vec n = normalize(*f, v);
    EXPECT_EQ(normalize(*f, n), n);
    Vec scaled = v;
    const FieldElem l{1 + static_cast<std::uint32_t>(rng() % 8)};
    for (auto& x : scaled) x = f->mul(x, l);
    EXPECT_EQ(normalize(*f, scaled), n);
    EXPECT_EQ(s.index_of(scaled), s.index_of(v));
  }
  EXPECT_THROW(normalize(*f, vec({0, 0, 0, 0})), UsageError);
}

TEST(Geom, Incidence) {
  const auto f = Field::make(3, 2);
  const Hyperplane x0{vec({1, 0, 0, 0})};
  EXPECT_FALSE(incident(*f, ProjPoint{vec({1, 0, 0, 0})}, x0));
  EXPECT_TRUE(incident(*f, ProjPoint{vec({0, 1, 0, 0})}, x0));
  EXPECT_THROW(incident(*f, ProjPoint{vec({0, 1, 0})}, x0), UsageError);

  const ProjectiveSpace s(f, 3);
  for (std::size_t h = 0; h < s.num_hyperplanes(); h += 37) {
    std::size_t on = 0;
    for (std::size_t p = 0; p < s.num_points(); ++p) on += s.incident(p, h);
    EXPECT_EQ(on, 91u);
  }
  // Hyperplanes through a fixed point, and those missing it.
  const ProjectiveSpace s4(Field::make(2, 2), 3);
  std::size_t through = 0;
  for (std::size_t h = 0; h < s4.num_hyperplanes(); ++h) through += s4.incident(0, h);
  EXPECT_EQ(through, 21u);
  std::size_t missing = 0;
  for (std::size_t h = 0; h < s.num_hyperplanes(); ++h) missing += !s.incident(17, h);
  EXPECT_EQ(missing, 729u);
}

TEST(Geom, Lines) {
  EXPECT_EQ(enumerate_lines(ProjectiveSpace(Field::make(2, 2), 2)).size(), 21u);
  EXPECT_EQ(enumerate_lines(ProjectiveSpace(Field::make(2, 2), 1)).size(), 1u);
  const ProjectiveSpace s(Field::make(3, 2), 3);
  std::size_t count = 0;
  std::set<Line> seen;
  for_each_line(s, [&](const Line& l, std::span<const std::uint32_t> pts) {
    ++count;
    seen.insert(l);
    ASSERT_EQ(pts.size(), 10u);
    ASSERT_TRUE(std::is_sorted(pts.begin(), pts.end()));
    EXPECT_EQ(pts[0], l.first);
    EXPECT_EQ(pts[1], l.second);
  });
  EXPECT_EQ(count, 7462u);
  EXPECT_EQ(seen.size(), 7462u);
}

TEST(Geom, RankBasics) {
  const auto f = Field::make(3, 2);
  EXPECT_EQ(span_rank(*f, std::vector<Vec>{}).rank(), 0u);
  const Vec p = vec({1, 2, 3, 4});
  Vec lp = p;
  for (auto& x : lp) x = f->mul(x, FieldElem{5});
  EXPECT_EQ(rank_of(*f, std::vector<Vec>{p}), 1u);
  EXPECT_EQ(rank_of(*f, std::vector<Vec>{p, lp}), 1u);
  EXPECT_EQ(rank_of(*f, std::vector<Vec>{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}), 3u);
}

// Rank is invariant under scaling and permuting rows, and equals the number of
// rows of the echelon basis.
TEST(Geom, RankInvariancesRandomized) {
  std::mt19937_64 rng(17);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {3, 2}, {5, 1}, {2, 4}}) {
    const auto f = Field::make(p, m);
    for (int t = 0; t < 200; ++t) {
      const std::size_t rows = 1 + rng() % 6, cols = 2 + rng() % 5;
      std::vector<Vec> vs;
      for (std::size_t i = 0; i < rows; ++i) vs.push_back(random_vec(rng, *f, cols));
      if (rng() % 2 && rows > 1) vs.back() = vs.front();  // force dependence sometimes
      const auto base = span_rank(*f, vs);
      std::vector<Vec> moved = vs;
      std::shuffle(moved.begin(), moved.end(), rng);
      for (auto& v : moved) {
        const FieldElem l{1 + static_cast<std::uint32_t>(rng() % (f->order() - 1))};
        for (auto& x : v) x = f->mul(x, l);
      }
      const auto other = span_rank(*f, moved);
      EXPECT_EQ(base.rank(), other.rank());
      EXPECT_EQ(base.rows, other.rows);  // RREF is unique
      EXPECT_LE(base.rank(), std::min(rows, cols));
    }
  }
}

TEST(Geom, SolveCombination) {
  const auto f = Field::make(3, 2);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    std::vector<Vec> cols;
    for (int i = 0; i < 3; ++i) cols.push_back(random_vec(rng, *f, 5));
    const Vec x = random_vec(rng, *f, 3);
    Vec target(5, f->zero());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) target[j] = f->add(target[j], f->mul(x[i], cols[i][j]));
    const auto sol = solve_combination(*f, cols, target);
    ASSERT_TRUE(sol.has_value());
    Vec back(5, f->zero());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) back[j] = f->add(back[j], f->mul((*sol)[i], cols[i][j]));
    EXPECT_EQ(back, target);
  }
  EXPECT_FALSE(solve_combination(*f, std::vector<Vec>{vec({1, 0})}, vec({0, 1})).has_value());
}

TEST(Geom, SubspaceEnumeration) {
  const ProjectiveSpace s(Field::make(2, 2), 3);
  std::size_t planes = 0;
  for_each_subspace(s, 3, [&](const SubspaceBasis& b) {
    ++planes;
    EXPECT_EQ(b.rank(), 3u);
    EXPECT_EQ(subspace_points(s, b).size(), 21u);
  });
  EXPECT_EQ(planes, 85u);
  std::size_t lines = 0;
  for_each_subspace(s, 2, [&](const SubspaceBasis&) { ++lines; });
  EXPECT_EQ(lines, gaussian_binomial(4, 4, 2));
}

TEST(Geom, BudgetGuard) {
  EXPECT_THROW(ProjectiveSpace(Field::make(3, 2), 3, Budget{100}), BudgetExceeded);
}

TEST(Geom, Veronese) {
  const auto f = Field::make(2, 2);
  EXPECT_EQ(veronese2(*f, ProjPoint{vec({1, 0, 0, 0})}).coords, vec({1, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(veronese2(*f, ProjPoint{vec({1, 1})}).coords, vec({1, 1, 1}));
  std::set<ProjPoint> images;
  for (const auto& p : enumerate_points(f, 3)) images.insert(veronese2(*f, p));
  EXPECT_EQ(images.size(), 85u);
}
