#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "nwit/spectrum.hpp"
#include "support.hpp"

using nwit::BigInt;
using nwit::ModeIndex;
using nwit::ModeSet;
using nwit::Rational;
using nwit::Rectangle;
using nwit::SpectralParam;

namespace {

Rational q(long long n, long long d = 1) { return Rational(BigInt(n), BigInt(d)); }

std::vector<oracle::Pair> pairs(const ModeSet& s) {
  std::vector<oracle::Pair> out;
  for (const auto& md : s) out.emplace_back(md.m, md.n);
  return out;
}

}  // namespace

TEST(Eigenvalue, Examples) {
  EXPECT_EQ(nwit::eigenvalue(Rectangle::rational(2, 1), {2, 3}).exact(), q(10));
  EXPECT_TRUE(nwit::eigenvalue(Rectangle::rational(3, 2), {0, 0}).is_zero());
  EXPECT_TRUE(nwit::eigenvalue(Rectangle::quadratic(q(2)), {0, 0}).is_zero());
  EXPECT_TRUE(nwit::eigenvalue(Rectangle::generic(1.0, 1.7), {0, 0}).is_zero());
  EXPECT_EQ(nwit::eigenvalue(Rectangle::quadratic(q(2)), {3, 0}).exact(), q(9, 2));
  EXPECT_EQ(nwit::eigenvalue(Rectangle::square2pi(), {3, 4}).exact(), q(25));
}

TEST(Eigenvalue, GenericIsFloating) {
  const auto mu = nwit::eigenvalue(Rectangle::generic(2.0, 0.5), {1, 1});
  EXPECT_FALSE(mu.is_exact());
  EXPECT_DOUBLE_EQ(mu.value(), 0.25 + 4.0);
  EXPECT_THROW(mu.exact(), nwit::NotExactlyEnumerable);
}

TEST(IndexSet, SquareMu25) {
  const auto got = nwit::index_set(Rectangle::rational(1, 1), q(25));
  EXPECT_EQ(pairs(got), (std::vector<oracle::Pair>{{0, 5}, {3, 4}, {4, 3}, {5, 0}}));
  EXPECT_EQ(pairs(got), oracle::index_set_rational(1, 1, 25, 1));
}

TEST(IndexSet, QuadraticRho2) {
  const auto got = nwit::index_set(Rectangle::quadratic(q(2)), q(9, 2));
  EXPECT_EQ(pairs(got), (std::vector<oracle::Pair>{{1, 2}, {3, 0}}));
  EXPECT_EQ(pairs(got), oracle::index_set_quadratic(2, 1, 9, 2));
}

TEST(IndexSet, EmptyWhenNotSumOfTwoSquares) {
  EXPECT_TRUE(nwit::index_set(Rectangle::rational(1, 1), q(12)).empty());
  EXPECT_TRUE(oracle::index_set_rational(1, 1, 12, 1).empty());
  EXPECT_TRUE(nwit::index_set(Rectangle::rational(1, 1), q(-1)).empty());
}

TEST(IndexSet, GenericIsNotEnumerable) {
  EXPECT_THROW(nwit::index_set(Rectangle::generic(1.0, 1.2599210498948732), SpectralParam(2.0)),
               nwit::NotExactlyEnumerable);
  EXPECT_THROW(nwit::enumerate(Rectangle::generic(1.0, 1.2599210498948732), q(2)), nwit::NotExactlyEnumerable);
}

TEST(IndexSet, MatchesBruteForce) {
  for (auto [p, qq] : {std::pair{1, 1}, {2, 1}, {3, 2}, {5, 3}})
    for (long long num = 0; num <= 300; ++num)
      for (long long den : {1, 4, 9, 36}) {
        const auto got = nwit::index_set(Rectangle::rational(p, qq), q(num, den));
        ASSERT_EQ(pairs(got), oracle::index_set_rational(p, qq, num, den)) << p << "," << qq << " mu=" << num << "/" << den;
      }
  for (auto [rn, rd] : {std::pair{2, 1}, {3, 1}, {5, 2}})
    for (long long num = 0; num <= 200; ++num)
      for (long long den : {1, 2, 3, 5}) {
        const auto got = nwit::index_set(Rectangle::quadratic(q(rn, rd)), q(num, den));
        ASSERT_EQ(pairs(got), oracle::index_set_quadratic(rn, rd, num, den));
      }
}

TEST(Enumerate, UnitSquare) {
  const auto es = nwit::enumerate(Rectangle::rational(1, 1), q(2));
  ASSERT_EQ(es.size(), 3u);
  EXPECT_EQ(es[0].mu.exact(), q(0));
  EXPECT_EQ(pairs(es[0].modes), (std::vector<oracle::Pair>{{0, 0}}));
  EXPECT_EQ(es[1].mu.exact(), q(1));
  EXPECT_EQ(pairs(es[1].modes), (std::vector<oracle::Pair>{{0, 1}, {1, 0}}));
  EXPECT_EQ(es[2].mu.exact(), q(2));
  EXPECT_EQ(pairs(es[2].modes), (std::vector<oracle::Pair>{{1, 1}}));
}

TEST(Enumerate, TwoByOne) {
  const auto es = nwit::enumerate(Rectangle::rational(2, 1), q(1));
  ASSERT_EQ(es.size(), 3u);
  EXPECT_EQ(es[0].mu.exact(), q(0));
  EXPECT_EQ(es[1].mu.exact(), q(1, 4));
  EXPECT_EQ(pairs(es[1].modes), (std::vector<oracle::Pair>{{1, 0}}));
  EXPECT_EQ(es[2].mu.exact(), q(1));
  EXPECT_EQ(pairs(es[2].modes), (std::vector<oracle::Pair>{{0, 1}, {2, 0}}));
  EXPECT_EQ(es[2].multiplicity(), 2u);
}

TEST(Enumerate, QuadraticRho2) {
  const auto es = nwit::enumerate(Rectangle::quadratic(q(2)), q(1));
  ASSERT_EQ(es.size(), 3u);
  EXPECT_EQ(es[1].mu.exact(), q(1, 2));
  EXPECT_EQ(pairs(es[1].modes), (std::vector<oracle::Pair>{{1, 0}}));
  EXPECT_EQ(es[2].mu.exact(), q(1));
  EXPECT_EQ(pairs(es[2].modes), (std::vector<oracle::Pair>{{0, 1}}));
}

TEST(Enumerate, RejectsNonPositiveBound) {
  EXPECT_THROW(nwit::enumerate(Rectangle::rational(1, 1), q(0)), nwit::InputError);
  EXPECT_THROW(nwit::enumerate(Rectangle::rational(1, 1), q(-3)), nwit::InputError);
}

TEST(Enumerate, PropertyCompleteAndExact) {
  const std::vector<std::pair<Rectangle, Rational>> cases = {
      {Rectangle::rational(3, 2), q(40)}, {Rectangle::rational(2, 1), q(60)},
      {Rectangle::quadratic(q(5, 2)), q(40)}, {Rectangle::quadratic(q(3)), q(60)}, {Rectangle::square2pi(), q(200)}};
  for (const auto& [rect, mu_max] : cases) {
    const auto spaces = nwit::enumerate(rect, mu_max);
    std::set<ModeIndex> seen;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      if (i > 0) ASSERT_LT(spaces[i - 1].mu.exact(), spaces[i].mu.exact());
      ASSERT_LE(spaces[i].mu.exact(), mu_max);
      ASSERT_FALSE(spaces[i].modes.empty());
      for (const auto& md : spaces[i].modes) {
        ASSERT_EQ(nwit::eigenvalue(rect, md).exact(), spaces[i].mu.exact());
        ASSERT_TRUE(seen.insert(md).second);
      }
      ASSERT_EQ(spaces[i].modes, nwit::index_set(rect, spaces[i].mu));
    }
    // Every lattice mode under the bound is accounted for.
    for (std::int64_t m = 0; m <= 80; ++m)
      for (std::int64_t n = 0; n <= 80; ++n)
        if (nwit::eigenvalue(rect, {m, n}).exact() <= mu_max) ASSERT_TRUE(seen.count({m, n})) << m << "," << n;
  }
}

TEST(Enumerate, SquareSymmetry) {
  for (const auto& es : nwit::enumerate(Rectangle::rational(1, 1), q(300))) {
    for (const auto& md : es.modes)
      ASSERT_TRUE(std::binary_search(es.modes.begin(), es.modes.end(), ModeIndex{md.n, md.m}));
  }
}

TEST(Enumerate, QuadraticAxisExclusion) {
  for (const auto& rho : {q(2), q(3), q(5, 2), q(7, 3), q(6)}) {
    std::vector<nwit::Eigenspace> spaces;
    ASSERT_NO_THROW(spaces = nwit::enumerate(Rectangle::quadratic(rho), q(400)));
    for (const auto& es : spaces) {
      bool x_axis = false, y_axis = false;
      for (const auto& md : es.modes) {
        x_axis |= md.m > 0 && md.n == 0;
        y_axis |= md.m == 0 && md.n > 0;
      }
      ASSERT_FALSE(x_axis && y_axis);
    }
  }
}

TEST(HasEigenvalue, GenericTolerance) {
  const auto rect = Rectangle::generic(1.0, 1.2599210498948732);
  const auto mu = nwit::eigenvalue(rect, {2, 3});
  EXPECT_TRUE(nwit::has_eigenvalue(rect, {2, 3}, SpectralParam(mu.value() * (1 + 1e-14))));
  EXPECT_FALSE(nwit::has_eigenvalue(rect, {3, 2}, mu));
}
