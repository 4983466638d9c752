#include "cyclesheaf/curves.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cyclesheaf;

namespace {

// All connected proper index subsets, by brute force over bitmasks.
// Connected on a cycle: the absent indices form one contiguous run.
std::set<std::set<std::size_t>> brute_force_arcs(std::size_t n, bool cyclic) {
  std::set<std::set<std::size_t>> out;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::set<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) members.insert(i);
    int runs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool in = mask >> i & 1;
      bool prev_in = cyclic ? (mask >> ((i + n - 1) % n) & 1) : (i > 0 && (mask >> (i - 1) & 1));
      if (in && !prev_in) ++runs;
    }
    if (runs == 1) out.insert(members);
  }
  return out;
}

std::set<std::size_t> members(const Arc& a) {
  std::set<std::size_t> s;
  for (std::size_t k = 0; k < a.length; ++k) s.insert(a.component(k));
  return s;
}

} // namespace

TEST(Curves, CycleBasics) {
  CycleCurve c({1, 2, 3});
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.degree(1), 2);
  EXPECT_EQ(c.total_degree(), 6);
  EXPECT_EQ(CycleCurve::uniform(4).polarization(), IntVec(4, 1));
  EXPECT_THROW(CycleCurve(IntVec{}), DomainError);
  EXPECT_THROW(CycleCurve({1, 0}), DomainError);
  EXPECT_THROW(ChainCurve(0), DomainError);
}

TEST(Curves, ArcCountsFromExamples) {
  EXPECT_EQ(proper_arcs(CycleCurve::uniform(2)).size(), 2u);
  EXPECT_EQ(proper_arcs(CycleCurve::uniform(3)).size(), 6u);
  EXPECT_EQ(proper_arcs(ChainCurve(3)).size(), 5u);
  EXPECT_TRUE(proper_arcs(CycleCurve::uniform(1)).empty());
  EXPECT_TRUE(proper_arcs(ChainCurve(1)).empty());
}

TEST(Curves, ArcEnumerationMatchesBruteForce) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (bool cyclic : {true, false}) {
      auto arcs = cyclic ? proper_arcs(CycleCurve::uniform(n)) : proper_arcs(ChainCurve(n));
      std::set<std::set<std::size_t>> got;
      for (const auto& a : arcs) {
        EXPECT_LT(a.length, n);
        EXPECT_TRUE(got.insert(members(a)).second) << "duplicate arc, n=" << n;
        if (cyclic) EXPECT_EQ(a.boundary_nodes, 2);
        else EXPECT_TRUE(a.boundary_nodes == 1 || a.boundary_nodes == 2);
      }
      EXPECT_EQ(got, brute_force_arcs(n, cyclic)) << "n=" << n << " cyclic=" << cyclic;
      EXPECT_EQ(arcs.size(), cyclic ? (n >= 2 ? n * (n - 1) : 0) : n * (n + 1) / 2 - 1);
    }
  }
}

TEST(Curves, ChainArcBoundaryCountsTouchEnds) {
  for (const auto& a : proper_arcs(ChainCurve(5))) {
    int expected = (a.start > 0) + (a.start + a.length < 5);
    EXPECT_EQ(a.boundary_nodes, expected);
  }
}

TEST(Curves, ChainImage) {
  EXPECT_EQ(chain_image(ChainMap(4, 2, 0), 3), 1u);
  EXPECT_EQ(chain_image(ChainMap(1, 4, 2), 0), 2u);
  EXPECT_EQ(chain_image(ChainMap(6, 3, 1), 5), 0u);
  EXPECT_THROW(chain_image(ChainMap(2, 3, 0), 2), DomainError);
  EXPECT_THROW(ChainMap(2, 3, 3), DomainError);
}

TEST(Curves, ChainImageIsContiguousArcOrWholeCycle) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t k = 1; k <= 7; ++k)
      for (std::size_t a = 0; a < n; ++a) {
        ChainMap map(k, n, a);
        std::set<std::size_t> image;
        for (std::size_t j = 0; j < k; ++j) image.insert(chain_image(map, j));
        EXPECT_EQ(image.size(), std::min(k, n));
        for (std::size_t j = 0; j + 1 < k; ++j) EXPECT_EQ(chain_image(map, j + 1), (chain_image(map, j) + 1) % n);
      }
}

TEST(Curves, PullbackPolarization) {
  CycleCurve c({1, 2, 3});
  EXPECT_EQ(pullback_polarization(ChainMap(4, 3, 2), c), (IntVec{3, 1, 2, 3}));
  EXPECT_THROW(pullback_polarization(ChainMap(2, 2, 0), c), DomainError);
}

TEST(Curves, PointValidation) {
  CycleCurve c = CycleCurve::uniform(3);
  EXPECT_NO_THROW(validate_point(c, SmoothPoint{2, Rational(5, 3)}));
  EXPECT_NO_THROW(validate_point(c, NodePoint{0}));
  EXPECT_THROW(validate_point(c, SmoothPoint{0, Rational(0)}), DomainError);
  EXPECT_THROW(validate_point(c, SmoothPoint{3, Rational(1)}), DomainError);
  EXPECT_THROW(validate_point(c, NodePoint{3}), DomainError);
}
