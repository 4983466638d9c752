#include "cyclesheaf/invariants.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace cyclesheaf;

namespace {

// h0 by counting, without any matrix. A degree-d section on P^1 has d-1
// interior coefficients that no node sees; what remains are the values at
// 0 and infinity, which are one shared scalar when d = 0, two independent
// scalars when d >= 1, and zero when d < 0. Nodes identify endpoint values,
// so h0 = interior + number of endpoint classes not forced to zero, where a
// class closing up around the whole cycle survives only with trivial gluing.
Int h0_by_counting(const Multidegree& md, bool cyclic, const Rational& lambda) {
  const std::size_t n = md.size();
  // endpoint ids: 2i = value at 0 of component i, 2i+1 = value at infinity.
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

  Int interior = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (md[i] == 0) unite(2 * i, 2 * i + 1);
    if (md[i] >= 2) interior += md[i] - 1;
  }
  const std::size_t nodes = cyclic ? n : n - 1;
  for (std::size_t j = 0; j < nodes; ++j) unite(2 * j + 1, 2 * ((j + 1) % n));

  std::vector<bool> dead(2 * n, false);
  for (std::size_t i = 0; i < n; ++i)
    if (md[i] < 0) dead[find(2 * i)] = dead[find(2 * i + 1)] = true;
  // The only class that can close on itself is the all-degree-zero loop.
  const bool loop = cyclic && std::all_of(md.begin(), md.end(), [](Int d) { return d == 0; });
  if (loop && lambda != Rational(1)) dead[find(0)] = true;

  Int classes = 0;
  for (std::size_t x = 0; x < 2 * n; ++x)
    if (find(x) == x && !dead[x]) ++classes;
  return interior + classes;
}

// Rank over Q by plain Gaussian elimination in exact rationals.
std::size_t rational_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == Rational(0)) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == Rational(0)) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

} // namespace

TEST(Invariants, HilbertOfKClassExamples) {
  EXPECT_EQ(hilbert_of_kclass({{1, 1}, 0}, CycleCurve({1, 1})), (HilbertClass{2, 0}));
  EXPECT_EQ(hilbert_of_kclass({{0, 0}, 5}, CycleCurve({1, 1})), (HilbertClass{0, 5}));
  EXPECT_EQ(hilbert_of_kclass({{2, 2}, 0}, CycleCurve({1, 2})), (HilbertClass{6, 0}));
  EXPECT_THROW(hilbert_of_kclass({{1}, 0}, CycleCurve({1, 1})), DomainError);
}

TEST(Invariants, HilbertOfKClassIsAdditive) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> r(0, 9), chi(-20, 20), h(1, 4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 5;
    IntVec pol(n);
    for (auto& x : pol) x = h(rng);
    CycleCurve c(pol);
    KClass a{IntVec(n), chi(rng)}, b{IntVec(n), chi(rng)};
    for (std::size_t i = 0; i < n; ++i) a.multirank[i] = r(rng), b.multirank[i] = r(rng);
    EXPECT_EQ(hilbert_of_kclass(a + b, c), hilbert_of_kclass(a, c) + hilbert_of_kclass(b, c));
  }
}

TEST(Invariants, SlopeExamples) {
  EXPECT_EQ(slope({4, 2}), Slope::finite(Rational(1, 2)));
  EXPECT_TRUE(slope({0, 5}).is_infinite());
  EXPECT_EQ(slope({2, 0}), Slope::finite(Rational(0)));
  EXPECT_THROW(slope({0, 0}), DomainError);
  EXPECT_THROW(slope({0, -1}), DomainError);
  EXPECT_THROW(slope({-1, 3}), DomainError);
}

TEST(Invariants, SlopeOrderingPutsInfinityOnTop) {
  EXPECT_LT(Slope::finite(Rational(1000)), Slope::infinite());
  EXPECT_LT(Slope::finite(Rational(-1, 2)), Slope::finite(Rational(1, 3)));
  EXPECT_EQ(Slope::infinite(), Slope::infinite());
  EXPECT_TRUE(Slope::infinite() > Rational(7));
  EXPECT_FALSE(Slope::finite(Rational(1, 2)) > Rational(1, 2));
}

TEST(Invariants, KGroupGeneratorExamples) {
  EXPECT_EQ(kgroup_generators(CycleCurve::uniform(3)).point, (KClass{{0, 0, 0}, 1}));
  EXPECT_EQ(kgroup_generators(CycleCurve::uniform(2)).components[0], (KClass{{1, 0}, 1}));
  for (std::size_t n = 1; n <= 5; ++n)
    EXPECT_EQ(kgroup_generators(CycleCurve::uniform(n)).structure_sheaf, (KClass{IntVec(n, 1), 0}));
}

TEST(Invariants, KGroupBasisRecomposes) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Int> r(0, 12), chi(-30, 30);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 6;
    CycleCurve c = CycleCurve::uniform(n);
    KClass kc{IntVec(n), chi(rng)};
    for (auto& x : kc.multirank) x = r(rng);
    const auto coeffs = decompose_kclass(kc, c);
    ASSERT_EQ(coeffs.size(), n + 1);
    const auto g = kgroup_generators(c);
    KClass back{IntVec(n, 0), 0};
    for (std::size_t i = 0; i < n; ++i)
      for (Int k = 0; k < coeffs[i]; ++k) back = back + g.components[i];
    back.chi += coeffs[n] * g.point.chi;
    EXPECT_EQ(back, kc);
  }
}

TEST(Invariants, TorsionLengthExamples) {
  for (std::size_t n = 1; n <= 6; ++n) {
    Multidegree md(n, 0);
    md[0] = 3;
    md[n - 1] -= 1;
    EXPECT_EQ(torsion_length({IntVec(n, 1), detail::sum(md)}, md), Int(n));
  }
  EXPECT_EQ(torsion_length({{1, 0}, 1}, {0, 0}), 0);
  EXPECT_EQ(torsion_length({{1, 1, 1}, -1}, {-1, 0, -1}), 2);
}

TEST(Invariants, CohomologyExamples) {
  auto cyc = [](Multidegree md, Rational lambda) {
    return line_bundle_cohomology(CycleLineBundle{md, lambda}, CycleCurve::uniform(md.size()));
  };
  EXPECT_EQ(cyc({0, 0}, Rational(1)), (Cohomology{1, 1}));
  EXPECT_EQ(cyc({2, -2}, Rational(1)), (Cohomology{1, 1}));
  EXPECT_EQ(cyc({0, 0}, Rational(2)), (Cohomology{0, 0}));
  EXPECT_THROW(cyc({0, 0}, Rational(0)), DomainError);
  EXPECT_THROW(line_bundle_cohomology(CycleLineBundle{{0}, Rational(1)}, CycleCurve::uniform(2)), DomainError);
  EXPECT_EQ(line_bundle_cohomology(ChainLineBundle{{0, 0, 0}}, ChainCurve(3)), (Cohomology{1, 0}));
  EXPECT_EQ(line_bundle_cohomology(ChainLineBundle{{-1}}, ChainCurve(1)), (Cohomology{0, 0}));
}

TEST(Invariants, CohomologyMatchesCountingOracleAndEulerLaw) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<Int> deg(-6, 6), num(-5, 5), den(1, 5);
  std::uniform_int_distribution<int> len(1, 6);
  for (int t = 0; t < 1500; ++t) {
    Multidegree md(std::size_t(len(rng)));
    // bias toward zeros so that loop and shared-scalar cases occur
    for (auto& d : md) d = (rng() % 3 == 0) ? 0 : deg(rng);
    Int p = num(rng);
    if (p == 0) p = 1;
    const Rational lambda = (rng() % 3 == 0) ? Rational(1) : Rational(p, den(rng));
    const auto cyc = line_bundle_cohomology(CycleLineBundle{md, lambda}, CycleCurve::uniform(md.size()));
    EXPECT_EQ(cyc.h0, h0_by_counting(md, true, lambda)) << "cycle (" << join(md) << ") lambda " << lambda;
    EXPECT_GE(cyc.h1, 0);
    EXPECT_EQ(cyc.h0 - cyc.h1, detail::sum(md));
    const auto ch = line_bundle_cohomology(ChainLineBundle{md}, ChainCurve(md.size()));
    EXPECT_EQ(ch.h0, h0_by_counting(md, false, Rational(1))) << "chain (" << join(md) << ")";
    EXPECT_GE(ch.h1, 0);
    EXPECT_EQ(ch.h0 - ch.h1, detail::sum(md) + 1);
  }
}

TEST(Invariants, BareissRankMatchesRationalElimination) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Int> entry(-4, 4);
  std::uniform_int_distribution<int> dim(1, 7);
  for (int t = 0; t < 500; ++t) {
    const std::size_t rows = std::size_t(dim(rng)), cols = std::size_t(dim(rng));
    IntMatrix m(rows, cols);
    std::vector<std::vector<Rational>> q(rows, std::vector<Rational>(cols));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        // sparse entries and duplicated rows make rank deficiency common
        Int v = (rng() % 2) ? entry(rng) : 0;
        if (r > 0 && rng() % 5 == 0) v = m(r - 1, c) * 2;
        m(r, c) = v;
        q[r][c] = v;
      }
    EXPECT_EQ(rank(m), rational_rank(q));
  }
}
