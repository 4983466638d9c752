#include "cyclesheaf/reduction.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace cyclesheaf;

namespace {

bool equal_up_to_sign(const HilbertClass& a, const HilbertClass& b) { return a == b || a == -b; }

} // namespace

TEST(Reduction, NormalizedStates) {
  EXPECT_EQ(OrbitState::normalized(3, -1), (OrbitState{3, 2}));
  EXPECT_EQ(OrbitState::normalized(0, 4), (OrbitState{0, 4}));
  EXPECT_THROW(OrbitState::normalized(-1, 0), DomainError);
  EXPECT_THROW(OrbitState::normalized(0, 0), DomainError);
}

TEST(Reduction, SuccessorExamples) {
  EXPECT_EQ(successors({3, 2}, 3, 11), (std::set<OrbitState>{{3, 1}, {6, 5}}));
  // |v| <= cap admits v = 12 as well once the cap reaches it
  EXPECT_EQ(successors({3, 2}, 3, 12), (std::set<OrbitState>{{3, 1}, {6, 5}, {12, 7}}));
  EXPECT_TRUE(successors({3, 1}, 3, 12).contains(OrbitState{0, 1}));
  for (Int r = 1; r <= 10; ++r) EXPECT_TRUE(successors({r, 0}, 1, 5 * r).contains(OrbitState{0, r}));
  EXPECT_THROW(successors({0, 3}, 2, 10), DomainError);
}

TEST(Reduction, SuccessorsMatchLiteralIsomorphisms) {
  // The residue rule against the literal slope-split maps on every
  // Psi-translate, restricted to one step.
  for (Int h = 1; h <= 4; ++h)
    for (Int r = 1; r <= 12; ++r)
      for (Int d = 0; d < r; ++d) {
        const Int cap = 40;
        std::set<OrbitState> literal;
        for (Int dk = d - 60 * r; dk <= d + 60 * r; dk += r) {
          HilbertClass img = apply_total(Transform::Phi, {r, dk}, h);
          if (Rational(dk, r) <= Rational(1, h)) img = -img;
          if ((img.r < 0 ? -img.r : img.r) > cap) continue;
          if (img.r < 0 || (img.r == 0 && img.d <= 0)) continue;
          literal.insert(OrbitState::normalized(img.r, img.d));
        }
        EXPECT_EQ(successors({r, d}, h, cap), literal) << "(" << r << "," << d << ") h=" << h;
      }
}

TEST(Reduction, MovesReplayToTheirTargets) {
  for (Int h = 1; h <= 4; ++h)
    for (Int r = 1; r <= 10; ++r)
      for (Int d = 0; d < r; ++d)
        for (const auto& mv : successor_moves({r, d}, h, 30)) {
          const auto replay = compose_total(mv.symbols, {r, d}, h);
          EXPECT_EQ(replay, mv.shifted ? -mv.target.hilbert() : mv.target.hilbert())
              << "(" << r << "," << d << ") -> " << mv.target << " h=" << h;
        }
}

TEST(Reduction, ReduceExamples) {
  EXPECT_EQ(reduce({6, 4}, 1).terminal, (OrbitState{0, 2}));
  EXPECT_EQ(reduce({3, 2}, 3).terminal, (OrbitState{0, 1}));
  EXPECT_EQ(reduce({5, 0}, 2).terminal, (OrbitState{5, 0}));
  const auto torsion = reduce({0, 7}, 4);
  EXPECT_EQ(torsion.terminal, (OrbitState{0, 7}));
  EXPECT_TRUE(torsion.trace.empty());
  EXPECT_EQ(torsion.visited, 1u);
  EXPECT_THROW(reduce({-1, 2}, 1), DomainError);
  EXPECT_THROW(reduce({0, 0}, 1), DomainError);
  EXPECT_THROW(reduce({2, 1}, 0), DomainError);
}

TEST(Reduction, FiveZeroIsMinimalInItsOrbit) {
  const auto reach = orbit({5, 0}, 2, default_cap({5, 0}, 2));
  EXPECT_EQ(*reach.begin(), (OrbitState{5, 0}));
}

TEST(Reduction, GcdLawAtHOne) {
  for (Int r = 1; r <= 30; ++r)
    for (Int d = -30; d <= 30; ++d) EXPECT_EQ(reduce({r, d}, 1).terminal, (OrbitState{0, std::gcd(r, d)}));
}

TEST(Reduction, TraceReplaysToTerminal) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Int> rr(1, 25), dd(-40, 40), hh(1, 5);
  for (int t = 0; t < 200; ++t) {
    const HilbertClass hc{rr(rng), dd(rng)};
    const Int h = hh(rng);
    const auto res = reduce(hc, h);
    EXPECT_TRUE(equal_up_to_sign(compose_total(res.trace, hc, h), res.terminal.hilbert()))
        << hc << " h=" << h << " -> " << res.terminal;
  }
}

TEST(Reduction, TerminalIsOrbitMinimumAndInTerminalForm) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<Int> rr(1, 15), hh(1, 5);
  for (int t = 0; t < 150; ++t) {
    const Int r = rr(rng), h = hh(rng);
    const Int d = Int(rng() % std::uint64_t(r));
    const Int cap = 60;
    const auto res = reduce({r, d}, h, cap);
    const auto reach = orbit({r, d}, h, cap);
    EXPECT_EQ(res.terminal, *reach.begin());
    EXPECT_EQ(res.visited, reach.size());
    EXPECT_TRUE(is_terminal_form(res.terminal, h)) << res.terminal << " h=" << h;
  }
}

TEST(Reduction, SecondPolarizationDegreeGivesTorsionOrDegreeZero) {
  for (Int r = 1; r <= 15; ++r)
    for (Int d = 0; d < r; ++d) {
      const auto t = reduce({r, d}, 2).terminal;
      EXPECT_TRUE(t.r == 0 || t.d == 0) << "(" << r << "," << d << ") -> " << t;
    }
}

TEST(Reduction, CappedFlag) {
  EXPECT_TRUE(reduce({7, 3}, 3, 2).capped);
  EXPECT_FALSE(reduce({0, 3}, 3, 2).capped);
  EXPECT_THROW(reduce({7, 3}, 3, 0), DomainError);
}

TEST(Reduction, TerminalFormExamples) {
  EXPECT_TRUE(is_terminal_form({0, 3}, 2));
  for (Int r = 1; r <= 5; ++r) EXPECT_FALSE(is_terminal_form({r, 0}, 1));
  EXPECT_TRUE(is_terminal_form({5, 0}, 2));
  EXPECT_TRUE(is_terminal_form({3, 2}, 3));
  EXPECT_FALSE(is_terminal_form({5, 1}, 3));
}

TEST(Reduction, OrbitExamples) {
  EXPECT_TRUE(orbit({2, 1}, 1, 8).contains(OrbitState{0, 1}));
  const auto from_one = orbit({1, 0}, 2, 8);
  EXPECT_EQ(*from_one.begin(), (OrbitState{1, 0}));
  EXPECT_GT(from_one.size(), 1u);
  EXPECT_EQ(orbit({0, 4}, 3, 10), (std::set<OrbitState>{{0, 4}}));
}

TEST(Reduction, OrbitDot) {
  const auto dot = orbit_dot(orbit_graph({3, 2}, 3, 12));
  EXPECT_NE(dot.find("digraph orbit"), std::string::npos);
  EXPECT_NE(dot.find("\"(3,2)\" -> \"(3,1)\""), std::string::npos);
  EXPECT_NE(dot.find("\"(3,1)\" -> \"(0,1)\""), std::string::npos);
}
