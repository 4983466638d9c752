#pragma once

// Acceptance checks with their independent oracles. Shared by the
// `selftest` command and the acceptance test binary; each criterion prints
// one PASS/FAIL line.

#include "cyclesheaf/moduli.hpp"
#include "cyclesheaf/reduction.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <random>

namespace cyclesheaf::acceptance {

namespace oracle {

/// Verdict for a line bundle by brute force over every nonempty proper
/// subset of components, connected or not. The restriction to a subset
/// with p connected pieces has chi = sum d_i + p.
inline StabilityVerdict subset_verdict(const Multidegree& md, const IntVec& polarization, Int chi, bool cyclic) {
  const std::size_t n = md.size();
  const Int total_h = std::accumulate(polarization.begin(), polarization.end(), Int(0));
  bool strict = true;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << n); ++mask) {
    Int deg = 0, h = 0, pieces = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      deg += md[i];
      h += polarization[i];
      // count i as the start of a piece when its predecessor is absent
      bool has_prev = cyclic ? (mask >> ((i + n - 1) % n) & 1) : (i > 0 && (mask >> (i - 1) & 1));
      if (!has_prev) ++pieces;
    }
    const Rational sub(deg + pieces, h);
    const Rational mu(chi, total_h);
    if (sub < mu) return StabilityVerdict::Unstable;
    if (sub == mu) strict = false;
  }
  return strict ? StabilityVerdict::Stable : StabilityVerdict::StrictlySemistable;
}

/// h^1 by Serre duality: h^0 of omega (x) L^{-1}. On a cycle omega is
/// trivial; on a chain it has degree -1 on each end component (-2 when k = 1).
inline Int h1_by_duality(const Multidegree& md, bool cyclic, const Rational& lambda) {
  Multidegree dual(md.size());
  for (std::size_t i = 0; i < md.size(); ++i) dual[i] = -md[i];
  if (cyclic) return line_bundle_cohomology(CycleLineBundle{dual, 1 / lambda}, CycleCurve::uniform(md.size())).h0;
  dual.front() -= 1;
  dual.back() -= 1;
  return line_bundle_cohomology(ChainLineBundle{dual}, ChainCurve(md.size())).h0;
}

/// Stability of an indecomposable at degree zero from first principles: the
/// Atiyah factor F_m with m > 1 has the equal-slope subsheaf F_{m-1} (x) L,
/// and otherwise stability is that of the underlying line bundle checked over
/// all subsets.
inline bool degree0_stable(const IndecomposableSheaf& x, const CycleCurve& host) {
  if (const auto* vb = std::get_if<VectorBundleSummand>(&x)) {
    if (vb->atiyah > 1) return false;
    IntVec h = pullback_multidegree(host.polarization(), vb->cover);
    return subset_verdict(vb->bundle.multidegree, h, 0, true) == StabilityVerdict::Stable;
  }
  const auto& c = std::get<ChainSummand>(x);
  return subset_verdict(c.bundle.multidegree, pullback_polarization(c.map, host), 0, false) == StabilityVerdict::Stable;
}

inline bool degree0_semistable(const IndecomposableSheaf& x, const CycleCurve& host) {
  if (const auto* vb = std::get_if<VectorBundleSummand>(&x)) {
    IntVec h = pullback_multidegree(host.polarization(), vb->cover);
    return is_semistable(subset_verdict(vb->bundle.multidegree, h, 0, true));
  }
  const auto& c = std::get<ChainSummand>(x);
  return is_semistable(subset_verdict(c.bundle.multidegree, pullback_polarization(c.map, host), 0, false));
}

/// Every polarization of an N-cycle with degrees in 1..max_h.
inline std::vector<IntVec> all_polarizations(std::size_t n, Int max_h) {
  std::vector<IntVec> out;
  IntVec h(n, 1);
  while (true) {
    out.push_back(h);
    std::size_t i = 0;
    while (i < n && h[i] == max_h) h[i++] = 1;
    if (i == n) break;
    ++h[i];
  }
  return out;
}

} // namespace oracle

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

class Checker {
public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(checks_ - failed_) + "/" + std::to_string(checks_) + " checks";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

template <class... Args>
std::string str(const Args&... args) {
  std::ostringstream out;
  (out << ... << args);
  return out.str();
}

inline void degree_zero_enumeration(std::size_t n, const std::function<void(const IndecomposableSheaf&)>& f) {
  for_each_indecomposable(n, EnumerationBounds{2, 2, n, 2}, [&](const IndecomposableSheaf& x) {
    if (invariants_of(x, n).kclass.chi == 0) f(x);
  });
}

inline bool in_stable_set(const IndecomposableSheaf& x) {
  if (const auto* c = std::get_if<ChainSummand>(&x)) return c->map.length() == 1 && c->bundle.multidegree[0] == -1;
  const auto& vb = std::get<VectorBundleSummand>(x);
  return vb.cover == 1 && vb.atiyah == 1 &&
         std::all_of(vb.bundle.multidegree.begin(), vb.bundle.multidegree.end(), [](Int d) { return d == 0; });
}

} // namespace detail

inline CriterionResult fm_involution() {
  detail::Checker c;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<Int> coeff(-1000000, 1000000);
  std::uniform_int_distribution<Int> pol(1, 6);
  for (int i = 0; i < 2000; ++i) {
    const HilbertClass hc{coeff(rng), coeff(rng)};
    const Int h = pol(rng);
    const auto a = apply_total(Transform::PhiHat, apply_total(Transform::Phi, hc, h), h);
    const auto b = apply_total(Transform::Phi, apply_total(Transform::PhiHat, hc, h), h);
    const auto p = apply_total(Transform::Psi, apply_total(Transform::PsiHat, hc, h), h);
    const auto q = apply_total(Transform::PsiHat, apply_total(Transform::Psi, hc, h), h);
    c.expect(a == -hc && b == -hc, detail::str("PhiHat.Phi != -id at ", hc, " h=", h));
    c.expect(p == hc && q == hc, detail::str("Psi.PsiHat != id at ", hc, " h=", h));
  }
  return {1, "FM involution", c.ok(), c.summary()};
}

inline CriterionResult gcd_law() {
  detail::Checker c;
  for (Int r = 1; r <= 50; ++r)
    for (Int d = -50; d <= 50; ++d) {
      const auto res = reduce({r, d}, 1);
      const OrbitState expected{0, std::gcd(r, d)};
      c.expect(res.terminal == expected, detail::str("reduce(", r, ",", d, ",1) = ", res.terminal));
    }
  return {2, "gcd law (h=1)", c.ok(), c.summary()};
}

inline bool satisfies_trichotomy(const OrbitState& s, Int h) {
  if (s.r == 0) return s.d > 0;
  if (s.d == 0) return s.r > 0;
  return 2 * s.r <= s.d * h && s.d < s.r;
}

inline CriterionResult reduction_vs_oracle() {
  detail::Checker c;
  for (Int h = 1; h <= 4; ++h)
    for (Int r = 1; r <= 20; ++r)
      for (Int d = 0; d < r; ++d) {
        const auto res = reduce({r, d}, h, 200);
        const auto reachable = orbit({r, d}, h, 200);
        c.expect(res.terminal == *reachable.begin(),
                 detail::str("(", r, ",", d, ") h=", h, ": reduce ", res.terminal, " vs orbit min ", *reachable.begin()));
        c.expect(satisfies_trichotomy(res.terminal, h), detail::str("terminal ", res.terminal, " h=", h, " off trichotomy"));
      }
  return {3, "reduction vs orbit oracle", c.ok(), c.summary()};
}

inline CriterionResult e2_specialization() {
  detail::Checker c;
  for (Int r = 1; r <= 20; ++r)
    for (Int d = 0; d < r; ++d) {
      const auto t = reduce({r, d}, 2, 200).terminal;
      c.expect(t.d == 0 || t.r == 0, detail::str("(", r, ",", d, ") h=2 -> ", t));
    }
  return {4, "E_2 specialization (h=2)", c.ok(), c.summary()};
}

inline CriterionResult line_bundle_verdicts() {
  detail::Checker c;
  const CycleCurve e2({1, 1});
  c.expect(line_bundle_stability({{0, 0}, Rational(1)}, e2) == StabilityVerdict::Stable, "(0,0) not stable");
  c.expect(line_bundle_stability({{2, -2}, Rational(1)}, e2) == StabilityVerdict::Unstable, "(2,-2) not unstable");
  c.expect(line_bundle_stability({{1, -1}, Rational(1)}, e2) == StabilityVerdict::StrictlySemistable,
           "(1,-1) not strictly semistable");
  for (Int a = -4; a <= 4; ++a)
    for (Int b = -4; b <= 4; ++b) {
      const Multidegree md{a, b};
      c.expect(line_bundle_stability({md, Rational(1)}, e2) == oracle::subset_verdict(md, {1, 1}, a + b, true),
               detail::str("arc vs subset disagree at (", a, ",", b, ")"));
    }
  // The same comparison where disconnected subcurves exist.
  for (std::size_t n : {3u, 4u})
    for (const auto& h : oracle::all_polarizations(n, 2))
      for_each_indecomposable(n, EnumerationBounds{1, 1, 1, 2}, [&](const IndecomposableSheaf& x) {
        const auto* vb = std::get_if<VectorBundleSummand>(&x);
        if (!vb) return;
        const auto& md = vb->bundle.multidegree;
        c.expect(line_bundle_stability(vb->bundle, CycleCurve(h)) == oracle::subset_verdict(md, h, cyclesheaf::detail::sum(md), true),
                 detail::str("arc vs subset disagree at (", join(md), ") h=(", join(h), ")"));
      });
  return {5, "line-bundle verdicts", c.ok(), c.summary()};
}

inline CriterionResult stable_classification() {
  detail::Checker c;
  for (std::size_t n : {2u, 3u, 4u}) {
    const CycleCurve host = CycleCurve::uniform(n);
    detail::degree_zero_enumeration(n, [&](const IndecomposableSheaf& x) {
      const bool got = degree0_stable(x, host);
      c.expect(got == detail::in_stable_set(x), detail::str("degree0_stable mismatch with classification, N=", n));
      c.expect(got == oracle::degree0_stable(x, host), detail::str("degree0_stable mismatch with subset oracle, N=", n));
      c.expect(degree0_semistable(x, host) == oracle::degree0_semistable(x, host),
               detail::str("degree0_semistable mismatch with subset oracle, N=", n));
    });
  }
  return {6, "stable classification at degree 0", c.ok(), c.summary()};
}

inline CriterionResult locally_free_criterion() {
  detail::Checker c;
  for (std::size_t n : {2u, 3u, 4u}) {
    const CycleCurve host = CycleCurve::uniform(n);
    std::vector<IndecomposableSheaf> sample;
    std::size_t seen = 0;
    for_each_indecomposable(n, EnumerationBounds{2, 2, 4, 2}, [&](const IndecomposableSheaf& x) {
      const SheafDescriptor d(host, {x});
      const Int defect = locally_free_defect(d);
      c.expect(defect <= 0, detail::str("positive defect ", defect));
      c.expect((defect == 0) == is_locally_free(d), detail::str("defect ", defect, " vs locally-free flag"));
      if (++seen % 53 == 0 && sample.size() < 300) sample.push_back(x);
    });
    // Direct sums: the defect is additive and vanishes iff all summands are bundles.
    for (std::size_t i = 0; i < sample.size(); ++i)
      for (std::size_t j = i; j < sample.size(); j += 7) {
        const SheafDescriptor d(host, {sample[i], sample[j]});
        const Int defect = locally_free_defect(d);
        c.expect(defect <= 0 && (defect == 0) == is_locally_free(d), "direct-sum defect law");
        c.expect(defect == locally_free_defect(SheafDescriptor(host, {sample[i]})) +
                               locally_free_defect(SheafDescriptor(host, {sample[j]})),
                 "defect not additive");
      }
  }
  return {7, "locally-free criterion", c.ok(), c.summary()};
}

inline CriterionResult cohomology_vectors() {
  detail::Checker c;
  for (std::size_t n = 1; n <= 5; ++n) {
    auto got = line_bundle_cohomology(CycleLineBundle{Multidegree(n, 0), Rational(1)}, CycleCurve::uniform(n));
    c.expect(got == Cohomology{1, 1}, detail::str("O on E_", n, " -> (", got.h0, ",", got.h1, ")"));
  }
  for (Rational lambda : {Rational(1), Rational(2), Rational(-3, 7), Rational(5, 2)}) {
    auto got = line_bundle_cohomology(CycleLineBundle{{2, -2}, lambda}, CycleCurve::uniform(2));
    c.expect(got == Cohomology{1, 1}, detail::str("(2,-2) lambda=", to_string(lambda)));
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Int> deg(-6, 6);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<Int> num(-9, 9), den(1, 9);
  for (int i = 0; i < 500; ++i) {
    Multidegree md(std::size_t(len(rng)));
    for (auto& d : md) d = deg(rng);
    Int p = num(rng);
    if (p == 0) p = 1;
    const Rational lambda(p, den(rng));
    const auto cyc = line_bundle_cohomology(CycleLineBundle{md, lambda}, CycleCurve::uniform(md.size()));
    c.expect(cyc.h0 >= 0 && cyc.h1 >= 0 && cyc.h0 - cyc.h1 == cyclesheaf::detail::sum(md), "cycle Euler law");
    c.expect(cyc.h1 == oracle::h1_by_duality(md, true, lambda), detail::str("cycle duality at (", join(md), ")"));
    const auto ch = line_bundle_cohomology(ChainLineBundle{md}, ChainCurve(md.size()));
    c.expect(ch.h0 >= 0 && ch.h1 >= 0 && ch.h0 - ch.h1 == cyclesheaf::detail::sum(md) + 1, "chain Euler law");
    c.expect(ch.h1 == oracle::h1_by_duality(md, false, Rational(1)), detail::str("chain duality at (", join(md), ")"));
  }
  return {8, "cohomology vectors", c.ok(), c.summary()};
}

inline CriterionResult moduli_roundtrip() {
  detail::Checker c;
  const std::vector<std::optional<Rational>> entries{Rational(1), Rational(2), Rational(3, 2), Rational(-5), std::nullopt};
  for (std::size_t n : {2u, 3u}) {
    const CycleCurve curve = CycleCurve::uniform(n);
    // Multisets of size 1..4 as nondecreasing index sequences.
    std::function<void(std::vector<std::size_t>&)> rec = [&](std::vector<std::size_t>& idx) {
      if (!idx.empty()) {
        std::vector<Rational> smooth;
        Int nodes = 0;
        for (auto i : idx) entries[i] ? smooth.push_back(*entries[i]) : void(++nodes);
        const auto p = make_moduli_point(smooth, nodes);
        const auto back = moduli_point(phi_bar(p, curve));
        c.expect(back == p, "moduli_point(phi_bar(p)) != p for " + to_string(p));
      }
      if (idx.size() == 4) return;
      for (std::size_t i = idx.empty() ? 0 : idx.back(); i < entries.size(); ++i) {
        idx.push_back(i);
        rec(idx);
        idx.pop_back();
      }
    };
    std::vector<std::size_t> idx;
    rec(idx);

    // S-class level: graded objects survive phi_bar . moduli_point.
    std::vector<IndecomposableSheaf> balanced;
    for_each_indecomposable(n, EnumerationBounds{2, 2, 2 * n, 2}, [&](const IndecomposableSheaf& x) {
      auto inv = invariants_of(x, n);
      const auto& mr = inv.kclass.multirank;
      if (inv.kclass.chi != 0 || std::adjacent_find(mr.begin(), mr.end(), std::not_equal_to<>()) != mr.end()) return;
      if (!degree0_semistable(x, curve)) return;
      balanced.push_back(x);
    });
    c.expect(!balanced.empty(), "no balanced semistable indecomposables enumerated");
    balanced.push_back(make_vector_bundle(n, 1, 3, Multidegree(n, 0), Rational(7, 3)));
    for (std::size_t i = 0; i < balanced.size(); ++i) {
      const SheafDescriptor single(curve, {balanced[i]});
      const SheafDescriptor pair(curve, {balanced[i], balanced[(i * 31 + 5) % balanced.size()]});
      for (const auto* d : {&single, &pair}) {
        const auto p = moduli_point(*d);
        c.expect(graded_degree0(phi_bar(p, curve)) == graded_degree0(*d), "graded object changed by phi_bar . moduli_point");
        c.expect(p.size() == invariants_of(*d).kclass.multirank.front(), "moduli point size differs from rbar");
      }
    }
  }
  return {9, "moduli roundtrip", c.ok(), c.summary()};
}

inline CriterionResult maximal_ideal_stability() {
  detail::Checker c;
  const std::vector<Rational> coords{Rational(1), Rational(-1), Rational(2, 3), Rational(-7, 5)};
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& h : oracle::all_polarizations(n, 2)) {
      const CycleCurve curve(h);
      std::vector<CurvePoint> points;
      for (std::size_t i = 0; i < n; ++i) {
        points.emplace_back(NodePoint{i});
        for (const auto& q : coords) points.emplace_back(SmoothPoint{i, q});
      }
      for (const auto& pt : points) {
        const auto d = maximal_ideal_sheaf(curve, pt);
        const auto& x = d.summands().front();
        c.expect(invariants_of(d).kclass.chi == -1, "chi(m_x) != -1");
        c.expect(descriptor_verdict(d) == StabilityVerdict::Stable, detail::str("m_x not stable on E_", n, " h=(", join(h), ")"));
        StabilityVerdict brute;
        if (const auto* vb = std::get_if<VectorBundleSummand>(&x))
          brute = oracle::subset_verdict(vb->bundle.multidegree, h, -1, true);
        else {
          const auto& ch = std::get<ChainSummand>(x);
          brute = oracle::subset_verdict(ch.bundle.multidegree, pullback_polarization(ch.map, curve), -1, false);
        }
        c.expect(brute == StabilityVerdict::Stable, detail::str("subset oracle: m_x not stable on E_", n));
      }
    }
  return {10, "maximal ideals are stable", c.ok(), c.summary()};
}

inline CriterionResult polarization_independence() {
  detail::Checker c;
  // Criterion 5 at degree zero: line bundles on E_2 with d_1 + d_2 = 0.
  for (Int a = -4; a <= 4; ++a) {
    const CycleLineBundle lb{{a, -a}, Rational(1)};
    const auto ref = line_bundle_stability(lb, CycleCurve({1, 1}));
    for (const auto& h : oracle::all_polarizations(2, 3))
      c.expect(line_bundle_stability(lb, CycleCurve(h)) == ref, detail::str("E_2 verdict of (", a, ",", -a, ") depends on h"));
  }
  // Criterion 6 enumeration.
  for (std::size_t n : {2u, 3u, 4u}) {
    std::vector<IndecomposableSheaf> xs;
    detail::degree_zero_enumeration(n, [&](const IndecomposableSheaf& x) { xs.push_back(x); });
    const CycleCurve ref_curve = CycleCurve::uniform(n);
    std::vector<std::pair<bool, bool>> ref;
    for (const auto& x : xs) ref.emplace_back(degree0_semistable(x, ref_curve), degree0_stable(x, ref_curve));
    for (const auto& h : oracle::all_polarizations(n, 3)) {
      const CycleCurve curve(h);
      for (std::size_t i = 0; i < xs.size(); ++i)
        c.expect(std::pair(degree0_semistable(xs[i], curve), degree0_stable(xs[i], curve)) == ref[i],
                 detail::str("degree-zero verdict depends on h=(", join(h), ")"));
    }
  }
  return {11, "polarization independence at degree 0", c.ok(), c.summary()};
}

struct TimedCriterion {
  std::function<CriterionResult()> run;
  double limit_seconds; // 0 = no stated limit
};

inline std::vector<TimedCriterion> criteria() {
  return {{fm_involution, 1.0},      {gcd_law, 5.0},           {reduction_vs_oracle, 30.0},
          {e2_specialization, 0},    {line_bundle_verdicts, 1.0}, {stable_classification, 10.0},
          {locally_free_criterion, 0}, {cohomology_vectors, 2.0}, {moduli_roundtrip, 0},
          {maximal_ideal_stability, 0}, {polarization_independence, 0}};
}

inline CriterionResult run_timed(const TimedCriterion& tc) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = tc.run();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (tc.limit_seconds > 0 && r.seconds >= tc.limit_seconds) {
    r.passed = false;
    r.detail += detail::str("; exceeded ", tc.limit_seconds, " s");
  }
  return r;
}

inline std::string format(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  (" << r.detail << ", "
      << std::fixed << std::setprecision(3) << r.seconds << " s)";
  return out.str();
}

/// Runs every criterion, printing one line each; true iff all passed.
inline bool run_all(std::ostream& out) {
  bool all = true;
  for (const auto& tc : criteria()) {
    auto r = run_timed(tc);
    out << format(r) << std::endl;
    all = all && r.passed;
  }
  return all;
}

} // namespace cyclesheaf::acceptance
