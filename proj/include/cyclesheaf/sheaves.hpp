#pragma once

// Indecomposable torsion-free sheaves on a cycle E_N, given by their
// classification data:
//
//   vector bundles   pi_{s*}(L (x) F_m), pi_s : E_{sN} -> E_N the s-fold
//                    covering, L a line bundle on E_{sN}, F_m the Atiyah
//                    bundle of rank m;
//   non-locally-free p_{k*}(L), p_k : I_k -> E_N a chain map, L a line
//                    bundle on the chain.
//
// Stability of rank-one objects is decided by the arc test: a line bundle
// is unstable iff some proper connected subcurve Z has restriction of
// smaller slope, (sum_{i in Z} d_i + 1) / (sum_{i in Z} h_i) < mu.

#include "cyclesheaf/invariants.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace cyclesheaf {

struct VectorBundleSummand {
  Int cover = 1;             // s, degree of the covering E_{sN} -> E_N
  Int atiyah = 1;            // m, rank of the Atiyah factor F_m
  CycleLineBundle bundle;    // on E_{sN}
  bool operator==(const VectorBundleSummand&) const = default;
};

struct ChainSummand {
  ChainMap map;
  ChainLineBundle bundle;
  bool operator==(const ChainSummand&) const = default;
};

using IndecomposableSheaf = std::variant<VectorBundleSummand, ChainSummand>;

enum class StabilityVerdict { Stable, StrictlySemistable, Unstable };

inline std::string to_string(StabilityVerdict v) {
  switch (v) {
  case StabilityVerdict::Stable: return "stable";
  case StabilityVerdict::StrictlySemistable: return "strictly semistable";
  case StabilityVerdict::Unstable: return "unstable";
  }
  return "?";
}

inline bool is_semistable(StabilityVerdict v) { return v != StabilityVerdict::Unstable; }

/// True iff md differs from each of its cyclic shifts by t*N, t = 1..s-1.
inline bool is_nonperiodic(const Multidegree& md, Int s, std::size_t n) {
  if (s < 1 || n == 0) throw DomainError("covering degree and component count must be positive");
  if (md.size() != std::size_t(s) * n) throw DomainError("multidegree length must be s*N");
  for (Int t = 1; t < s; ++t) {
    if (std::equal(md.begin(), md.end() - t * n, md.begin() + t * n) &&
        std::equal(md.end() - t * n, md.end(), md.begin()))
      return false;
  }
  return true;
}

inline VectorBundleSummand make_vector_bundle(std::size_t host_size, Int cover, Int atiyah, Multidegree md,
                                              Rational gluing = Rational(1)) {
  if (cover < 1) throw DomainError("covering degree must be positive");
  if (atiyah < 1) throw DomainError("Atiyah rank must be positive");
  if (gluing.numerator() == 0) throw DomainError("gluing scalar must be nonzero");
  if (md.size() != std::size_t(cover) * host_size)
    throw DomainError("vector bundle multidegree must have cover * N entries");
  if (!is_nonperiodic(md, cover, host_size)) throw DomainError("multidegree on the covering cycle is periodic");
  return {cover, atiyah, {std::move(md), gluing}};
}

inline ChainSummand make_chain_sheaf(std::size_t host_size, std::size_t length, std::size_t start, Multidegree md) {
  if (md.size() != length) throw DomainError("chain multidegree must have one entry per chain component");
  return {ChainMap(length, host_size, start), {std::move(md)}};
}

/// Checks internal consistency of a summand against a host with n components.
inline void validate(const IndecomposableSheaf& x, std::size_t n) {
  if (const auto* vb = std::get_if<VectorBundleSummand>(&x)) {
    make_vector_bundle(n, vb->cover, vb->atiyah, vb->bundle.multidegree, vb->bundle.gluing);
  } else {
    const auto& c = std::get<ChainSummand>(x);
    if (c.map.target_size() != n) throw DomainError("chain map targets a different cycle");
    if (c.bundle.multidegree.size() != c.map.length()) throw DomainError("chain multidegree length mismatch");
  }
}

/// Formal direct sum of indecomposables over one host cycle.
class SheafDescriptor {
public:
  SheafDescriptor(CycleCurve host, std::vector<IndecomposableSheaf> summands)
      : host_(std::move(host)), summands_(std::move(summands)) {
    if (summands_.empty()) throw DomainError("a descriptor needs at least one summand");
    for (const auto& s : summands_) validate(s, host_.size());
  }

  const CycleCurve& host() const { return host_; }
  const std::vector<IndecomposableSheaf>& summands() const { return summands_; }

  bool operator==(const SheafDescriptor& o) const { return host_ == o.host_ && summands_ == o.summands_; }

private:
  CycleCurve host_;
  std::vector<IndecomposableSheaf> summands_;
};

struct SheafInvariants {
  KClass kclass;
  Multidegree multidegree;
};

/// VB: r_i = s m, d_i = m * sum_{j = i mod N} d_j(L), chi = m * sum d_j(L).
/// NLF: r_i = #{j : j -> i}, d_i = sum_{j -> i} d_j(L), chi = 1 + sum d_j(L).
inline SheafInvariants invariants_of(const IndecomposableSheaf& x, std::size_t n) {
  using detail::checked_add;
  using detail::checked_mul;
  validate(x, n);
  SheafInvariants out{{IntVec(n, 0), 0}, Multidegree(n, 0)};
  if (const auto* vb = std::get_if<VectorBundleSummand>(&x)) {
    const auto& md = vb->bundle.multidegree;
    for (std::size_t j = 0; j < md.size(); ++j)
      out.multidegree[j % n] = checked_add(out.multidegree[j % n], checked_mul(vb->atiyah, md[j]));
    std::fill(out.kclass.multirank.begin(), out.kclass.multirank.end(), checked_mul(vb->cover, vb->atiyah));
    out.kclass.chi = checked_mul(vb->atiyah, detail::sum(md));
  } else {
    const auto& c = std::get<ChainSummand>(x);
    for (std::size_t j = 0; j < c.map.length(); ++j) {
      const std::size_t i = chain_image(c.map, j);
      out.kclass.multirank[i] += 1;
      out.multidegree[i] = checked_add(out.multidegree[i], c.bundle.multidegree[j]);
    }
    out.kclass.chi = checked_add(1, detail::sum(c.bundle.multidegree));
  }
  return out;
}

inline SheafInvariants invariants_of(const SheafDescriptor& d) {
  const std::size_t n = d.host().size();
  SheafInvariants out{{IntVec(n, 0), 0}, Multidegree(n, 0)};
  for (const auto& s : d.summands()) {
    auto part = invariants_of(s, n);
    out.kclass = out.kclass + part.kclass;
    for (std::size_t i = 0; i < n; ++i) out.multidegree[i] = detail::checked_add(out.multidegree[i], part.multidegree[i]);
  }
  return out;
}

inline HilbertClass hilbert_of(const IndecomposableSheaf& x, const CycleCurve& host) {
  return hilbert_of_kclass(invariants_of(x, host.size()).kclass, host);
}

inline HilbertClass hilbert_of(const SheafDescriptor& d) { return hilbert_of_kclass(invariants_of(d).kclass, d.host()); }

/// sum d_i - chi; zero for vector bundles, negative otherwise.
inline Int locally_free_defect(const SheafDescriptor& d) {
  auto inv = invariants_of(d);
  return detail::checked_sub(detail::sum(inv.multidegree), inv.kclass.chi);
}

inline bool is_locally_free(const SheafDescriptor& d) {
  return std::all_of(d.summands().begin(), d.summands().end(),
                     [](const auto& s) { return std::holds_alternative<VectorBundleSummand>(s); });
}

/// md repeated s times: the multidegree of the pullback to E_{sN}.
inline Multidegree pullback_multidegree(const Multidegree& md, Int s) {
  if (s < 1) throw DomainError("covering degree must be positive");
  Multidegree out;
  out.reserve(md.size() * std::size_t(s));
  for (Int t = 0; t < s; ++t) out.insert(out.end(), md.begin(), md.end());
  return out;
}

namespace detail {

inline StabilityVerdict arc_verdict(const Multidegree& md, const IntVec& polarization, Int chi,
                                    const std::vector<Arc>& arcs) {
  // Compare (deg_Z + 1) / h_Z with chi / h by cross-multiplication; both
  // denominators are positive.
  const Int total = sum(polarization);
  bool strict = true;
  for (const Arc& arc : arcs) {
    Int deg = 0;
    Int h = 0;
    for (std::size_t t = 0; t < arc.length; ++t) {
      deg += md[arc.component(t)];
      h += polarization[arc.component(t)];
    }
    const Int lhs = checked_mul(deg + 1, total);
    const Int rhs = checked_mul(chi, h);
    if (lhs < rhs) return StabilityVerdict::Unstable;
    if (lhs == rhs) strict = false;
  }
  return strict ? StabilityVerdict::Stable : StabilityVerdict::StrictlySemistable;
}

} // namespace detail

inline StabilityVerdict line_bundle_stability(const CycleLineBundle& bundle, const CycleCurve& curve) {
  if (bundle.multidegree.size() != curve.size()) throw DomainError("multidegree length does not match the curve");
  return detail::arc_verdict(bundle.multidegree, curve.polarization(), detail::sum(bundle.multidegree),
                             proper_arcs(curve));
}

/// polarization is the pullback along the chain map.
inline StabilityVerdict line_bundle_stability(const ChainLineBundle& bundle, const ChainCurve& chain,
                                              const IntVec& polarization) {
  if (bundle.multidegree.size() != chain.size() || polarization.size() != chain.size())
    throw DomainError("chain multidegree or polarization length mismatch");
  for (Int h : polarization)
    if (h < 1) throw DomainError("polarization degrees must be positive");
  return detail::arc_verdict(bundle.multidegree, polarization, detail::sum(bundle.multidegree) + 1,
                             proper_arcs(chain));
}

/// Verdict for the line bundle underlying a summand: L on E_{sN} with the
/// polarization pulled back along the covering, or L on I_k with the
/// polarization pulled back along the chain map.
inline StabilityVerdict underlying_line_bundle_verdict(const IndecomposableSheaf& x, const CycleCurve& host) {
  validate(x, host.size());
  if (const auto* vb = std::get_if<VectorBundleSummand>(&x)) {
    CycleCurve cover(pullback_multidegree(host.polarization(), vb->cover));
    return line_bundle_stability(vb->bundle, cover);
  }
  const auto& c = std::get<ChainSummand>(x);
  return line_bundle_stability(c.bundle, c.map.chain(), pullback_polarization(c.map, host));
}

/// Verdict of a rank-one summand (a line bundle on E_N or any chain
/// pushforward) at arbitrary Euler characteristic.
inline StabilityVerdict rank_one_verdict(const IndecomposableSheaf& x, const CycleCurve& host) {
  if (const auto* vb = std::get_if<VectorBundleSummand>(&x); vb && (vb->cover != 1 || vb->atiyah != 1))
    throw DomainError("semistability away from degree zero is only decided for rank-one summands");
  return underlying_line_bundle_verdict(x, host);
}

namespace detail {

inline void require_degree_zero(const IndecomposableSheaf& x, std::size_t n) {
  if (invariants_of(x, n).kclass.chi != 0) throw DomainError("degree-zero test applied to a summand with chi != 0");
}

} // namespace detail

inline bool degree0_semistable(const IndecomposableSheaf& x, const CycleCurve& host) {
  detail::require_degree_zero(x, host.size());
  if (const auto* c = std::get_if<ChainSummand>(&x); c && detail::sum(c->bundle.multidegree) != -1) return false;
  return is_semistable(underlying_line_bundle_verdict(x, host));
}

/// Stable degree-zero indecomposables are O_{C_i}(-1) and the line bundles
/// of multidegree (0,...,0). Requires N >= 2.
inline bool degree0_stable(const IndecomposableSheaf& x, const CycleCurve& host) {
  if (host.size() < 2) throw DomainError("stable classification at degree zero requires N >= 2");
  detail::require_degree_zero(x, host.size());
  if (const auto* c = std::get_if<ChainSummand>(&x))
    return c->map.length() == 1 && c->bundle.multidegree[0] == -1;
  const auto& vb = std::get<VectorBundleSummand>(x);
  return vb.cover == 1 && vb.atiyah == 1 &&
         std::all_of(vb.bundle.multidegree.begin(), vb.bundle.multidegree.end(), [](Int d) { return d == 0; });
}

/// Verdict for a whole descriptor. Summands must all be rank one unless the
/// descriptor has degree zero, where the classification is complete.
inline StabilityVerdict descriptor_verdict(const SheafDescriptor& d) {
  const CycleCurve& host = d.host();
  const Slope mu = slope(hilbert_of(d));
  bool strict = d.summands().size() == 1;
  for (const auto& s : d.summands()) {
    if (slope(hilbert_of(s, host)) != mu) return StabilityVerdict::Unstable;
    StabilityVerdict v;
    if (invariants_of(s, host.size()).kclass.chi == 0) {
      if (!degree0_semistable(s, host)) return StabilityVerdict::Unstable;
      v = (host.size() >= 2 ? degree0_stable(s, host) : underlying_line_bundle_verdict(s, host) == StabilityVerdict::Stable)
              ? StabilityVerdict::Stable
              : StabilityVerdict::StrictlySemistable;
    } else {
      v = rank_one_verdict(s, host);
    }
    if (v == StabilityVerdict::Unstable) return v;
    if (v != StabilityVerdict::Stable) strict = false;
  }
  return strict ? StabilityVerdict::Stable : StabilityVerdict::StrictlySemistable;
}

/// Jordan-Hoelder factor at degree zero: a stable line bundle of
/// multidegree (0,...,0) with gluing lambda, or O_{C_i}(-1).
struct JHFactor {
  enum class Kind { MinusOneOnComponent, StableLineBundle };
  Kind kind = Kind::MinusOneOnComponent;
  std::size_t component = 0;
  Rational gluing{1};

  static JHFactor minus_one(std::size_t i) { return {Kind::MinusOneOnComponent, i, Rational(1)}; }
  static JHFactor line_bundle(Rational lambda) { return {Kind::StableLineBundle, 0, lambda}; }

  bool operator==(const JHFactor&) const = default;
  bool operator<(const JHFactor& o) const {
    return std::tie(kind, component, gluing) < std::tie(o.kind, o.component, o.gluing);
  }
};

inline std::string to_string(const JHFactor& f) {
  if (f.kind == JHFactor::Kind::MinusOneOnComponent) return "O_{C_" + std::to_string(f.component + 1) + "}(-1)";
  return "L(" + to_string(f.gluing) + ")";
}

inline IndecomposableSheaf as_sheaf(const JHFactor& f, std::size_t n) {
  if (f.kind == JHFactor::Kind::MinusOneOnComponent) return make_chain_sheaf(n, 1, f.component, {-1});
  return make_vector_bundle(n, 1, 1, Multidegree(n, 0), f.gluing);
}

/// Graded object of a semistable degree-zero descriptor, as a sorted multiset.
inline std::vector<JHFactor> graded_degree0(const SheafDescriptor& d) {
  const CycleCurve& host = d.host();
  const std::size_t n = host.size();
  std::vector<JHFactor> out;
  for (const auto& s : d.summands()) {
    if (invariants_of(s, n).kclass.chi != 0 || !degree0_semistable(s, host))
      throw DomainError("graded object requested for a summand that is not semistable of degree zero");
    if (const auto* vb = std::get_if<VectorBundleSummand>(&s)) {
      const auto& md = vb->bundle.multidegree;
      if (vb->cover == 1 && std::all_of(md.begin(), md.end(), [](Int x) { return x == 0; })) {
        for (Int t = 0; t < vb->atiyah; ++t) out.push_back(JHFactor::line_bundle(vb->bundle.gluing));
      } else {
        for (std::size_t i = 0; i < n; ++i)
          for (Int t = 0; t < vb->cover * vb->atiyah; ++t) out.push_back(JHFactor::minus_one(i));
      }
    } else {
      const auto& c = std::get<ChainSummand>(s);
      for (std::size_t j = 0; j < c.map.length(); ++j) out.push_back(JHFactor::minus_one(chain_image(c.map, j)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Bounds for exhaustive enumeration of classification data.
struct EnumerationBounds {
  Int max_cover = 2;
  Int max_atiyah = 2;
  std::size_t max_chain = 0; // 0 means N
  Int max_abs_degree = 2;
};

/// Calls f on every well-formed indecomposable over an N-component cycle
/// within the bounds (gluing fixed to 1). Vector bundles come first.
template <class F>
void for_each_indecomposable(std::size_t n, const EnumerationBounds& b, F&& f) {
  auto for_each_vector = [&](std::size_t len, auto&& g) {
    Multidegree md(len, -b.max_abs_degree);
    while (true) {
      g(md);
      std::size_t i = 0;
      while (i < len && md[i] == b.max_abs_degree) md[i++] = -b.max_abs_degree;
      if (i == len) return;
      ++md[i];
    }
  };
  for (Int s = 1; s <= b.max_cover; ++s)
    for_each_vector(std::size_t(s) * n, [&](const Multidegree& md) {
      if (!is_nonperiodic(md, s, n)) return;
      for (Int m = 1; m <= b.max_atiyah; ++m) f(IndecomposableSheaf{VectorBundleSummand{s, m, {md, Rational(1)}}});
    });
  const std::size_t max_chain = b.max_chain == 0 ? n : b.max_chain;
  for (std::size_t k = 1; k <= max_chain; ++k)
    for_each_vector(k, [&](const Multidegree& md) {
      for (std::size_t a = 0; a < n; ++a) f(IndecomposableSheaf{ChainSummand{ChainMap(k, n, a), {md}}});
    });
}

/// The maximal ideal of a point: a line bundle of multidegree -e_i for a
/// smooth point (gluing = its coordinate), or the pushforward from the
/// chain obtained by cutting the cycle open at the node.
inline SheafDescriptor maximal_ideal_sheaf(const CycleCurve& curve, const CurvePoint& point) {
  validate_point(curve, point);
  const std::size_t n = curve.size();
  if (const auto* s = std::get_if<SmoothPoint>(&point)) {
    Multidegree md(n, 0);
    md[s->component] = -1;
    return SheafDescriptor(curve, {make_vector_bundle(n, 1, 1, std::move(md), s->coordinate)});
  }
  const std::size_t node = std::get<NodePoint>(point).node;
  Multidegree md(n, 0);
  md.front() -= 1;
  md.back() -= 1;
  return SheafDescriptor(curve, {make_chain_sheaf(n, n, (node + 1) % n, std::move(md))});
}

} // namespace cyclesheaf
