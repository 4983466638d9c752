#pragma once

// Degree-zero moduli on E_N (N >= 2). The component of balanced multirank
// (rbar,...,rbar) is identified with Sym^rbar E_1: a stable line bundle of
// multidegree zero with gluing lambda goes to the smooth point lambda of the
// nodal cubic, and each complete block O_{C_1}(-1) + ... + O_{C_N}(-1) of
// the graded object goes to the node.

#include "cyclesheaf/sheaves.hpp"

#include <set>

namespace cyclesheaf {

/// A point of Sym^r E_1: smooth entries (sorted, with repetition) plus the
/// multiplicity of the node.
struct ModuliPointE1 {
  std::vector<Rational> smooth;
  Int node_multiplicity = 0;

  Int size() const { return Int(smooth.size()) + node_multiplicity; }
  bool operator==(const ModuliPointE1&) const = default;
};

inline ModuliPointE1 make_moduli_point(std::vector<Rational> smooth, Int nodes) {
  if (nodes < 0) throw DomainError("node multiplicity must be nonnegative");
  for (const auto& q : smooth)
    if (q.numerator() == 0) throw DomainError("smooth points of E_1 have nonzero coordinate");
  std::sort(smooth.begin(), smooth.end());
  ModuliPointE1 p{std::move(smooth), nodes};
  if (p.size() < 1) throw DomainError("a moduli point needs at least one entry");
  return p;
}

inline std::string to_string(const ModuliPointE1& p) {
  std::string out;
  for (const auto& q : p.smooth) out += (out.empty() ? "" : " + ") + ("smooth(" + to_string(q) + ")");
  for (Int i = 0; i < p.node_multiplicity; ++i) out += (out.empty() ? "" : " + ") + std::string("node");
  return out;
}

inline ModuliPointE1 moduli_point(const SheafDescriptor& d) {
  const std::size_t n = d.host().size();
  if (n < 2) throw DomainError("moduli identification requires N >= 2");
  auto inv = invariants_of(d);
  if (inv.kclass.chi != 0) throw DomainError("moduli point requires degree zero");
  const Int rbar = inv.kclass.multirank.front();
  for (Int r : inv.kclass.multirank)
    if (r != rbar) throw DomainError("moduli point requires a balanced multirank");

  std::vector<Rational> smooth;
  IntVec minus_one(n, 0);
  for (const auto& f : graded_degree0(d)) {
    if (f.kind == JHFactor::Kind::StableLineBundle) smooth.push_back(f.gluing);
    else ++minus_one[f.component];
  }
  for (Int c : minus_one)
    if (c != minus_one.front()) throw std::logic_error("graded object does not split into complete node blocks");
  auto p = make_moduli_point(std::move(smooth), minus_one.front());
  if (p.size() != rbar) throw std::logic_error("moduli point size differs from the balanced rank");
  return p;
}

/// S-class representative of one entry: the stable line bundle with gluing
/// lambda, or O_{C_1}(-1) + ... + O_{C_N}(-1) for the node.
inline std::vector<IndecomposableSheaf> phi_bar_entry(const std::optional<Rational>& smooth, const CycleCurve& curve) {
  const std::size_t n = curve.size();
  if (n < 2) throw DomainError("moduli identification requires N >= 2");
  if (smooth) return {make_vector_bundle(n, 1, 1, Multidegree(n, 0), *smooth)};
  std::vector<IndecomposableSheaf> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(make_chain_sheaf(n, 1, i, {-1}));
  return out;
}

inline SheafDescriptor phi_bar(const ModuliPointE1& p, const CycleCurve& curve) {
  std::vector<IndecomposableSheaf> summands;
  for (const auto& q : p.smooth)
    for (auto& s : phi_bar_entry(q, curve)) summands.push_back(std::move(s));
  for (Int i = 0; i < p.node_multiplicity; ++i)
    for (auto& s : phi_bar_entry(std::nullopt, curve)) summands.push_back(std::move(s));
  return SheafDescriptor(curve, std::move(summands));
}

struct StableLocus {
  enum class Kind { KStarComponent, IsolatedPoints, Empty };
  Kind kind = Kind::Empty;
  std::vector<std::size_t> components; // for IsolatedPoints

  bool operator==(const StableLocus&) const = default;
};

inline std::string to_string(const StableLocus& s) {
  switch (s.kind) {
  case StableLocus::Kind::KStarComponent: return "k* component (compactifies to a nodal curve)";
  case StableLocus::Kind::IsolatedPoints: {
    std::string out = "isolated points O_{C_i}(-1) for i in {";
    for (std::size_t k = 0; k < s.components.size(); ++k) out += (k ? "," : "") + std::to_string(s.components[k] + 1);
    return out + "}";
  }
  case StableLocus::Kind::Empty: return "empty";
  }
  return "?";
}

/// Stable sheaves with Hilbert polynomial r s: the k* family of
/// multidegree-zero line bundles when r = h, the sheaves O_{C_i}(-1) for
/// every i with h_i = r, otherwise none.
inline StableLocus stable_locus(Int r, const CycleCurve& curve) {
  if (curve.size() < 2) throw DomainError("stable locus description requires N >= 2");
  if (r < 1) throw DomainError("r must be positive");
  if (r == curve.total_degree()) return {StableLocus::Kind::KStarComponent, {}};
  StableLocus out{StableLocus::Kind::IsolatedPoints, {}};
  for (std::size_t i = 0; i < curve.size(); ++i)
    if (curve.degree(i) == r) out.components.push_back(i);
  if (out.components.empty()) out.kind = StableLocus::Kind::Empty;
  return out;
}

/// Dimension of the component M((r_1,...,r_N), 0): the minimum r_i.
inline Int component_dimension(const IntVec& multirank, const CycleCurve& curve) {
  if (multirank.size() != curve.size()) throw DomainError("multirank length does not match the curve");
  for (Int r : multirank)
    if (r < 0) throw DomainError("multirank entries must be nonnegative");
  return *std::min_element(multirank.begin(), multirank.end());
}

} // namespace cyclesheaf
