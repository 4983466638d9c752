#pragma once

// Numerical action of the Fourier-Mukai equivalences on invariants.
//
//   Phi    : kernel the ideal of the diagonal
//   PhiHat : its quasi-inverse partner
//   Psi    : twist by O(H);  PsiHat its inverse
//   Twist  : twist by a line bundle of given multidegree (K-class level only)
//
// Phi and PhiHat act linearly on Hilbert classes but have no action on
// unbalanced multiranks; only the balanced case is provided.

#include "cyclesheaf/invariants.hpp"

#include <string>
#include <variant>

namespace cyclesheaf {

enum class Transform { Phi, PhiHat, Psi, PsiHat };

struct Twist {
  Multidegree multidegree;
  bool operator==(const Twist&) const = default;
};

using TransformSymbol = std::variant<Transform, Twist>;

enum class WitIndex { Zero = 0, One = 1 };

inline std::string to_string(Transform t) {
  switch (t) {
  case Transform::Phi: return "phi";
  case Transform::PhiHat: return "phihat";
  case Transform::Psi: return "psi";
  case Transform::PsiHat: return "psihat";
  }
  return "?";
}

inline std::string to_string(const TransformSymbol& t) {
  if (const auto* tw = std::get_if<Twist>(&t)) return "twist:" + join(tw->multidegree);
  return to_string(std::get<Transform>(t));
}

/// Parses "phi,psi,twist:1,-1,psihat". A twist token absorbs the numeric
/// tokens that follow it.
inline std::vector<TransformSymbol> parse_transforms(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    tokens.emplace_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  auto is_number = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };

  std::vector<TransformSymbol> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok == "phi") out.emplace_back(Transform::Phi);
    else if (tok == "phihat") out.emplace_back(Transform::PhiHat);
    else if (tok == "psi") out.emplace_back(Transform::Psi);
    else if (tok == "psihat") out.emplace_back(Transform::PsiHat);
    else if (tok.rfind("twist:", 0) == 0) {
      std::string first = tok.substr(6);
      if (!is_number(first)) throw InputError("malformed twist token '" + tok + "'");
      Twist tw{{std::stoll(first)}};
      while (i + 1 < tokens.size() && is_number(tokens[i + 1])) tw.multidegree.push_back(std::stoll(tokens[++i]));
      out.emplace_back(std::move(tw));
    } else {
      throw InputError("unknown transform token '" + tok + "'");
    }
  }
  return out;
}

/// Phi: (r,d) -> (dh-r, -d);  PhiHat: (r,d) -> (dh+r, d);
/// Psi: (r,d) -> (r, d+r);    PsiHat: (r,d) -> (r, d-r).
/// Negative outputs are classes of shifted complexes.
inline HilbertClass apply_total(Transform t, const HilbertClass& hc, Int h) {
  using detail::checked_add;
  using detail::checked_mul;
  using detail::checked_sub;
  if (h < 1) throw DomainError("polarization degree must be positive");
  switch (t) {
  case Transform::Phi: return {checked_sub(checked_mul(hc.d, h), hc.r), -hc.d};
  case Transform::PhiHat: return {checked_add(checked_mul(hc.d, h), hc.r), hc.d};
  case Transform::Psi: return {hc.r, checked_add(hc.d, hc.r)};
  case Transform::PsiHat: return {hc.r, checked_sub(hc.d, hc.r)};
  }
  return hc;
}

/// True when a total-level result is the class of a shifted complex rather
/// than of a sheaf.
inline bool is_complex_class(const HilbertClass& hc) { return !hc.is_sheaf_class(); }

/// chi -> chi + sum r_i d'_i; multirank unchanged.
inline KClass apply_twist(const Twist& t, const KClass& kc) {
  if (t.multidegree.size() != kc.multirank.size()) throw DomainError("twist multidegree length does not match multirank");
  KClass out = kc;
  for (std::size_t i = 0; i < kc.multirank.size(); ++i)
    out.chi = detail::checked_add(out.chi, detail::checked_mul(kc.multirank[i], t.multidegree[i]));
  return out;
}

/// Psi and PsiHat at the K-class level are twists by O(H) and O(-H).
inline KClass apply_kclass(const TransformSymbol& t, const KClass& kc, const CycleCurve& curve) {
  if (const auto* tw = std::get_if<Twist>(&t)) return apply_twist(*tw, kc);
  switch (std::get<Transform>(t)) {
  case Transform::Psi: return apply_twist(Twist{curve.polarization()}, kc);
  case Transform::PsiHat: {
    Twist inv{curve.polarization()};
    for (Int& x : inv.multidegree) x = -x;
    return apply_twist(inv, kc);
  }
  default:
    throw DomainError(to_string(t) + " has no action on unbalanced multiranks");
  }
}

/// Balanced multirank (rbar,...,rbar) with chi = d.
struct BalancedClass {
  Int rbar = 0;
  Int d = 0;
  bool operator==(const BalancedClass&) const = default;
};

/// Phi: d > rbar -> (d-rbar, -d), d <= rbar -> (rbar-d, d).  Psi: (rbar, rbar h + d).
inline BalancedClass apply_balanced(Transform t, const BalancedClass& in, Int h) {
  if (h < 1) throw DomainError("polarization degree must be positive");
  if (in.rbar < 0) throw DomainError("balanced rank must be nonnegative");
  switch (t) {
  case Transform::Phi:
    if (in.d > in.rbar) return {in.d - in.rbar, -in.d};
    return {in.rbar - in.d, in.d};
  case Transform::Psi:
    return {in.rbar, detail::checked_add(detail::checked_mul(in.rbar, h), in.d)};
  default:
    throw DomainError("balanced action is defined for phi and psi only");
  }
}

/// WIT index of a semistable class. Phi: WIT_0 iff mu > 1/h.
/// PhiHat: WIT_0 iff mu > -1/h. Torsion is always WIT_0.
inline WitIndex wit_index(Transform t, const Slope& mu, Int h) {
  if (h < 1) throw DomainError("polarization degree must be positive");
  switch (t) {
  case Transform::Phi: return mu > Rational(1, h) ? WitIndex::Zero : WitIndex::One;
  case Transform::PhiHat: return mu > Rational(-1, h) ? WitIndex::Zero : WitIndex::One;
  default: return WitIndex::Zero;
  }
}

/// Left-to-right composition at the total level.
inline HilbertClass compose_total(const std::vector<TransformSymbol>& seq, HilbertClass hc, Int h) {
  for (const auto& t : seq) {
    if (std::holds_alternative<Twist>(t)) throw DomainError("twists act on K-classes, not on Hilbert classes");
    hc = apply_total(std::get<Transform>(t), hc, h);
  }
  return hc;
}

inline KClass compose_kclass(const std::vector<TransformSymbol>& seq, KClass kc, const CycleCurve& curve) {
  for (const auto& t : seq) kc = apply_kclass(t, kc, curve);
  return kc;
}

} // namespace cyclesheaf
