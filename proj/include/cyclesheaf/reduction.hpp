#pragma once

// Orbit reduction of a Hilbert class (r,d) under the moduli isomorphisms
//
//   M(r,d) = M(dh-r, -d)   for d/r >  1/h
//   M(r,d) = M(r-dh,  d)   for d/r <= 1/h
//   M(r,d) = M(r, d+r)
//
// States are kept with d reduced mod r. Composing the first two maps with
// all Psi-translates, the leading coefficients reachable in one move from
// (r,d) are exactly |v| for v = dh - r (mod rh), so each state has finitely
// many successors below a cap on |v|.

#include "cyclesheaf/transforms.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace cyclesheaf {

/// (r, d) with 0 <= d < r when r > 0, and d > 0 when r = 0.
struct OrbitState {
  Int r = 0;
  Int d = 0;

  /// Psi-normalizes a sheaf class; rejects classes with empty moduli.
  static OrbitState normalized(Int r, Int d) {
    if (r < 0) throw DomainError("rank coefficient must be nonnegative");
    if (r == 0) {
      if (d <= 0) throw DomainError("torsion class needs positive degree");
      return {0, d};
    }
    return {r, detail::floor_mod(d, r)};
  }

  HilbertClass hilbert() const { return {r, d}; }
  auto operator<=>(const OrbitState&) const = default;
};

struct OrbitStateHash {
  std::size_t operator()(const OrbitState& s) const noexcept {
    return std::hash<Int>{}(s.r) * 0x9e3779b97f4a7c15ULL ^ std::hash<Int>{}(s.d);
  }
};

inline std::ostream& operator<<(std::ostream& os, const OrbitState& s) {
  return os << '(' << s.r << ',' << s.d << ')';
}

/// One step of the move graph together with the symbols realizing it:
/// a Psi-translate, Phi, then Psi-normalization of the result.
struct OrbitMove {
  OrbitState target;
  std::vector<TransformSymbol> symbols;
  bool shifted = false; // the Phi image was the class of E[1]
};

struct ReductionResult {
  OrbitState terminal;
  std::vector<TransformSymbol> trace;
  std::size_t visited = 0;
  bool capped = false;
};

inline Int default_cap(const HilbertClass& hc, Int h) {
  using detail::checked_add;
  using detail::checked_mul;
  Int abs_d = hc.d < 0 ? -hc.d : hc.d;
  return checked_add(checked_add(checked_mul(hc.r, h), checked_mul(abs_d, h)), h);
}

namespace detail {

inline void append_power(std::vector<TransformSymbol>& out, Int power) {
  for (Int i = 0; i < power; ++i) out.emplace_back(Transform::Psi);
  for (Int i = 0; i > power; --i) out.emplace_back(Transform::PsiHat);
}

/// Target of the move with parameter v, without building its symbols.
inline OrbitState move_target(const OrbitState& s, Int v, Int h) {
  const Int vr = checked_add(v, s.r);
  if (v > 0) return OrbitState::normalized(v, -(vr / h));
  if (v < 0) return OrbitState::normalized(-v, vr / h);
  return OrbitState{0, s.r / h};
}

/// Calls f(v) for every move parameter v = dh - r (mod rh) with |v| <= cap.
template <class F>
void for_each_move_parameter(const OrbitState& s, Int h, Int cap, F&& f) {
  const Int rh = checked_mul(s.r, h);
  const Int m = floor_mod(checked_sub(checked_mul(s.d, h), s.r), rh);
  // Smallest representative >= -cap, then walk upward.
  for (Int v = m - ((m + cap) / rh) * rh; v <= cap; v += rh) {
    if (v == 0 && s.r / h <= 0) continue;
    f(v);
  }
}

inline OrbitMove make_move(const OrbitState& s, Int v, Int h) {
  const Int r = s.r;
  const Int rh = checked_mul(r, h);
  const Int base = checked_sub(checked_mul(s.d, h), r);
  OrbitMove move;
  append_power(move.symbols, (v - base) / rh);
  move.symbols.emplace_back(Transform::Phi);
  const Int vr = checked_add(v, r);
  if (v > 0) {
    const Int raw_d = -(vr / h);
    move.target = OrbitState::normalized(v, raw_d);
    append_power(move.symbols, -((raw_d - move.target.d) / v));
  } else if (v < 0) {
    const Int raw_d = vr / h;
    move.shifted = true;
    move.target = OrbitState::normalized(-v, raw_d);
    append_power(move.symbols, -((raw_d - move.target.d) / -v));
  } else {
    move.shifted = true;
    move.target = OrbitState{0, r / h};
  }
  return move;
}

} // namespace detail

/// All one-move neighbours of s whose leading coefficient is at most cap.
inline std::vector<OrbitMove> successor_moves(const OrbitState& s, Int h, Int cap) {
  if (h < 1) throw DomainError("polarization degree must be positive");
  if (s.r <= 0) throw DomainError("torsion states have no successors");
  std::vector<OrbitMove> out;
  detail::for_each_move_parameter(s, h, cap, [&](Int v) { out.push_back(detail::make_move(s, v, h)); });
  return out;
}

inline std::set<OrbitState> successors(const OrbitState& s, Int h, Int cap) {
  std::set<OrbitState> out;
  for (auto& mv : successor_moves(s, h, cap)) out.insert(mv.target);
  return out;
}

/// Breadth-first search of the move graph below cap, returning the
/// lexicographically smallest reachable state. capped is set when the cap
/// cut one of the two nearest moves (v = m or v = m - rh) of some explored
/// state, i.e. when the search could not take a descending step it wanted.
inline ReductionResult reduce(const HilbertClass& hc, Int h, std::optional<Int> cap_opt = std::nullopt) {
  if (h < 1) throw DomainError("polarization degree must be positive");
  const OrbitState start = OrbitState::normalized(hc.r, hc.d);
  const Int cap = cap_opt.value_or(default_cap(hc, h));
  if (cap < 1) throw DomainError("cap must be positive");

  struct Parent {
    OrbitState from;
    Int v;
  };
  std::unordered_map<OrbitState, std::optional<Parent>, OrbitStateHash> seen;
  seen.emplace(start, std::nullopt);
  std::deque<OrbitState> queue{start};
  bool capped = false;
  OrbitState best = start;

  while (!queue.empty()) {
    OrbitState s = queue.front();
    queue.pop_front();
    best = std::min(best, s);
    if (s.r == 0) continue;
    const Int rh = detail::checked_mul(s.r, h);
    const Int m = detail::floor_mod(s.d * h - s.r, rh);
    if (m > cap || rh - m > cap) capped = true;
    detail::for_each_move_parameter(s, h, cap, [&](Int v) {
      const OrbitState t = detail::move_target(s, v, h);
      if (seen.emplace(t, Parent{s, v}).second) queue.push_back(t);
    });
  }

  ReductionResult out;
  out.terminal = best;
  out.visited = seen.size();
  out.capped = capped;
  std::vector<std::vector<TransformSymbol>> steps;
  for (OrbitState cur = best; seen.at(cur);) {
    const Parent& p = *seen.at(cur);
    steps.push_back(detail::make_move(p.from, p.v, h).symbols);
    cur = p.from;
  }
  // The input itself may need Psi-normalization before the first move.
  detail::append_power(out.trace, -((hc.r > 0 ? (hc.d - start.d) / hc.r : 0)));
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.trace.insert(out.trace.end(), it->begin(), it->end());
  return out;
}

/// Necessary shape of a minimal representative: (0, d>0), (r>0, 0) unless
/// h = 1, or 0 < d < r with 2r/h <= d.
inline bool is_terminal_form(const OrbitState& s, Int h) {
  if (s.r == 0) return s.d > 0;
  if (s.d == 0) return h != 1;
  return s.d > 0 && s.d < s.r && 2 * s.r <= s.d * h;
}

struct OrbitGraph {
  std::set<OrbitState> states;
  std::set<std::pair<OrbitState, OrbitState>> edges;
};

/// Exhaustive enumeration of the reachable set below cap by applying the
/// three isomorphisms literally: every Psi-translate (r, d + kr) whose Phi
/// image has leading coefficient of size at most cap, followed by the
/// slope-dependent branch. Independent of the residue arithmetic in reduce.
inline OrbitGraph orbit_graph(const HilbertClass& hc, Int h, Int cap, bool with_edges = true) {
  if (h < 1) throw DomainError("polarization degree must be positive");
  if (cap < 1) throw DomainError("cap must be positive");
  const OrbitState start = OrbitState::normalized(hc.r, hc.d);
  OrbitGraph g;
  g.states.insert(start);
  std::deque<OrbitState> queue{start};
  auto floor_div = [](Int a, Int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  while (!queue.empty()) {
    OrbitState s = queue.front();
    queue.pop_front();
    if (s.r == 0) continue;
    // |dk h - r| <= cap  <=>  (r - cap)/h <= dk <= (r + cap)/h
    const Int lo = -floor_div(cap - s.r, h);
    const Int hi = floor_div(s.r + cap, h);
    for (Int dk = lo + detail::floor_mod(s.d - lo, s.r); dk <= hi; dk += s.r) {
      HilbertClass image = apply_total(Transform::Phi, {s.r, dk}, h);
      if (Rational(dk, s.r) <= Rational(1, h)) image = -image; // WIT_1: the shifted transform is a sheaf
      if (image.r < 0 || (image.r == 0 && image.d <= 0)) continue;
      OrbitState t = OrbitState::normalized(image.r, image.d);
      if (with_edges) g.edges.insert({s, t});
      if (g.states.insert(t).second) queue.push_back(t);
    }
  }
  return g;
}

inline std::set<OrbitState> orbit(const HilbertClass& hc, Int h, Int cap) { return orbit_graph(hc, h, cap, false).states; }

inline std::string orbit_dot(const OrbitGraph& g) {
  std::ostringstream out;
  out << "digraph orbit {\n";
  for (const auto& s : g.states) out << "  \"" << s << "\";\n";
  for (const auto& [a, b] : g.edges) out << "  \"" << a << "\" -> \"" << b << "\";\n";
  out << "}\n";
  return out.str();
}

} // namespace cyclesheaf
