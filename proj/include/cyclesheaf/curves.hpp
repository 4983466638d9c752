#pragma once

// Combinatorial model of a cycle E_N and a chain I_k of projective lines.
//
// Components are indexed from 0. On a cycle, node j joins component j (at
// its coordinate infinity) with component (j+1) mod N (at its coordinate 0);
// node N-1 is the closing node. On a chain, node j joins j and j+1.

#include "cyclesheaf/common.hpp"

#include <compare>
#include <variant>

namespace cyclesheaf {

class CycleCurve {
public:
  explicit CycleCurve(IntVec polarization) : polarization_(std::move(polarization)) {
    if (polarization_.empty()) throw DomainError("a cycle needs at least one component");
    for (Int h : polarization_)
      if (h < 1) throw DomainError("polarization degrees must be positive");
  }

  /// Cycle with every component of degree one.
  static CycleCurve uniform(std::size_t n_components) {
    return CycleCurve(IntVec(n_components, 1));
  }

  std::size_t size() const { return polarization_.size(); }
  const IntVec& polarization() const { return polarization_; }
  Int degree(std::size_t i) const { return polarization_.at(i); }
  Int total_degree() const { return detail::sum(polarization_); }

  bool operator==(const CycleCurve&) const = default;

private:
  IntVec polarization_;
};

class ChainCurve {
public:
  explicit ChainCurve(std::size_t length) : length_(length) {
    if (length_ == 0) throw DomainError("a chain needs at least one component");
  }

  std::size_t size() const { return length_; }
  std::size_t node_count() const { return length_ - 1; }

  bool operator==(const ChainCurve&) const = default;

private:
  std::size_t length_;
};

enum class HostKind { Cycle, Chain };

/// A connected proper subcurve: components start, start+1, ..., start+length-1
/// (taken mod the host size on a cycle).
struct Arc {
  HostKind host = HostKind::Cycle;
  std::size_t host_size = 0;
  std::size_t start = 0;
  std::size_t length = 0;
  int boundary_nodes = 0;

  std::size_t component(std::size_t offset) const {
    return host == HostKind::Cycle ? (start + offset) % host_size : start + offset;
  }

  auto operator<=>(const Arc&) const = default;
};

namespace detail {

inline std::vector<Arc> cycle_arcs(std::size_t n) {
  std::vector<Arc> arcs;
  for (std::size_t len = 1; len < n; ++len)
    for (std::size_t start = 0; start < n; ++start)
      arcs.push_back(Arc{HostKind::Cycle, n, start, len, 2});
  return arcs;
}

inline std::vector<Arc> chain_arcs(std::size_t k) {
  std::vector<Arc> arcs;
  for (std::size_t len = 1; len < k; ++len)
    for (std::size_t start = 0; start + len <= k; ++start) {
      int boundary = (start > 0 ? 1 : 0) + (start + len < k ? 1 : 0);
      arcs.push_back(Arc{HostKind::Chain, k, start, len, boundary});
    }
  return arcs;
}

} // namespace detail

/// Every connected proper subcurve exactly once, ordered by length then start.
inline std::vector<Arc> proper_arcs(const CycleCurve& curve) { return detail::cycle_arcs(curve.size()); }
inline std::vector<Arc> proper_arcs(const ChainCurve& curve) { return detail::chain_arcs(curve.size()); }

/// Finite map I_k -> E_N sending chain component j to (start + j) mod N.
class ChainMap {
public:
  ChainMap(std::size_t length, std::size_t target_size, std::size_t start)
      : chain_(length), target_size_(target_size), start_(start) {
    if (target_size_ == 0) throw DomainError("chain map target must have a component");
    if (start_ >= target_size_) throw DomainError("chain map start is not a component of the target");
  }

  const ChainCurve& chain() const { return chain_; }
  std::size_t length() const { return chain_.size(); }
  std::size_t target_size() const { return target_size_; }
  std::size_t start() const { return start_; }

  bool operator==(const ChainMap&) const = default;

private:
  ChainCurve chain_;
  std::size_t target_size_;
  std::size_t start_;
};

inline std::size_t chain_image(const ChainMap& map, std::size_t j) {
  if (j >= map.length()) throw DomainError("chain component index out of range");
  return (map.start() + j) % map.target_size();
}

/// Polarization of I_k pulled back from the target cycle.
inline IntVec pullback_polarization(const ChainMap& map, const CycleCurve& target) {
  if (target.size() != map.target_size()) throw DomainError("chain map target does not match the curve");
  IntVec h(map.length());
  for (std::size_t j = 0; j < map.length(); ++j) h[j] = target.degree(chain_image(map, j));
  return h;
}

struct SmoothPoint {
  std::size_t component = 0;
  Rational coordinate{1};
  bool operator==(const SmoothPoint&) const = default;
};

struct NodePoint {
  std::size_t node = 0;
  bool operator==(const NodePoint&) const = default;
};

using CurvePoint = std::variant<SmoothPoint, NodePoint>;

/// Coordinates 0 and infinity on each component are the nodes.
inline void validate_point(const CycleCurve& curve, const CurvePoint& p) {
  if (const auto* s = std::get_if<SmoothPoint>(&p)) {
    if (s->component >= curve.size()) throw DomainError("point lies on a nonexistent component");
    if (s->coordinate.numerator() == 0) throw DomainError("coordinate 0 is a node, not a smooth point");
  } else if (std::get<NodePoint>(p).node >= curve.size()) {
    throw DomainError("node index out of range");
  }
}

} // namespace cyclesheaf
