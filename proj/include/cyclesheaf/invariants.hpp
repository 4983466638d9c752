#pragma once

// The two invariant levels of a sheaf on E_N: the Hilbert polynomial
// P(s) = r s + d with respect to a polarization, and the K-class
// (multirank, chi). Also line-bundle cohomology by gluing linear algebra.

#include "cyclesheaf/curves.hpp"
#include "cyclesheaf/linalg.hpp"

#include <optional>
#include <ostream>

namespace cyclesheaf {

/// Coefficients of P(s) = r s + d. Classes of complexes may carry any signs.
struct HilbertClass {
  Int r = 0;
  Int d = 0;

  bool is_sheaf_class() const { return r > 0 || (r == 0 && d > 0); }

  HilbertClass operator+(const HilbertClass& o) const {
    return {detail::checked_add(r, o.r), detail::checked_add(d, o.d)};
  }
  HilbertClass operator-() const { return {-r, -d}; }
  auto operator<=>(const HilbertClass&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const HilbertClass& hc) {
  return os << '(' << hc.r << ',' << hc.d << ')';
}

/// Per-component degrees d_1..d_M of a sheaf or line bundle.
using Multidegree = IntVec;

/// Image of a sheaf class in K(X) = Z^{N+1}.
struct KClass {
  IntVec multirank;
  Int chi = 0;

  KClass operator+(const KClass& o) const {
    if (multirank.size() != o.multirank.size()) throw DomainError("K-classes over different curves");
    KClass out{multirank, detail::checked_add(chi, o.chi)};
    for (std::size_t i = 0; i < multirank.size(); ++i)
      out.multirank[i] = detail::checked_add(out.multirank[i], o.multirank[i]);
    return out;
  }
  bool operator==(const KClass&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const KClass& kc) {
  return os << "((" << join(kc.multirank) << ")," << kc.chi << ')';
}

/// Simpson slope d/r; infinite exactly for torsion classes.
class Slope {
public:
  static Slope infinite() { return Slope(); }
  static Slope finite(Rational value) { return Slope(value); }

  bool is_infinite() const { return !value_; }
  const Rational& value() const {
    if (!value_) throw DomainError("infinite slope has no finite value");
    return *value_;
  }

  bool operator==(const Slope&) const = default;
  std::strong_ordering operator<=>(const Slope& o) const {
    if (is_infinite() || o.is_infinite()) return is_infinite() <=> o.is_infinite();
    if (*value_ < *o.value_) return std::strong_ordering::less;
    if (*value_ > *o.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool operator<(const Rational& q) const { return !is_infinite() && *value_ < q; }
  bool operator>(const Rational& q) const { return is_infinite() || *value_ > q; }

private:
  Slope() = default;
  explicit Slope(Rational v) : value_(v) {}
  std::optional<Rational> value_;
};

inline std::ostream& operator<<(std::ostream& os, const Slope& s) {
  if (s.is_infinite()) return os << "inf";
  return os << to_string(s.value());
}

/// Line bundle on a cycle in gluing normal form: trivial gluing at every node
/// except the closing node N-1, which carries the scalar lambda.
struct CycleLineBundle {
  Multidegree multidegree;
  Rational gluing{1};

  bool operator==(const CycleLineBundle&) const = default;
};

struct ChainLineBundle {
  Multidegree multidegree;
  bool operator==(const ChainLineBundle&) const = default;
};

inline HilbertClass hilbert_of_kclass(const KClass& kc, const CycleCurve& curve) {
  if (kc.multirank.size() != curve.size()) throw DomainError("multirank length does not match the curve");
  Int r = 0;
  for (std::size_t i = 0; i < curve.size(); ++i)
    r = detail::checked_add(r, detail::checked_mul(kc.multirank[i], curve.degree(i)));
  return {r, kc.chi};
}

inline Slope slope(const HilbertClass& hc) {
  if (!hc.is_sheaf_class()) throw DomainError("slope is only defined for sheaf classes");
  if (hc.r == 0) return Slope::infinite();
  return Slope::finite(Rational(hc.d, hc.r));
}

/// Classes of O_X, the O_{C_i} and a point O_x. The O_{C_i} together with
/// O_x form a basis of K(X).
struct KGroupGenerators {
  KClass structure_sheaf;
  std::vector<KClass> components;
  KClass point;
};

inline KGroupGenerators kgroup_generators(const CycleCurve& curve) {
  const std::size_t n = curve.size();
  KGroupGenerators g{{IntVec(n, 1), 0}, {}, {IntVec(n, 0), 1}};
  for (std::size_t i = 0; i < n; ++i) {
    KClass c{IntVec(n, 0), 1};
    c.multirank[i] = 1;
    g.components.push_back(std::move(c));
  }
  return g;
}

/// Coefficients of kc over the basis ([O_{C_1}],...,[O_{C_N}],[O_x]).
inline IntVec decompose_kclass(const KClass& kc, const CycleCurve& curve) {
  if (kc.multirank.size() != curve.size()) throw DomainError("multirank length does not match the curve");
  IntVec coeffs = kc.multirank;
  coeffs.push_back(detail::checked_sub(kc.chi, detail::sum(kc.multirank)));
  return coeffs;
}

/// Length of the cokernel T of E -> E_{C_1} + ... + E_{C_N}, using
/// chi = d_i + r_i for a rank r_i degree d_i bundle on P^1.
inline Int torsion_length(const KClass& kc, const Multidegree& md) {
  if (kc.multirank.size() != md.size()) throw DomainError("multidegree length does not match multirank");
  Int total = 0;
  for (std::size_t i = 0; i < md.size(); ++i)
    total = detail::checked_add(total, detail::checked_add(md[i], kc.multirank[i]));
  return detail::checked_sub(total, kc.chi);
}

struct Cohomology {
  Int h0 = 0;
  Int h1 = 0;
  bool operator==(const Cohomology&) const = default;
};

namespace detail {

// Sections on component i are forms of degree d_i; unknowns are their
// coefficients (coefficient a multiplies x^a y^(d_i - a)). Value at
// coordinate 0 = [0:1] is coefficient 0; value at infinity = [1:0] is
// coefficient d_i. Node j equates the value of component j at infinity with
// gluing * value of component next(j) at 0.
inline Int global_sections(const Multidegree& md, bool closed, const Rational& lambda) {
  const std::size_t n = md.size();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + (md[i] >= 0 ? std::size_t(md[i] + 1) : 0);
  const std::size_t unknowns = offset[n];
  const std::size_t nodes = closed ? n : n - 1;
  if (unknowns == 0) return 0;

  IntMatrix m(nodes, unknowns);
  for (std::size_t j = 0; j < nodes; ++j) {
    const std::size_t left = j;
    const std::size_t right = (j + 1) % n;
    const bool closing = closed && j + 1 == n;
    const Int left_weight = closing ? lambda.denominator() : 1;
    const Int right_weight = closing ? lambda.numerator() : 1;
    if (md[left] >= 0) m(j, offset[left] + std::size_t(md[left])) += left_weight;
    if (md[right] >= 0) m(j, offset[right]) -= right_weight;
  }
  return Int(unknowns - rank(std::move(m)));
}

} // namespace detail

inline Cohomology line_bundle_cohomology(const CycleLineBundle& bundle, const CycleCurve& curve) {
  if (bundle.multidegree.size() != curve.size()) throw DomainError("multidegree length does not match the curve");
  if (bundle.gluing.numerator() == 0) throw DomainError("gluing scalar must be nonzero");
  Int h0 = detail::global_sections(bundle.multidegree, true, bundle.gluing);
  return {h0, h0 - detail::sum(bundle.multidegree)};
}

inline Cohomology line_bundle_cohomology(const ChainLineBundle& bundle, const ChainCurve& curve) {
  if (bundle.multidegree.size() != curve.size()) throw DomainError("multidegree length does not match the chain");
  Int h0 = detail::global_sections(bundle.multidegree, false, Rational(1));
  return {h0, h0 - detail::sum(bundle.multidegree) - 1};
}

} // namespace cyclesheaf
