#pragma once

// JSON encodings of curves, line bundles, descriptors and moduli points.
// Parse failures of any kind surface as InputError.

#include "cyclesheaf/moduli.hpp"
#include "cyclesheaf/reduction.hpp"

#include <json.hpp>

#include <fstream>

namespace cyclesheaf::io {

using nlohmann::json;

namespace detail {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw InputError(e.what());
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
}

} // namespace detail

inline json to_json(const Rational& q) { return {{"num", q.numerator()}, {"den", q.denominator()}}; }

inline Rational rational_from_json(const json& j) {
  const Int num = detail::get<Int>(j, "num");
  const Int den = detail::get<Int>(j, "den");
  if (den <= 0) throw InputError("rational denominator must be positive");
  return Rational(num, den);
}

inline json to_json(const CycleCurve& c) {
  return {{"type", "cycle"}, {"components", c.size()}, {"polarization", c.polarization()}};
}

inline json to_json(const ChainCurve& c) { return {{"type", "chain"}, {"components", c.size()}}; }

inline std::variant<CycleCurve, ChainCurve> curve_from_json(const json& j) {
  return detail::guarded([&]() -> std::variant<CycleCurve, ChainCurve> {
    const auto type = detail::get<std::string>(j, "type");
    const auto n = detail::get<Int>(j, "components");
    if (n < 1) throw InputError("a curve needs at least one component");
    if (type == "chain") return ChainCurve(std::size_t(n));
    if (type != "cycle") throw InputError("curve type must be 'cycle' or 'chain'");
    IntVec h = j.contains("polarization") ? detail::get<IntVec>(j, "polarization") : IntVec(std::size_t(n), 1);
    if (h.size() != std::size_t(n)) throw InputError("polarization needs one entry per component");
    return CycleCurve(std::move(h));
  });
}

inline CycleCurve cycle_from_json(const json& j) {
  auto c = curve_from_json(j);
  if (!std::holds_alternative<CycleCurve>(c)) throw InputError("expected a cycle curve");
  return std::get<CycleCurve>(std::move(c));
}

inline json to_json(const CycleLineBundle& b) { return {{"multidegree", b.multidegree}, {"gluing", to_json(b.gluing)}}; }

inline CycleLineBundle line_bundle_from_json(const json& j) {
  CycleLineBundle b{detail::get<IntVec>(j, "multidegree"), Rational(1)};
  if (j.contains("gluing")) b.gluing = rational_from_json(j.at("gluing"));
  if (b.gluing.numerator() == 0) throw InputError("gluing scalar must be nonzero");
  return b;
}

inline json to_json(const IndecomposableSheaf& x) {
  if (const auto* vb = std::get_if<VectorBundleSummand>(&x))
    return {{"kind", "vb"},
            {"cover", vb->cover},
            {"m", vb->atiyah},
            {"multidegree", vb->bundle.multidegree},
            {"gluing", to_json(vb->bundle.gluing)}};
  const auto& c = std::get<ChainSummand>(x);
  return {{"kind", "nlf"}, {"length", c.map.length()}, {"start", c.map.start()}, {"multidegree", c.bundle.multidegree}};
}

inline IndecomposableSheaf summand_from_json(const json& j, std::size_t host_size) {
  return detail::guarded([&]() -> IndecomposableSheaf {
    const auto kind = detail::get<std::string>(j, "kind");
    auto md = detail::get<IntVec>(j, "multidegree");
    if (kind == "vb") {
      Rational gluing = j.contains("gluing") ? rational_from_json(j.at("gluing")) : Rational(1);
      return make_vector_bundle(host_size, detail::get<Int>(j, "cover"), detail::get<Int>(j, "m"), std::move(md), gluing);
    }
    if (kind != "nlf") throw InputError("summand kind must be 'vb' or 'nlf'");
    const auto length = detail::get<Int>(j, "length");
    const auto start = detail::get<Int>(j, "start");
    if (length < 1 || start < 0) throw InputError("chain length must be positive and start nonnegative");
    return make_chain_sheaf(host_size, std::size_t(length), std::size_t(start), std::move(md));
  });
}

inline json to_json(const SheafDescriptor& d) {
  json summands = json::array();
  for (const auto& s : d.summands()) summands.push_back(to_json(s));
  return {{"curve", to_json(d.host())}, {"summands", summands}};
}

inline SheafDescriptor descriptor_from_json(const json& j) {
  return detail::guarded([&] {
    if (!j.is_object() || !j.contains("curve") || !j.contains("summands"))
      throw InputError("descriptor needs 'curve' and 'summands'");
    CycleCurve host = cycle_from_json(j.at("curve"));
    const json& arr = j.at("summands");
    if (!arr.is_array() || arr.empty()) throw InputError("'summands' must be a nonempty array");
    std::vector<IndecomposableSheaf> summands;
    for (const auto& s : arr) summands.push_back(summand_from_json(s, host.size()));
    return SheafDescriptor(std::move(host), std::move(summands));
  });
}

inline json to_json(const ModuliPointE1& p) {
  json points = json::array();
  for (const auto& q : p.smooth) points.push_back({{"type", "smooth"}, {"lambda", to_json(q)}});
  if (p.node_multiplicity > 0) points.push_back({{"type", "node"}, {"mult", p.node_multiplicity}});
  return {{"points", points}};
}

inline ModuliPointE1 moduli_point_from_json(const json& j) {
  return detail::guarded([&] {
    if (!j.is_object() || !j.contains("points") || !j.at("points").is_array())
      throw InputError("moduli point needs a 'points' array");
    std::vector<Rational> smooth;
    Int nodes = 0;
    for (const auto& e : j.at("points")) {
      const auto type = detail::get<std::string>(e, "type");
      if (type == "smooth") smooth.push_back(rational_from_json(e.at("lambda")));
      else if (type == "node") {
        const Int mult = e.contains("mult") ? detail::get<Int>(e, "mult") : 1;
        if (mult < 1) throw InputError("node multiplicity must be positive");
        nodes += mult;
      } else throw InputError("point type must be 'smooth' or 'node'");
    }
    return make_moduli_point(std::move(smooth), nodes);
  });
}

inline json to_json(const JHFactor& f) {
  if (f.kind == JHFactor::Kind::MinusOneOnComponent) return {{"type", "minus_one"}, {"component", f.component}};
  return {{"type", "line_bundle"}, {"gluing", to_json(f.gluing)}};
}

inline json to_json(const OrbitState& s) { return {{"r", s.r}, {"d", s.d}}; }

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

} // namespace cyclesheaf::io
