#pragma once

// Command-line front end. Exit status: 0 success, 1 domain error,
// 2 malformed input.

#include "cyclesheaf/acceptance.hpp"
#include "cyclesheaf/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace cyclesheaf::cli {

using io::json;

namespace detail {

inline std::string curve_name(const CycleCurve& c) {
  return "E_" + std::to_string(c.size()) + ", polarization (" + join(c.polarization()) + ")";
}

inline json slope_json(const Slope& s) {
  if (s.is_infinite()) return "inf";
  return io::to_json(s.value());
}

inline std::string graded_text(const std::vector<JHFactor>& factors) {
  std::string out;
  for (const auto& f : factors) out += (out.empty() ? "" : "⊕") + to_string(f);
  return out;
}

inline std::string symbols_text(const std::vector<TransformSymbol>& seq) {
  std::string out;
  for (const auto& t : seq) out += (out.empty() ? "" : ",") + to_string(t);
  return out.empty() ? "(none)" : out;
}

inline std::string summand_text(const IndecomposableSheaf& x) {
  if (const auto* vb = std::get_if<VectorBundleSummand>(&x))
    return "vb cover " + std::to_string(vb->cover) + " m " + std::to_string(vb->atiyah) + " multidegree (" +
           join(vb->bundle.multidegree) + ") gluing " + to_string(vb->bundle.gluing);
  const auto& c = std::get<ChainSummand>(x);
  return "nlf length " + std::to_string(c.map.length()) + " start " + std::to_string(c.map.start()) +
         " multidegree (" + join(c.bundle.multidegree) + ")";
}

} // namespace detail

struct Options {
  bool json = false;
  // reduce / orbit / transform
  Int r = 0, d = 0, h = 1;
  std::optional<Int> cap;
  bool trace = false;
  bool dot = false;
  std::string sequence;
  std::string multirank;
  std::string polarization;
  Int chi = 0;
  // files
  std::string file;
  bool inverse = false;
  // cohomology
  std::optional<Int> n;
  bool chain = false;
  std::string multidegree;
  std::string lambda = "1";
  // enumerate-stable
  Int max_degree = 2, max_cover = 2, max_m = 2;
};

inline int cmd_reduce(const Options& o, std::ostream& out) {
  const auto res = reduce({o.r, o.d}, o.h, o.cap);
  if (o.json) {
    json j{{"terminal", io::to_json(res.terminal)},
           {"visited", res.visited},
           {"capped", res.capped},
           {"terminal_form", is_terminal_form(res.terminal, o.h)}};
    if (o.trace) {
      json t = json::array();
      for (const auto& s : res.trace) t.push_back(to_string(s));
      j["trace"] = t;
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "terminal (" << res.terminal.r << "," << res.terminal.d << ")\n";
  if (res.terminal.r == 0) out << "moduli space is Sym^" << res.terminal.d << " of the curve\n";
  out << "visited " << res.visited << (res.capped ? " (capped)" : "") << '\n';
  if (o.trace) out << "trace " << detail::symbols_text(res.trace) << '\n';
  return 0;
}

inline int cmd_transform(const Options& o, std::ostream& out) {
  const auto seq = parse_transforms(o.sequence);
  if (!o.multirank.empty()) {
    const IntVec mr = parse_int_list(o.multirank);
    const CycleCurve curve(o.polarization.empty() ? IntVec(mr.size(), 1) : parse_int_list(o.polarization));
    const KClass kc{mr, o.chi};
    const auto res = compose_kclass(seq, kc, curve);
    const auto hc = hilbert_of_kclass(res, curve);
    if (o.json) {
      out << json{{"multirank", res.multirank}, {"chi", res.chi}, {"hilbert", {{"r", hc.r}, {"d", hc.d}}}}.dump(2) << '\n';
    } else {
      out << "kclass " << res << "\nhilbert " << hc << '\n';
    }
    return 0;
  }
  const auto res = compose_total(seq, {o.r, o.d}, o.h);
  if (o.json) {
    out << json{{"r", res.r}, {"d", res.d}, {"complex_class", is_complex_class(res)}}.dump(2) << '\n';
  } else {
    out << "hilbert " << res << (is_complex_class(res) ? " (class of a complex)" : "") << '\n';
  }
  return 0;
}

inline int cmd_classify(const Options& o, std::ostream& out) {
  const auto desc = io::descriptor_from_json(io::read_file(o.file));
  const auto inv = invariants_of(desc);
  const auto hc = hilbert_of(desc);
  const Int defect = locally_free_defect(desc);

  std::optional<StabilityVerdict> verdict;
  std::string undecided;
  try {
    verdict = descriptor_verdict(desc);
  } catch (const DomainError& e) {
    undecided = e.what();
  }
  std::optional<std::vector<JHFactor>> graded;
  std::optional<ModuliPointE1> point;
  if (verdict && is_semistable(*verdict) && inv.kclass.chi == 0) {
    graded = graded_degree0(desc);
    const auto& mr = inv.kclass.multirank;
    if (desc.host().size() >= 2 && std::adjacent_find(mr.begin(), mr.end(), std::not_equal_to<>()) == mr.end())
      point = moduli_point(desc);
  }

  if (o.json) {
    json j{{"curve", io::to_json(desc.host())},
           {"multirank", inv.kclass.multirank},
           {"chi", inv.kclass.chi},
           {"multidegree", inv.multidegree},
           {"hilbert", {{"r", hc.r}, {"d", hc.d}}},
           {"slope", detail::slope_json(slope(hc))},
           {"torsion_length", torsion_length(inv.kclass, inv.multidegree)},
           {"locally_free", is_locally_free(desc)},
           {"defect", defect}};
    j["verdict"] = verdict ? json(to_string(*verdict)) : json(nullptr);
    if (!verdict) j["undecided"] = undecided;
    if (graded) {
      json g = json::array();
      for (const auto& f : *graded) g.push_back(io::to_json(f));
      j["graded"] = g;
    }
    if (point) j["moduli_point"] = io::to_json(*point);
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "curve " << detail::curve_name(desc.host()) << '\n';
  for (std::size_t i = 0; i < desc.summands().size(); ++i)
    out << "summand " << i + 1 << ": " << detail::summand_text(desc.summands()[i]) << '\n';
  out << "kclass " << inv.kclass << "  hilbert " << hc << "  slope " << slope(hc) << '\n';
  out << "multidegree (" << join(inv.multidegree) << ")  locally free " << (is_locally_free(desc) ? "yes" : "no")
      << " (defect " << defect << ")\n";
  if (!verdict) {
    out << "verdict undecided: " << undecided << '\n';
    return 0;
  }
  out << to_string(*verdict);
  if (graded) out << "; graded = " << detail::graded_text(*graded);
  if (point) out << "; moduli point = " << to_string(*point);
  out << '\n';
  return 0;
}

inline int cmd_graded(const Options& o, std::ostream& out) {
  const auto desc = io::descriptor_from_json(io::read_file(o.file));
  const auto factors = graded_degree0(desc);
  if (o.json) {
    json g = json::array();
    for (const auto& f : factors) g.push_back(io::to_json(f));
    out << json{{"graded", g}}.dump(2) << '\n';
  } else {
    out << detail::graded_text(factors) << '\n';
  }
  return 0;
}

inline int cmd_moduli_point(const Options& o, std::ostream& out) {
  const json input = io::read_file(o.file);
  if (o.inverse) {
    const auto p = io::moduli_point_from_json(input);
    if (o.polarization.empty()) throw InputError("--inverse needs --polarization to fix the curve");
    const auto desc = phi_bar(p, CycleCurve(parse_int_list(o.polarization)));
    out << io::to_json(desc).dump(o.json ? 2 : -1) << '\n';
    return 0;
  }
  const auto p = moduli_point(io::descriptor_from_json(input));
  if (o.json) out << io::to_json(p).dump(2) << '\n';
  else out << to_string(p) << '\n';
  return 0;
}

inline int cmd_cohomology(const Options& o, std::ostream& out) {
  const IntVec md = parse_int_list(o.multidegree);
  if (o.n && std::size_t(*o.n) != md.size()) throw InputError("--n does not match the multidegree length");
  Cohomology c;
  if (o.chain) {
    c = line_bundle_cohomology(ChainLineBundle{md}, ChainCurve(md.size()));
  } else {
    const Rational lambda = parse_rational(o.lambda);
    if (lambda.numerator() == 0) throw DomainError("gluing scalar must be nonzero");
    c = line_bundle_cohomology(CycleLineBundle{md, lambda}, CycleCurve::uniform(md.size()));
  }
  if (o.json) out << json{{"h0", c.h0}, {"h1", c.h1}}.dump(2) << '\n';
  else out << "h0=" << c.h0 << " h1=" << c.h1 << '\n';
  return 0;
}

inline int cmd_orbit(const Options& o, std::ostream& out) {
  if (!o.cap) throw InputError("orbit requires --cap");
  const auto g = orbit_graph({o.r, o.d}, o.h, *o.cap);
  if (o.dot) {
    out << orbit_dot(g);
  } else if (o.json) {
    json states = json::array();
    for (const auto& s : g.states) states.push_back(io::to_json(s));
    out << json{{"states", states}}.dump(2) << '\n';
  } else {
    for (const auto& s : g.states) out << s << '\n';
  }
  return 0;
}

inline int cmd_enumerate_stable(const Options& o, std::ostream& out) {
  if (o.polarization.empty()) throw InputError("enumerate-stable requires --polarization");
  const CycleCurve curve(parse_int_list(o.polarization));
  if (o.max_degree < 0 || o.max_cover < 1 || o.max_m < 1) throw InputError("enumeration bounds out of range");
  std::vector<IndecomposableSheaf> stable;
  for_each_indecomposable(curve.size(), EnumerationBounds{o.max_cover, o.max_m, curve.size(), o.max_degree},
                          [&](const IndecomposableSheaf& x) {
                            if (invariants_of(x, curve.size()).kclass.chi == 0 && degree0_stable(x, curve))
                              stable.push_back(x);
                          });
  if (o.json) {
    json arr = json::array();
    for (const auto& x : stable) {
      json j = io::to_json(x);
      j["r"] = hilbert_of(x, curve).r;
      arr.push_back(j);
    }
    json loci = json::array();
    for (Int r = 1; r <= curve.total_degree(); ++r) loci.push_back({{"r", r}, {"stable_locus", to_string(stable_locus(r, curve))}});
    out << json{{"curve", io::to_json(curve)}, {"stable", arr}, {"loci", loci}}.dump(2) << '\n';
    return 0;
  }
  out << "stable degree-zero indecomposables on " << detail::curve_name(curve) << ":\n";
  for (const auto& x : stable) out << "  r=" << hilbert_of(x, curve).r << "  " << detail::summand_text(x) << '\n';
  for (Int r = 1; r <= curve.total_degree(); ++r) out << "M^s(" << r << ",0): " << to_string(stable_locus(r, curve)) << '\n';
  return 0;
}

inline int cmd_selftest(std::ostream& out) { return acceptance::run_all(out) ? 0 : 1; }

/// Parses argv and dispatches; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Invariants, transforms and stability of sheaves on cycles of projective lines"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto add_class = [&](CLI::App* sub, bool need_cap) {
    sub->add_option("--r", o.r, "leading Hilbert coefficient")->required();
    sub->add_option("--d", o.d, "constant Hilbert coefficient")->required();
    sub->add_option("--h", o.h, "polarization degree")->required();
    auto* cap = sub->add_option("--cap", o.cap, "bound on explored leading coefficients");
    if (need_cap) cap->required();
  };

  auto* reduce_cmd = app.add_subcommand("reduce", "canonical representative of a moduli space M(r,d)");
  add_class(reduce_cmd, false);
  reduce_cmd->add_flag("--trace", o.trace, "print the transform sequence");

  auto* transform_cmd = app.add_subcommand("transform", "apply a transform sequence to a class");
  transform_cmd->add_option("--seq", o.sequence, "e.g. phi,psi,twist:1,-1")->required();
  transform_cmd->add_option("--r", o.r);
  transform_cmd->add_option("--d", o.d);
  transform_cmd->add_option("--h", o.h);
  transform_cmd->add_option("--multirank", o.multirank, "act on the K-class with this multirank");
  transform_cmd->add_option("--chi", o.chi);
  transform_cmd->add_option("--polarization", o.polarization);

  auto* classify_cmd = app.add_subcommand("classify", "invariants and stability of a descriptor file");
  classify_cmd->add_option("descriptor", o.file)->required();
  auto* graded_cmd = app.add_subcommand("graded", "Jordan-Hoelder graded object at degree zero");
  graded_cmd->add_option("descriptor", o.file)->required();
  auto* moduli_cmd = app.add_subcommand("moduli-point", "point of Sym^r E_1 of a degree-zero descriptor");
  moduli_cmd->add_option("file", o.file)->required();
  moduli_cmd->add_flag("--inverse", o.inverse, "read a moduli point and emit a representative descriptor");
  moduli_cmd->add_option("--polarization", o.polarization);

  auto* coh_cmd = app.add_subcommand("cohomology", "h0 and h1 of a line bundle on a cycle or chain");
  coh_cmd->add_option("--n", o.n);
  coh_cmd->add_option("--multidegree", o.multidegree)->required();
  coh_cmd->add_option("--lambda", o.lambda, "gluing scalar p/q at the closing node");
  coh_cmd->add_flag("--chain", o.chain);

  auto* orbit_cmd = app.add_subcommand("orbit", "reachable states of the move graph");
  add_class(orbit_cmd, true);
  orbit_cmd->add_flag("--dot", o.dot, "emit Graphviz DOT");

  auto* enum_cmd = app.add_subcommand("enumerate-stable", "stable degree-zero indecomposables and stable loci");
  enum_cmd->add_option("--polarization", o.polarization)->required();
  enum_cmd->add_option("--max-degree", o.max_degree);
  enum_cmd->add_option("--max-cover", o.max_cover);
  enum_cmd->add_option("--max-m", o.max_m);

  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");

  app.add_flag("--json", o.json, "machine-readable output");
  for (auto* sub : {reduce_cmd, transform_cmd, classify_cmd, graded_cmd, moduli_cmd, coh_cmd, orbit_cmd, enum_cmd})
    sub->add_flag("--json", o.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (reduce_cmd->parsed()) return cmd_reduce(o, out);
    if (transform_cmd->parsed()) return cmd_transform(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (graded_cmd->parsed()) return cmd_graded(o, out);
    if (moduli_cmd->parsed()) return cmd_moduli_point(o, out);
    if (coh_cmd->parsed()) return cmd_cohomology(o, out);
    if (orbit_cmd->parsed()) return cmd_orbit(o, out);
    if (enum_cmd->parsed()) return cmd_enumerate_stable(o, out);
    if (selftest_cmd->parsed()) return cmd_selftest(out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const boost::bad_rational& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

} // namespace cyclesheaf::cli
