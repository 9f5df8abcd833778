#include "ramforge/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "ramforge/errors.hpp"
#include "ramforge/json_io.hpp"

namespace ramforge {

namespace {

// A file path, "-" for standard input, or an inline JSON document.
Json load_json(const std::string& src, const char* what) {
  if (src.empty()) throw InputError(std::string("missing ") + what);
  const auto first = src.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && (src[first] == '{' || src[first] == '[')) {
    text = src;
  } else if (src == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(src);
    if (!in) throw InputError("cannot open " + std::string(what) + " file " + src);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& ex) {
    throw InputError(std::string("malformed JSON in ") + what + ": " + ex.what());
  }
}

std::vector<Rational> parse_list(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

std::vector<long> parse_int_list(const std::vector<std::string>& items) {
  std::vector<long> out;
  for (const auto& r : parse_list(items)) {
    if (!is_integer(r)) throw InputError("expected integers, got " + to_string(r));
    out.push_back(static_cast<long>(to_int64(r)));
  }
  return out;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Json& doc, const std::string& format, std::ostream& out) {
  if (format == "table") flatten(doc, "", out);
  else out << doc.dump() << "\n";
}

Json error_doc(const Error& ex) {
  Json j{{"error", ex.what()}, {"reason", ex.reason()}};
  if (auto* pe = dynamic_cast<const PrecisionError*>(&ex)) {
    if (!pe->quantity().empty()) j["quantity"] = pe->quantity();
    if (pe->level() >= 0) j["level"] = pe->level();
  }
  if (auto* sv = dynamic_cast<const SenViolation*>(&ex)) j["level"] = sv->level();
  return j;
}

// PLFunc document, or BreakData (its psi, or phi when `phi` is set).
PLFunc pl_or_breaks(const Json& j, bool phi) {
  if (j.contains("breakpoints")) return pl_from_json(j);
  const BreakData bd = breaks_from_json(j);
  return phi ? phi_from_breaks(bd) : psi_from_breaks(bd);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ramification of Z_p-actions, Hasse-Herbrand functions and periodic points of p-adic series", "ramforge"};
  app.fallthrough();
  app.require_subcommand(1, 1);

  std::string format = "json";
  bool strict = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--strict", strict, "Exit 3 when a report contains uncertified quantities");

  std::function<Json()> action;
  bool strict_failure = false;
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, std::function<Json()> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  // ---- series
  std::string s_in, s_g;
  std::optional<std::uint64_t> s_k;
  int s_n = 1;
  CLI::App* series = app.add_subcommand("series", "Truncated series over F_{p^w}");
  series->require_subcommand(1, 1);
  series->add_option("-i,--input,--series", s_in, "Series JSON (file, - or inline)");
  series->add_option("--g", s_g, "Second series for compose (inner)");
  series->add_option("--k", s_k, "Composition power for iterate");
  series->add_option("--n", s_n, "iterate: compute g^{p^n} (default 1)");
  leaf(series, "compose", "f(g(X)) for f = --input, g = --g", [&] {
    return series_to_json(compose(series_from_json(load_json(s_in, "series")), series_from_json(load_json(s_g, "--g series"))));
  });
  leaf(series, "iterate", "g^{p^n} (or g^k with --k)", [&] {
    const TruncSeries g = series_from_json(load_json(s_in, "series"));
    if (s_k) return series_to_json(compose_power(g, *s_k));
    if (s_n < 0) throw InputError("--n must be >= 0");
    return series_to_json(p_iterate(g, s_n));
  });
  leaf(series, "depth", "Depth of g", [&] { return depth_to_json(depth(series_from_json(load_json(s_in, "series")))); });
  leaf(series, "inverse", "Compositional inverse", [&] {
    return series_to_json(compositional_inverse(series_from_json(load_json(s_in, "series"))));
  });

  // ---- breaks
  std::string b_in;
  std::optional<long> b_p;
  std::optional<std::string> b_e;
  std::vector<std::string> b_lower, b_upper;
  int b_levels = 2;
  CLI::App* breaks = app.add_subcommand("breaks", "Ramification breaks");
  breaks->require_subcommand(1, 1);
  breaks->add_option("-i,--input", b_in, "Series, RamSequence or BreakData JSON");
  breaks->add_option("--p", b_p, "Prime");
  breaks->add_option("--e", b_e, "Ramification index of the base");
  breaks->add_option("--lower", b_lower, "Lower breaks, comma separated")->delimiter(',');
  breaks->add_option("--upper", b_upper, "Upper breaks, comma separated")->delimiter(',');
  breaks->add_option("--levels", b_levels, "Number of p-power levels beyond 0 (lower)");
  auto need_p = [&]() -> std::uint32_t {
    if (!b_p) throw InputError("--p is required");
    if (*b_p < 2 || *b_p >= (1L << 31) || !is_prime(static_cast<std::uint64_t>(*b_p))) throw InputError("--p must be a prime below 2^31");
    return static_cast<std::uint32_t>(*b_p);
  };
  auto sequence_input = [&]() -> RamSequence {
    if (!b_in.empty()) return ram_sequence_from_json(load_json(b_in, "ramification sequence"));
    RamSequence rs;
    rs.p = need_p();
    rs.lower = parse_int_list(b_lower);
    return rs;
  };
  leaf(breaks, "lower", "Certified lower and upper breaks of a series", [&] {
    return ram_sequence_to_json(ram_sequence(series_from_json(load_json(b_in, "series")), b_levels));
  });
  leaf(breaks, "upper", "Upper breaks from lower breaks", [&] {
    const RamSequence rs = sequence_input();
    Json a = Json::array();
    for (const auto& u : upper_from_lower(rs.p, rs.lower)) a.push_back(rational_to_json(u));
    return Json{{"upper", a}};
  });
  leaf(breaks, "index", "Index d from the upper breaks", [&] {
    std::uint32_t p;
    std::vector<Rational> upper;
    if (!b_upper.empty()) {
      p = need_p();
      upper = parse_list(b_upper);
    } else {
      const RamSequence rs = sequence_input();
      p = rs.p;
      upper = b_in.empty() ? upper_from_lower(rs.p, rs.lower) : rs.upper;
    }
    return index_to_json(index_of(p, upper));
  });
  leaf(breaks, "validate", "Check upper breaks against the admissibility rules", [&] {
    BreakData bd;
    if (!b_in.empty()) {
      bd = breaks_from_json(load_json(b_in, "break data"));
    } else {
      bd.p = need_p();
      if (!b_e) throw InputError("--e is required");
      bd.e = parse_rational(*b_e);
      bd.upper = parse_list(b_upper);
    }
    return verdict_to_json(validate_breaks(bd));
  });

  // ---- herbrand
  std::string h_in, h_g, h_x;
  bool h_phi = false;
  CLI::App* herbrand = app.add_subcommand("herbrand", "Hasse-Herbrand functions");
  herbrand->require_subcommand(1, 1);
  herbrand->add_option("-i,--input", h_in, "BreakData or PLFunc JSON");
  herbrand->add_option("--g", h_g, "Inner function for compose");
  herbrand->add_option("--x", h_x, "Evaluation point (integer or n/d)");
  herbrand->add_flag("--phi", h_phi, "Use phi instead of psi when the input is BreakData");
  leaf(herbrand, "psi", "psi_{L/K} from BreakData", [&] { return pl_to_json(psi_from_breaks(breaks_from_json(load_json(h_in, "break data")))); });
  leaf(herbrand, "phi", "phi_{L/K} from BreakData", [&] { return pl_to_json(phi_from_breaks(breaks_from_json(load_json(h_in, "break data")))); });
  leaf(herbrand, "eval", "Evaluate at --x", [&] {
    if (h_x.empty()) throw InputError("--x is required");
    const Rational x = parse_rational(h_x);
    return Json{{"x", rational_to_json(x)}, {"value", rational_to_json(pl_or_breaks(load_json(h_in, "function"), h_phi)(x))}};
  });
  leaf(herbrand, "compose", "f o g for f = --input, g = --g", [&] {
    return pl_to_json(pl_compose(pl_or_breaks(load_json(h_in, "function"), h_phi), pl_or_breaks(load_json(h_g, "--g function"), h_phi)));
  });

  // ---- trunc
  std::string t_in, t_g;
  int t_c = 1;
  CLI::App* trunc = app.add_subcommand("trunc", "Morphisms of truncated valuation rings");
  trunc->require_subcommand(1, 1);
  trunc->add_option("-i,--input", t_in, "Morphism JSON");
  trunc->add_option("--g", t_g, "Second morphism");
  trunc->add_option("--c", t_c, "Level c of the relation R(c)");
  leaf(trunc, "compose", "g o f for f = --input, g = --g", [&] {
    return morphism_to_json(compose_morphism(morphism_from_json(load_json(t_g, "--g morphism")), morphism_from_json(load_json(t_in, "morphism"))));
  });
  leaf(trunc, "extension", "Extension / isomorphism test", [&] {
    const TruncMorphism f = morphism_from_json(load_json(t_in, "morphism"));
    return Json{{"extension", is_extension(f)}, {"isomorphism", is_isomorphism(f)}};
  });
  leaf(trunc, "requiv", "R(c)-equivalence of --input and --g", [&] {
    const TruncMorphism f = morphism_from_json(load_json(t_in, "morphism"));
    const TruncMorphism g = morphism_from_json(load_json(t_g, "--g morphism"));
    return Json{{"c", t_c}, {"equivalent", r_equivalent(f, g, t_c)}};
  });

  // ---- check
  std::string c_in;
  std::optional<long> c_p, c_e, c_t;
  int c_m = 1;
  CLI::App* check = app.add_subcommand("check", "Conditions bounding [L cap omega(L') : K] from below");
  check->require_subcommand(0, 1);
  check->add_option("-i,--input", c_in, "TheoremInputs JSON");
  check->add_option("--p", c_p, "Prime (fshift)");
  check->add_option("--e", c_e, "Tame ramification index (fshift)");
  check->add_option("--m", c_m, "m (fshift)");
  check->add_option("--t", c_t, "Evaluate f(t) at this t (fshift)");
  auto main_check = [&] { return condition_report_to_json(check_conditions(theorem_inputs_from_json(load_json(c_in, "theorem inputs")))); };
  check->callback([&] {
    if (!action) action = main_check;
  });
  leaf(check, "main", "Main conditions with proot fallback", main_check);
  leaf(check, "proot", "Conditions for the p-th root variant", [&] {
    return condition_report_to_json(proot_check(theorem_inputs_from_json(load_json(c_in, "theorem inputs"))));
  });
  leaf(check, "m0", "Largest admissible m", [&] {
    const auto m = m0(theorem_inputs_from_json(load_json(c_in, "theorem inputs")));
    return Json{{"m0", m ? Json(*m) : Json(nullptr)}};
  });
  leaf(check, "fshift", "f(t) and its sum over one period", [&] {
    long p, e;
    if (!c_in.empty()) {
      const Json j = load_json(c_in, "tame parameters");
      p = long_from_json(j.at("p"));
      e = long_from_json(j.at("e"));
      if (j.contains("m")) c_m = static_cast<int>(long_from_json(j["m"]));
    } else {
      if (!c_p || !c_e) throw InputError("--p and --e are required");
      p = *c_p;
      e = *c_e;
    }
    const TameParams tp = tame_params(p, e);
    Json j{{"p", tp.p}, {"e", tp.e}, {"s", tp.s}, {"e0", tp.e0}, {"m", c_m}};
    if (c_t) j["f"] = int_to_json(f_shift(tp, c_m, BigInt(*c_t)));
    j["period_sum"] = shift_sum_to_json(f_shift_sum_check(tp, c_m));
    return j;
  });

  // ---- dynamics
  std::string d_in;
  int d_levels = 2, d_n = 1;
  std::optional<int> d_degree;
  CLI::App* dynamics = app.add_subcommand("dynamics", "Periodic points of u(X) over Z_p");
  dynamics->require_subcommand(0, 1);
  dynamics->add_option("-i,--input,--series", d_in, "PadicSeries JSON");
  dynamics->add_option("--levels", d_levels, "Highest level n analysed");
  dynamics->add_option("--n", d_n, "Level of q_n (qn)");
  dynamics->add_option("--degree", d_degree, "Polygon degree (newton; default Weierstrass degree)");
  auto analyze_action = [&] {
    const DynamicsReport rep = analyze(padic_from_json(load_json(d_in, "series")), d_levels);
    if (strict && !rep.markers.empty()) strict_failure = true;
    return dynamics_to_json(rep);
  };
  dynamics->callback([&] {
    if (!action) action = analyze_action;
  });
  leaf(dynamics, "analyze", "Full report up to --levels", analyze_action);
  leaf(dynamics, "newton", "Newton polygon of a p-adic series", [&] {
    const PadicSeries f = padic_from_json(load_json(d_in, "series"));
    int deg;
    if (d_degree) {
      deg = *d_degree;
    } else {
      const auto w = weierstrass_degree(f);
      if (!w) throw PrecisionError("Weierstrass degree not determined; pass --degree", "wd");
      deg = *w;
    }
    return polygon_to_json(newton_polygon(f, deg));
  });
  leaf(dynamics, "qn", "q_n = (u^{p^n} - X)/(u^{p^{n-1}} - X), both divided by X", [&] {
    return padic_to_json(qn_divide(padic_from_json(load_json(d_in, "series")), d_n));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) return app.exit(ex, out, err);
    emit(Json{{"error", ex.what()}, {"reason", "usage"}}, "json", out);
    return exit_input;
  }

  try {
    if (!action) throw InputError("no subcommand given");
    const Json doc = action();
    emit(doc, format, out);
    return strict_failure ? exit_precision : exit_ok;
  } catch (const PrecisionError& ex) {
    emit(error_doc(ex), "json", out);
    return exit_precision;
  } catch (const InputError& ex) {
    emit(error_doc(ex), "json", out);
    return exit_input;
  } catch (const Json::exception& ex) {
    emit(Json{{"error", ex.what()}, {"reason", "invalid_input"}}, "json", out);
    return exit_input;
  } catch (const std::exception& ex) {
    emit(Json{{"error", ex.what()}, {"reason", "internal"}}, "json", out);
    return exit_internal;
  }
}

}  // namespace ramforge
