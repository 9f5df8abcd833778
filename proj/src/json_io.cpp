#include "ramforge/json_io.hpp"

#include <cstdlib>

#include "ramforge/errors.hpp"

namespace ramforge {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

const Json* maybe(const Json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

int int_field(const Json& j, const char* key) {
  const long v = long_from_json(need(j, key));
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw InputError(std::string("field \"") + key + "\" is out of range");
  return static_cast<int>(v);
}

std::uint32_t prime_field(const Json& j) {
  const long p = long_from_json(need(j, "p"));
  if (p < 2 || p >= (1L << 31) || !is_prime(static_cast<std::uint64_t>(p))) throw InputError("p must be a prime below 2^31");
  return static_cast<std::uint32_t>(p);
}

void check_cap(long long digits) {
  if (digits > max_precision())
    throw InputError("requested " + std::to_string(digits) + " coefficient-digits exceeds RAMFORGE_MAX_PRECISION = " +
                     std::to_string(max_precision()));
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_to_json(x));
  return a;
}

template <class T, class F>
Json opt(const std::optional<T>& v, F f) {
  return v ? f(*v) : Json(nullptr);
}

Json plain(const auto& v) { return Json(v); }

// Coefficient list in the encoding of `field`; missing entries are zero.
TruncSeries coeffs_from_json(const FieldRef& field, int trunc, const Json& arr) {
  if (!arr.is_array()) throw InputError("\"coeffs\" must be an array");
  if (static_cast<int>(arr.size()) > trunc) throw InputError("more coefficients than the truncation allows");
  TruncSeries s(field, trunc);
  const int w = field->w();
  std::vector<std::int64_t> digits(w);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::fill(digits.begin(), digits.end(), 0);
    const Json& c = arr[i];
    if (c.is_array()) {
      if (static_cast<int>(c.size()) > w) throw InputError("coefficient vector longer than the field degree");
      for (std::size_t k = 0; k < c.size(); ++k) digits[k] = long_from_json(c[k]);
    } else {
      digits[0] = long_from_json(c);
    }
    auto raw = s.raw(static_cast<int>(i));
    const long p = field->p();
    for (int k = 0; k < w; ++k) raw[k] = static_cast<std::uint32_t>(((digits[k] % p) + p) % p);
  }
  return s;
}

Json coeffs_to_json(const TruncSeries& s) {
  int last = s.trunc();
  while (last > 0 && s.coeff_is_zero(last - 1)) --last;
  Json a = Json::array();
  for (int i = 0; i < last; ++i) {
    const auto raw = s.raw(i);
    if (s.w() == 1) {
      a.push_back(raw[0]);
    } else {
      Json c = Json::array();
      for (auto d : raw) c.push_back(d);
      a.push_back(std::move(c));
    }
  }
  return a;
}

Json depth_value(const Depth& d) {
  if (d.certified) return d.value;
  return Json{{"at_least", d.value}};
}

Json yhz_to_json(const YHZ& y) {
  return Json{{"y", rational_to_json(y.y)}, {"h", y.h}, {"z", rational_to_json(y.z)}};
}

}  // namespace

long long max_precision() {
  const char* env = std::getenv("RAMFORGE_MAX_PRECISION");
  if (!env || !*env) return 1000000;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (*end != '\0' || v <= 0) throw InputError("RAMFORGE_MAX_PRECISION must be a positive integer");
  return v;
}

Json int_to_json(const BigInt& x) {
  static const BigInt limit = BigInt(1) << 53;
  if (abs(x) < limit) return Json(static_cast<std::int64_t>(to_int64(x)));
  return Json(x.get_str());
}

BigInt int_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    BigInt x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("not an integer: \"" + j.get<std::string>() + "\"");
    return x;
  }
  throw InputError("expected an integer, got " + j.dump());
}

long long_from_json(const Json& j) { return static_cast<long>(to_int64(int_from_json(j))); }

Json rational_to_json(const Rational& x) {
  if (is_integer(x)) return int_to_json(x.get_num());
  return Json(to_string(x));
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_array()) {
    if (j.size() != 2) throw InputError("a rational pair must be [num, den]");
    const BigInt d = int_from_json(j[1]);
    if (d == 0) throw InputError("zero denominator");
    return make_rational(int_from_json(j[0]), d);
  }
  return Rational(int_from_json(j));
}

Json field_to_json(const FiniteField& f) {
  Json j{{"p", f.p()}, {"w", f.w()}};
  if (f.w() > 1) j["modulus"] = f.modulus();
  return j;
}

FieldRef field_from_json(const Json& j) {
  const std::uint32_t p = prime_field(j);
  const Json* w = maybe(j, "w");
  const Json* mod = maybe(j, "modulus");
  const long wv = w ? long_from_json(*w) : 1;
  if (wv < 1) throw InputError("w must be >= 1");
  if (wv == 1 && !mod) return FiniteField::prime(p);
  if (!mod) throw InputError("an extension field needs \"modulus\" (monic, low to high, length w + 1)");
  std::vector<std::uint32_t> m;
  for (const auto& c : *mod) {
    const long v = long_from_json(c);
    if (v < 0 || v >= static_cast<long>(p)) throw InputError("modulus coefficients must lie in [0, p)");
    m.push_back(static_cast<std::uint32_t>(v));
  }
  if (static_cast<long>(m.size()) != wv + 1) throw InputError("modulus must have length w + 1");
  return FiniteField::extension(p, std::move(m));
}

Json series_to_json(const TruncSeries& s) {
  Json j = field_to_json(*s.field());
  j["trunc"] = s.trunc();
  j["coeffs"] = coeffs_to_json(s);
  return j;
}

TruncSeries series_from_json(const Json& j) {
  const FieldRef f = field_from_json(j);
  const int trunc = int_field(j, "trunc");
  if (trunc < 1) throw InputError("trunc must be >= 1");
  check_cap(static_cast<long long>(trunc) * f->w());
  return coeffs_from_json(f, trunc, need(j, "coeffs"));
}

Json breaks_to_json(const BreakData& bd) {
  return Json{{"p", bd.p}, {"e", rational_to_json(bd.e)}, {"upper", rationals_to_json(bd.upper)}};
}

BreakData breaks_from_json(const Json& j) {
  BreakData bd;
  bd.p = prime_field(j);
  bd.e = rational_from_json(need(j, "e"));
  bd.upper = rationals_from_json(need(j, "upper"));
  return bd;
}

Json pl_to_json(const PLFunc& f) {
  return Json{{"breakpoints", rationals_to_json(f.breakpoints())},
              {"slopes", rationals_to_json(f.slopes())},
              {"value_at_origin", rational_to_json(f.value_at_origin())}};
}

PLFunc pl_from_json(const Json& j) {
  return PLFunc(rationals_from_json(need(j, "breakpoints")), rationals_from_json(need(j, "slopes")),
                rational_from_json(need(j, "value_at_origin")));
}

Json verdict_to_json(const BreakVerdict& v) {
  Json j{{"valid", v.valid}};
  if (!v.valid) {
    j["rule"] = v.rule;
    j["index"] = v.index;
    j["message"] = v.message;
  }
  return j;
}

Json depth_to_json(const Depth& d) {
  if (d.certified) return Json{{"depth", d.value}};
  return Json{{"depth", nullptr}, {"at_least", d.value}};
}

Json ram_sequence_to_json(const RamSequence& rs) {
  return Json{{"p", rs.p}, {"lower", rs.lower}, {"upper", rationals_to_json(rs.upper)}, {"certified_to", rs.certified_to}};
}

RamSequence ram_sequence_from_json(const Json& j) {
  RamSequence rs;
  rs.p = prime_field(j);
  for (const auto& x : need(j, "lower")) rs.lower.push_back(long_from_json(x));
  if (const Json* u = maybe(j, "upper")) rs.upper = rationals_from_json(*u);
  else rs.upper = upper_from_lower(rs.p, rs.lower);
  if (const Json* c = maybe(j, "certified_to")) rs.certified_to = static_cast<int>(long_from_json(*c));
  return rs;
}

Json index_to_json(const IndexReport& r) {
  return Json{{"status", to_string(r.status)},
              {"d", opt(r.d, rational_to_json)},
              {"stabilized_at", r.stabilized_at < 0 ? Json(nullptr) : Json(r.stabilized_at)},
              {"n_max", r.n_max},
              {"evidence", rationals_to_json(r.evidence)}};
}

Json object_to_json(const TruncObject& o) { return Json{{"field", field_to_json(*o.field)}, {"e", o.e}}; }

TruncObject object_from_json(const Json& j) { return make_object(field_from_json(need(j, "field")), int_field(j, "e")); }

Json morphism_to_json(const TruncMorphism& f) {
  Json j;
  if (f.src().field->same_as(*f.dst().field)) {
    j["field"] = field_to_json(*f.src().field);
    j["src"] = f.src().e;
    j["dst"] = f.dst().e;
  } else {
    j["src"] = object_to_json(f.src());
    j["dst"] = object_to_json(f.dst());
  }
  j["r"] = f.r();
  j["res_twist"] = f.res_twist();
  j["eta"] = coeffs_to_json(f.eta_coeff());
  j["mu"] = coeffs_to_json(f.mu_image());
  return j;
}

TruncMorphism morphism_from_json(const Json& j) {
  auto side = [&](const char* key) {
    const Json& s = need(j, key);
    if (s.is_object()) return object_from_json(s);
    return make_object(field_from_json(need(j, "field")), static_cast<int>(long_from_json(s)));
  };
  const TruncObject src = side("src"), dst = side("dst");
  const int r = int_field(j, "r");
  const long twist = maybe(j, "res_twist") ? long_from_json(j["res_twist"]) : 0;
  const TruncSeries eta = coeffs_from_json(dst.field, dst.e, need(j, "eta"));
  if (const Json* mu = maybe(j, "mu"))
    return TruncMorphism(src, dst, r, twist, coeffs_from_json(dst.field, dst.e, *mu), eta);
  return TruncMorphism::from_eta(src, dst, r, twist, eta);
}

Json theorem_inputs_to_json(const TheoremInputs& ti) {
  Json j{{"p", ti.p}, {"e", ti.e}, {"n", ti.n}, {"upper", rationals_to_json(ti.bd.upper)}};
  j["a"] = opt(ti.a, int_to_json);
  j["contained_in_zp"] = ti.contained_in_zp;
  j["m"] = opt(ti.m, plain<int>);
  return j;
}

TheoremInputs theorem_inputs_from_json(const Json& j) {
  TheoremInputs ti;
  ti.p = long_from_json(need(j, "p"));
  if (ti.p < 2 || ti.p >= (1L << 31)) throw InputError("p must be a prime below 2^31");
  ti.e = long_from_json(need(j, "e"));
  ti.bd.p = static_cast<std::uint32_t>(ti.p);
  ti.bd.e = Rational(ti.e);
  ti.bd.upper = rationals_from_json(need(j, "upper"));
  ti.n = maybe(j, "n") ? int_field(j, "n") : static_cast<int>(ti.bd.upper.size());
  if (const Json* a = maybe(j, "a")) ti.a = int_from_json(*a);
  if (const Json* z = maybe(j, "contained_in_zp")) {
    if (!z->is_boolean()) throw InputError("contained_in_zp must be a boolean");
    ti.contained_in_zp = z->get<bool>();
  }
  if (maybe(j, "m")) ti.m = int_field(j, "m");
  return ti;
}

Json condition_report_to_json(const ConditionReport& r) {
  Json j{{"path", r.path}, {"applicable", r.applicable}, {"note", r.note}, {"n", r.n}, {"m", r.m}};
  j["m0"] = opt(r.m0, plain<int>);
  j["yhz"] = yhz_to_json(r.yhz);
  j["tame"] = Json{{"p", r.tp.p}, {"e", r.tp.e}, {"s", r.tp.s}, {"e0", r.tp.e0}, {"w", opt(r.tp.w, plain<long>)}};
  j["q"] = rational_to_json(r.q);
  j["r"] = rational_to_json(r.r);
  j["a"] = int_to_json(r.a);
  j["t_range"] = r.t_range;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"t", c.t},
                          {"psi_ML_a", rational_to_json(c.psi_ml)},
                          {"cond1_rhs", rational_to_json(c.cond1_rhs)},
                          {"cond1", c.cond1},
                          {"phi_LK_a", rational_to_json(c.phi_LK_a)},
                          {"phi_EK_r", rational_to_json(c.phi_EK_r)},
                          {"cond2", c.cond2},
                          {"a", rational_to_json(c.a)},
                          {"psi_LK_u", rational_to_json(c.psi_LK_u)},
                          {"cond3", c.cond3}});
  }
  j["checks"] = std::move(checks);
  j["all_pass"] = r.all_pass;
  j["guarantee"] = to_string(r.guarantee);
  j["guarantee_exponent"] = r.guarantee_exponent;
  if (r.path == "proot") {
    j["l"] = opt(r.l, int_to_json);
    j["sub_upper"] = rationals_to_json(r.sub_upper);
  }
  if (!r.fallback.empty()) j["fallback"] = condition_report_to_json(r.fallback.front());
  return j;
}

Json shift_sum_to_json(const ShiftSum& s) {
  return Json{{"sum", int_to_json(s.sum)}, {"expected", int_to_json(s.expected)}, {"ok", s.ok}};
}

Json padic_to_json(const PadicSeries& s) {
  Json j{{"p", s.p()}, {"prec", s.prec()}, {"trunc", s.trunc()}};
  int last = s.trunc();
  while (last > 0 && s.coeff(last - 1) == 0 && s.certified(last - 1) == s.prec()) --last;
  Json c = Json::array();
  for (int i = 0; i < last; ++i) c.push_back(int_to_json(BigInt(std::to_string(s.coeff(i)))));
  j["coeffs"] = std::move(c);
  if (!s.fully_certified()) j["certified"] = s.certified_digits();
  return j;
}

PadicSeries padic_from_json(const Json& j) {
  const std::uint32_t p = prime_field(j);
  const int prec = int_field(j, "prec"), trunc = int_field(j, "trunc");
  if (prec < 1 || trunc < 1) throw InputError("prec and trunc must be >= 1");
  check_cap(static_cast<long long>(prec) * trunc);
  const Json& arr = need(j, "coeffs");
  if (!arr.is_array()) throw InputError("\"coeffs\" must be an array");
  if (static_cast<int>(arr.size()) > trunc) throw InputError("more coefficients than the truncation allows");
  std::vector<BigInt> c;
  for (const auto& x : arr) c.push_back(int_from_json(x));
  PadicSeries s = PadicSeries::from_coeffs(p, prec, trunc, c);
  if (const Json* cert = maybe(j, "certified")) {
    std::vector<int> d;
    for (const auto& x : *cert) d.push_back(static_cast<int>(long_from_json(x)));
    s.set_certified(std::move(d));
  }
  return s;
}

Json polygon_to_json(const NewtonPolygon& np) {
  Json v = Json::array();
  for (const auto& [x, y] : np.vertices) v.push_back(Json::array({x, y}));
  Json segs = Json::array();
  for (const auto& s : np.segments)
    segs.push_back(Json{{"slope", rational_to_json(s.slope)}, {"length", s.length},
                        {"root_valuation", rational_to_json(s.root_valuation())}});
  return Json{{"degree", np.degree}, {"vertices", std::move(v)}, {"segments", std::move(segs)}, {"flagged", np.flagged}};
}

Json dynamics_to_json(const DynamicsReport& r) {
  Json j{{"p", r.p}, {"prec", r.prec}, {"trunc", r.trunc}, {"n_max", r.n_max}};
  Json depths = Json::array();
  for (const auto& d : r.depths) depths.push_back(depth_value(d));
  j["depths"] = std::move(depths);
  j["lower"] = r.lower;
  j["upper"] = rationals_to_json(r.upper);
  if (!r.upper_note.empty()) j["upper_note"] = r.upper_note;
  j["index"] = opt(r.index, index_to_json);
  j["fixed_point_wd0"] = opt(r.fixed_point_wd0, plain<int>);
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json lv{{"n", l.n}, {"qn_available", l.qn_available}};
    if (!l.qn_note.empty()) lv["qn_note"] = l.qn_note;
    lv["wd"] = opt(l.wd, plain<int>);
    lv["expected_wd"] = opt(l.expected_wd, plain<long>);
    lv["wd_matches"] = opt(l.wd_matches, plain<bool>);
    lv["polygon"] = opt(l.polygon, polygon_to_json);
    if (!l.polygon_note.empty()) lv["polygon_note"] = l.polygon_note;
    lv["predicted_valuation"] = opt(l.predicted_valuation, rational_to_json);
    lv["single_segment"] = opt(l.single_segment, plain<bool>);
    lv["matches_prediction"] = opt(l.matches_prediction, plain<bool>);
    lv["constant_valuation"] = opt(l.constant_valuation, plain<int>);
    lv["expected_constant_valuation"] = l.expected_constant_valuation;
    lv["constant_matches"] = opt(l.constant_matches, plain<bool>);
    lv["valuation_sum"] = opt(l.valuation_sum, rational_to_json);
    lv["fixed_point_wd"] = opt(l.fixed_point_wd, plain<int>);
    lv["fixed_points_match"] = opt(l.fixed_points_match, plain<bool>);
    levels.push_back(std::move(lv));
  }
  j["levels"] = std::move(levels);
  Json rn = Json::array();
  for (const auto& v : r.rn) {
    rn.push_back(Json{{"n", v.n}, {"i_n", v.i_n}, {"r_n", int_to_json(v.r_n)}, {"snbound", opt(v.snbound, plain<bool>)}});
  }
  j["rn"] = std::move(rn);
  Json rc = Json::array();
  for (bool b : r.reduction_commutes) rc.push_back(b);
  j["reduction_commutes"] = std::move(rc);
  j["markers"] = r.markers;
  return j;
}

}  // namespace ramforge
