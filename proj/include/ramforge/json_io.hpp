#pragma once

// JSON encodings of every document the command-line tool reads or writes.
// Integers are numbers below 2^53 and strings above; non-integral rationals
// are "n/d" strings. Readers also accept [n, d] pairs for rationals.

#include <json.hpp>

#include "ramforge/herbrand.hpp"
#include "ramforge/nottingham.hpp"
#include "ramforge/pdyn.hpp"
#include "ramforge/ramcheck.hpp"
#include "ramforge/truncation.hpp"

namespace ramforge {

using Json = nlohmann::ordered_json;

// Cap on coefficient-digits of any series read from JSON (trunc * w for
// finite-field series, trunc * prec for p-adic ones). Read from
// RAMFORGE_MAX_PRECISION, default 10^6.
long long max_precision();

Json int_to_json(const BigInt& x);
BigInt int_from_json(const Json& j);
long long_from_json(const Json& j);
Json rational_to_json(const Rational& x);
Rational rational_from_json(const Json& j);

Json field_to_json(const FiniteField& f);
FieldRef field_from_json(const Json& j);

// { "p", "w", "modulus" (extension fields only), "trunc", "coeffs" }
Json series_to_json(const TruncSeries& s);
TruncSeries series_from_json(const Json& j);

// { "p", "e", "upper" }
Json breaks_to_json(const BreakData& bd);
BreakData breaks_from_json(const Json& j);

// { "breakpoints", "slopes", "value_at_origin" }
Json pl_to_json(const PLFunc& f);
PLFunc pl_from_json(const Json& j);

Json verdict_to_json(const BreakVerdict& v);
Json depth_to_json(const Depth& d);

// { "p", "lower", "upper", "certified_to" }
Json ram_sequence_to_json(const RamSequence& rs);
RamSequence ram_sequence_from_json(const Json& j);
Json index_to_json(const IndexReport& r);

// { "object": {"field", "e"}, ... }
Json object_to_json(const TruncObject& o);
TruncObject object_from_json(const Json& j);
// { "src", "dst", "r", "res_twist", "eta", "mu" }; "mu" is optional on input
// and checked against eta when present.
Json morphism_to_json(const TruncMorphism& f);
TruncMorphism morphism_from_json(const Json& j);

// { "p", "e", "n", "upper", "a"?, "contained_in_zp"?, "m"? }
Json theorem_inputs_to_json(const TheoremInputs& ti);
TheoremInputs theorem_inputs_from_json(const Json& j);
Json condition_report_to_json(const ConditionReport& r);
Json shift_sum_to_json(const ShiftSum& s);

// { "p", "prec", "trunc", "coeffs", "certified"? }
Json padic_to_json(const PadicSeries& s);
PadicSeries padic_from_json(const Json& j);
Json polygon_to_json(const NewtonPolygon& np);
Json dynamics_to_json(const DynamicsReport& r);

}  // namespace ramforge
