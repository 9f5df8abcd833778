#pragma once

// Depths, p-power iterates and ramification break sequences of elements of
// the substitution group A(k) of series c_1 X + c_2 X^2 + ... with c_1 != 0.

#include <optional>
#include <string>
#include <vector>

#include "ramforge/errors.hpp"
#include "ramforge/gfseries.hpp"
#include "ramforge/rational.hpp"

namespace ramforge {

// Upper breaks that are not integers cannot come from a Z_p-action.
class SenViolation : public InputError {
 public:
  SenViolation(const std::string& what, int level) : InputError(what), level_(level) {}
  const char* reason() const noexcept override { return "sen_violation"; }
  int level() const noexcept { return level_; }

 private:
  int level_;
};

// Depth of g, i.e. the degree of the leading term of (g - X)/X. When every
// known coefficient of (g - X)/X vanishes only a lower bound N - 1 is known;
// this is the truncated picture of the identity (depth infinity).
struct Depth {
  bool certified = false;
  long value = 0;  // the depth, or the lower bound N - 1

  static Depth exact(long v) { return {true, v}; }
  static Depth at_least(long v) { return {false, v}; }
  bool operator==(const Depth&) const = default;
};

std::string to_string(const Depth& d);

struct RamSequence {
  std::uint32_t p = 0;
  std::vector<long> lower;
  std::vector<Rational> upper;
  int certified_to = 0;  // the truncation N the lower breaks were certified at
};

enum class IndexStatus { determined, candidate, undetermined };

struct IndexReport {
  IndexStatus status = IndexStatus::undetermined;
  std::optional<Rational> d;
  int stabilized_at = -1;
  int n_max = 0;
  std::vector<Rational> evidence;  // b_n - b_{n-1}, n >= 1
};

std::string to_string(IndexStatus s);

void require_in_A(const TruncSeries& g);
void require_in_N(const TruncSeries& g);

Depth depth(const TruncSeries& g);
TruncSeries p_iterate(const TruncSeries& g, int n);

// Lower breaks i_0..i_{n_max}; throws PrecisionError naming the first level
// whose depth is not certified at the input truncation.
std::vector<long> lower_breaks(const TruncSeries& g, int n_max);
// Same, but returns the certified prefix instead of throwing.
std::vector<long> certified_lower_breaks(const TruncSeries& g, int n_max);

std::vector<Rational> upper_from_lower(std::uint32_t p, const std::vector<long>& lower);
RamSequence ram_sequence(const TruncSeries& g, int n_max);

IndexReport index_of(std::uint32_t p, const std::vector<Rational>& upper);

TruncSeries unit_part(const TruncSeries& g);
bool series_agree_mod(const TruncSeries& a, const TruncSeries& b, int m);
bool subgroup_equal_mod(const TruncSeries& g, const TruncSeries& g2, int m);
TruncSeries conjugate(const TruncSeries& h, const TruncSeries& g);

}  // namespace ramforge
