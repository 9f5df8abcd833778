#pragma once

// Exact piecewise-linear functions and the Hasse-Herbrand functions of cyclic
// p-power extensions described by their upper ramification breaks.
//
// Domains start at 0 (group-side convention). The segment on [-1, 0] has
// slope 1 for every function used here and is not represented; evaluation
// left of the first breakpoint extends the first segment.

#include <cstdint>
#include <string>
#include <vector>

#include "ramforge/rational.hpp"

namespace ramforge {

class PLFunc {
 public:
  // breakpoints x_0 < x_1 < ... ; slopes[i] applies on [x_i, x_{i+1}] and the
  // last slope applies on [x_last, inf). All slopes must be positive.
  PLFunc(std::vector<Rational> breakpoints, std::vector<Rational> slopes, Rational value_at_origin);

  static PLFunc identity();
  static PLFunc linear(const Rational& slope);  // x -> slope * x

  const std::vector<Rational>& breakpoints() const noexcept { return breaks_; }
  const std::vector<Rational>& slopes() const noexcept { return slopes_; }
  const Rational& value_at_origin() const noexcept { return v0_; }

  Rational operator()(const Rational& x) const;
  PLFunc inverse() const;
  // Merges adjacent segments of equal slope.
  PLFunc simplified() const;

  bool is_convex() const;
  bool is_concave() const;

  // Equality as functions on [x_0, inf) (after simplification).
  bool operator==(const PLFunc& o) const;

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> slopes_;
  Rational v0_;
};

// f o g.
PLFunc pl_compose(const PLFunc& f, const PLFunc& g);

struct BreakData {
  std::uint32_t p = 0;
  Rational e;
  std::vector<Rational> upper;
};

PLFunc psi_from_breaks(const BreakData& bd);
PLFunc phi_from_breaks(const BreakData& bd);

// Psi of the degree-p step L_j/L_{j-1} of the tower, as a function of the
// L_{j-1}-lower numbering: identity up to psi_{L_{j-1}/K}(b_j), slope p after.
PLFunc tower_step_psi(const BreakData& bd, int j);

// Tame base change: phi_{L/K}(x) = x/e for x > 0, so psi_{L/K}(x) = e x.
PLFunc tame_psi(const Rational& e);
PLFunc tame_phi(const Rational& e);

struct BreakVerdict {
  bool valid = true;
  std::string rule;  // "a", "b", "c", "order", "positive" or "" when valid
  int index = -1;    // i of the offending b_i (or b_{i+1} for order)
  std::string message;
};

BreakVerdict validate_breaks(const BreakData& bd);
void require_valid(const BreakData& bd);

struct YHZ {
  Rational y;
  int h = 0;
  Rational z;
};

YHZ extract_yhz(const BreakData& bd);
Rational lower_break_formula(const BreakData& bd, const YHZ& yhz, int i);
// psi_{L/K}((i+1)e) by the closed form; the valid range of i depends on whether y <= e.
Rational psi_ie_formula(const BreakData& bd, const YHZ& yhz, int i);
int psi_ie_max_index(const BreakData& bd, const YHZ& yhz);

}  // namespace ramforge
