#pragma once

// Closed-form quantities for comparing two cyclic p^n-extensions through the
// series h^sigma, and the inequalities that certify [L cap omega(L') : K] >= p^m.

#include <optional>
#include <string>
#include <vector>

#include "ramforge/herbrand.hpp"

namespace ramforge {

struct TameParams {
  long p = 0;
  long e = 0;
  long s = 0;   // (p-1)/gcd(e, p-1)
  long e0 = 0;  // e/gcd(e, p-1)
  std::optional<long> w;  // residue degree of K(zeta)/K, informational only
};

TameParams tame_params(long p, long e);

BigInt f_shift(const TameParams& tp, int m, const BigInt& t);

struct ShiftSum {
  BigInt sum;
  BigInt expected;  // (m+1) e_0 (p^{m+1} - p^m)
  bool ok = false;
};
ShiftSum f_shift_sum_check(const TameParams& tp, int m);

BigInt g_floor(const TameParams& tp, int m, const BigInt& n_val);

struct TheoremInputs {
  long p = 0;
  long e = 0;
  int n = 0;
  BreakData bd;
  std::optional<BigInt> a;  // defaults to e p^n
  bool contained_in_zp = false;
  std::optional<int> m;     // defaults to m_0
};

// Validates the hypotheses and fills in the default cutoff a = e p^n.
TheoremInputs normalized(TheoremInputs ti);

// Largest m >= 0 with psi_{L/K}((m + 1 + 1/(p-1)) e) < e p^n, if any.
std::optional<int> m0(const TheoremInputs& ti);

struct QR {
  Rational q, r;
};
QR q_r_values(const TameParams& tp, const YHZ& yhz, const Rational& e, int m);

// Lower bound for psi_{M/L}(a) obtained by replacing the upper breaks beta_i of
// M/L (i = m-t .. m-1) with their upper bounds psi_{L/K}((i+1)e).
Rational psi_ML_lower_bound(const TheoremInputs& ti, const TameParams& tp, const YHZ& yhz, int m, int t);
// The closed-form bound obtained by substituting psi((i+1)e) into the sum
// (valid when a >= psi((m)e)); psi_ML_lower_bound never falls below it there.
Rational psi_ML_closed_form(const TheoremInputs& ti, const TameParams& tp, const YHZ& yhz, int m, int t);

struct TCheck {
  int t = 0;
  Rational psi_ml;        // lower bound for psi_{M/L}(a)
  Rational cond1_rhs;     // p^{n+t-m} q
  bool cond1 = false;
  Rational phi_LK_a;      // phi_{L/K}(a)
  Rational phi_EK_r;      // phi_{E/K}(r)
  bool cond2 = false;
  Rational a;
  Rational psi_LK_u;      // psi_{L/K}(u_{L/K})
  bool cond3 = false;
  bool all() const { return cond1 && cond2 && cond3; }
};

enum class Guarantee { none, main, proot };
std::string to_string(Guarantee g);

struct ConditionReport {
  std::string path;  // "main" or "proot"
  bool applicable = true;
  std::string note;
  int n = 0;
  int m = 0;
  std::optional<int> m0;
  YHZ yhz;
  TameParams tp;
  Rational q, r;
  BigInt a;
  std::vector<int> t_range;
  std::vector<TCheck> checks;
  bool all_pass = false;
  Guarantee guarantee = Guarantee::none;
  int guarantee_exponent = 0;  // [L cap omega(L') : K] >= p^guarantee_exponent
  // proot path only
  std::optional<BigInt> l;
  std::vector<Rational> sub_upper;
  // the proot report when the main path was downgraded
  std::vector<ConditionReport> fallback;
};

ConditionReport check_conditions(const TheoremInputs& ti);
ConditionReport proot_check(const TheoremInputs& ti);

}  // namespace ramforge
