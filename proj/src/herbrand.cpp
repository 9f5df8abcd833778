#include "ramforge/herbrand.hpp"

#include <algorithm>

#include "ramforge/errors.hpp"

namespace ramforge {

PLFunc::PLFunc(std::vector<Rational> breakpoints, std::vector<Rational> slopes, Rational value_at_origin)
    : breaks_(std::move(breakpoints)), slopes_(std::move(slopes)), v0_(std::move(value_at_origin)) {
  if (breaks_.empty() || breaks_.size() != slopes_.size())
    throw InputError("piecewise-linear function needs one slope per breakpoint");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (breaks_[i] <= breaks_[i - 1]) throw InputError("breakpoints must be strictly increasing");
  for (const auto& s : slopes_)
    if (s <= 0) throw InputError("slopes must be positive");
}

PLFunc PLFunc::identity() { return linear(1); }

PLFunc PLFunc::linear(const Rational& slope) { return PLFunc({Rational(0)}, {slope}, Rational(0)); }

Rational PLFunc::operator()(const Rational& x) const {
  Rational v = v0_;
  if (x <= breaks_[0]) return v0_ + slopes_[0] * (x - breaks_[0]);
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    const bool last = i + 1 == breaks_.size();
    if (last || x <= breaks_[i + 1]) return v + slopes_[i] * (x - breaks_[i]);
    v += slopes_[i] * (breaks_[i + 1] - breaks_[i]);
  }
  return v;  // unreachable
}

PLFunc PLFunc::inverse() const {
  std::vector<Rational> xs, ss;
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    xs.push_back((*this)(breaks_[i]));
    ss.push_back(1 / slopes_[i]);
  }
  return PLFunc(std::move(xs), std::move(ss), breaks_[0]);
}

PLFunc PLFunc::simplified() const {
  std::vector<Rational> xs{breaks_[0]}, ss{slopes_[0]};
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (slopes_[i] == ss.back()) continue;
    xs.push_back(breaks_[i]);
    ss.push_back(slopes_[i]);
  }
  return PLFunc(std::move(xs), std::move(ss), v0_);
}

bool PLFunc::is_convex() const {
  for (std::size_t i = 1; i < slopes_.size(); ++i)
    if (slopes_[i] < slopes_[i - 1]) return false;
  return true;
}

bool PLFunc::is_concave() const {
  for (std::size_t i = 1; i < slopes_.size(); ++i)
    if (slopes_[i] > slopes_[i - 1]) return false;
  return true;
}

bool PLFunc::operator==(const PLFunc& o) const {
  const PLFunc a = simplified(), b = o.simplified();
  return a.breaks_ == b.breaks_ && a.slopes_ == b.slopes_ && a.v0_ == b.v0_;
}

PLFunc pl_compose(const PLFunc& f, const PLFunc& g) {
  // breakpoints of g, plus preimages under g of f's breakpoints lying in g's range
  const PLFunc ginv = g.inverse();
  const Rational start = g.breakpoints()[0];
  const Rational g_start = g(start);
  std::vector<Rational> xs = g.breakpoints();
  for (const auto& y : f.breakpoints())
    if (y > g_start) xs.push_back(ginv(y));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto slope_at = [](const PLFunc& h, const Rational& x) {
    // slope on the segment starting at x (right derivative)
    const auto& b = h.breakpoints();
    std::size_t i = 0;
    while (i + 1 < b.size() && b[i + 1] <= x) ++i;
    return h.slopes()[i];
  };
  std::vector<Rational> ss;
  for (const auto& x : xs) ss.push_back(slope_at(f, g(x)) * slope_at(g, x));
  return PLFunc(xs, std::move(ss), f(g_start)).simplified();
}

PLFunc psi_from_breaks(const BreakData& bd) {
  std::vector<Rational> xs{Rational(0)}, ss{Rational(1)};
  Rational slope = 1;
  for (const auto& b : bd.upper) {
    slope *= bd.p;
    if (b <= 0) throw InputError("upper breaks must be positive");
    if (b <= xs.back()) throw InputError("upper breaks must be strictly increasing");
    xs.push_back(b);
    ss.push_back(slope);
  }
  return PLFunc(std::move(xs), std::move(ss), Rational(0));
}

PLFunc phi_from_breaks(const BreakData& bd) { return psi_from_breaks(bd).inverse(); }

PLFunc tower_step_psi(const BreakData& bd, int j) {
  if (j < 0 || j >= static_cast<int>(bd.upper.size())) throw InputError("tower step index out of range");
  BreakData below{bd.p, bd.e, std::vector<Rational>(bd.upper.begin(), bd.upper.begin() + j)};
  const Rational lb = psi_from_breaks(below)(bd.upper[j]);
  return PLFunc({Rational(0), lb}, {Rational(1), Rational(bd.p)}, Rational(0));
}

PLFunc tame_psi(const Rational& e) {
  if (e <= 0) throw InputError("ramification index must be positive");
  return PLFunc::linear(e);
}

PLFunc tame_phi(const Rational& e) {
  if (e <= 0) throw InputError("ramification index must be positive");
  return PLFunc::linear(1 / e);
}

BreakVerdict validate_breaks(const BreakData& bd) {
  auto fail = [](std::string rule, int i, std::string msg) { return BreakVerdict{false, std::move(rule), i, std::move(msg)}; };
  if (bd.p < 2) return fail("positive", -1, "p must be a prime");
  if (bd.e <= 0) return fail("positive", -1, "e must be positive");
  const auto& b = bd.upper;
  const int n = static_cast<int>(b.size());
  for (int i = 0; i < n; ++i)
    if (b[i] <= 0) return fail("positive", i, "b_" + std::to_string(i) + " is not positive");
  for (int i = 0; i + 1 < n; ++i)
    if (b[i + 1] <= b[i]) return fail("order", i + 1, "b_" + std::to_string(i + 1) + " does not exceed b_" + std::to_string(i));
  if (n == 0) return {};
  const Rational p = bd.p;
  const Rational low = bd.e / (p - 1), high = p * bd.e / (p - 1);
  if (b[0] < 1 || b[0] > high)
    return fail("a", 0, "b_0 = " + to_string(b[0]) + " must lie in [1, " + to_string(high) + "]");
  for (int i = 0; i + 1 < n; ++i) {
    const std::string bi = "b_" + std::to_string(i), bn = "b_" + std::to_string(i + 1);
    if (b[i] <= low && (b[i + 1] < p * b[i] || b[i + 1] > high))
      return fail("b", i, bi + " <= e/(p-1) requires p*" + bi + " <= " + bn + " <= " + to_string(high));
    if (b[i] >= low && b[i + 1] != b[i] + bd.e)
      return fail("c", i, bi + " >= e/(p-1) requires " + bn + " = " + to_string(b[i] + bd.e));
  }
  return {};
}

void require_valid(const BreakData& bd) {
  const auto v = validate_breaks(bd);
  if (!v.valid) throw InputError("invalid break data (rule " + v.rule + "): " + v.message);
}

YHZ extract_yhz(const BreakData& bd) {
  require_valid(bd);
  if (bd.upper.empty()) throw InputError("break data has no breaks");
  const Rational threshold = bd.e / Rational(bd.p - 1);
  int h = static_cast<int>(bd.upper.size()) - 1;
  for (int i = 0; i < static_cast<int>(bd.upper.size()); ++i) {
    if (bd.upper[i] > threshold) {
      h = i;
      break;
    }
  }
  return {bd.upper[h], h, psi_from_breaks(bd)(bd.upper[h])};
}

Rational lower_break_formula(const BreakData& bd, const YHZ& yhz, int i) {
  const int n = static_cast<int>(bd.upper.size());
  if (i < yhz.h || i >= n) throw InputError("lower break formula needs h <= i < n");
  const Rational p = bd.p;
  return yhz.z + bd.e * rpow(bd.p, yhz.h + 1) * (rpow(bd.p, i - yhz.h) - 1) / (p - 1);
}

int psi_ie_max_index(const BreakData& bd, const YHZ& yhz) {
  const int n = static_cast<int>(bd.upper.size());
  return yhz.y <= bd.e ? n - 1 - yhz.h : n - yhz.h;
}

Rational psi_ie_formula(const BreakData& bd, const YHZ& yhz, int i) {
  if (i < 0 || i > psi_ie_max_index(bd, yhz))
    throw InputError("psi((i+1)e) closed form is not valid for i = " + std::to_string(i) + " in the " +
                     (yhz.y <= bd.e ? "y <= e" : "y > e") + " case");
  const Rational p = bd.p;
  const Rational base = yhz.z + bd.e * rpow(bd.p, yhz.h + 1) * (rpow(bd.p, i) - 1) / (p - 1);
  if (yhz.y <= bd.e) return base + rpow(bd.p, yhz.h + i + 1) * (bd.e - yhz.y);
  return base + rpow(bd.p, yhz.h + i) * (bd.e - yhz.y);
}

}  // namespace ramforge
