#include "ramforge/truncation.hpp"

#include <algorithm>
#include <string>

#include "ramforge/errors.hpp"

namespace ramforge {

namespace {

TruncSeries monomial_power(const TruncSeries& unit_times, int r, int trunc) {
  // unit_times * X^r modulo X^trunc
  TruncSeries out(unit_times.field(), trunc);
  for (int i = 0; i + r < trunc && i < unit_times.trunc(); ++i) {
    auto src = unit_times.raw(i);
    std::copy(src.begin(), src.end(), out.raw(i + r).begin());
  }
  return out;
}

TruncSeries series_pow(const TruncSeries& a, int k) {
  TruncSeries r = TruncSeries::constant(FFElem::one(a.field()), a.trunc());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

long reduce_twist(long j, int w) { return ((j % w) + w) % w; }

}  // namespace

TruncObject make_object(FieldRef field, int e) {
  if (!field) throw InputError("object without a residue field");
  if (e < 1) throw InputError("object length must be >= 1");
  return {std::move(field), e};
}

TruncMorphism::TruncMorphism(TruncObject src, TruncObject dst, int r, long res_twist, TruncSeries mu_image,
                             TruncSeries eta_coeff)
    : src_(std::move(src)), dst_(std::move(dst)), r_(r), twist_(0), mu_(std::move(mu_image)), eta_(std::move(eta_coeff)) {
  require_same_field(src_.field, dst_.field);
  require_same_field(dst_.field, mu_.field());
  require_same_field(dst_.field, eta_.field());
  if (r_ < 1) throw InputError("morphism exponent r must be positive");
  twist_ = reduce_twist(res_twist, dst_.field->w());
  if (mu_.trunc() != dst_.e || eta_.trunc() != dst_.e)
    throw InputError("mu image and eta coefficient must live in the target ring (truncation " + std::to_string(dst_.e) + ")");
  if (eta_.coeff_is_zero(0)) throw InputError("eta coefficient is not a unit");
  if (static_cast<long>(r_) * src_.e < dst_.e)
    throw InputError("pi^" + std::to_string(src_.e) + " = 0 is not preserved: r * e_1 < e_2");
  if (!(mu_ == monomial_power(eta_, r_, dst_.e)))
    throw InputError("mu o epsilon_1 != epsilon_2^r o eta: mu image is not eta_coeff * pi^r");
}

TruncMorphism TruncMorphism::identity(const TruncObject& obj) {
  return from_eta(obj, obj, 1, 0, TruncSeries::constant(FFElem::one(obj.field), obj.e));
}

TruncMorphism TruncMorphism::from_eta(TruncObject src, TruncObject dst, int r, long res_twist, TruncSeries eta_coeff) {
  if (r < 1) throw InputError("morphism exponent r must be positive");
  TruncSeries mu = monomial_power(eta_coeff, r, dst.e);
  return TruncMorphism(std::move(src), std::move(dst), r, res_twist, std::move(mu), std::move(eta_coeff));
}

TruncSeries TruncMorphism::apply_mu(const TruncSeries& a) const {
  require_same_field(a.field(), src_.field);
  if (a.trunc() != src_.e) throw InputError("element does not live in the source ring");
  return substitute_polynomial(frobenius_twist(a, twist_), mu_, dst_.e);
}

bool TruncMorphism::operator==(const TruncMorphism& o) const {
  return src_ == o.src_ && dst_ == o.dst_ && r_ == o.r_ && twist_ == o.twist_ && mu_ == o.mu_ && eta_ == o.eta_;
}

TruncMorphism compose_morphism(const TruncMorphism& g, const TruncMorphism& f) {
  if (!(f.dst() == g.src())) throw InputError("cannot compose: target of f is not the source of g");
  const int r = f.r(), s = g.r();
  TruncSeries mu = g.apply_mu(f.mu_image());
  TruncSeries eta = g.apply_mu(f.eta_coeff()) * series_pow(g.eta_coeff(), r);
  // the constructor re-checks the compatibility relation on the composite
  return TruncMorphism(f.src(), g.dst(), s * r, f.res_twist() + g.res_twist(), std::move(mu), std::move(eta));
}

bool is_extension(const TruncMorphism& f) { return static_cast<long>(f.r()) * f.src().e == f.dst().e; }

bool is_isomorphism(const TruncMorphism& f) {
  if (f.r() != 1 || f.src().e != f.dst().e) return false;
  // mu is onto iff mu(pi) is a uniformizer; for length 1 every map is an isomorphism
  if (f.dst().e > 1 && (f.mu_image().coeff_is_zero(1))) return false;
  return !f.eta_coeff().coeff_is_zero(0);
}

bool r_equivalent(const TruncMorphism& f, const TruncMorphism& f2, int c) {
  if (!(f.src() == f2.src()) || !(f.dst() == f2.dst())) throw InputError("R(c)-equivalence needs morphisms with the same endpoints");
  if (c < 1) throw InputError("c must be a positive integer");
  if (f.r() != f2.r() || f.res_twist() != f2.res_twist()) return false;
  const TruncSeries diff = f.eta_coeff() - f2.eta_coeff();
  return static_cast<long>(diff.valuation()) >= static_cast<long>(f.r()) * c || diff.valuation() == diff.trunc();
}

}  // namespace ramforge
