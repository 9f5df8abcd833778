#pragma once

// Morphisms of truncated valuation rings in the characteristic-p model
// A = k[pi]/(pi^e), M = A * mu_hat with epsilon(mu_hat) = pi.
//
// A morphism (r, mu, eta) is stored as the residue twist j (mu acts on k by
// x -> x^{p^j}), the image mu(pi) and the unit eta_coeff with
// eta(mu_hat_1) = eta_coeff * mu_hat_2^{(x) r}.

#include "ramforge/gfseries.hpp"

namespace ramforge {

struct TruncObject {
  FieldRef field;
  int e = 1;

  bool operator==(const TruncObject& o) const { return e == o.e && field->same_as(*o.field); }
};

TruncObject make_object(FieldRef field, int e);

class TruncMorphism {
 public:
  // Checks mu_image == eta_coeff * pi'^r (mod pi'^{e_2}), that eta_coeff is a
  // unit and that pi -> mu_image is a well defined ring map (r e_1 >= e_2).
  TruncMorphism(TruncObject src, TruncObject dst, int r, long res_twist, TruncSeries mu_image, TruncSeries eta_coeff);

  static TruncMorphism identity(const TruncObject& obj);
  // mu_image is derived from eta_coeff.
  static TruncMorphism from_eta(TruncObject src, TruncObject dst, int r, long res_twist, TruncSeries eta_coeff);

  const TruncObject& src() const noexcept { return src_; }
  const TruncObject& dst() const noexcept { return dst_; }
  int r() const noexcept { return r_; }
  long res_twist() const noexcept { return twist_; }  // reduced modulo w
  const TruncSeries& mu_image() const noexcept { return mu_; }
  const TruncSeries& eta_coeff() const noexcept { return eta_; }

  // mu applied to an element of the source ring.
  TruncSeries apply_mu(const TruncSeries& a) const;

  bool operator==(const TruncMorphism& o) const;

 private:
  TruncObject src_, dst_;
  int r_;
  long twist_;
  TruncSeries mu_, eta_;
};

// g o f; requires f.dst() == g.src().
TruncMorphism compose_morphism(const TruncMorphism& g, const TruncMorphism& f);
bool is_extension(const TruncMorphism& f);
bool is_isomorphism(const TruncMorphism& f);
// R(c): r = r', same residue map, eta - eta' in m^{rc} M^{(x) r}.
bool r_equivalent(const TruncMorphism& f, const TruncMorphism& f2, int c);

}  // namespace ramforge
