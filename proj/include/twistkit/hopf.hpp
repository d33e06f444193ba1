#ifndef TWISTKIT_HOPF_HPP
#define TWISTKIT_HOPF_HPP

#include "twistkit/uea.hpp"

#include <map>
#include <string>
#include <vector>

namespace twistkit
{

/// Element of U⊗U or U⊗U⊗U, truncated at total z-degree (sum over legs).
class TensorElement
{
public:
  using Key = std::vector<Monomial>;
  using Terms = std::map<Key, GaussianRational>;

  TensorElement(UeaPtr uea, int legs);

  static TensorElement one(UeaPtr uea, int legs);
  static TensorElement pure(UeaPtr uea, Key key, GaussianRational c = 1);

  const UeaPtr &uea() const noexcept { return m_uea; }
  int legs() const noexcept { return m_legs; }
  int order() const noexcept { return m_uea->order(); }
  const Terms &terms() const noexcept { return m_terms; }
  bool is_zero() const noexcept { return m_terms.empty(); }
  int degree(const Key &k) const noexcept;
  bool has_degree_zero_terms() const;
  /// Coefficient of the all-unit key.
  GaussianRational constant_term() const;
  TensorElement component(int degree) const;
  /// Per-degree term counts, index = total degree.
  std::vector<std::size_t> degree_counts() const;

  TensorElement zero_like() const { return TensorElement(m_uea, m_legs); }
  TensorElement one_like() const { return one(m_uea, m_legs); }

  void add_term(const Key &k, const GaussianRational &c);

  TensorElement &operator+=(const TensorElement &o);
  TensorElement &operator-=(const TensorElement &o);
  TensorElement &operator*=(const GaussianRational &c);
  friend TensorElement operator+(TensorElement a, const TensorElement &b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement &b) { return a -= b; }
  friend TensorElement operator*(TensorElement a, const GaussianRational &c) { return a *= c; }
  friend TensorElement operator*(const GaussianRational &c, TensorElement a) { return a *= c; }
  TensorElement operator-() const { return *this * GaussianRational(-1); }
  friend TensorElement operator*(const TensorElement &a, const TensorElement &b);

  friend bool operator==(const TensorElement &a, const TensorElement &b);

  /// "coef · (m1 | m2)", terms in key order; "0" when empty.
  std::string to_string() const;

private:
  void require_compatible(const TensorElement &o) const;

  UeaPtr m_uea;
  int m_legs;
  Terms m_terms;
};

inline TensorElement tmul(const TensorElement &a, const TensorElement &b) { return a * b; }

TensorElement tensor(const UEAElement &a, const UEAElement &b);
TensorElement tensor(const UEAElement &a, const UEAElement &b, const UEAElement &c);

/// Undeformed coproduct, generators primitive.
TensorElement coproduct(const UEAElement &x);
/// Undeformed counit: the coefficient of the unit monomial.
GaussianRational counit(const UEAElement &x);
/// (ε⊗id)(x) for leg 0, (id⊗ε)(x) for leg 1, on a 2-leg element.
UEAElement counit_leg(const TensorElement &x, int leg);

enum class Placement
{
  p12,
  p13,
  p23
};

/// Embeds a 2-leg element into 3 legs, putting the unit in the unused leg.
TensorElement leg_embed(const TensorElement &x, Placement placement);
TensorElement flip21(const TensorElement &x);

enum class DeltaLeg
{
  first,  // (Δ⊗id)
  second  // (id⊗Δ)
};

/// Twisted coproduct data: Δ_F(x) = F Δ(x) F⁻¹.
struct Conjugation
{
  const TensorElement *element = nullptr;
  const TensorElement *inverse = nullptr;
};

/// (Δ⊗id)(x) or (id⊗Δ)(x) on a 2-leg element. With a conjugation, Δ is
/// replaced by Δ_F, i.e. the result is conjugated by F₁₂ or F₂₃.
TensorElement apply_delta(const TensorElement &x, DeltaLeg which, const Conjugation *twist = nullptr);

/// Inverse of c·1 + (terms of positive degree), by Neumann series.
/// Throws SeriesError if the degree-0 part is not a nonzero scalar.
TensorElement tensor_inverse(const TensorElement &x);

TensorElement series_apply(SeriesKind kind, const TensorElement &x, const GaussianRational &exponent = {});

} // namespace twistkit

#endif
