#ifndef TWISTKIT_SERIES_HPP
#define TWISTKIT_SERIES_HPP

#include "twistkit/uea.hpp"

namespace twistkit
{

/// Coefficient of x^k in the Maclaurin series of f.
inline GaussianRational series_coefficient(SeriesKind kind, int k, const GaussianRational &exponent)
{
  switch (kind)
  {
  case SeriesKind::exp: {
    Rational c(1);
    for (int j = 2; j <= k; ++j)
      c /= j;
    return GaussianRational(c);
  }
  case SeriesKind::log1p:
    if (k == 0)
      return {};
    return GaussianRational(Rational(k % 2 == 1 ? 1 : -1, k));
  case SeriesKind::inverse_one_plus:
    return GaussianRational(k % 2 == 0 ? 1 : -1);
  case SeriesKind::power_one_plus: {
    // binomial(exponent, k)
    GaussianRational c(1);
    for (int j = 0; j < k; ++j)
      c = c * (exponent - GaussianRational(j)) / GaussianRational(j + 1);
    return c;
  }
  }
  return {};
}

/// Shared series evaluator for enveloping-algebra and tensor elements.
/// Element needs one_like(), zero_like(), order(), has_degree_zero_terms(),
/// is_zero(), and ring operations.
template <class Element>
Element apply_series(SeriesKind kind, const Element &x, const GaussianRational &exponent = {})
{
  if (x.has_degree_zero_terms())
    throw SeriesError("series does not terminate: argument has terms of z-degree 0");
  Element result = x.zero_like();
  Element power = x.one_like();
  for (int k = 0; k <= x.order(); ++k)
  {
    if (k > 0)
      power = power * x;
    if (power.is_zero())
      break;
    const GaussianRational c = series_coefficient(kind, k, exponent);
    if (!c.is_zero())
      result += power * c;
  }
  return result;
}

} // namespace twistkit

#endif
