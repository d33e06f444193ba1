#ifndef TWISTKIT_SCALARS_HPP
#define TWISTKIT_SCALARS_HPP

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twistkit
{

using Rational = mpq_class;

class DivisionByZero : public std::domain_error
{
public:
  DivisionByZero() : std::domain_error("division by zero in Q(i)") {}
};

/// Malformed Gaussian-rational text. `offset()` is the byte position of the
/// first character that could not be consumed.
class ParseError : public std::invalid_argument
{
public:
  ParseError(const std::string &what, std::size_t offset)
      : std::invalid_argument(what + " at offset " + std::to_string(offset)), m_offset(offset)
  {
  }
  std::size_t offset() const noexcept { return m_offset; }

private:
  std::size_t m_offset;
};

/// Exact element a + b i of Q(i). Both parts are kept canonical (reduced,
/// positive denominator), so equality is structural.
class GaussianRational
{
public:
  GaussianRational() = default;
  GaussianRational(long v) : m_re(v) {}
  GaussianRational(Rational re) : m_re(std::move(re)) { m_re.canonicalize(); }
  GaussianRational(Rational re, Rational im) : m_re(std::move(re)), m_im(std::move(im))
  {
    m_re.canonicalize();
    m_im.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational &re() const noexcept { return m_re; }
  const Rational &im() const noexcept { return m_im; }

  bool is_zero() const noexcept { return sgn(m_re) == 0 && sgn(m_im) == 0; }
  bool is_one() const noexcept { return m_re == 1 && sgn(m_im) == 0; }
  bool is_real() const noexcept { return sgn(m_im) == 0; }

  GaussianRational conj() const { return {m_re, -m_im}; }
  /// |z|^2
  Rational norm() const { return m_re * m_re + m_im * m_im; }
  GaussianRational inverse() const;

  GaussianRational &operator+=(const GaussianRational &o);
  GaussianRational &operator-=(const GaussianRational &o);
  GaussianRational &operator*=(const GaussianRational &o);
  GaussianRational &operator/=(const GaussianRational &o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }
  GaussianRational operator-() const { return {-m_re, -m_im}; }

  friend bool operator==(const GaussianRational &a, const GaussianRational &b)
  {
    return a.m_re == b.m_re && a.m_im == b.m_im;
  }

  /// Canonical text: "a/b", "a/b+c/di", "c/di"; unit denominators omitted,
  /// a unit imaginary coefficient is written "i".
  std::string to_string() const;

private:
  Rational m_re{0};
  Rational m_im{0};
};

/// Parses sums of signed rational terms with an optional trailing `i`,
/// e.g. "2i", "-1+3/2i", "1/2", "i". Whitespace between terms is allowed.
GaussianRational parse_gaussian(std::string_view text);

std::ostream &operator<<(std::ostream &os, const GaussianRational &z);

/// Integer power, n may be negative (z must then be nonzero).
GaussianRational pow(const GaussianRational &z, long n);

} // namespace twistkit

#endif
