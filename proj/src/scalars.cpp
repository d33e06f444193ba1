#include "twistkit/scalars.hpp"

#include <cctype>
#include <ostream>

namespace twistkit
{

GaussianRational &GaussianRational::operator+=(const GaussianRational &o)
{
  m_re += o.m_re;
  if (sgn(o.m_im) != 0)
    m_im += o.m_im;
  return *this;
}

GaussianRational &GaussianRational::operator-=(const GaussianRational &o)
{
  m_re -= o.m_re;
  if (sgn(o.m_im) != 0)
    m_im -= o.m_im;
  return *this;
}

GaussianRational &GaussianRational::operator*=(const GaussianRational &o)
{
  const bool real_a = sgn(m_im) == 0;
  const bool real_b = sgn(o.m_im) == 0;
  if (real_a && real_b)
  {
    m_re *= o.m_re;
  }
  else if (real_b)
  {
    m_re *= o.m_re;
    m_im *= o.m_re;
  }
  else if (real_a)
  {
    m_im = m_re * o.m_im;
    m_re *= o.m_re;
  }
  else
  {
    Rational re = m_re * o.m_re - m_im * o.m_im;
    Rational im = m_re * o.m_im + m_im * o.m_re;
    m_re = std::move(re);
    m_im = std::move(im);
  }
  return *this;
}

GaussianRational GaussianRational::inverse() const
{
  if (is_zero())
    throw DivisionByZero();
  if (is_real())
    return GaussianRational(Rational(1) / m_re);
  const Rational n = norm();
  return {m_re / n, -m_im / n};
}

GaussianRational &GaussianRational::operator/=(const GaussianRational &o)
{
  if (o.is_zero())
    throw DivisionByZero();
  if (o.is_real())
  {
    m_re /= o.m_re;
    m_im /= o.m_re;
    return *this;
  }
  return *this *= o.inverse();
}

namespace
{

std::string rational_text(const Rational &q)
{
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string imaginary_text(const Rational &q)
{
  if (q == 1)
    return "i";
  if (q == -1)
    return "-i";
  return rational_text(q) + "i";
}

class Parser
{
public:
  explicit Parser(std::string_view text) : m_text(text) {}

  GaussianRational run()
  {
    skip_ws();
    if (at_end())
      throw ParseError("empty Gaussian rational", m_pos);
    GaussianRational total;
    bool first = true;
    while (!at_end())
    {
      int sign = 1;
      if (peek() == '+' || peek() == '-')
      {
        sign = peek() == '-' ? -1 : 1;
        ++m_pos;
        skip_ws();
      }
      else if (!first)
      {
        throw ParseError("expected '+' or '-' between terms", m_pos);
      }
      total += term() * GaussianRational(sign);
      first = false;
      skip_ws();
    }
    return total;
  }

private:
  GaussianRational term()
  {
    const std::size_t start = m_pos;
    Rational value(1);
    bool have_number = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
    {
      mpz_class num(digits());
      mpz_class den(1);
      if (!at_end() && peek() == '/')
      {
        ++m_pos;
        const std::size_t den_pos = m_pos;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
          throw ParseError("expected denominator digits", m_pos);
        den = mpz_class(digits());
        if (den == 0)
          throw ParseError("zero denominator", den_pos);
      }
      value = Rational(num, den);
      value.canonicalize();
      have_number = true;
    }
    if (!at_end() && peek() == 'i')
    {
      ++m_pos;
      return {Rational(0), value};
    }
    if (!have_number)
      throw ParseError("expected a number or 'i'", start);
    return GaussianRational(value);
  }

  std::string digits()
  {
    const std::size_t start = m_pos;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
      ++m_pos;
    return std::string(m_text.substr(start, m_pos - start));
  }

  void skip_ws()
  {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
      ++m_pos;
  }
  bool at_end() const { return m_pos >= m_text.size(); }
  char peek() const { return m_text[m_pos]; }

  std::string_view m_text;
  std::size_t m_pos = 0;
};

} // namespace

std::string GaussianRational::to_string() const
{
  const bool re_zero = sgn(m_re) == 0;
  const bool im_zero = sgn(m_im) == 0;
  if (im_zero)
    return rational_text(m_re);
  if (re_zero)
    return imaginary_text(m_im);
  std::string out = rational_text(m_re);
  if (sgn(m_im) > 0)
    out += '+';
  return out + imaginary_text(m_im);
}

GaussianRational parse_gaussian(std::string_view text) { return Parser(text).run(); }

std::ostream &operator<<(std::ostream &os, const GaussianRational &z) { return os << z.to_string(); }

GaussianRational pow(const GaussianRational &z, long n)
{
  if (n < 0)
    return pow(z.inverse(), -n);
  GaussianRational result(1);
  GaussianRational base = z;
  while (n > 0)
  {
    if (n & 1)
      result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

} // namespace twistkit
