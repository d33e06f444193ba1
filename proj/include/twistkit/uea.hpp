#ifndef TWISTKIT_UEA_HPP
#define TWISTKIT_UEA_HPP

#include "twistkit/liealg.hpp"
#include "twistkit/scalars.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace twistkit
{

/// Ordered PBW monomial x_{i1}^{p1} ... x_{ik}^{pk} with i1 < ... < ik and
/// all powers positive. The empty monomial is the unit.
class Monomial
{
public:
  struct Factor
  {
    std::uint32_t generator;
    std::uint32_t power;
    friend auto operator<=>(const Factor &, const Factor &) = default;
  };

  Monomial() = default;
  /// Throws std::invalid_argument unless indices are strictly increasing and
  /// powers positive.
  explicit Monomial(std::vector<Factor> factors);
  static Monomial generator(std::size_t index, std::uint32_t power = 1);

  const std::vector<Factor> &factors() const noexcept { return m_factors; }
  bool is_unit() const noexcept { return m_factors.empty(); }
  /// Total word length (sum of powers).
  std::uint32_t length() const noexcept;
  std::uint32_t power_of(std::size_t index) const noexcept;

  /// Monomials are ordered lexicographically on their factor lists.
  friend auto operator<=>(const Monomial &, const Monomial &) = default;
  friend bool operator==(const Monomial &, const Monomial &) = default;

  std::string render(const LieAlgebra &alg) const;

  struct Hash
  {
    std::size_t operator()(const Monomial &m) const noexcept;
  };

private:
  friend class Uea;
  std::vector<Factor> m_factors;
};

using TermMap = std::map<Monomial, GaussianRational>;

class StructureMismatch : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class SeriesError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Truncated universal enveloping algebra U(g) / (z-degree > order).
///
/// Holds the algebra, the truncation order and a memo of normal-ordered
/// monomial products. The memo is a pure cache guarded by a mutex, so a
/// context can be shared between threads.
class Uea
{
public:
  using Product = std::vector<std::pair<Monomial, GaussianRational>>;

  static std::shared_ptr<const Uea> create(LieAlgebra algebra, int order);

  const LieAlgebra &algebra() const noexcept { return m_algebra; }
  int order() const noexcept { return m_order; }
  int degree(const Monomial &m) const noexcept;

  /// Normal-ordered product a*b with terms of z-degree > order dropped. Every
  /// term has degree deg(a) + deg(b), since the brackets are homogeneous.
  const Product &multiply(const Monomial &a, const Monomial &b) const;

  /// Same carrier structure and truncation order.
  bool compatible(const Uea &o) const;

private:
  Uea(LieAlgebra algebra, int order);
  const Product &times_generator(const Monomial &m, std::uint32_t g) const;

  struct PairHash
  {
    std::size_t operator()(const std::pair<Monomial, Monomial> &p) const noexcept;
  };
  struct GenHash
  {
    std::size_t operator()(const std::pair<Monomial, std::uint32_t> &p) const noexcept;
  };

  LieAlgebra m_algebra;
  int m_order;
  std::vector<int> m_degrees;
  /// m_brackets[h][g] = [x_h, x_g] for h > g
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, GaussianRational>>>> m_brackets;

  mutable std::mutex m_mutex;
  mutable std::unordered_map<std::pair<Monomial, std::uint32_t>, Product, GenHash> m_generator_cache;
  mutable std::unordered_map<std::pair<Monomial, Monomial>, Product, PairHash> m_pair_cache;
};

using UeaPtr = std::shared_ptr<const Uea>;

/// Element of a truncated enveloping algebra: sparse map from PBW monomials
/// to coefficients. No zero coefficients and no term above the truncation
/// order are ever stored.
class UEAElement
{
public:
  explicit UEAElement(UeaPtr uea);

  static UEAElement scalar(UeaPtr uea, GaussianRational c);
  static UEAElement one(UeaPtr uea) { return scalar(std::move(uea), 1); }
  static UEAElement generator(UeaPtr uea, std::size_t index);
  static UEAElement generator(UeaPtr uea, std::string_view symbol);
  static UEAElement from_lie(UeaPtr uea, const LieElement &x);
  static UEAElement monomial(UeaPtr uea, Monomial m, GaussianRational c = 1);

  const UeaPtr &uea() const noexcept { return m_uea; }
  const TermMap &terms() const noexcept { return m_terms; }
  int order() const noexcept { return m_uea->order(); }
  bool is_zero() const noexcept { return m_terms.empty(); }
  GaussianRational constant_term() const;
  std::optional<int> min_degree() const;
  bool has_degree_zero_terms() const;
  /// Homogeneous component of the given z-degree.
  UEAElement component(int degree) const;

  UEAElement zero_like() const { return UEAElement(m_uea); }
  UEAElement one_like() const { return one(m_uea); }

  void add_term(const Monomial &m, const GaussianRational &c);

  UEAElement &operator+=(const UEAElement &o);
  UEAElement &operator-=(const UEAElement &o);
  UEAElement &operator*=(const GaussianRational &c);
  friend UEAElement operator+(UEAElement a, const UEAElement &b) { return a += b; }
  friend UEAElement operator-(UEAElement a, const UEAElement &b) { return a -= b; }
  friend UEAElement operator*(UEAElement a, const GaussianRational &c) { return a *= c; }
  friend UEAElement operator*(const GaussianRational &c, UEAElement a) { return a *= c; }
  UEAElement operator-() const { return *this * GaussianRational(-1); }
  friend UEAElement operator*(const UEAElement &a, const UEAElement &b);

  friend bool operator==(const UEAElement &a, const UEAElement &b);

  /// "coef · g1^p1 g2^p2 + ...", terms in monomial order; "0" when empty.
  std::string to_string() const;

private:
  void require_compatible(const UEAElement &o) const;

  UeaPtr m_uea;
  TermMap m_terms;
};

/// Normal-ordered product of the listed generators.
UEAElement normal_order(const UeaPtr &uea, std::span<const std::size_t> word);

inline UEAElement mul(const UEAElement &a, const UEAElement &b) { return a * b; }
UEAElement commutator(const UEAElement &a, const UEAElement &b);

enum class SeriesKind
{
  exp,
  log1p,
  inverse_one_plus,
  power_one_plus
};

/// Truncated Maclaurin series f(x). `x` must have no terms of z-degree 0, so
/// x^k vanishes for k > order. `exponent` is used by power_one_plus only.
UEAElement series_apply(SeriesKind kind, const UEAElement &x, const GaussianRational &exponent = {});

std::string render_coefficient(const GaussianRational &c);

} // namespace twistkit

#endif
