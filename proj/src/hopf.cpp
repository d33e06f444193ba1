#include "twistkit/hopf.hpp"

#include "twistkit/series.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace twistkit
{

namespace
{

struct KeyHash
{
  std::size_t operator()(const TensorElement::Key &k) const noexcept
  {
    std::size_t seed = k.size();
    for (const auto &m : k)
      seed ^= Monomial::Hash{}(m) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

using Accumulator = std::unordered_map<TensorElement::Key, GaussianRational, KeyHash>;

void accumulate(TensorElement::Terms &into, const TensorElement::Key &k, const GaussianRational &c)
{
  if (c.is_zero())
    return;
  auto [it, inserted] = into.try_emplace(k, c);
  if (!inserted)
  {
    it->second += c;
    if (it->second.is_zero())
      into.erase(it);
  }
}

void accumulate(Accumulator &into, TensorElement::Key &&k, const GaussianRational &c)
{
  auto [it, inserted] = into.try_emplace(std::move(k), c);
  if (!inserted)
    it->second += c;
}

Rational binomial(std::uint32_t n, std::uint32_t k)
{
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

/// Δ(m) as a list of (left, right, coefficient).
std::vector<std::tuple<Monomial, Monomial, Rational>> split_monomial(const Monomial &m)
{
  std::vector<std::tuple<std::vector<Monomial::Factor>, std::vector<Monomial::Factor>, Rational>> parts{{{}, {}, Rational(1)}};
  for (const auto &f : m.factors())
  {
    decltype(parts) next;
    next.reserve(parts.size() * (f.power + 1));
    for (const auto &[l, r, c] : parts)
      for (std::uint32_t a = 0; a <= f.power; ++a)
      {
        auto left = l;
        auto right = r;
        if (a > 0)
          left.push_back({f.generator, a});
        if (a < f.power)
          right.push_back({f.generator, f.power - a});
        next.emplace_back(std::move(left), std::move(right), c * binomial(f.power, a));
      }
    parts = std::move(next);
  }
  std::vector<std::tuple<Monomial, Monomial, Rational>> out;
  out.reserve(parts.size());
  for (auto &[l, r, c] : parts)
    out.emplace_back(Monomial(std::move(l)), Monomial(std::move(r)), std::move(c));
  return out;
}

void check_legs(const TensorElement &x, int legs, const char *what)
{
  if (x.legs() != legs)
    throw std::invalid_argument(std::string(what) + " expects a " + std::to_string(legs) + "-leg tensor");
}

} // namespace

TensorElement::TensorElement(UeaPtr uea, int legs) : m_uea(std::move(uea)), m_legs(legs)
{
  if (!m_uea)
    throw std::invalid_argument("TensorElement needs an enveloping algebra");
  if (legs != 2 && legs != 3)
    throw std::invalid_argument("tensor elements have 2 or 3 legs");
}

TensorElement TensorElement::one(UeaPtr uea, int legs)
{
  TensorElement out(std::move(uea), legs);
  out.add_term(Key(static_cast<std::size_t>(legs)), 1);
  return out;
}

TensorElement TensorElement::pure(UeaPtr uea, Key key, GaussianRational c)
{
  TensorElement out(std::move(uea), static_cast<int>(key.size()));
  out.add_term(key, c);
  return out;
}

int TensorElement::degree(const Key &k) const noexcept
{
  int d = 0;
  for (const auto &m : k)
    d += m_uea->degree(m);
  return d;
}

bool TensorElement::has_degree_zero_terms() const
{
  return std::any_of(m_terms.begin(), m_terms.end(), [&](const auto &t) { return degree(t.first) == 0; });
}

GaussianRational TensorElement::constant_term() const
{
  auto it = m_terms.find(Key(static_cast<std::size_t>(m_legs)));
  return it == m_terms.end() ? GaussianRational() : it->second;
}

TensorElement TensorElement::component(int d) const
{
  TensorElement out = zero_like();
  for (const auto &[k, c] : m_terms)
    if (degree(k) == d)
      out.m_terms.emplace(k, c);
  return out;
}

std::vector<std::size_t> TensorElement::degree_counts() const
{
  std::vector<std::size_t> counts(static_cast<std::size_t>(order() + 1), 0);
  for (const auto &[k, c] : m_terms)
    ++counts[static_cast<std::size_t>(degree(k))];
  return counts;
}

void TensorElement::add_term(const Key &k, const GaussianRational &c)
{
  if (static_cast<int>(k.size()) != m_legs)
    throw std::invalid_argument("tensor key has the wrong number of legs");
  for (const auto &m : k)
    for (const auto &f : m.factors())
      if (f.generator >= m_uea->algebra().dimension())
        throw std::out_of_range("monomial references an unknown generator");
  if (degree(k) > order())
    return;
  accumulate(m_terms, k, c);
}

void TensorElement::require_compatible(const TensorElement &o) const
{
  if (m_legs != o.m_legs)
    throw StructureMismatch("tensor elements with different numbers of legs");
  if (!m_uea->compatible(*o.m_uea))
    throw StructureMismatch("tensor elements over different algebras or truncation orders");
}

TensorElement &TensorElement::operator+=(const TensorElement &o)
{
  require_compatible(o);
  for (const auto &[k, c] : o.m_terms)
    accumulate(m_terms, k, c);
  return *this;
}

TensorElement &TensorElement::operator-=(const TensorElement &o)
{
  require_compatible(o);
  for (const auto &[k, c] : o.m_terms)
    accumulate(m_terms, k, -c);
  return *this;
}

TensorElement &TensorElement::operator*=(const GaussianRational &c)
{
  if (c.is_zero())
  {
    m_terms.clear();
    return *this;
  }
  for (auto &[k, v] : m_terms)
    v *= c;
  return *this;
}

TensorElement operator*(const TensorElement &a, const TensorElement &b)
{
  a.require_compatible(b);
  const Uea &u = *a.m_uea;
  const int n = u.order();

  struct Entry
  {
    const TensorElement::Key *key;
    const GaussianRational *coef;
    int degree;
  };
  auto entries = [](const TensorElement &x) {
    std::vector<Entry> out;
    out.reserve(x.m_terms.size());
    for (const auto &[k, c] : x.m_terms)
      out.push_back({&k, &c, x.degree(k)});
    std::stable_sort(out.begin(), out.end(), [](const Entry &l, const Entry &r) { return l.degree < r.degree; });
    return out;
  };
  const auto ea = entries(a);
  const auto eb = entries(b);

  Accumulator acc;
  std::vector<const Uea::Product *> legs(static_cast<std::size_t>(a.m_legs));
  for (const auto &ta : ea)
    for (const auto &tb : eb)
    {
      if (ta.degree + tb.degree > n)
        break;
      bool vanishes = false;
      for (std::size_t l = 0; l < legs.size(); ++l)
      {
        legs[l] = &u.multiply((*ta.key)[l], (*tb.key)[l]);
        vanishes = vanishes || legs[l]->empty();
      }
      if (vanishes)
        continue;
      const GaussianRational c = *ta.coef * *tb.coef;
      if (legs.size() == 2)
      {
        for (const auto &[m0, c0] : *legs[0])
        {
          const GaussianRational c01 = c * c0;
          for (const auto &[m1, c1] : *legs[1])
            accumulate(acc, TensorElement::Key{m0, m1}, c01 * c1);
        }
      }
      else
      {
        for (const auto &[m0, c0] : *legs[0])
          for (const auto &[m1, c1] : *legs[1])
          {
            const GaussianRational c01 = c * c0 * c1;
            for (const auto &[m2, c2] : *legs[2])
              accumulate(acc, TensorElement::Key{m0, m1, m2}, c01 * c2);
          }
      }
    }

  TensorElement out(a.m_uea, a.m_legs);
  for (auto &[k, c] : acc)
    if (!c.is_zero())
      out.m_terms.emplace(k, std::move(c));
  return out;
}

bool operator==(const TensorElement &a, const TensorElement &b)
{
  return a.m_legs == b.m_legs && a.m_uea->compatible(*b.m_uea) && a.m_terms == b.m_terms;
}

std::string TensorElement::to_string() const
{
  if (m_terms.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[k, c] : m_terms)
  {
    if (!first)
      os << " + ";
    first = false;
    os << render_coefficient(c) << " · (";
    for (std::size_t l = 0; l < k.size(); ++l)
      os << (l ? " | " : "") << k[l].render(m_uea->algebra());
    os << ')';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

TensorElement tensor(const UEAElement &a, const UEAElement &b)
{
  if (!a.uea()->compatible(*b.uea()))
    throw StructureMismatch("tensor factors over different algebras or truncation orders");
  TensorElement out(a.uea(), 2);
  for (const auto &[ma, ca] : a.terms())
    for (const auto &[mb, cb] : b.terms())
      out.add_term({ma, mb}, ca * cb);
  return out;
}

TensorElement tensor(const UEAElement &a, const UEAElement &b, const UEAElement &c)
{
  if (!a.uea()->compatible(*b.uea()) || !a.uea()->compatible(*c.uea()))
    throw StructureMismatch("tensor factors over different algebras or truncation orders");
  TensorElement out(a.uea(), 3);
  for (const auto &[ma, ca] : a.terms())
    for (const auto &[mb, cb] : b.terms())
    {
      const GaussianRational cab = ca * cb;
      for (const auto &[mc, cc] : c.terms())
        out.add_term({ma, mb, mc}, cab * cc);
    }
  return out;
}

TensorElement coproduct(const UEAElement &x)
{
  TensorElement out(x.uea(), 2);
  for (const auto &[m, c] : x.terms())
    for (const auto &[l, r, b] : split_monomial(m))
      out.add_term({l, r}, c * GaussianRational(b));
  return out;
}

GaussianRational counit(const UEAElement &x) { return x.constant_term(); }

UEAElement counit_leg(const TensorElement &x, int leg)
{
  check_legs(x, 2, "counit_leg");
  if (leg != 0 && leg != 1)
    throw std::invalid_argument("counit_leg: leg must be 0 or 1");
  UEAElement out(x.uea());
  const auto other = static_cast<std::size_t>(1 - leg);
  for (const auto &[k, c] : x.terms())
    if (k[static_cast<std::size_t>(leg)].is_unit())
      out.add_term(k[other], c);
  return out;
}

TensorElement leg_embed(const TensorElement &x, Placement placement)
{
  check_legs(x, 2, "leg_embed");
  TensorElement out(x.uea(), 3);
  for (const auto &[k, c] : x.terms())
  {
    switch (placement)
    {
    case Placement::p12:
      out.add_term({k[0], k[1], Monomial()}, c);
      break;
    case Placement::p13:
      out.add_term({k[0], Monomial(), k[1]}, c);
      break;
    case Placement::p23:
      out.add_term({Monomial(), k[0], k[1]}, c);
      break;
    }
  }
  return out;
}

TensorElement flip21(const TensorElement &x)
{
  check_legs(x, 2, "flip21");
  TensorElement out(x.uea(), 2);
  for (const auto &[k, c] : x.terms())
    out.add_term({k[1], k[0]}, c);
  return out;
}

TensorElement apply_delta(const TensorElement &x, DeltaLeg which, const Conjugation *twist)
{
  check_legs(x, 2, "apply_delta");
  TensorElement out(x.uea(), 3);
  for (const auto &[k, c] : x.terms())
  {
    const Monomial &split = which == DeltaLeg::first ? k[0] : k[1];
    for (const auto &[l, r, b] : split_monomial(split))
    {
      const GaussianRational cb = c * GaussianRational(b);
      if (which == DeltaLeg::first)
        out.add_term({l, r, k[1]}, cb);
      else
        out.add_term({k[0], l, r}, cb);
    }
  }
  if (twist == nullptr)
    return out;
  if (twist->element == nullptr || twist->inverse == nullptr)
    throw std::invalid_argument("apply_delta: incomplete twist data");
  const Placement p = which == DeltaLeg::first ? Placement::p12 : Placement::p23;
  return leg_embed(*twist->element, p) * out * leg_embed(*twist->inverse, p);
}

TensorElement tensor_inverse(const TensorElement &x)
{
  TensorElement lead = x.component(0);
  const GaussianRational c = x.constant_term();
  if (c.is_zero() || lead.terms().size() != 1)
    throw SeriesError("tensor element is not invertible order by order: degree-0 part is not a nonzero scalar");
  const GaussianRational cinv = c.inverse();
  TensorElement y = x * cinv - x.one_like();
  // (1 + y)^-1 = Σ (-y)^k, terminating because y has positive degree.
  return series_apply(SeriesKind::inverse_one_plus, y) * cinv;
}

TensorElement series_apply(SeriesKind kind, const TensorElement &x, const GaussianRational &exponent)
{
  return apply_series(kind, x, exponent);
}

} // namespace twistkit
