#include "twistkit/uea.hpp"

#include "twistkit/series.hpp"

#include <sstream>

namespace twistkit
{

namespace
{

std::size_t mix(std::size_t seed, std::size_t v) noexcept
{
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

void accumulate(TermMap &into, const Monomial &m, const GaussianRational &c)
{
  if (c.is_zero())
    return;
  auto [it, inserted] = into.try_emplace(m, c);
  if (!inserted)
  {
    it->second += c;
    if (it->second.is_zero())
      into.erase(it);
  }
}

Uea::Product to_product(TermMap &&terms)
{
  Uea::Product out;
  out.reserve(terms.size());
  for (auto &node : terms)
    out.emplace_back(node.first, std::move(node.second));
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Factor> factors) : m_factors(std::move(factors))
{
  for (std::size_t k = 0; k < m_factors.size(); ++k)
  {
    if (m_factors[k].power == 0)
      throw std::invalid_argument("monomial powers must be positive");
    if (k > 0 && m_factors[k - 1].generator >= m_factors[k].generator)
      throw std::invalid_argument("monomial generators must be strictly increasing");
  }
}

Monomial Monomial::generator(std::size_t index, std::uint32_t power)
{
  if (power == 0)
    return {};
  return Monomial({{static_cast<std::uint32_t>(index), power}});
}

std::uint32_t Monomial::length() const noexcept
{
  std::uint32_t n = 0;
  for (const auto &f : m_factors)
    n += f.power;
  return n;
}

std::uint32_t Monomial::power_of(std::size_t index) const noexcept
{
  for (const auto &f : m_factors)
    if (f.generator == index)
      return f.power;
  return 0;
}

std::string Monomial::render(const LieAlgebra &alg) const
{
  if (m_factors.empty())
    return "1";
  std::string out;
  for (const auto &f : m_factors)
  {
    if (!out.empty())
      out += ' ';
    out += alg.symbol(f.generator);
    if (f.power != 1)
      out += "^" + std::to_string(f.power);
  }
  return out;
}

std::size_t Monomial::Hash::operator()(const Monomial &m) const noexcept
{
  std::size_t seed = m.m_factors.size();
  for (const auto &f : m.m_factors)
    seed = mix(seed, (static_cast<std::size_t>(f.generator) << 32) | f.power);
  return seed;
}

// ---------------------------------------------------------------------------
// Uea

std::size_t Uea::PairHash::operator()(const std::pair<Monomial, Monomial> &p) const noexcept
{
  return mix(Monomial::Hash{}(p.first), Monomial::Hash{}(p.second));
}

std::size_t Uea::GenHash::operator()(const std::pair<Monomial, std::uint32_t> &p) const noexcept
{
  return mix(Monomial::Hash{}(p.first), p.second);
}

Uea::Uea(LieAlgebra algebra, int order) : m_algebra(std::move(algebra)), m_order(order)
{
  if (order < 0)
    throw std::invalid_argument("truncation order must be nonnegative");
  const std::size_t dim = m_algebra.dimension();
  for (const auto &g : m_algebra.generators())
    m_degrees.push_back(g.zdegree);
  m_brackets.resize(dim);
  for (std::size_t h = 0; h < dim; ++h)
  {
    m_brackets[h].resize(h);
    for (std::size_t g = 0; g < h; ++g)
      for (const auto &[k, c] : m_algebra.bracket(h, g))
        m_brackets[h][g].emplace_back(static_cast<std::uint32_t>(k), c);
  }
}

std::shared_ptr<const Uea> Uea::create(LieAlgebra algebra, int order)
{
  return std::shared_ptr<const Uea>(new Uea(std::move(algebra), order));
}

bool Uea::compatible(const Uea &o) const
{
  return this == &o || (m_order == o.m_order && m_algebra.same_structure(o.m_algebra));
}

int Uea::degree(const Monomial &m) const noexcept
{
  int d = 0;
  for (const auto &f : m.factors())
    d += m_degrees[f.generator] * static_cast<int>(f.power);
  return d;
}

const Uea::Product &Uea::times_generator(const Monomial &m, std::uint32_t g) const
{
  const auto key = std::pair{m, g};
  {
    std::lock_guard lock(m_mutex);
    if (auto it = m_generator_cache.find(key); it != m_generator_cache.end())
      return it->second;
  }

  Product result;
  if (degree(m) + m_degrees[g] <= m_order)
  {
    const auto &fs = m.factors();
    if (fs.empty() || fs.back().generator <= g)
    {
      Monomial out = m;
      if (!fs.empty() && fs.back().generator == g)
        ++out.m_factors.back().power;
      else
        out.m_factors.push_back({g, 1});
      result.emplace_back(std::move(out), GaussianRational(1));
    }
    else
    {
      // m = m' x_h with h > g:  m' x_h x_g = (m' x_g) x_h + m' [x_h, x_g]
      const std::uint32_t h = fs.back().generator;
      Monomial rest = m;
      if (--rest.m_factors.back().power == 0)
        rest.m_factors.pop_back();
      TermMap acc;
      for (const auto &[t, c] : times_generator(rest, g))
        for (const auto &[u, d] : times_generator(t, h))
          accumulate(acc, u, c * d);
      for (const auto &[k, b] : m_brackets[h][g])
        for (const auto &[u, d] : times_generator(rest, k))
          accumulate(acc, u, b * d);
      result = to_product(std::move(acc));
    }
  }

  std::lock_guard lock(m_mutex);
  return m_generator_cache.emplace(key, std::move(result)).first->second;
}

const Uea::Product &Uea::multiply(const Monomial &a, const Monomial &b) const
{
  auto key = std::pair{a, b};
  {
    std::lock_guard lock(m_mutex);
    if (auto it = m_pair_cache.find(key); it != m_pair_cache.end())
      return it->second;
  }

  Product result;
  if (degree(a) + degree(b) <= m_order)
  {
    TermMap current;
    current.emplace(a, GaussianRational(1));
    for (const auto &f : b.factors())
      for (std::uint32_t p = 0; p < f.power; ++p)
      {
        TermMap next;
        for (const auto &[t, c] : current)
          for (const auto &[u, d] : times_generator(t, f.generator))
            accumulate(next, u, c * d);
        current = std::move(next);
      }
    result = to_product(std::move(current));
  }

  std::lock_guard lock(m_mutex);
  return m_pair_cache.emplace(std::move(key), std::move(result)).first->second;
}

// ---------------------------------------------------------------------------
// UEAElement

UEAElement::UEAElement(UeaPtr uea) : m_uea(std::move(uea))
{
  if (!m_uea)
    throw std::invalid_argument("UEAElement needs an enveloping algebra");
}

UEAElement UEAElement::scalar(UeaPtr uea, GaussianRational c)
{
  UEAElement out(std::move(uea));
  out.add_term(Monomial(), c);
  return out;
}

UEAElement UEAElement::generator(UeaPtr uea, std::size_t index)
{
  if (index >= uea->algebra().dimension())
    throw std::out_of_range("generator index out of range");
  return monomial(std::move(uea), Monomial::generator(index));
}

UEAElement UEAElement::generator(UeaPtr uea, std::string_view symbol)
{
  const std::size_t idx = uea->algebra().index_of(symbol);
  return generator(std::move(uea), idx);
}

UEAElement UEAElement::from_lie(UeaPtr uea, const LieElement &x)
{
  UEAElement out(std::move(uea));
  for (const auto &[k, c] : x)
    out.add_term(Monomial::generator(k), c);
  return out;
}

UEAElement UEAElement::monomial(UeaPtr uea, Monomial m, GaussianRational c)
{
  UEAElement out(std::move(uea));
  out.add_term(m, c);
  return out;
}

GaussianRational UEAElement::constant_term() const
{
  auto it = m_terms.find(Monomial());
  return it == m_terms.end() ? GaussianRational() : it->second;
}

std::optional<int> UEAElement::min_degree() const
{
  std::optional<int> best;
  for (const auto &[m, c] : m_terms)
  {
    const int d = m_uea->degree(m);
    if (!best || d < *best)
      best = d;
  }
  return best;
}

bool UEAElement::has_degree_zero_terms() const
{
  for (const auto &[m, c] : m_terms)
    if (m_uea->degree(m) == 0)
      return true;
  return false;
}

UEAElement UEAElement::component(int degree) const
{
  UEAElement out(m_uea);
  for (const auto &[m, c] : m_terms)
    if (m_uea->degree(m) == degree)
      out.m_terms.emplace(m, c);
  return out;
}

void UEAElement::add_term(const Monomial &m, const GaussianRational &c)
{
  for (const auto &f : m.factors())
    if (f.generator >= m_uea->algebra().dimension())
      throw std::out_of_range("monomial references an unknown generator");
  if (m_uea->degree(m) > m_uea->order())
    return;
  accumulate(m_terms, m, c);
}

void UEAElement::require_compatible(const UEAElement &o) const
{
  if (!m_uea->compatible(*o.m_uea))
    throw StructureMismatch("enveloping-algebra elements over different algebras or truncation orders");
}

UEAElement &UEAElement::operator+=(const UEAElement &o)
{
  require_compatible(o);
  for (const auto &[m, c] : o.m_terms)
    accumulate(m_terms, m, c);
  return *this;
}

UEAElement &UEAElement::operator-=(const UEAElement &o)
{
  require_compatible(o);
  for (const auto &[m, c] : o.m_terms)
    accumulate(m_terms, m, -c);
  return *this;
}

UEAElement &UEAElement::operator*=(const GaussianRational &c)
{
  if (c.is_zero())
  {
    m_terms.clear();
    return *this;
  }
  for (auto &[m, v] : m_terms)
    v *= c;
  return *this;
}

UEAElement operator*(const UEAElement &a, const UEAElement &b)
{
  a.require_compatible(b);
  UEAElement out(a.m_uea);
  const Uea &u = *a.m_uea;
  for (const auto &[ma, ca] : a.m_terms)
    for (const auto &[mb, cb] : b.m_terms)
    {
      if (u.degree(ma) + u.degree(mb) > u.order())
        continue;
      const GaussianRational c = ca * cb;
      for (const auto &[m, d] : u.multiply(ma, mb))
        accumulate(out.m_terms, m, c * d);
    }
  return out;
}

bool operator==(const UEAElement &a, const UEAElement &b)
{
  return a.m_uea->compatible(*b.m_uea) && a.m_terms == b.m_terms;
}

std::string render_coefficient(const GaussianRational &c)
{
  if (!c.is_real() && sgn(c.re()) != 0)
    return "(" + c.to_string() + ")";
  return c.to_string();
}

std::string UEAElement::to_string() const
{
  if (m_terms.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[m, c] : m_terms)
  {
    if (!first)
      os << " + ";
    first = false;
    os << render_coefficient(c) << " · " << m.render(m_uea->algebra());
  }
  return os.str();
}

// ---------------------------------------------------------------------------

UEAElement normal_order(const UeaPtr &uea, std::span<const std::size_t> word)
{
  UEAElement out = UEAElement::one(uea);
  for (std::size_t g : word)
    out = out * UEAElement::generator(uea, g);
  return out;
}

UEAElement commutator(const UEAElement &a, const UEAElement &b) { return a * b - b * a; }

UEAElement series_apply(SeriesKind kind, const UEAElement &x, const GaussianRational &exponent)
{
  return apply_series(kind, x, exponent);
}

} // namespace twistkit
