#include "twistkit/liealg.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace twistkit
{

void add_scaled(LieElement &into, const LieElement &x, const GaussianRational &c)
{
  if (c.is_zero())
    return;
  for (const auto &[idx, coef] : x)
  {
    auto [it, inserted] = into.try_emplace(idx, coef * c);
    if (!inserted)
    {
      it->second += coef * c;
      if (it->second.is_zero())
        into.erase(it);
    }
  }
}

LieElement scaled(const LieElement &x, const GaussianRational &c)
{
  LieElement out;
  add_scaled(out, x, c);
  return out;
}

LieElement basis_element(std::size_t index, GaussianRational c)
{
  LieElement out;
  if (!c.is_zero())
    out.emplace(index, std::move(c));
  return out;
}

// ---------------------------------------------------------------------------

LieAlgebra::LieAlgebra(std::string name, std::vector<Generator> generators,
                       const std::vector<std::tuple<std::size_t, std::size_t, LieElement>> &brackets)
    : m_name(std::move(name)), m_generators(std::move(generators))
{
  std::set<std::string> seen;
  for (const auto &g : m_generators)
  {
    if (g.symbol.empty())
      throw AlgebraError("empty generator symbol");
    if (g.zdegree < 0)
      throw AlgebraError("negative z-degree for " + g.symbol);
    if (!seen.insert(g.symbol).second)
      throw AlgebraError("duplicate generator symbol " + g.symbol);
  }
  const std::size_t dim = m_generators.size();
  for (const auto &[i, j, rhs] : brackets)
  {
    if (i >= dim || j >= dim)
      throw AlgebraError("bracket references an unknown generator index");
    for (const auto &[k, c] : rhs)
    {
      if (k >= dim)
        throw AlgebraError("bracket value references an unknown generator index");
      if (c.is_zero())
        throw AlgebraError("zero coefficient stored in bracket");
    }
    if (i == j)
    {
      if (!rhs.empty())
        throw AlgebraError("[" + m_generators[i].symbol + "," + m_generators[i].symbol + "] must vanish");
      continue;
    }
    const auto key = std::minmax(i, j);
    LieElement value = i < j ? rhs : scaled(rhs, -1);
    if (value.empty())
      continue;
    auto [it, inserted] = m_table.emplace(std::pair{key.first, key.second}, value);
    if (!inserted && it->second != value)
      throw AlgebraError("conflicting definitions of [" + m_generators[key.first].symbol + "," +
                         m_generators[key.second].symbol + "]");
  }
  for (const auto &[key, value] : m_table)
  {
    const int expected = m_generators[key.first].zdegree + m_generators[key.second].zdegree;
    for (const auto &[k, c] : value)
      if (m_generators[k].zdegree != expected)
        throw AlgebraError("bracket [" + m_generators[key.first].symbol + "," + m_generators[key.second].symbol +
                           "] is not homogeneous for the z-grading");
  }
}

bool LieAlgebra::is_graded() const noexcept
{
  for (const auto &g : m_generators)
    if (g.zdegree != 0)
      return true;
  return false;
}

bool LieAlgebra::same_generators(const LieAlgebra &o) const
{
  if (m_generators.size() != o.m_generators.size())
    return false;
  for (std::size_t i = 0; i < m_generators.size(); ++i)
    if (m_generators[i].symbol != o.m_generators[i].symbol || m_generators[i].zdegree != o.m_generators[i].zdegree)
      return false;
  return true;
}

std::optional<std::size_t> LieAlgebra::find(std::string_view symbol) const
{
  for (std::size_t i = 0; i < m_generators.size(); ++i)
    if (m_generators[i].symbol == symbol)
      return i;
  return std::nullopt;
}

std::size_t LieAlgebra::index_of(std::string_view symbol) const
{
  if (auto idx = find(symbol))
    return *idx;
  throw AlgebraError("unknown generator '" + std::string(symbol) + "' in " + m_name);
}

LieElement LieAlgebra::bracket(std::size_t i, std::size_t j) const
{
  if (i == j)
    return {};
  if (i < j)
  {
    auto it = m_table.find({i, j});
    return it == m_table.end() ? LieElement{} : it->second;
  }
  auto it = m_table.find({j, i});
  return it == m_table.end() ? LieElement{} : scaled(it->second, -1);
}

LieElement LieAlgebra::bracket(const LieElement &x, const LieElement &y) const
{
  LieElement out;
  for (const auto &[i, a] : x)
    for (const auto &[j, b] : y)
      if (i != j)
        add_scaled(out, bracket(i, j), a * b);
  return out;
}

std::string LieAlgebra::render(const LieElement &x) const
{
  if (x.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[idx, c] : x)
  {
    if (!first)
      os << " + ";
    first = false;
    if (c.is_one())
      os << symbol(idx);
    else
      os << "(" << c << ")" << symbol(idx);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::string_view to_string(AbstractFamily f)
{
  switch (f)
  {
  case AbstractFamily::Lc:
    return "Lc";
  case AbstractFamily::Lcd:
    return "Lcd";
  case AbstractFamily::L:
    return "L";
  case AbstractFamily::Lprime:
    return "Lprime";
  }
  return "?";
}

std::string_view to_string(ConcreteFamily f)
{
  switch (f)
  {
  case ConcreteFamily::isu:
    return "isu";
  case ConcreteFamily::iso:
    return "iso";
  case ConcreteFamily::schrodinger:
    return "schrodinger";
  case ConcreteFamily::poincare:
    return "poincare";
  }
  return "?";
}

std::optional<AbstractFamily> parse_abstract_family(std::string_view s)
{
  for (auto f : {AbstractFamily::Lc, AbstractFamily::Lcd, AbstractFamily::L, AbstractFamily::Lprime})
    if (to_string(f) == s)
      return f;
  if (s == "L'")
    return AbstractFamily::Lprime;
  if (s == "L'c")
    return AbstractFamily::Lcd;
  return std::nullopt;
}

std::optional<ConcreteFamily> parse_concrete_family(std::string_view s)
{
  for (auto f : {ConcreteFamily::isu, ConcreteFamily::iso, ConcreteFamily::schrodinger, ConcreteFamily::poincare})
    if (to_string(f) == s)
      return f;
  return std::nullopt;
}

std::string Params::to_string() const
{
  return "gamma=" + gamma.to_string() + ",delta=" + delta.to_string() + ",mu=" + mu.to_string();
}

// ---------------------------------------------------------------------------
// Abstract carriers

LieAlgebra build_abstract(AbstractFamily family, const Params &p)
{
  const bool extended = family == AbstractFamily::L || family == AbstractFamily::Lprime;
  const bool dual = family == AbstractFamily::Lcd || family == AbstractFamily::Lprime;
  if (p.gamma.is_zero() || p.delta.is_zero())
    throw AlgebraError("gamma and delta must be nonzero");
  if (extended && p.mu.is_zero())
    throw AlgebraError("mu must be nonzero for the extended carriers");

  std::vector<Generator> gens;
  if (extended)
    gens.push_back({"J", 0});
  const std::size_t o = extended ? 1 : 0;
  const std::size_t J = 0, H = o, E = o + 1, A = o + 2, B = o + 3;
  gens.push_back({"H", 0});
  gens.push_back({"E", 1});
  gens.push_back({"A", dual ? 1 : 0});
  gens.push_back({"B", dual ? 0 : 1});

  std::vector<std::tuple<std::size_t, std::size_t, LieElement>> br;
  br.emplace_back(H, E, basis_element(E, p.delta));
  if (dual)
    br.emplace_back(H, A, basis_element(A, p.delta));
  else
    br.emplace_back(H, B, basis_element(B, p.delta));
  br.emplace_back(A, B, basis_element(E, p.gamma));
  if (extended)
  {
    const GaussianRational sign = dual ? 1 : -1;
    br.emplace_back(J, A, basis_element(A, sign * p.mu));
    br.emplace_back(J, B, basis_element(B, -sign * p.mu));
  }
  return LieAlgebra(std::string(to_string(family)), std::move(gens), br);
}

std::optional<AbstractInfo> classify_abstract(const LieAlgebra &alg)
{
  const bool extended = alg.dimension() == 5;
  if (alg.dimension() != 4 && !extended)
    return std::nullopt;
  auto H = alg.find("H"), E = alg.find("E"), A = alg.find("A"), B = alg.find("B");
  auto J = alg.find("J");
  if (!H || !E || !A || !B || (extended && !J))
    return std::nullopt;
  auto coef = [&](std::size_t i, std::size_t j, std::size_t k) -> GaussianRational {
    const LieElement v = alg.bracket(i, j);
    auto it = v.find(k);
    return it == v.end() ? GaussianRational{} : it->second;
  };
  Params p;
  p.gamma = coef(*A, *B, *E);
  p.delta = coef(*H, *E, *E);
  const bool dual = alg.bracket(*H, *A).size() > 0;
  if (extended)
    p.mu = dual ? coef(*J, *A, *A) : coef(*J, *B, *B);
  if (p.gamma.is_zero() || p.delta.is_zero() || p.mu.is_zero())
    return std::nullopt;
  AbstractFamily family = extended ? (dual ? AbstractFamily::Lprime : AbstractFamily::L)
                                   : (dual ? AbstractFamily::Lcd : AbstractFamily::Lc);
  if (!extended)
    p.mu = 1;
  if (!build_abstract(family, p).same_structure(alg))
    return std::nullopt;
  return AbstractInfo{family, p};
}

// ---------------------------------------------------------------------------
// Concrete algebras

namespace
{

using BracketFn = std::function<LieElement(std::size_t, std::size_t)>;

/// Fills the bracket table from a formula evaluated on ordered pairs, checking
/// that the formula is antisymmetric.
LieAlgebra from_bracket_formula(std::string name, std::vector<Generator> gens, const BracketFn &f)
{
  std::vector<std::tuple<std::size_t, std::size_t, LieElement>> br;
  for (std::size_t i = 0; i < gens.size(); ++i)
  {
    if (!f(i, i).empty())
      throw std::logic_error("bracket formula: [x,x] != 0 for " + gens[i].symbol);
    for (std::size_t j = i + 1; j < gens.size(); ++j)
    {
      LieElement v = f(i, j);
      if (v != scaled(f(j, i), -1))
        throw std::logic_error("bracket formula is not antisymmetric on " + gens[i].symbol + "," + gens[j].symbol);
      if (!v.empty())
        br.emplace_back(i, j, std::move(v));
    }
  }
  return LieAlgebra(std::move(name), std::move(gens), br);
}

int kd(int a, int b) { return a == b ? 1 : 0; }

void require_n(int n, int minimum, std::string_view family)
{
  if (n < minimum)
    throw AlgebraError(std::string(family) + " requires n >= " + std::to_string(minimum) + ", got " +
                       std::to_string(n));
}

/// Index helpers for the concrete bases; indices in formulas are 1-based.
struct IsuBasis
{
  int n;
  std::size_t U(int a, int b) const { return static_cast<std::size_t>((a - 1) * n + (b - 1)); }
  std::size_t Pup(int a) const { return static_cast<std::size_t>(n * n + a - 1); }
  std::size_t Plow(int a) const { return static_cast<std::size_t>(n * n + n + a - 1); }
};

struct IsoBasis
{
  int n;
  std::size_t rot_count() const { return static_cast<std::size_t>(n * (n - 1) / 2); }
  /// Signed Y_ab; Y_ba = -Y_ab, Y_aa = 0.
  LieElement Y(int a, int b) const
  {
    if (a == b)
      return {};
    if (a > b)
      return basis_element(slot(b, a), -1);
    return basis_element(slot(a, b));
  }
  std::size_t slot(int a, int b) const
  {
    // position of (a, b), a < b, in lexicographic order
    std::size_t idx = 0;
    for (int r = 1; r < a; ++r)
      idx += static_cast<std::size_t>(n - r);
    return idx + static_cast<std::size_t>(b - a - 1);
  }
  std::size_t P(int a) const { return rot_count() + static_cast<std::size_t>(a - 1); }
};

LieAlgebra build_isu(int n)
{
  require_n(n, 2, "isu");
  IsuBasis ix{n};
  enum Kind
  {
    U,
    Pup,
    Plow
  };
  struct Info
  {
    Kind kind;
    int a, b;
  };
  std::vector<Generator> gens;
  std::vector<Info> info;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
    {
      gens.push_back({"U^" + std::to_string(a) + "_" + std::to_string(b), 0});
      info.push_back({U, a, b});
    }
  for (int a = 1; a <= n; ++a)
  {
    gens.push_back({"P^" + std::to_string(a), 0});
    info.push_back({Pup, a, 0});
  }
  for (int a = 1; a <= n; ++a)
  {
    gens.push_back({"P_" + std::to_string(a), 0});
    info.push_back({Plow, a, 0});
  }
  // [U^a_b, U^c_d] = U^a_d d_bc - U^c_b d_da; [U^a_b, P^c] = P^a d_bc;
  // [U^a_b, P_c] = -P_b d_ac; translations commute.
  std::function<LieElement(std::size_t, std::size_t)> f = [&](std::size_t i, std::size_t j) -> LieElement {
    const Info x = info[i], y = info[j];
    LieElement out;
    if (x.kind == U && y.kind == U)
    {
      add_scaled(out, basis_element(ix.U(x.a, y.b)), kd(x.b, y.a));
      add_scaled(out, basis_element(ix.U(y.a, x.b)), -kd(y.b, x.a));
      return out;
    }
    if (x.kind == U && y.kind == Pup)
      return basis_element(ix.Pup(x.a), kd(x.b, y.a));
    if (x.kind == U && y.kind == Plow)
      return basis_element(ix.Plow(x.b), -kd(x.a, y.a));
    if (y.kind == U && x.kind != U)
      return scaled(f(j, i), -1);
    return out;
  };
  return from_bracket_formula("isu(" + std::to_string(n) + ")", std::move(gens), f);
}

LieAlgebra build_iso(int n)
{
  require_n(n, 2, "iso");
  IsoBasis ix{n};
  struct Info
  {
    bool rot;
    int a, b;
  };
  std::vector<Generator> gens;
  std::vector<Info> info;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
    {
      gens.push_back({"Y_" + std::to_string(a) + std::to_string(b), 0});
      info.push_back({true, a, b});
    }
  for (int a = 1; a <= n; ++a)
  {
    gens.push_back({"P_" + std::to_string(a), 0});
    info.push_back({false, a, 0});
  }
  std::function<LieElement(std::size_t, std::size_t)> f = [&](std::size_t i, std::size_t j) -> LieElement {
    const Info x = info[i], y = info[j];
    LieElement out;
    if (x.rot && y.rot)
    {
      // [Y_ab, Y_cd] = Y_ad d_bc + Y_bc d_ad - Y_ac d_bd - Y_bd d_ac
      const int a = x.a, b = x.b, c = y.a, d = y.b;
      add_scaled(out, ix.Y(a, d), kd(b, c));
      add_scaled(out, ix.Y(b, c), kd(a, d));
      add_scaled(out, ix.Y(a, c), -kd(b, d));
      add_scaled(out, ix.Y(b, d), -kd(a, c));
      return out;
    }
    if (x.rot && !y.rot)
    {
      // [Y_ab, P_c] = P_a d_bc - P_b d_ac
      add_scaled(out, basis_element(ix.P(x.a)), kd(x.b, y.a));
      add_scaled(out, basis_element(ix.P(x.b)), -kd(x.a, y.a));
      return out;
    }
    if (!x.rot && y.rot)
      return scaled(f(j, i), -1);
    return out;
  };
  return from_bracket_formula("iso(" + std::to_string(n) + ")", std::move(gens), f);
}

LieAlgebra build_schrodinger(int n)
{
  require_n(n, 1, "schrodinger");
  enum Kind
  {
    Pt,
    P,
    G,
    Rot,
    K,
    D,
    M
  };
  struct Info
  {
    Kind kind;
    int a, b;
  };
  std::vector<Generator> gens;
  std::vector<Info> info;
  auto add = [&](std::string sym, Info i) {
    gens.push_back({std::move(sym), 0});
    info.push_back(i);
  };
  add("P_t", {Pt, 0, 0});
  for (int a = 1; a <= n; ++a)
    add("P_" + std::to_string(a), {P, a, 0});
  for (int a = 1; a <= n; ++a)
    add("G_" + std::to_string(a), {G, a, 0});
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      add("J_" + std::to_string(a) + std::to_string(b), {Rot, a, b});
  add("K", {K, 0, 0});
  add("D", {D, 0, 0});
  add("M", {M, 0, 0});

  const std::size_t iK = gens.size() - 3, iD = gens.size() - 2, iM = gens.size() - 1;
  auto iP = [](int a) { return static_cast<std::size_t>(a); };
  auto iG = [n](int a) { return static_cast<std::size_t>(n + a); };
  auto Jrot = [n](int a, int b) -> LieElement {
    if (a == b)
      return {};
    const int lo = std::min(a, b), hi = std::max(a, b);
    std::size_t idx = static_cast<std::size_t>(2 * n + 1);
    for (int r = 1; r < lo; ++r)
      idx += static_cast<std::size_t>(n - r);
    idx += static_cast<std::size_t>(hi - lo - 1);
    return basis_element(idx, a < b ? 1 : -1);
  };

  // Nonvanishing relations, each stated once for an ordered pair of kinds.
  std::function<LieElement(std::size_t, std::size_t)> f = [&](std::size_t i, std::size_t j) -> LieElement {
    const Info x = info[i], y = info[j];
    LieElement out;
    switch (x.kind)
    {
    case Pt:
      if (y.kind == D)
        return basis_element(0, 2);
      if (y.kind == G)
        return basis_element(iP(y.a));
      if (y.kind == K)
        return basis_element(iD);
      break;
    case P:
      if (y.kind == D)
        return basis_element(iP(x.a));
      if (y.kind == K)
        return basis_element(iG(x.a));
      if (y.kind == G)
        return basis_element(iM, kd(x.a, y.a));
      if (y.kind == Rot)
      {
        // [P_a, J_bc] = d_ac P_b - d_ab P_c
        add_scaled(out, basis_element(iP(y.a)), kd(x.a, y.b));
        add_scaled(out, basis_element(iP(y.b)), -kd(x.a, y.a));
        return out;
      }
      break;
    case G:
      if (y.kind == Rot)
      {
        add_scaled(out, basis_element(iG(y.a)), kd(x.a, y.b));
        add_scaled(out, basis_element(iG(y.b)), -kd(x.a, y.a));
        return out;
      }
      break;
    case D:
      if (y.kind == G)
        return basis_element(iG(y.a));
      if (y.kind == K)
        return basis_element(iK, 2);
      break;
    case Rot:
      if (y.kind == Rot)
      {
        // [J_ab, J_cd] = d_ac J_bd + d_bd J_ac - d_ad J_bc - d_bc J_ad
        const int a = x.a, b = x.b, c = y.a, d = y.b;
        add_scaled(out, Jrot(b, d), kd(a, c));
        add_scaled(out, Jrot(a, c), kd(b, d));
        add_scaled(out, Jrot(b, c), -kd(a, d));
        add_scaled(out, Jrot(a, d), -kd(b, c));
        return out;
      }
      break;
    default:
      break;
    }
    // Reverse lookup for the pairs stated the other way round.
    const bool stated_reverse = (y.kind == Pt && (x.kind == D || x.kind == G || x.kind == K)) ||
                                (y.kind == P && (x.kind == D || x.kind == K || x.kind == G || x.kind == Rot)) ||
                                (y.kind == G && x.kind == Rot) || (y.kind == D && (x.kind == G || x.kind == K));
    if (stated_reverse)
      return scaled(f(j, i), -1);
    return out;
  };
  return from_bracket_formula("schrodinger(" + std::to_string(n) + ")", std::move(gens), f);
}

LieAlgebra build_poincare()
{
  // P_t, P_1..3, J_1..3, K_1..3
  std::vector<Generator> gens = {{"P_t", 0}, {"P_1", 0}, {"P_2", 0}, {"P_3", 0}, {"J_1", 0},
                                 {"J_2", 0}, {"J_3", 0}, {"K_1", 0}, {"K_2", 0}, {"K_3", 0}};
  auto iP = [](int a) { return static_cast<std::size_t>(a); };
  auto iJ = [](int a) { return static_cast<std::size_t>(3 + a); };
  auto iK = [](int a) { return static_cast<std::size_t>(6 + a); };
  auto eps = [](int a, int b, int c) {
    return (a - b) * (b - c) * (c - a) / 2;
  };
  enum Kind
  {
    Pt,
    P,
    J,
    K
  };
  auto kind = [](std::size_t i) -> std::pair<Kind, int> {
    if (i == 0)
      return {Pt, 0};
    if (i <= 3)
      return {P, static_cast<int>(i)};
    if (i <= 6)
      return {J, static_cast<int>(i - 3)};
    return {K, static_cast<int>(i - 6)};
  };
  std::function<LieElement(std::size_t, std::size_t)> f = [&](std::size_t i, std::size_t j) -> LieElement {
    const auto [kx, a] = kind(i);
    const auto [ky, b] = kind(j);
    LieElement out;
    if (kx == J)
    {
      // [J_a, X_b] = eps_abc X_c for X in {J, P, K}
      if (ky == Pt)
        return out;
      for (int c = 1; c <= 3; ++c)
      {
        const std::size_t target = ky == J ? iJ(c) : ky == P ? iP(c) : iK(c);
        add_scaled(out, basis_element(target), eps(a, b, c));
      }
      return out;
    }
    if (kx == Pt && ky == K)
      return basis_element(iP(b));
    if (kx == K && ky == K)
    {
      for (int c = 1; c <= 3; ++c)
        add_scaled(out, basis_element(iJ(c)), -eps(a, b, c));
      return out;
    }
    if (kx == P && ky == K)
      return basis_element(0, kd(a, b));
    if (ky == J || (ky == Pt && kx == K) || (kx == K && ky == P))
      return scaled(f(j, i), -1);
    return out;
  };
  return from_bracket_formula("poincare", std::move(gens), f);
}

} // namespace

LieAlgebra build_concrete(ConcreteFamily family, int n)
{
  switch (family)
  {
  case ConcreteFamily::isu:
    return build_isu(n);
  case ConcreteFamily::iso:
    return build_iso(n);
  case ConcreteFamily::schrodinger:
    return build_schrodinger(n);
  case ConcreteFamily::poincare:
    return build_poincare();
  }
  throw AlgebraError("unknown concrete family");
}

// ---------------------------------------------------------------------------

JacobiReport jacobi_check(const LieAlgebra &alg)
{
  JacobiReport report;
  const std::size_t dim = alg.dimension();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      for (std::size_t k = j + 1; k < dim; ++k)
      {
        ++report.triples_checked;
        const LieElement x = basis_element(i), y = basis_element(j), z = basis_element(k);
        LieElement r = alg.bracket(alg.bracket(i, j), z);
        add_scaled(r, alg.bracket(alg.bracket(j, k), x), 1);
        add_scaled(r, alg.bracket(alg.bracket(k, i), y), 1);
        if (!r.empty())
          report.violations.push_back({{i, j, k}, std::move(r)});
      }
  return report;
}

// ---------------------------------------------------------------------------
// Embeddings

namespace
{

std::vector<GaussianRational> coefficients_or_ones(std::vector<GaussianRational> given, std::size_t count,
                                                   std::string_view what)
{
  if (given.empty())
    return std::vector<GaussianRational>(count, GaussianRational(1));
  if (given.size() != count)
    throw AlgebraError("expected " + std::to_string(count) + " " + std::string(what) + " coefficients, got " +
                       std::to_string(given.size()));
  return given;
}

struct CarrierSlots
{
  std::size_t J, H, E, A, B;
};

CarrierSlots slots_of(const LieAlgebra &carrier)
{
  return {carrier.index_of("J"), carrier.index_of("H"), carrier.index_of("E"), carrier.index_of("A"),
          carrier.index_of("B")};
}

EmbeddingRecipe make_recipe(std::string label, LieAlgebra target, const Params &p, LieElement J, LieElement H,
                            LieElement E, LieElement A, LieElement B)
{
  LieAlgebra source = build_abstract(AbstractFamily::L, p);
  const CarrierSlots s = slots_of(source);
  std::vector<LieElement> images(source.dimension());
  images[s.J] = std::move(J);
  images[s.H] = std::move(H);
  images[s.E] = std::move(E);
  images[s.A] = std::move(A);
  images[s.B] = std::move(B);
  return EmbeddingRecipe{std::move(label), std::move(source), std::move(target), std::move(images), p, {}, {}};
}

EmbeddingRecipe isu_embedding(int n, std::vector<GaussianRational> alphas, std::vector<GaussianRational> betas,
                              RecipeVariant variant)
{
  require_n(n, 4, "isu embedding");
  const std::size_t count = static_cast<std::size_t>(n / 2 - 1);
  alphas = coefficients_or_ones(std::move(alphas), count, "alpha");
  betas = coefficients_or_ones(std::move(betas), count, "beta");
  IsuBasis ix{n};
  const GaussianRational i = GaussianRational::i();
  LieElement J, A, B;
  GaussianRational sum;
  for (int k = 2; k <= n / 2; ++k)
  {
    // the partner index of k: n-k+1 (mirror), or n-k as printed
    const int m = variant == RecipeVariant::verbatim ? n - k : n - k + 1;
    const GaussianRational &alpha = alphas[static_cast<std::size_t>(k - 2)];
    const GaussianRational &beta = betas[static_cast<std::size_t>(k - 2)];
    sum += alpha * beta;
    add_scaled(J, basis_element(ix.U(k, m)), 1);
    add_scaled(J, basis_element(ix.U(m, k)), -1);
    add_scaled(A, basis_element(ix.Pup(k)), alpha);
    add_scaled(A, basis_element(ix.Plow(k)), -alpha);
    add_scaled(A, basis_element(ix.Pup(m)), -i * alpha);
    add_scaled(A, basis_element(ix.Plow(m)), i * alpha);
    add_scaled(B, basis_element(ix.U(1, k)), beta);
    add_scaled(B, basis_element(ix.U(k, n)), beta);
    add_scaled(B, basis_element(ix.U(1, m)), i * beta);
    add_scaled(B, basis_element(ix.U(m, n)), i * beta);
  }
  Params p{GaussianRational(-2) * sum, 1, i};
  if (p.gamma.is_zero())
    throw AlgebraError("isu embedding: coefficients give gamma = 0");
  LieElement H = basis_element(ix.U(1, 1));
  add_scaled(H, basis_element(ix.U(n, n)), -1);
  LieElement E = basis_element(ix.Pup(1));
  add_scaled(E, basis_element(ix.Plow(n)), 1);
  auto rec = make_recipe("isu(" + std::to_string(n) + ")" + (variant == RecipeVariant::verbatim ? " verbatim" : ""),
                         build_concrete(ConcreteFamily::isu, n), p, J, H, E, A, B);
  rec.alphas = std::move(alphas);
  rec.betas = std::move(betas);
  return rec;
}

EmbeddingRecipe iso_embedding(int n, std::vector<GaussianRational> alphas, std::vector<GaussianRational> betas)
{
  require_n(n, 4, "iso embedding");
  const std::size_t count = static_cast<std::size_t>(n / 2 - 1);
  alphas = coefficients_or_ones(std::move(alphas), count, "alpha");
  betas = coefficients_or_ones(std::move(betas), count, "beta");
  IsoBasis ix{n};
  const GaussianRational i = GaussianRational::i();
  LieElement J, A, B;
  GaussianRational sum;
  for (int k = 2; k <= n / 2; ++k)
  {
    const int m = n - k + 1;
    const GaussianRational &alpha = alphas[static_cast<std::size_t>(k - 2)];
    const GaussianRational &beta = betas[static_cast<std::size_t>(k - 2)];
    sum += alpha * beta;
    add_scaled(J, ix.Y(k, m), 1);
    add_scaled(A, basis_element(ix.P(k)), alpha);
    add_scaled(A, basis_element(ix.P(m)), -i * alpha);
    add_scaled(B, ix.Y(1, k), beta);
    add_scaled(B, ix.Y(k, n), -i * beta);
    add_scaled(B, ix.Y(1, m), i * beta);
    add_scaled(B, ix.Y(m, n), beta);
  }
  Params p{GaussianRational(-2) * sum, i, i};
  if (p.gamma.is_zero())
    throw AlgebraError("iso embedding: coefficients give gamma = 0");
  LieElement H = ix.Y(1, n);
  LieElement E = basis_element(ix.P(1));
  add_scaled(E, basis_element(ix.P(n)), i);
  auto rec = make_recipe("iso(" + std::to_string(n) + ")", build_concrete(ConcreteFamily::iso, n), p, J, H, E, A, B);
  rec.alphas = std::move(alphas);
  rec.betas = std::move(betas);
  return rec;
}

EmbeddingRecipe schrodinger_embedding(int n, std::vector<GaussianRational> alphas, RecipeVariant variant)
{
  require_n(n, 2, "schrodinger embedding");
  LieAlgebra target = build_concrete(ConcreteFamily::schrodinger, n);
  const int last = n % 2 == 0 ? n - 1 : n - 2;
  const std::size_t count = static_cast<std::size_t>((last + 1) / 2);
  alphas = coefficients_or_ones(std::move(alphas), count, "alpha");
  for (const auto &a : alphas)
    if (a.is_zero())
      throw AlgebraError("schrodinger embedding: alpha coefficients must be nonzero");
  const GaussianRational i = GaussianRational::i();
  LieElement rot, A, E;
  for (int k = 1; k <= last; k += 2)
  {
    const GaussianRational &alpha = alphas[static_cast<std::size_t>(k / 2)];
    add_scaled(rot, basis_element(target.index_of("J_" + std::to_string(k) + std::to_string(k + 1))), i);
    add_scaled(A, basis_element(target.index_of("G_" + std::to_string(k))), alpha);
    add_scaled(A, basis_element(target.index_of("G_" + std::to_string(k + 1))), i * alpha);
    add_scaled(E, basis_element(target.index_of("P_" + std::to_string(k))), alpha);
    add_scaled(E, basis_element(target.index_of("P_" + std::to_string(k + 1))), i * alpha);
  }
  const std::size_t D = target.index_of("D");
  LieElement J = rot;
  add_scaled(J, basis_element(D), 1);
  // As printed, H coincides with J; the homomorphism needs the opposite sign on D.
  LieElement H = rot;
  add_scaled(H, basis_element(D), variant == RecipeVariant::verbatim ? 1 : -1);
  LieElement B = basis_element(target.index_of("P_t"));
  Params p{-1, 2, -2};
  auto rec = make_recipe("schrodinger(" + std::to_string(n) + ")" +
                             (variant == RecipeVariant::verbatim ? " verbatim" : ""),
                         std::move(target), p, J, H, E, A, B);
  rec.alphas = std::move(alphas);
  return rec;
}

EmbeddingRecipe poincare_embedding()
{
  LieAlgebra target = build_concrete(ConcreteFamily::poincare, 0);
  const GaussianRational i = GaussianRational::i();
  auto g = [&](std::string_view s, GaussianRational c = 1) { return basis_element(target.index_of(s), c); };
  LieElement J = g("J_3");
  LieElement H = g("K_3");
  LieElement E = g("P_t");
  add_scaled(E, g("P_3"), -1);
  LieElement A = g("P_1");
  add_scaled(A, g("P_2"), i);
  LieElement B = g("J_1");
  add_scaled(B, g("J_2"), -i);
  add_scaled(B, g("K_1"), i);
  add_scaled(B, g("K_2"), 1);
  Params p{GaussianRational(Rational(0), Rational(2)), 1, i};
  return make_recipe("poincare", std::move(target), p, J, H, E, A, B);
}

} // namespace

EmbeddingRecipe build_embedding(ConcreteFamily family, int n, std::vector<GaussianRational> alphas,
                                std::vector<GaussianRational> betas, RecipeVariant variant)
{
  switch (family)
  {
  case ConcreteFamily::isu:
    return isu_embedding(n, std::move(alphas), std::move(betas), variant);
  case ConcreteFamily::iso:
    return iso_embedding(n, std::move(alphas), std::move(betas));
  case ConcreteFamily::schrodinger:
    return schrodinger_embedding(n, std::move(alphas), variant);
  case ConcreteFamily::poincare:
    return poincare_embedding();
  }
  throw AlgebraError("unknown concrete family");
}

EmbeddingRecipe identity_embedding(const LieAlgebra &carrier)
{
  auto info = classify_abstract(carrier);
  if (!info)
    throw AlgebraError("identity embedding needs a carrier algebra");
  std::vector<LieElement> images;
  for (std::size_t k = 0; k < carrier.dimension(); ++k)
    images.push_back(basis_element(k));
  return EmbeddingRecipe{"identity " + carrier.name(), carrier, carrier, std::move(images), info->params, {}, {}};
}

bool EmbeddingReport::passed() const noexcept
{
  for (const auto &r : relations)
    if (!r.passed)
      return false;
  return true;
}

std::vector<std::string> EmbeddingReport::failed_relations() const
{
  std::vector<std::string> out;
  for (const auto &r : relations)
    if (!r.passed)
      out.push_back(r.name);
  return out;
}

EmbeddingReport embedding_check(const EmbeddingRecipe &rec)
{
  if (rec.images.size() != rec.source.dimension())
    throw AlgebraError("embedding recipe: image count does not match source dimension");
  auto image_of = [&](const LieElement &x) {
    LieElement out;
    for (const auto &[k, c] : x)
      add_scaled(out, rec.images[k], c);
    return out;
  };
  EmbeddingReport report;
  for (std::size_t x = 0; x < rec.source.dimension(); ++x)
    for (std::size_t y = x + 1; y < rec.source.dimension(); ++y)
    {
      LieElement residual = rec.target.bracket(rec.images[x], rec.images[y]);
      add_scaled(residual, image_of(rec.source.bracket(x, y)), -1);
      const bool ok = residual.empty();
      report.relations.push_back(
          {x, y, "[" + rec.source.symbol(x) + "," + rec.source.symbol(y) + "]", ok, std::move(residual)});
    }
  return report;
}

// ---------------------------------------------------------------------------
// L <-> L'

namespace
{

struct Duality
{
  std::size_t A, B;
  /// phi: A -> -B, B -> A on linear combinations of the carrier basis.
  LieElement forward(const LieElement &x) const
  {
    LieElement out;
    for (const auto &[k, c] : x)
    {
      if (k == A)
        add_scaled(out, basis_element(B), -c);
      else if (k == B)
        add_scaled(out, basis_element(A), c);
      else
        add_scaled(out, basis_element(k), c);
    }
    return out;
  }
  /// phi^{-1}: A -> B, B -> -A.
  LieElement backward(const LieElement &x) const
  {
    LieElement out;
    for (const auto &[k, c] : x)
    {
      if (k == A)
        add_scaled(out, basis_element(B), c);
      else if (k == B)
        add_scaled(out, basis_element(A), -c);
      else
        add_scaled(out, basis_element(k), c);
    }
    return out;
  }
};

AbstractFamily counterpart(AbstractFamily f)
{
  switch (f)
  {
  case AbstractFamily::Lc:
    return AbstractFamily::Lcd;
  case AbstractFamily::Lcd:
    return AbstractFamily::Lc;
  case AbstractFamily::L:
    return AbstractFamily::Lprime;
  case AbstractFamily::Lprime:
    return AbstractFamily::L;
  }
  return f;
}

} // namespace

LieAlgebra dualize(const LieAlgebra &alg)
{
  auto info = classify_abstract(alg);
  if (!info)
    throw AlgebraError("dualize expects one of the carrier algebras, got " + alg.name());
  const Duality phi{alg.index_of("A"), alg.index_of("B")};
  std::vector<Generator> gens = alg.generators();
  std::swap(gens[phi.A].zdegree, gens[phi.B].zdegree);
  std::vector<std::tuple<std::size_t, std::size_t, LieElement>> br;
  for (std::size_t u = 0; u < alg.dimension(); ++u)
    for (std::size_t v = u + 1; v < alg.dimension(); ++v)
    {
      LieElement value =
          phi.forward(alg.bracket(phi.backward(basis_element(u)), phi.backward(basis_element(v))));
      if (!value.empty())
        br.emplace_back(u, v, std::move(value));
    }
  return LieAlgebra(std::string(to_string(counterpart(info->family))), std::move(gens), br);
}

EmbeddingRecipe dualize(const EmbeddingRecipe &rec)
{
  const Duality phi{rec.source.index_of("A"), rec.source.index_of("B")};
  EmbeddingRecipe out = rec;
  out.source = dualize(rec.source);
  out.images[phi.A] = rec.images[phi.B];
  out.images[phi.B] = scaled(rec.images[phi.A], -1);
  out.label = rec.label + " dual";
  return out;
}

} // namespace twistkit
