#include "twistkit/twistengine.hpp"

#include <algorithm>
#include <cctype>

namespace twistkit
{

// ---------------------------------------------------------------------------
// Carrier

Carrier::Carrier(AbstractFamily family, const Params &params, int order)
    : m_family(family), m_params(params), m_uea(Uea::create(build_abstract(family, params), order)),
      m_sigma(m_uea)
{
  if (params.delta.is_zero())
    throw AlgebraError("delta must be nonzero: sigma = ln(1 + gamma E)/delta");
  const auto &alg = m_uea->algebra();
  const UEAElement e = UEAElement::generator(m_uea, alg.index_of("E"));
  m_sigma = series_apply(SeriesKind::log1p, e * params.gamma) * params.delta.inverse();
  if (!has_j())
    return;
  if (params.mu.is_zero())
    throw AlgebraError("mu must be nonzero on the five-dimensional carriers");
  const GaussianRational mu_inv = params.mu.inverse();
  if (family == AbstractFamily::L)
  {
    const UEAElement b = UEAElement::generator(m_uea, alg.index_of("B"));
    const UEAElement beta = b * exponential(-1);
    m_rho = series_apply(SeriesKind::log1p, beta * params.mu) * mu_inv;
  }
  else
  {
    const UEAElement a = UEAElement::generator(m_uea, alg.index_of("A"));
    m_rho = series_apply(SeriesKind::log1p, a * params.mu) * mu_inv;
  }
}

std::shared_ptr<const Carrier> Carrier::create(AbstractFamily family, const Params &params, int order)
{
  return std::shared_ptr<const Carrier>(new Carrier(family, params, order));
}

bool Carrier::has_j() const noexcept { return m_family == AbstractFamily::L || m_family == AbstractFamily::Lprime; }

const UEAElement &Carrier::rho() const
{
  if (!m_rho)
    throw AlgebraError("rho is only defined on the carriers with J");
  return *m_rho;
}

const UEAElement &Carrier::exponential(int a, int b, int c) const
{
  const auto key = std::tuple{a, b, c};
  {
    std::lock_guard lock(m_mutex);
    if (auto it = m_exp_cache.find(key); it != m_exp_cache.end())
      return it->second;
  }
  UEAElement arg = m_sigma * (m_params.delta * GaussianRational(a));
  if (b != 0)
    arg += rho() * (m_params.mu * GaussianRational(b));
  if (c != 0)
    arg += m_sigma * (m_params.mu * GaussianRational(c));
  UEAElement value = series_apply(SeriesKind::exp, arg);
  std::lock_guard lock(m_mutex);
  return m_exp_cache.emplace(key, std::move(value)).first->second;
}

// ---------------------------------------------------------------------------
// Families

namespace
{

struct FamilyName
{
  TwistFamily family;
  std::string_view name;
};

constexpr FamilyName k_family_names[] = {
    {TwistFamily::FP, "FP"},
    {TwistFamily::FPprime, "FPprime"},
    {TwistFamily::F, "F"},
    {TwistFamily::Ftilde, "Ftilde"},
    {TwistFamily::Fprime, "Fprime"},
    {TwistFamily::Ftildeprime, "Ftildeprime"},
    {TwistFamily::Phi_j, "Phi_j"},
    {TwistFamily::Phi_P, "Phi_P"},
    {TwistFamily::Phi_Pprime, "Phi_Pprime"},
    {TwistFamily::Phi, "Phi"},
    {TwistFamily::Phi21, "Phi21"},
    {TwistFamily::PhiPrime, "PhiPrime"},
    {TwistFamily::PhiPrime21, "PhiPrime21"},
};

bool is_unprimed_c(AbstractFamily c) { return c == AbstractFamily::Lc || c == AbstractFamily::L; }
bool is_primed_c(AbstractFamily c) { return c == AbstractFamily::Lcd || c == AbstractFamily::Lprime; }

} // namespace

std::string to_string(TwistFamily f)
{
  for (const auto &[fam, name] : k_family_names)
    if (fam == f)
      return std::string(name);
  return "?";
}

TwistFamily parse_twist_family(std::string_view s)
{
  for (const auto &[fam, name] : k_family_names)
    if (name == s)
      return fam;
  std::string known;
  for (const auto &[fam, name] : k_family_names)
    known += (known.empty() ? "" : ", ") + std::string(name);
  throw std::invalid_argument("unknown twist family '" + std::string(s) + "' (known: " + known + ")");
}

const std::vector<TwistFamily> &composite_twists()
{
  static const std::vector<TwistFamily> v{TwistFamily::FP, TwistFamily::FPprime, TwistFamily::F,
                                          TwistFamily::Ftilde, TwistFamily::Fprime, TwistFamily::Ftildeprime};
  return v;
}

const std::vector<TwistFamily> &all_twist_families()
{
  static const std::vector<TwistFamily> v = [] {
    std::vector<TwistFamily> out;
    for (const auto &fn : k_family_names)
      out.push_back(fn.family);
    return out;
  }();
  return v;
}

bool supports(TwistFamily twist, AbstractFamily carrier)
{
  switch (twist)
  {
  case TwistFamily::Phi_j:
    return true;
  case TwistFamily::FP:
  case TwistFamily::Phi_P:
    return is_unprimed_c(carrier);
  case TwistFamily::FPprime:
  case TwistFamily::Phi_Pprime:
    return is_primed_c(carrier);
  case TwistFamily::F:
  case TwistFamily::Ftilde:
  case TwistFamily::Phi:
  case TwistFamily::Phi21:
    return carrier == AbstractFamily::L;
  case TwistFamily::Fprime:
  case TwistFamily::Ftildeprime:
  case TwistFamily::PhiPrime:
  case TwistFamily::PhiPrime21:
    return carrier == AbstractFamily::Lprime;
  }
  return false;
}

AbstractFamily natural_carrier(TwistFamily twist)
{
  switch (twist)
  {
  case TwistFamily::FP:
  case TwistFamily::Phi_j:
  case TwistFamily::Phi_P:
    return AbstractFamily::Lc;
  case TwistFamily::FPprime:
  case TwistFamily::Phi_Pprime:
    return AbstractFamily::Lcd;
  case TwistFamily::F:
  case TwistFamily::Ftilde:
  case TwistFamily::Phi:
  case TwistFamily::Phi21:
    return AbstractFamily::L;
  default:
    return AbstractFamily::Lprime;
  }
}

// ---------------------------------------------------------------------------
// Twisting elements

namespace
{

TensorElement exp_tensor(const UEAElement &a, const UEAElement &b)
{
  return series_apply(SeriesKind::exp, tensor(a, b));
}

/// Single-factor twists as (name, element).
std::pair<std::string, TensorElement> factor(TwistFamily f, const Carrier &c)
{
  switch (f)
  {
  case TwistFamily::Phi_j:
    return {"Phi_j", exp_tensor(c.generator("H"), c.sigma())};
  case TwistFamily::Phi_P:
    return {"Phi_P", exp_tensor(c.generator("A"), c.generator("B") * c.exponential(-1))};
  case TwistFamily::Phi_Pprime:
    return {"Phi_Pprime", exp_tensor(c.generator("A"), c.generator("B"))};
  case TwistFamily::Phi:
    return {"Phi", exp_tensor(c.generator("J"), c.rho())};
  case TwistFamily::Phi21:
    return {"Phi21", flip21(exp_tensor(c.generator("J"), c.rho()))};
  case TwistFamily::PhiPrime:
    return {"PhiPrime", exp_tensor(c.generator("J"), c.rho())};
  case TwistFamily::PhiPrime21:
    return {"PhiPrime21", flip21(exp_tensor(c.generator("J"), c.rho()))};
  default:
    throw std::logic_error("not a single-factor twist");
  }
}

std::vector<TwistFamily> factor_list(TwistFamily f)
{
  using T = TwistFamily;
  switch (f)
  {
  case T::FP:
    return {T::Phi_P, T::Phi_j};
  case T::FPprime:
    return {T::Phi_Pprime, T::Phi_j};
  case T::F:
    return {T::Phi, T::Phi_P, T::Phi_j};
  case T::Ftilde:
    return {T::Phi21, T::Phi_P, T::Phi_j};
  case T::Fprime:
    return {T::PhiPrime, T::Phi_Pprime, T::Phi_j};
  case T::Ftildeprime:
    return {T::PhiPrime21, T::Phi_Pprime, T::Phi_j};
  default:
    return {f};
  }
}

} // namespace

TwistBundle TwistBundle::from_factors(TwistFamily family, CarrierPtr carrier, std::vector<std::string> names,
                                      std::vector<TensorElement> factors)
{
  if (names.size() != factors.size())
    throw std::invalid_argument("factor names and factors differ in length");
  TensorElement element = TensorElement::one(carrier->uea(), 2);
  for (const auto &f : factors)
    element = element * f;
  TensorElement inverse = tensor_inverse(element);
  return TwistBundle{family, std::move(carrier), std::move(names), std::move(factors), std::move(element),
                     std::move(inverse)};
}

TwistBundle build_twist(TwistFamily family, const CarrierPtr &carrier)
{
  if (!supports(family, carrier->family()))
    throw AlgebraError("twist " + to_string(family) + " cannot be built on " +
                       std::string(to_string(carrier->family())));
  std::vector<std::string> names;
  std::vector<TensorElement> factors;
  for (auto f : factor_list(family))
  {
    auto [name, value] = factor(f, *carrier);
    names.push_back(std::move(name));
    factors.push_back(std::move(value));
  }
  return TwistBundle::from_factors(family, carrier, std::move(names), std::move(factors));
}

TensorElement twisted_coproduct(const TwistBundle &tw, const UEAElement &x)
{
  return tw.element * coproduct(x) * tw.inverse;
}

std::optional<TwistFamily> base_twist(TwistFamily f)
{
  switch (f)
  {
  case TwistFamily::Phi_P:
  case TwistFamily::Phi_Pprime:
    return TwistFamily::Phi_j;
  case TwistFamily::Phi:
  case TwistFamily::Phi21:
    return TwistFamily::FP;
  case TwistFamily::PhiPrime:
  case TwistFamily::PhiPrime21:
    return TwistFamily::FPprime;
  default:
    return std::nullopt;
  }
}

CocycleResult cocycle_check(const TwistBundle &tw)
{
  const auto base = base_twist(tw.family);
  std::optional<TwistBundle> base_bundle;
  std::optional<Conjugation> conj;
  if (base)
  {
    base_bundle = build_twist(*base, tw.carrier);
    conj = base_bundle->conjugation();
  }
  const Conjugation *c = conj ? &*conj : nullptr;
  const auto &f = tw.element;
  TensorElement lhs = leg_embed(f, Placement::p12) * apply_delta(f, DeltaLeg::first, c);
  TensorElement rhs = leg_embed(f, Placement::p23) * apply_delta(f, DeltaLeg::second, c);
  TensorElement residual = lhs - rhs;
  return {base, std::move(lhs), std::move(rhs), std::move(residual)};
}

bool CounitResult::passed() const { return left == left.one_like() && right == right.one_like(); }

CounitResult counit_check(const TwistBundle &tw)
{
  return {counit_leg(tw.element, 0), counit_leg(tw.element, 1)};
}

bool inverse_check(const TwistBundle &tw)
{
  const auto one = tw.element.one_like();
  return tw.element * tw.inverse == one && tw.inverse * tw.element == one;
}

// ---------------------------------------------------------------------------
// Formula evaluation

namespace
{

bool consume(std::string_view &s, std::string_view prefix)
{
  if (s.substr(0, prefix.size()) != prefix)
    return false;
  s.remove_prefix(prefix.size());
  return true;
}

/// Parses "-2δσ-μρ" into the (a, b, c) slots of Carrier::exponential.
std::tuple<int, int, int> parse_exponent(std::string_view s, bool primed)
{
  int a = 0, b = 0, c = 0;
  const std::string_view original = s;
  if (s.empty())
    throw std::invalid_argument("empty exponent");
  while (!s.empty())
  {
    int sign = 1;
    if (consume(s, "-"))
      sign = -1;
    else
      consume(s, "+");
    int mult = 0;
    bool digits = false;
    while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front())))
    {
      mult = mult * 10 + (s.front() - '0');
      s.remove_prefix(1);
      digits = true;
    }
    if (!digits)
      mult = 1;
    mult *= sign;
    if (consume(s, "δσ"))
      a += mult;
    else if (consume(s, "μρ'"))
    {
      if (!primed)
        throw std::invalid_argument("ρ' used outside the primed carrier in '" + std::string(original) + "'");
      b += mult;
    }
    else if (consume(s, "μρ"))
    {
      if (primed)
        throw std::invalid_argument("ρ used on the primed carrier in '" + std::string(original) + "'");
      b += mult;
    }
    else if (consume(s, "σμ"))
      c += mult;
    else
      throw std::invalid_argument("cannot parse exponent '" + std::string(original) + "'");
  }
  return {a, b, c};
}

} // namespace

UEAElement evaluate_factor(const Carrier &c, std::string_view text)
{
  const bool primed = c.family() == AbstractFamily::Lprime || c.family() == AbstractFamily::Lcd;
  UEAElement out = c.one();
  std::size_t pos = 0;
  while (pos < text.size())
  {
    if (text[pos] == ' ')
    {
      ++pos;
      continue;
    }
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    pos = end;
    if (tok == "1")
      continue;
    if (consume(tok, "e^{"))
    {
      if (tok.empty() || tok.back() != '}')
        throw std::invalid_argument("unterminated exponential in '" + std::string(text) + "'");
      tok.remove_suffix(1);
      const auto [a, b, cc] = parse_exponent(tok, primed);
      out = out * c.exponential(a, b, cc);
    }
    else
      out = out * c.generator(tok);
  }
  return out;
}

TensorElement evaluate_formula(const Carrier &c, const std::vector<FormulaTerm> &terms)
{
  TensorElement out(c.uea(), 2);
  for (const auto &t : terms)
    out += tensor(evaluate_factor(c, t.left), evaluate_factor(c, t.right)) * t.coef(c.params());
  return out;
}

namespace
{

std::string compact(std::string_view factor)
{
  std::string out;
  for (char ch : factor)
    if (ch != ' ')
      out += ch;
  return out;
}

} // namespace

std::string render_formula(const std::vector<FormulaTerm> &terms)
{
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k)
  {
    const auto &t = terms[k];
    std::string label = t.coef_label;
    bool negative = !label.empty() && label.front() == '-';
    if (!label.empty() && (label.front() == '-' || label.front() == '+'))
      label.erase(0, 1);
    if (k == 0)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (!label.empty())
      out += label + " ";
    out += compact(t.left) + "⊗" + compact(t.right);
  }
  return out;
}

std::string to_string(ReadingKind k)
{
  switch (k)
  {
  case ReadingKind::verbatim:
    return "verbatim";
  case ReadingKind::alternative:
    return "alternative";
  case ReadingKind::corrected:
    return "corrected";
  }
  return "?";
}

std::string to_string(EntryStatus s)
{
  switch (s)
  {
  case EntryStatus::match:
    return "match";
  case EntryStatus::recorded_mismatch:
    return "recorded-mismatch";
  case EntryStatus::fail:
    return "fail";
  case EntryStatus::computed:
    return "computed";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Published tables

namespace
{

using Coef = std::function<GaussianRational(const Params &)>;

const Coef k_one = [](const Params &) { return GaussianRational(1); };
const Coef k_minus_one = [](const Params &) { return GaussianRational(-1); };
const Coef k_minus_delta = [](const Params &p) { return -p.delta; };
const Coef k_gamma = [](const Params &p) { return p.gamma; };
const Coef k_minus_gamma = [](const Params &p) { return -p.gamma; };
const Coef k_one_minus_delta = [](const Params &p) { return GaussianRational(1) - p.delta; };
const Coef k_delta_over_mu = [](const Params &p) { return p.delta / p.mu; };
const Coef k_minus_delta_over_mu = [](const Params &p) { return -(p.delta / p.mu); };

FormulaTerm T(std::string left, std::string right) { return {k_one, "", std::move(left), std::move(right)}; }
FormulaTerm T(const Coef &c, std::string label, std::string left, std::string right)
{
  return {c, std::move(label), std::move(left), std::move(right)};
}

Reading verbatim(std::vector<FormulaTerm> terms) { return {ReadingKind::verbatim, "", std::move(terms)}; }

TableEntry entry(std::string gen, std::vector<FormulaTerm> terms) { return {std::move(gen), {verbatim(std::move(terms))}}; }

TableEntry primitive(std::string gen) { return entry(gen, {T(gen, "1"), T("1", gen)}); }

TableEntry delta_e() { return entry("E", {T("E", "e^{δσ}"), T("1", "E")}); }

std::vector<TableEntry> table_fp(bool with_j)
{
  std::vector<TableEntry> t;
  if (with_j)
    t.push_back(primitive("J"));
  t.push_back(entry("H", {T("H", "e^{-δσ}"), T("1", "H"), T(k_minus_delta, "-δ", "A", "B e^{-2δσ}")}));
  t.push_back(entry("E", delta_e().readings[0].terms));
  t.push_back(entry("A", {T("A", "e^{-δσ}"), T("1", "A")}));
  t.push_back(entry("B", {T("B", "e^{δσ}"), T("e^{δσ}", "B")}));
  return t;
}

std::vector<TableEntry> table_fpprime(bool with_j)
{
  std::vector<TableEntry> t;
  if (with_j)
    t.push_back(primitive("J"));
  t.push_back(entry("H", {T("H", "e^{-δσ}"), T("1", "H"), T(k_minus_delta, "-δ", "A", "B e^{-δσ}")}));
  t.push_back(delta_e());
  t.push_back(primitive("A"));
  t.push_back(entry("B", {T("B", "1"), T("e^{δσ}", "B")}));
  return t;
}

std::vector<TableEntry> table_f()
{
  TableEntry h{"H",
               {verbatim({T("H", "e^{-δσ}"), T("1", "H"), T(k_one_minus_delta, "-(δ-1)", "J", "e^{-μρ} B e^{-δσ}"),
                          T(k_minus_one, "-", "J", "e^{-μρ} B e^{-2δσ}"),
                          T(k_minus_delta, "-δ", "A", "B e^{-2δσ-μρ}")}),
                {ReadingKind::corrected,
                 "the J term is -δ J⊗e^{-μρ}Be^{-2δσ}; the printed (δ-1)Be^{-δσ} + Be^{-2δσ} agrees only at δ = 1",
                 {T("H", "e^{-δσ}"), T("1", "H"), T(k_minus_delta, "-δ", "J", "e^{-μρ} B e^{-2δσ}"),
                  T(k_minus_delta, "-δ", "A", "B e^{-2δσ-μρ}")}}}};
  return {
      entry("J", {T("J", "e^{-μρ}"), T("1", "J")}),
      h,
      delta_e(),
      entry("A", {T("A", "e^{-δσ-μρ}"), T("1", "A"), T(k_minus_gamma, "-γ", "J", "E e^{-δσ-μρ}")}),
      entry("B", {T("B", "e^{δσ+μρ}"), T("e^{δσ}", "B")}),
  };
}

std::vector<TableEntry> table_ftilde()
{
  auto a_reading = [](ReadingKind kind, std::string note, std::string last) {
    return Reading{kind, std::move(note),
                   {T("A", "e^{-δσ}"), T("e^{-μρ}", "A"),
                    T(k_minus_gamma, "-γ", "E e^{-δσ-μρ}", "J " + std::move(last))}};
  };
  TableEntry a{"A",
               {a_reading(ReadingKind::verbatim, "", "e^{-σμ}"),
                a_reading(ReadingKind::alternative, "last factor read as e^{-μρ}", "e^{-μρ}"),
                a_reading(ReadingKind::corrected, "last factor read as e^{-δσ}", "e^{-δσ}")}};
  return {
      entry("J", {T("J", "1"), T("e^{-μρ}", "J")}),
      TableEntry{"H", {}},
      delta_e(),
      a,
      entry("B", {T("B", "e^{δσ}"), T("e^{δσ+μρ}", "B")}),
  };
}

std::vector<TableEntry> table_fprime()
{
  return {
      entry("J", {T("J", "e^{-μρ'}"), T("1", "J")}),
      TableEntry{"H", {}},
      delta_e(),
      entry("A", {T("A", "e^{μρ'}"), T("1", "A")}),
      entry("B", {T("B", "e^{-μρ'}"), T("e^{δσ}", "B"), T(k_gamma, "+γ", "J e^{δσ}", "E e^{-μρ'}")}),
  };
}

std::vector<TableEntry> table_ftildeprime()
{
  return {
      entry("J", {T("J", "1"), T("e^{-μρ'}", "J")}),
      entry("H", {T("H", "e^{-δσ}"), T("1", "H"), T(k_delta_over_mu, "+δ/μ", "e^{-μρ'}", "J e^{-δσ}"),
                  T(k_minus_delta_over_mu, "-δ/μ", "1", "J e^{-δσ}"),
                  T(k_minus_delta, "-δ", "A e^{-μρ'}", "B e^{-δσ}")}),
      delta_e(),
      entry("A", {T("A", "1"), T("e^{μρ'}", "A")}),
      entry("B", {T("B", "1"), T("e^{δσ-μρ'}", "B"), T(k_gamma, "+γ", "E e^{-μρ'}", "J")}),
  };
}

} // namespace

std::vector<TableEntry> coproduct_table(TwistFamily family, AbstractFamily carrier)
{
  if (!supports(family, carrier))
    throw AlgebraError("twist " + to_string(family) + " cannot be built on " + std::string(to_string(carrier)));
  const bool with_j = carrier == AbstractFamily::L || carrier == AbstractFamily::Lprime;
  switch (family)
  {
  case TwistFamily::FP:
    return table_fp(with_j);
  case TwistFamily::FPprime:
    return table_fpprime(with_j);
  case TwistFamily::F:
    return table_f();
  case TwistFamily::Ftilde:
    return table_ftilde();
  case TwistFamily::Fprime:
    return table_fprime();
  case TwistFamily::Ftildeprime:
    return table_ftildeprime();
  default:
    throw AlgebraError("no published coproduct table for " + to_string(family));
  }
}

std::vector<CoproductComparison> coproduct_table_check(const TwistBundle &tw)
{
  const Carrier &c = *tw.carrier;
  std::vector<CoproductComparison> out;
  for (const auto &e : coproduct_table(tw.family, c.family()))
  {
    CoproductComparison cmp{e.generator, EntryStatus::computed, twisted_coproduct(tw, c.generator(e.generator)), {}, {}};
    for (const auto &r : e.readings)
    {
      TensorElement diff = cmp.computed - evaluate_formula(c, r.terms);
      const bool ok = diff.is_zero();
      cmp.outcomes.push_back({r, ok, std::move(diff)});
    }
    if (!e.readings.empty())
    {
      const bool verbatim_ok = cmp.outcomes.front().matches;
      const ReadingOutcome *fix = nullptr;
      std::size_t fix_index = 0;
      for (std::size_t k = 1; k < cmp.outcomes.size(); ++k)
        if (cmp.outcomes[k].matches && fix == nullptr)
        {
          fix = &cmp.outcomes[k];
          fix_index = k;
        }
      if (verbatim_ok)
        cmp.status = EntryStatus::match;
      else if (fix != nullptr)
      {
        cmp.status = EntryStatus::recorded_mismatch;
        const auto &r = e.readings[fix_index];
        cmp.ledger = "Δ_" + to_string(tw.family) + "(" + e.generator + "): printed form " +
                     render_formula(e.readings.front().terms) + " differs from the computed coproduct; " +
                     to_string(r.kind) + " reading " + render_formula(r.terms) + " matches" +
                     (r.note.empty() ? "" : " (" + r.note + ")");
      }
      else
        cmp.status = EntryStatus::fail;
    }
    out.push_back(std::move(cmp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorization identities

namespace
{

struct FactorizationName
{
  FactorizationId id;
  std::string_view name;
};

constexpr FactorizationName k_factorization_names[] = {
    {FactorizationId::fac_FP, "fac-FP"},           {FactorizationId::fac_FPprime, "fac-FPprime"},
    {FactorizationId::fac_PhiP, "fac-PhiP"},       {FactorizationId::fac2, "fac2"},
    {FactorizationId::fact1_P, "fact1-P"},         {FactorizationId::fact1_Pprime, "fact1-Pprime"},
    {FactorizationId::fact2_P, "fact2-P"},         {FactorizationId::fact2_Pprime, "fact2-Pprime"},
};

/// Undeformed, or twisted by a bundle.
struct Coproduct
{
  const TwistBundle *twist = nullptr;
};

TensorElement apply(const TensorElement &psi, DeltaLeg leg, Coproduct d)
{
  if (d.twist == nullptr)
    return apply_delta(psi, leg);
  const Conjugation conj = d.twist->conjugation();
  return apply_delta(psi, leg, &conj);
}

} // namespace

std::string to_string(FactorizationId id)
{
  for (const auto &[i, name] : k_factorization_names)
    if (i == id)
      return std::string(name);
  return "?";
}

FactorizationId parse_factorization(std::string_view s)
{
  for (const auto &[i, name] : k_factorization_names)
    if (name == s)
      return i;
  throw std::invalid_argument("unknown factorization identity '" + std::string(s) + "'");
}

const std::vector<FactorizationId> &all_factorizations()
{
  static const std::vector<FactorizationId> v = [] {
    std::vector<FactorizationId> out;
    for (const auto &fn : k_factorization_names)
      out.push_back(fn.id);
    return out;
  }();
  return v;
}

AbstractFamily factorization_carrier(FactorizationId id)
{
  switch (id)
  {
  case FactorizationId::fac_FP:
  case FactorizationId::fac_PhiP:
    return AbstractFamily::Lc;
  case FactorizationId::fac_FPprime:
  case FactorizationId::fac2:
    return AbstractFamily::Lcd;
  case FactorizationId::fact1_P:
  case FactorizationId::fact2_P:
    return AbstractFamily::L;
  default:
    return AbstractFamily::Lprime;
  }
}

FactorizationResult factorization_check(FactorizationId id, const CarrierPtr &carrier)
{
  if (carrier->family() != factorization_carrier(id))
    throw AlgebraError(to_string(id) + " lives on " + std::string(to_string(factorization_carrier(id))));
  using T = TwistFamily;
  std::optional<TwistBundle> psi_bundle, left_bundle, right_bundle;
  auto bundle = [&](T f) { return build_twist(f, carrier); };
  switch (id)
  {
  case FactorizationId::fac_FP:
    psi_bundle = bundle(T::FP);
    right_bundle = psi_bundle;
    break;
  case FactorizationId::fac_FPprime:
    psi_bundle = bundle(T::FPprime);
    right_bundle = psi_bundle;
    break;
  case FactorizationId::fac_PhiP:
    psi_bundle = bundle(T::Phi_P);
    left_bundle = bundle(T::Phi_j);
    right_bundle = bundle(T::FP);
    break;
  case FactorizationId::fac2:
    psi_bundle = bundle(T::Phi_Pprime);
    left_bundle = bundle(T::FPprime);
    right_bundle = bundle(T::Phi_j);
    break;
  case FactorizationId::fact1_P:
    psi_bundle = bundle(T::Phi);
    left_bundle = bundle(T::FP);
    right_bundle = bundle(T::F);
    break;
  case FactorizationId::fact1_Pprime:
    psi_bundle = bundle(T::PhiPrime);
    left_bundle = bundle(T::FPprime);
    right_bundle = bundle(T::Fprime);
    break;
  case FactorizationId::fact2_P:
    psi_bundle = bundle(T::Phi21);
    left_bundle = bundle(T::Ftilde);
    right_bundle = bundle(T::FP);
    break;
  case FactorizationId::fact2_Pprime:
    psi_bundle = bundle(T::PhiPrime21);
    left_bundle = bundle(T::Ftildeprime);
    right_bundle = bundle(T::FPprime);
    break;
  }
  const TensorElement &psi = psi_bundle->element;
  const Coproduct left{left_bundle ? &*left_bundle : nullptr};
  const Coproduct right{right_bundle ? &*right_bundle : nullptr};
  const TensorElement psi12 = leg_embed(psi, Placement::p12);
  const TensorElement psi13 = leg_embed(psi, Placement::p13);
  const TensorElement psi23 = leg_embed(psi, Placement::p23);
  return {id, apply(psi, DeltaLeg::first, left) - psi13 * psi23, apply(psi, DeltaLeg::second, right) - psi12 * psi13};
}

// ---------------------------------------------------------------------------

bool ClassicalLimitResult::passed() const
{
  return element_is_one &&
         std::all_of(generators.begin(), generators.end(), [](const GeneratorCheck &g) { return g.passed; });
}

ClassicalLimitResult classical_limit_check(const TwistBundle &tw)
{
  ClassicalLimitResult out;
  const auto flat = build_twist(tw.family, tw.carrier->with_order(0));
  out.element_is_one = flat.element == flat.element.one_like() && flat.inverse == flat.inverse.one_like();
  const auto &alg = tw.carrier->algebra();
  for (std::size_t g = 0; g < alg.dimension(); ++g)
  {
    const UEAElement x = UEAElement::generator(tw.carrier->uea(), g);
    const TensorElement twisted = twisted_coproduct(tw, x).component(0);
    const TensorElement plain = coproduct(x).component(0);
    GeneratorCheck chk{std::string(alg.symbol(g)), twisted == plain, plain.is_zero() && twisted.is_zero(),
                       twisted - plain};
    out.generators.push_back(std::move(chk));
  }
  return out;
}

std::vector<GeneratorCheck> twisted_coassociativity_check(const TwistBundle &tw)
{
  std::vector<GeneratorCheck> out;
  const auto &alg = tw.carrier->algebra();
  const Conjugation conj = tw.conjugation();
  for (std::size_t g = 0; g < alg.dimension(); ++g)
  {
    const TensorElement d = twisted_coproduct(tw, UEAElement::generator(tw.carrier->uea(), g));
    TensorElement residual = apply_delta(d, DeltaLeg::first, &conj) - apply_delta(d, DeltaLeg::second, &conj);
    const bool ok = residual.is_zero();
    out.push_back({std::string(alg.symbol(g)), ok, false, std::move(residual)});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> homomorphism_check(const TwistBundle &tw)
{
  std::vector<std::pair<std::string, std::string>> failures;
  const auto &alg = tw.carrier->algebra();
  const auto &u = tw.carrier->uea();
  std::vector<TensorElement> images;
  for (std::size_t g = 0; g < alg.dimension(); ++g)
    images.push_back(twisted_coproduct(tw, UEAElement::generator(u, g)));
  for (std::size_t i = 0; i < alg.dimension(); ++i)
    for (std::size_t j = i + 1; j < alg.dimension(); ++j)
    {
      const TensorElement lhs = twisted_coproduct(tw, UEAElement::from_lie(u, alg.bracket(i, j)));
      const TensorElement rhs = images[i] * images[j] - images[j] * images[i];
      if (!(lhs == rhs))
        failures.emplace_back(alg.symbol(i), alg.symbol(j));
    }
  return failures;
}

bool is_primitive(const TwistBundle &tw, const UEAElement &x)
{
  const UEAElement one = x.one_like();
  return twisted_coproduct(tw, x) == tensor(x, one) + tensor(one, x);
}

} // namespace twistkit
