#include "twistkit/cli.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace twistkit::cli
{

using nlohmann::ordered_json;

std::string to_string(Status s)
{
  switch (s)
  {
  case Status::pass:
    return "pass";
  case Status::fail:
    return "fail";
  case Status::recorded_mismatch:
    return "recorded-mismatch";
  case Status::vacuous:
    return "vacuous";
  }
  return "?";
}

std::size_t Report::count(Status s) const
{
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [s](const ReportEntry &e) { return e.status == s; }));
}

const std::vector<std::string> &suite_names()
{
  static const std::vector<std::string> names{"jacobi",        "embedding", "cocycle", "counit",
                                              "coproducts",    "factorization", "coassoc", "rmatrix",
                                              "cybe",          "qybe",      "classical-limit", "all"};
  return names;
}

// ---------------------------------------------------------------------------
// Parameters

namespace
{

std::vector<std::string> split(std::string_view text, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true)
  {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

GaussianRational parse_value(const std::string &name, const std::string &text)
{
  try
  {
    return parse_gaussian(text);
  }
  catch (const ParseError &e)
  {
    throw UsageError("bad value for " + name + ": " + e.what());
  }
}

} // namespace

Params parse_params(std::string_view text)
{
  const auto parts = split(text, ',');
  std::array<std::optional<GaussianRational>, 3> values;
  static const std::array<const char *, 3> names{"gamma", "delta", "mu"};
  const bool positional =
      std::none_of(parts.begin(), parts.end(), [](const std::string &p) { return p.find('=') != std::string::npos; });
  if (positional)
  {
    if (parts.size() != 3)
      throw UsageError("--params expects three values gamma,delta,mu or key=value pairs");
    for (std::size_t k = 0; k < 3; ++k)
      values[k] = parse_value(names[k], trim(parts[k]));
  }
  else
  {
    for (const auto &part : parts)
    {
      const auto eq = part.find('=');
      if (eq == std::string::npos)
        throw UsageError("--params: expected key=value, got '" + part + "'");
      const std::string key = trim(std::string_view(part).substr(0, eq));
      int slot = -1;
      if (key == "γ" || key == "gamma" || key == "g")
        slot = 0;
      else if (key == "δ" || key == "delta" || key == "d")
        slot = 1;
      else if (key == "μ" || key == "mu" || key == "m")
        slot = 2;
      else
        throw UsageError("--params: unknown parameter '" + key + "'");
      if (values[slot])
        throw UsageError(std::string("--params: ") + names[slot] + " given twice");
      values[slot] = parse_value(names[slot], trim(std::string_view(part).substr(eq + 1)));
    }
  }
  for (std::size_t k = 0; k < 3; ++k)
  {
    if (!values[k])
      throw UsageError(std::string("--params: missing ") + names[k]);
    if (values[k]->is_zero())
      throw UsageError(std::string("--params: ") + names[k] + " must be nonzero");
  }
  return {*values[0], *values[1], *values[2]};
}

std::vector<ParamSet> paper_parameter_sets()
{
  return {{"isu", build_embedding(ConcreteFamily::isu, 4).params},
          {"iso", build_embedding(ConcreteFamily::iso, 4).params},
          {"schrodinger", build_embedding(ConcreteFamily::schrodinger, 2).params},
          {"poincare", build_embedding(ConcreteFamily::poincare, 0).params}};
}

std::vector<ParamSet> random_parameter_sets(std::uint64_t seed, int trials)
{
  // raw engine output is specified by the standard, distributions are not
  std::mt19937_64 rng(seed);
  auto part = [&] {
    const long num = static_cast<long>(rng() % 13) - 6;
    const long den = static_cast<long>(rng() % 5) + 1;
    return Rational(num, den);
  };
  auto draw = [&] {
    while (true)
    {
      Rational re = part();
      Rational im = part();
      GaussianRational z(re, im);
      if (!z.is_zero())
        return z;
    }
  };
  std::vector<ParamSet> out;
  for (int k = 0; k < trials; ++k)
  {
    Params p;
    p.gamma = draw();
    p.delta = draw();
    p.mu = draw();
    out.push_back({"random-" + std::to_string(k + 1), p});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Planning

namespace
{

struct Target
{
  ConcreteFamily family;
  int n;
};

std::vector<int> embedding_sizes(ConcreteFamily f)
{
  switch (f)
  {
  case ConcreteFamily::isu:
    return {4, 5, 6};
  case ConcreteFamily::iso:
    return {4, 5};
  case ConcreteFamily::schrodinger:
    return {2, 3};
  case ConcreteFamily::poincare:
    return {0};
  }
  return {};
}

std::vector<int> algebra_sizes(ConcreteFamily f)
{
  std::vector<int> out;
  const int lo = f == ConcreteFamily::schrodinger ? 1 : 2;
  if (f == ConcreteFamily::poincare)
    return {0};
  for (int n = lo; n <= 8; ++n)
    out.push_back(n);
  return out;
}

int default_size(ConcreteFamily f) { return embedding_sizes(f).front(); }

const std::vector<ConcreteFamily> &concrete_families()
{
  static const std::vector<ConcreteFamily> v{ConcreteFamily::isu, ConcreteFamily::iso, ConcreteFamily::schrodinger,
                                             ConcreteFamily::poincare};
  return v;
}

const std::vector<AbstractFamily> &abstract_families()
{
  static const std::vector<AbstractFamily> v{AbstractFamily::Lc, AbstractFamily::Lcd, AbstractFamily::L,
                                             AbstractFamily::Lprime};
  return v;
}

ConcreteFamily require_concrete(const std::string &s)
{
  if (auto f = parse_concrete_family(s))
    return *f;
  throw UsageError("unknown target algebra '" + s + "' (known: isu, iso, schrodinger, poincare)");
}

std::vector<TwistFamily> parse_families(const std::string &text)
{
  std::vector<TwistFamily> out;
  for (const auto &name : split(text, ','))
  {
    try
    {
      const auto f = parse_twist_family(trim(name));
      if (std::find(out.begin(), out.end(), f) == out.end())
        out.push_back(f);
    }
    catch (const std::invalid_argument &e)
    {
      throw UsageError(e.what());
    }
  }
  return out;
}

struct Plan
{
  std::vector<ParamSet> param_sets;
  std::vector<TwistFamily> families;
  std::optional<AbstractFamily> carrier;
  std::optional<AbstractFamily> abstract_algebra;
  std::optional<ConcreteFamily> concrete_algebra;
  std::vector<int> concrete_sizes;
  std::optional<LieAlgebra> file_algebra;
  std::optional<EmbeddingRecipe> file_embedding;
  std::vector<Target> targets;
  bool target_given = false;
  RecipeVariant variant = RecipeVariant::corrected;
  int order = 4;
};

Plan make_plan(const RunConfig &cfg)
{
  if (cfg.order < 0 || cfg.order > 6)
    throw UsageError("--order must lie in [0, 6]");
  if (cfg.trials < 0)
    throw UsageError("--trials must be non-negative");
  if (std::find(suite_names().begin(), suite_names().end(), cfg.suite) == suite_names().end())
    throw UsageError("unknown suite '" + cfg.suite + "'");
  if (cfg.n && *cfg.n < 0)
    throw UsageError("--n must be non-negative");

  Plan plan;
  plan.order = cfg.order;
  plan.variant = cfg.verbatim ? RecipeVariant::verbatim : RecipeVariant::corrected;
  const bool families_given = !cfg.family.empty();
  plan.families = families_given ? parse_families(cfg.family) : composite_twists();

  try
  {
    if (cfg.algebra_file)
    {
      plan.file_algebra = algebra_from_json(read_json_file(*cfg.algebra_file));
      if (const auto info = classify_abstract(*plan.file_algebra))
      {
        if (cfg.params)
          throw UsageError("--params conflicts with the parameters fixed by --algebra-file");
        plan.carrier = info->family;
        plan.param_sets = {{"file", info->params}};
      }
    }
    if (cfg.embedding_file)
      plan.file_embedding = embedding_from_json(read_json_file(*cfg.embedding_file));
  }
  catch (const DocumentError &e)
  {
    throw UsageError(e.what());
  }

  if (cfg.algebra)
  {
    if (cfg.algebra_file)
      throw UsageError("--algebra and --algebra-file are mutually exclusive");
    if (const auto a = parse_abstract_family(*cfg.algebra))
    {
      plan.abstract_algebra = *a;
      plan.carrier = *a;
    }
    else if (const auto c = parse_concrete_family(*cfg.algebra))
    {
      plan.concrete_algebra = *c;
      plan.concrete_sizes = cfg.n ? std::vector<int>{*cfg.n} : algebra_sizes(*c);
    }
    else
      throw UsageError("unknown algebra '" + *cfg.algebra + "'");
  }

  if (plan.carrier)
  {
    std::vector<TwistFamily> kept;
    for (auto f : plan.families)
    {
      if (supports(f, *plan.carrier))
        kept.push_back(f);
      else if (families_given)
        throw UsageError(to_string(f) + " cannot be built on " + std::string(to_string(*plan.carrier)));
    }
    plan.families = kept;
    if (plan.families.empty())
      throw UsageError("no twist family can be built on " + std::string(to_string(*plan.carrier)));
  }

  if (cfg.target)
  {
    const auto t = require_concrete(*cfg.target);
    plan.target_given = true;
    for (int n : cfg.n ? std::vector<int>{*cfg.n} : embedding_sizes(t))
      plan.targets.push_back({t, n});
  }
  else if (!plan.file_embedding)
  {
    for (auto t : concrete_families())
      for (int n : embedding_sizes(t))
        plan.targets.push_back({t, n});
  }

  if (plan.param_sets.empty())
  {
    if (cfg.params)
      plan.param_sets = {{"custom", parse_params(*cfg.params)}};
    else if (cfg.target)
    {
      try
      {
        const auto &t = plan.targets.front();
        plan.param_sets = {{std::string(to_string(t.family)), build_embedding(t.family, t.n).params}};
      }
      catch (const AlgebraError &e)
      {
        throw UsageError(e.what());
      }
    }
    else
    {
      plan.param_sets = paper_parameter_sets();
      for (auto &ps : random_parameter_sets(cfg.seed, cfg.trials))
        plan.param_sets.push_back(std::move(ps));
    }
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Tasks

struct Task
{
  ReportEntry header; // suite, check, subject and params for error reporting
  std::function<std::vector<ReportEntry>()> run;
};

/// Cuts a " + "-joined rendering after `max_terms` summands.
std::string clip(const std::string &s, std::size_t max_terms = 12)
{
  std::size_t pos = 0;
  for (std::size_t k = 0; k < max_terms; ++k)
  {
    pos = s.find(" + ", pos);
    if (pos == std::string::npos)
      return s;
    pos += 3;
  }
  std::size_t rest = 1;
  for (std::size_t p = s.find(" + ", pos); p != std::string::npos; p = s.find(" + ", p + 3))
    ++rest;
  return s.substr(0, pos - 3) + " + ... (" + std::to_string(rest) + " more terms)";
}

std::string carrier_subject(TwistFamily f, AbstractFamily c)
{
  return to_string(f) + " on " + std::string(to_string(c));
}

std::string param_label(const ParamSet &ps) { return ps.label + ": " + ps.params.to_string(); }

ReportEntry make_entry(std::string suite, std::string check, std::string subject, std::string params = {})
{
  ReportEntry e;
  e.suite = std::move(suite);
  e.check = std::move(check);
  e.subject = std::move(subject);
  e.params = std::move(params);
  return e;
}

Status pass_fail(bool ok) { return ok ? Status::pass : Status::fail; }

std::string published_r(TwistFamily f)
{
  switch (f)
  {
  case TwistFamily::FP:
  case TwistFamily::FPprime:
    return "A∧B + (γ/δ)H∧E";
  case TwistFamily::F:
    return "J∧B + A∧B + (γ/δ)H∧E";
  case TwistFamily::Ftilde:
    return "-J∧B + A∧B + (γ/δ)H∧E";
  case TwistFamily::Fprime:
    return "J∧A + A∧B + (γ/δ)H∧E";
  case TwistFamily::Ftildeprime:
    return "-J∧A + A∧B + (γ/δ)H∧E";
  default:
    return {};
  }
}

const char *const k_poincare_r = "(±J_3 + P_+)∧(J_- + iK_-) + 2i K_3∧(P_t - P_3)";

bool is_composite(TwistFamily f)
{
  const auto &c = composite_twists();
  return std::find(c.begin(), c.end(), f) != c.end();
}

bool is_primed(TwistFamily f) { return f == TwistFamily::Fprime || f == TwistFamily::Ftildeprime; }

std::vector<std::string> recipe_ledger(ConcreteFamily f, RecipeVariant v)
{
  if (f == ConcreteFamily::schrodinger)
    return {v == RecipeVariant::verbatim
                ? "printed recipe: H is listed identical to J"
                : "H = iΣ_{<k>} J_{k,k+1} - D replaces the printed H (which repeats J)"};
  if (f == ConcreteFamily::isu)
    return {v == RecipeVariant::verbatim
                ? "printed recipe: partner index n-k, degenerate at k = n/2 for even n"
                : "partner index n-k+1 replaces the printed n-k"};
  return {};
}

EmbeddingRecipe recipe_for(const Target &t, RecipeVariant v) { return build_embedding(t.family, t.n, {}, {}, v); }

ClassicalR extracted_r(TwistFamily f, AbstractFamily carrier, const Params &p)
{
  const auto c = Carrier::create(carrier, p, 1);
  return extract_classical_r(universal_R(build_twist(f, c)));
}

void jacobi_tasks(const Plan &plan, const RunConfig &cfg, std::vector<Task> &tasks)
{
  auto add = [&](std::function<LieAlgebra()> build, std::string subject, std::string params) {
    tasks.push_back({make_entry("jacobi", "jacobi", subject, params), [=] {
                       const LieAlgebra alg = build();
                       const auto rep = jacobi_check(alg);
                       auto e = make_entry("jacobi", "jacobi", alg.name(), params);
                       e.status = pass_fail(rep.passed());
                       e.value = std::to_string(rep.triples_checked) + " triples";
                       std::string res;
                       for (const auto &v : rep.violations)
                         res += (res.empty() ? "" : "; ") + ("[" + alg.symbol(v.triple[0]) + "," +
                                                             alg.symbol(v.triple[1]) + "," + alg.symbol(v.triple[2]) +
                                                             "]: " + alg.render(v.residual));
                       e.residual = rep.passed() ? "0" : clip(res);
                       return std::vector<ReportEntry>{e};
                     }});
  };
  auto add_abstract = [&](AbstractFamily a) {
    for (const auto &ps : plan.param_sets)
      add([a, p = ps.params] { return build_abstract(a, p); }, std::string(to_string(a)), param_label(ps));
  };
  auto add_concrete = [&](ConcreteFamily c, const std::vector<int> &sizes) {
    for (int n : sizes)
      add([c, n] { return build_concrete(c, n); }, std::string(to_string(c)) + "(" + std::to_string(n) + ")", {});
  };

  if (plan.file_algebra)
  {
    const LieAlgebra alg = *plan.file_algebra;
    add([alg] { return alg; }, alg.name(), {});
  }
  else if (plan.abstract_algebra)
    add_abstract(*plan.abstract_algebra);
  else if (plan.concrete_algebra)
    add_concrete(*plan.concrete_algebra, plan.concrete_sizes);
  else
  {
    for (auto a : abstract_families())
      add_abstract(a);
    if (plan.target_given)
    {
      std::vector<int> sizes;
      for (const auto &t : plan.targets)
        sizes.push_back(t.n);
      add_concrete(plan.targets.front().family, cfg.n ? sizes : algebra_sizes(plan.targets.front().family));
    }
    else
      for (auto c : concrete_families())
        add_concrete(c, algebra_sizes(c));
  }
}

ReportEntry embedding_entry(const EmbeddingRecipe &rec, const std::string &subject, std::vector<std::string> ledger)
{
  const auto rep = embedding_check(rec);
  auto e = make_entry("embedding", "embedding", subject, rec.params.to_string());
  e.status = pass_fail(rep.passed());
  e.value = std::to_string(rep.relations.size()) + " relations";
  std::string failed;
  for (const auto &f : rep.failed_relations())
    failed += (failed.empty() ? "" : ", ") + f;
  e.residual = rep.passed() ? "0" : "failed relations: " + failed;
  e.ledger = std::move(ledger);
  return e;
}

void embedding_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  if (plan.file_embedding)
  {
    const EmbeddingRecipe rec = *plan.file_embedding;
    tasks.push_back({make_entry("embedding", "embedding", rec.label),
                     [rec] { return std::vector<ReportEntry>{embedding_entry(rec, rec.label, {})}; }});
  }
  for (const auto &t : plan.targets)
  {
    const RecipeVariant v = plan.variant;
    const std::string name = std::string(to_string(t.family)) +
                             (t.family == ConcreteFamily::poincare ? "" : "(" + std::to_string(t.n) + ")");
    tasks.push_back({make_entry("embedding", "embedding", name), [t, v, name] {
                       const auto rec = recipe_for(t, v);
                       const auto ledger = recipe_ledger(t.family, v);
                       return std::vector<ReportEntry>{embedding_entry(rec, name, ledger),
                                                       embedding_entry(dualize(rec), name + " from L'", ledger)};
                     }});
  }
}

template <class Fn>
void per_family(const Plan &plan, const std::string &suite, const std::string &check, std::vector<Task> &tasks, Fn fn)
{
  for (auto f : plan.families)
  {
    const AbstractFamily cf = plan.carrier.value_or(natural_carrier(f));
    for (const auto &ps : plan.param_sets)
    {
      const std::string subject = carrier_subject(f, cf);
      const std::string params = param_label(ps);
      tasks.push_back({make_entry(suite, check, subject, params),
                       [=, order = plan.order] { return fn(f, cf, ps.params, order, subject, params); }});
    }
  }
}

std::vector<ReportEntry> not_applicable(const std::string &suite, const std::string &subject,
                                        const std::string &params, const std::string &why)
{
  auto e = make_entry(suite, suite, subject, params);
  e.status = Status::vacuous;
  e.ledger = {why};
  return {e};
}

void cocycle_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  per_family(plan, "cocycle", "cocycle", tasks,
             [](TwistFamily f, AbstractFamily cf, const Params &p, int order, const std::string &subject,
                const std::string &params) {
               const auto tw = build_twist(f, Carrier::create(cf, p, order));
               const auto res = cocycle_check(tw);
               auto e = make_entry("cocycle", "cocycle", subject, params);
               e.status = pass_fail(res.passed());
               e.residual = clip(res.residual.to_string());
               if (res.base)
                 e.ledger.push_back("coproduct twisted by " + to_string(*res.base));
               return std::vector<ReportEntry>{e};
             });
}

void counit_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  per_family(plan, "counit", "counit", tasks,
             [](TwistFamily f, AbstractFamily cf, const Params &p, int order, const std::string &subject,
                const std::string &params) {
               const auto tw = build_twist(f, Carrier::create(cf, p, order));
               const auto res = counit_check(tw);
               auto e = make_entry("counit", "counit", subject, params);
               e.status = pass_fail(res.passed());
               e.residual = res.passed() ? "0"
                                         : "(ε⊗id)F - 1 = " + clip((res.left - res.left.one_like()).to_string()) +
                                               "; (id⊗ε)F - 1 = " + clip((res.right - res.right.one_like()).to_string());
               return std::vector<ReportEntry>{e};
             });
}

std::string reading_line(const ReadingOutcome &o)
{
  std::string line = to_string(o.reading.kind) + " reading " + render_formula(o.reading.terms) +
                     (o.matches ? ": matches" : ": differs");
  if (!o.reading.note.empty())
    line += " (" + o.reading.note + ")";
  return line;
}

void coproduct_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  per_family(plan, "coproducts", "coproduct", tasks,
             [](TwistFamily f, AbstractFamily cf, const Params &p, int order, const std::string &subject,
                const std::string &params) {
               if (!is_composite(f))
                 return not_applicable("coproducts", subject, params, "no published coproduct table");
               const auto tw = build_twist(f, Carrier::create(cf, p, order));
               std::vector<ReportEntry> out;
               for (const auto &cmp : coproduct_table_check(tw))
               {
                 auto e = make_entry("coproducts", "coproduct", subject + ": Δ(" + cmp.generator + ")", params);
                 switch (cmp.status)
                 {
                 case EntryStatus::match:
                   e.status = Status::pass;
                   e.residual = "0";
                   break;
                 case EntryStatus::recorded_mismatch:
                   e.status = Status::recorded_mismatch;
                   break;
                 case EntryStatus::fail:
                   e.status = Status::fail;
                   break;
                 case EntryStatus::computed:
                   e.status = Status::vacuous;
                   e.value = clip(cmp.computed.to_string());
                   e.ledger.push_back("no closed form published; computed only");
                   break;
                 }
                 if (cmp.status == EntryStatus::recorded_mismatch || cmp.status == EntryStatus::fail)
                 {
                   for (const auto &o : cmp.outcomes)
                   {
                     if (o.reading.kind == ReadingKind::verbatim)
                       e.residual = clip(o.difference.to_string());
                     if (cmp.ledger.empty())
                       e.ledger.push_back(reading_line(o));
                   }
                   if (!cmp.ledger.empty())
                     e.ledger.push_back(cmp.ledger);
                 }
                 out.push_back(std::move(e));
               }
               return out;
             });
}

void factorization_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  for (auto id : all_factorizations())
    for (const auto &ps : plan.param_sets)
    {
      const AbstractFamily cf = factorization_carrier(id);
      const std::string subject = to_string(id) + " on " + std::string(to_string(cf));
      const std::string params = param_label(ps);
      tasks.push_back({make_entry("factorization", "factorization", subject, params),
                       [=, p = ps.params, order = plan.order] {
                         const auto res = factorization_check(id, Carrier::create(cf, p, order));
                         auto e = make_entry("factorization", "factorization", subject, params);
                         e.status = pass_fail(res.passed());
                         e.residual = res.passed() ? "0"
                                                   : "left: " + clip(res.left_residual.to_string()) +
                                                         "; right: " + clip(res.right_residual.to_string());
                         return std::vector<ReportEntry>{e};
                       }});
    }
}

void coassoc_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  per_family(plan, "coassoc", "coassociativity", tasks,
             [](TwistFamily f, AbstractFamily cf, const Params &p, int order, const std::string &subject,
                const std::string &params) {
               const auto tw = build_twist(f, Carrier::create(cf, p, order));
               std::vector<ReportEntry> out;
               for (const auto &g : twisted_coassociativity_check(tw))
               {
                 auto e = make_entry("coassoc", "coassociativity", subject + ": " + g.generator, params);
                 e.status = pass_fail(g.passed);
                 e.residual = clip(g.residual.to_string());
                 if (auto base = base_twist(f); base && !g.passed)
                   e.ledger.push_back("single factor: coassociative only over the coproduct twisted by " +
                                      to_string(*base));
                 out.push_back(std::move(e));
               }
               const auto failures = homomorphism_check(tw);
               auto e = make_entry("coassoc", "homomorphism", subject, params);
               e.status = pass_fail(failures.empty());
               std::string res;
               for (const auto &[x, y] : failures)
                 res += (res.empty() ? "" : ", ") + ("[" + x + "," + y + "]");
               e.residual = failures.empty() ? "0" : "failing brackets: " + res;
               out.push_back(std::move(e));
               return out;
             });
}

void rmatrix_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  per_family(plan, "rmatrix", "rmatrix", tasks,
             [](TwistFamily f, AbstractFamily cf, const Params &p, int, const std::string &subject,
                const std::string &params) {
               if (!is_composite(f))
                 return not_applicable("rmatrix", subject, params, "no published classical r-matrix");
               const auto c = Carrier::create(cf, p, 1);
               const auto r = extract_classical_r(universal_R(build_twist(f, c)));
               const auto ref = reference_r(f, *c);
               auto e = make_entry("rmatrix", "rmatrix", subject, params);
               e.status = pass_fail(r == ref);
               e.residual = (r - ref).to_string();
               e.value = r.to_string();
               e.ledger.push_back("published: " + published_r(f));
               return std::vector<ReportEntry>{e};
             });

  for (const auto &t : plan.targets)
  {
    if (t.family != ConcreteFamily::poincare)
      continue;
    for (auto f : {TwistFamily::F, TwistFamily::Ftilde})
    {
      if (std::find(plan.families.begin(), plan.families.end(), f) == plan.families.end())
        continue;
      const std::string subject = to_string(f) + " -> poincare";
      tasks.push_back({make_entry("rmatrix", "rmatrix-pushforward", subject), [=, v = plan.variant] {
                         const auto rec = recipe_for(t, v);
                         auto e = make_entry("rmatrix", "rmatrix-pushforward", subject, rec.params.to_string());
                         const auto pushed = pushforward(extracted_r(f, AbstractFamily::L, rec.params), rec);
                         const auto expected = poincare_reference_r(rec.target, f == TwistFamily::F ? 1 : -1);
                         e.status = pass_fail(pushed == expected);
                         e.residual = (pushed - expected).to_string();
                         e.value = pushed.to_string();
                         e.ledger.push_back(std::string("published: ") + k_poincare_r +
                                            (f == TwistFamily::F ? ", upper sign" : ", lower sign"));
                         return std::vector<ReportEntry>{e};
                       }});
    }
  }
}

void cybe_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  per_family(plan, "cybe", "cybe", tasks,
             [](TwistFamily f, AbstractFamily cf, const Params &p, int, const std::string &subject,
                const std::string &params) {
               if (!is_composite(f))
                 return not_applicable("cybe", subject, params, "single factors carry no classical r-matrix");
               const auto r = extracted_r(f, cf, p);
               const auto res = cybe_check(r);
               auto e = make_entry("cybe", "cybe", subject, params);
               e.status = pass_fail(res.passed());
               e.residual = clip(res.render(r.algebra()));
               e.value = r.to_string();
               return std::vector<ReportEntry>{e};
             });

  for (const auto &t : plan.targets)
    for (auto f : plan.families)
    {
      if (!is_composite(f) || f == TwistFamily::FP || f == TwistFamily::FPprime)
        continue;
      const std::string name = std::string(to_string(t.family)) +
                               (t.family == ConcreteFamily::poincare ? "" : "(" + std::to_string(t.n) + ")");
      const std::string subject = to_string(f) + " -> " + name;
      tasks.push_back({make_entry("cybe", "cybe-pushforward", subject), [=, v = plan.variant] {
                         auto rec = recipe_for(t, v);
                         auto e = make_entry("cybe", "cybe-pushforward", subject, rec.params.to_string());
                         if (is_primed(f))
                           rec = dualize(rec);
                         if (!embedding_check(rec).passed())
                         {
                           e.status = Status::vacuous;
                           e.ledger.push_back("embedding recipe fails its relation check; pushforward skipped");
                           return std::vector<ReportEntry>{e};
                         }
                         const auto cf = is_primed(f) ? AbstractFamily::Lprime : AbstractFamily::L;
                         const auto pushed = pushforward(extracted_r(f, cf, rec.params), rec);
                         const auto res = cybe_check(pushed);
                         e.status = pass_fail(res.passed());
                         e.residual = clip(res.render(pushed.algebra()));
                         e.value = pushed.to_string();
                         return std::vector<ReportEntry>{e};
                       }});
    }
}

void qybe_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  per_family(plan, "qybe", "qybe", tasks,
             [](TwistFamily f, AbstractFamily cf, const Params &p, int order, const std::string &subject,
                const std::string &params) {
               if (!is_composite(f))
                 return not_applicable("qybe", subject, params, "single factors are not twists of U(g)");
               const auto R = universal_R(build_twist(f, Carrier::create(cf, p, order)));
               const auto res = qybe_check(R);
               auto e = make_entry("qybe", "qybe", subject, params);
               e.status = pass_fail(res.passed());
               e.residual = clip(res.residual.to_string());
               return std::vector<ReportEntry>{e};
             });
}

void classical_limit_tasks(const Plan &plan, std::vector<Task> &tasks)
{
  per_family(plan, "classical-limit", "classical-limit", tasks,
             [](TwistFamily f, AbstractFamily cf, const Params &p, int order, const std::string &subject,
                const std::string &params) {
               const auto tw = build_twist(f, Carrier::create(cf, p, order));
               const auto res = classical_limit_check(tw);
               std::vector<ReportEntry> out;
               auto e = make_entry("classical-limit", "order-zero-twist", subject, params);
               e.status = pass_fail(res.element_is_one);
               e.residual = res.element_is_one ? "0" : "twist at order 0 differs from 1⊗1";
               out.push_back(std::move(e));
               for (const auto &g : res.generators)
               {
                 auto ge = make_entry("classical-limit", "classical-limit", subject + ": " + g.generator, params);
                 ge.status = !g.passed ? Status::fail : g.vacuous ? Status::vacuous : Status::pass;
                 ge.residual = clip(g.residual.to_string());
                 if (g.vacuous)
                   ge.ledger.push_back("generator has positive degree; Δ has no degree-0 part");
                 out.push_back(std::move(ge));
               }
               return out;
             });
}

std::vector<Task> build_tasks(const Plan &plan, const RunConfig &cfg)
{
  std::vector<Task> tasks;
  const bool all = cfg.suite == "all";
  auto want = [&](const char *s) { return all || cfg.suite == s; };
  if (want("jacobi"))
    jacobi_tasks(plan, cfg, tasks);
  if (want("embedding"))
    embedding_tasks(plan, tasks);
  if (want("cocycle"))
    cocycle_tasks(plan, tasks);
  if (want("counit"))
    counit_tasks(plan, tasks);
  if (want("coproducts"))
    coproduct_tasks(plan, tasks);
  if (want("factorization"))
    factorization_tasks(plan, tasks);
  if (want("coassoc"))
    coassoc_tasks(plan, tasks);
  if (want("rmatrix"))
    rmatrix_tasks(plan, tasks);
  if (want("cybe"))
    cybe_tasks(plan, tasks);
  if (want("qybe"))
    qybe_tasks(plan, tasks);
  if (want("classical-limit"))
    classical_limit_tasks(plan, tasks);
  return tasks;
}

std::vector<std::vector<ReportEntry>> execute(const std::vector<Task> &tasks, unsigned jobs)
{
  std::vector<std::vector<ReportEntry>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++)
    {
      const auto start = std::chrono::steady_clock::now();
      try
      {
        results[k] = tasks[k].run();
      }
      catch (const std::exception &ex)
      {
        ReportEntry e = tasks[k].header;
        e.status = Status::fail;
        e.residual = std::string("error: ") + ex.what();
        results[k] = {e};
      }
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (auto &e : results[k])
        e.seconds = seconds;
    }
  };
  if (jobs == 0)
    jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, tasks.size()));
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < jobs; ++j)
    pool.emplace_back(worker);
  worker();
  return results;
}

} // namespace

Report run_verify(const RunConfig &cfg)
{
  const Plan plan = make_plan(cfg);
  Report report;
  report.parameter_sets = plan.param_sets;
  for (auto &chunk : execute(build_tasks(plan, cfg), cfg.jobs))
    for (auto &e : chunk)
    {
      if (cfg.strict_paper && e.status == Status::recorded_mismatch)
      {
        e.status = Status::fail;
        e.ledger.push_back("promoted to failure by --strict-paper");
      }
      report.entries.push_back(std::move(e));
    }
  return report;
}

// ---------------------------------------------------------------------------
// Report rendering

namespace
{

ordered_json optional_json(const std::optional<std::string> &s) { return s ? ordered_json(*s) : ordered_json(); }

ordered_json config_json(const RunConfig &cfg)
{
  ordered_json c;
  c["suite"] = cfg.suite;
  c["family"] = cfg.family.empty() ? ordered_json() : ordered_json(cfg.family);
  c["algebra"] = optional_json(cfg.algebra);
  c["algebra_file"] = optional_json(cfg.algebra_file);
  c["embedding_file"] = optional_json(cfg.embedding_file);
  c["target"] = optional_json(cfg.target);
  c["n"] = cfg.n ? ordered_json(*cfg.n) : ordered_json();
  c["params"] = optional_json(cfg.params);
  c["order"] = cfg.order;
  c["trials"] = cfg.trials;
  c["seed"] = cfg.seed;
  c["verbatim"] = cfg.verbatim;
  c["strict_paper"] = cfg.strict_paper;
  return c;
}

} // namespace

ordered_json report_to_json(const Report &report, const RunConfig &cfg)
{
  ordered_json sets = ordered_json::array();
  for (const auto &ps : report.parameter_sets)
  {
    ordered_json s = params_to_json(ps.params);
    s["label"] = ps.label;
    sets.push_back(s);
  }
  ordered_json entries = ordered_json::array();
  for (const auto &e : report.entries)
  {
    ordered_json j{{"suite", e.suite},   {"check", e.check},       {"subject", e.subject},
                   {"params", e.params}, {"status", to_string(e.status)}, {"residual", e.residual},
                   {"value", e.value},   {"ledger", e.ledger}};
    if (cfg.timing)
      j["seconds"] = e.seconds;
    entries.push_back(std::move(j));
  }
  ordered_json summary{{"total", report.entries.size()},
                       {"pass", report.count(Status::pass)},
                       {"fail", report.count(Status::fail)},
                       {"recorded-mismatch", report.count(Status::recorded_mismatch)},
                       {"vacuous", report.count(Status::vacuous)}};
  return {{"tool", "twistkit"},       {"report_version", 1},  {"command", "verify"},
          {"config", config_json(cfg)}, {"parameter_sets", sets}, {"entries", entries},
          {"summary", summary},       {"exit_code", report.exit_code()}};
}

void print_report_text(const Report &report, const RunConfig &cfg, std::ostream &out)
{
  double total = 0;
  for (const auto &e : report.entries)
  {
    std::string status = to_string(e.status);
    std::transform(status.begin(), status.end(), status.begin(), [](unsigned char ch) { return std::toupper(ch); });
    out << std::left << std::setw(18) << status << ' ' << std::setw(20) << e.check << ' ' << e.subject;
    if (!e.params.empty())
      out << "  [" << e.params << ']';
    out << '\n';
    if (!e.residual.empty() && e.residual != "0")
      out << "    residual: " << e.residual << '\n';
    if (e.status != Status::pass)
      for (const auto &l : e.ledger)
        out << "    note: " << l << '\n';
    total += e.seconds;
  }
  out << report.entries.size() << " checks: " << report.count(Status::pass) << " pass, "
      << report.count(Status::fail) << " fail, " << report.count(Status::recorded_mismatch)
      << " recorded-mismatch, " << report.count(Status::vacuous) << " vacuous";
  if (cfg.timing)
    out << " (" << std::fixed << std::setprecision(2) << total << " s of work)";
  out << '\n';
}

// ---------------------------------------------------------------------------
// show / export

namespace
{

const Params k_show_params{2, 3, 5};

Params show_params(const RunConfig &cfg) { return cfg.params ? parse_params(*cfg.params) : k_show_params; }

LieAlgebra resolve_algebra(const RunConfig &cfg)
{
  if (cfg.algebra_file)
  {
    try
    {
      return algebra_from_json(read_json_file(*cfg.algebra_file));
    }
    catch (const DocumentError &e)
    {
      throw UsageError(e.what());
    }
  }
  const std::string name = cfg.algebra ? *cfg.algebra : cfg.family;
  if (name.empty())
    throw UsageError("select an algebra with --algebra, --family or --algebra-file");
  if (const auto a = parse_abstract_family(name))
    return build_abstract(*a, show_params(cfg));
  if (const auto c = parse_concrete_family(name))
    return build_concrete(*c, cfg.n.value_or(default_size(*c)));
  TwistFamily f;
  try
  {
    f = parse_twist_family(name);
  }
  catch (const std::invalid_argument &)
  {
    throw UsageError("unknown algebra or twist family '" + name + "'");
  }
  return build_abstract(natural_carrier(f), show_params(cfg));
}

TwistFamily single_family(const RunConfig &cfg)
{
  if (cfg.family.empty())
    throw UsageError("--family is required");
  const auto fs = parse_families(cfg.family);
  if (fs.size() != 1)
    throw UsageError("--family must name a single twist here");
  return fs.front();
}

AbstractFamily resolve_carrier(const RunConfig &cfg, TwistFamily f)
{
  if (!cfg.algebra)
    return natural_carrier(f);
  const auto a = parse_abstract_family(*cfg.algebra);
  if (!a)
    throw UsageError("twists live on Lc, Lcd, L or Lprime, not " + *cfg.algebra);
  if (!supports(f, *a))
    throw UsageError(to_string(f) + " cannot be built on " + *cfg.algebra);
  return *a;
}

EmbeddingRecipe resolve_recipe(const RunConfig &cfg)
{
  if (cfg.embedding_file)
  {
    try
    {
      return embedding_from_json(read_json_file(*cfg.embedding_file));
    }
    catch (const DocumentError &e)
    {
      throw UsageError(e.what());
    }
  }
  if (!cfg.target)
    throw UsageError("--target or --embedding-file is required");
  const auto t = require_concrete(*cfg.target);
  return build_embedding(t, cfg.n.value_or(default_size(t)), {}, {},
                         cfg.verbatim ? RecipeVariant::verbatim : RecipeVariant::corrected);
}

void show_algebra(const RunConfig &cfg, std::ostream &out)
{
  const LieAlgebra alg = resolve_algebra(cfg);
  if (cfg.format == "json")
  {
    out << algebra_to_json(alg).dump(2) << '\n';
    return;
  }
  out << alg.name() << ": " << alg.dimension() << " generators\n";
  for (std::size_t k = 0; k < alg.dimension(); ++k)
    out << "  " << alg.symbol(k) << "  degree " << alg.zdegree(k) << '\n';
  out << "nonzero brackets:\n";
  for (const auto &[ij, v] : alg.table())
    out << "  [" << alg.symbol(ij.first) << "," << alg.symbol(ij.second) << "] = " << alg.render(v) << '\n';
}

void show_coproduct(const RunConfig &cfg, std::ostream &out)
{
  const TwistFamily f = single_family(cfg);
  const AbstractFamily cf = resolve_carrier(cfg, f);
  const Params p = show_params(cfg);
  const auto tw = build_twist(f, Carrier::create(cf, p, cfg.order));
  const auto &alg = tw.carrier->algebra();
  if (cfg.generator && !alg.find(*cfg.generator))
    throw UsageError("unknown generator '" + *cfg.generator + "' in " + alg.name());

  std::vector<CoproductComparison> table;
  if (is_composite(f))
    table = coproduct_table_check(tw);
  std::vector<std::pair<std::string, TensorElement>> computed;
  for (std::size_t g = 0; g < alg.dimension(); ++g)
    if (!cfg.generator || *cfg.generator == alg.symbol(g))
      computed.emplace_back(alg.symbol(g), twisted_coproduct(tw, UEAElement::generator(tw.carrier->uea(), g)));
  auto find_cmp = [&](const std::string &g) -> const CoproductComparison * {
    for (const auto &c : table)
      if (c.generator == g)
        return &c;
    return nullptr;
  };

  if (cfg.format == "json")
  {
    ordered_json list = ordered_json::array();
    for (const auto &[g, d] : computed)
    {
      ordered_json item{{"generator", g}, {"computed", d.to_string()}};
      if (const auto *cmp = find_cmp(g))
      {
        item["status"] = to_string(cmp->status);
        ordered_json readings = ordered_json::array();
        for (const auto &o : cmp->outcomes)
          readings.push_back({{"kind", to_string(o.reading.kind)},
                              {"formula", render_formula(o.reading.terms)},
                              {"note", o.reading.note},
                              {"matches", o.matches}});
        item["readings"] = readings;
        item["ledger"] = cmp->ledger;
      }
      list.push_back(item);
    }
    ordered_json doc{{"twist", to_string(f)},
                     {"carrier", std::string(to_string(cf))},
                     {"params", params_to_json(p)},
                     {"order", cfg.order},
                     {"coproducts", list}};
    out << doc.dump(2) << '\n';
    return;
  }
  out << "twisted coproducts of " << to_string(f) << " on " << to_string(cf) << ", " << p.to_string()
      << ", truncation order " << cfg.order << '\n';
  for (const auto &[g, d] : computed)
  {
    out << "\nΔ(" << g << ") = " << d.to_string() << '\n';
    const auto *cmp = find_cmp(g);
    if (!cmp)
      continue;
    for (const auto &o : cmp->outcomes)
    {
      out << "  " << to_string(o.reading.kind) << ": " << render_formula(o.reading.terms)
          << (o.matches ? "  [matches]" : "  [differs]") << '\n';
      if (!o.reading.note.empty())
        out << "    " << o.reading.note << '\n';
    }
    if (cmp->status == EntryStatus::computed)
      out << "  no closed form published\n";
    else
      out << "  status: " << to_string(cmp->status) << '\n';
    if (!cmp->ledger.empty())
      out << "  ledger: " << cmp->ledger << '\n';
  }
}

void show_twist(const RunConfig &cfg, std::ostream &out)
{
  const TwistFamily f = single_family(cfg);
  const AbstractFamily cf = resolve_carrier(cfg, f);
  const Params p = show_params(cfg);
  const auto tw = build_twist(f, Carrier::create(cf, p, cfg.order));
  if (cfg.format == "json")
  {
    ordered_json factors = ordered_json::array();
    for (std::size_t k = 0; k < tw.factors.size(); ++k)
      factors.push_back({{"name", tw.factor_names[k]}, {"element", tw.factors[k].to_string()}});
    ordered_json doc{{"twist", to_string(f)},
                     {"carrier", std::string(to_string(cf))},
                     {"params", params_to_json(p)},
                     {"order", cfg.order},
                     {"sigma", tw.carrier->sigma().to_string()},
                     {"factors", factors},
                     {"element", tw.element.to_string()},
                     {"inverse", tw.inverse.to_string()}};
    if (tw.carrier->has_j())
      doc["rho"] = tw.carrier->rho().to_string();
    out << doc.dump(2) << '\n';
    return;
  }
  out << to_string(f) << " on " << to_string(cf) << ", " << p.to_string() << ", truncation order " << cfg.order
      << '\n';
  out << "σ = " << tw.carrier->sigma().to_string() << '\n';
  if (tw.carrier->has_j())
    out << (cf == AbstractFamily::Lprime ? "ρ' = " : "ρ = ") << tw.carrier->rho().to_string() << '\n';
  for (std::size_t k = 0; k < tw.factors.size(); ++k)
    out << tw.factor_names[k] << " = " << tw.factors[k].to_string() << '\n';
  out << "element = " << tw.element.to_string() << '\n';
  out << "inverse = " << tw.inverse.to_string() << '\n';
}

void show_rmatrix(const RunConfig &cfg, std::ostream &out)
{
  const TwistFamily f = single_family(cfg);
  if (!is_composite(f))
    throw UsageError("classical r-matrices are defined for FP, FPprime, F, Ftilde, Fprime and Ftildeprime");
  ordered_json doc{{"twist", to_string(f)}};
  std::string header;
  std::optional<ClassicalR> expected;
  ClassicalR r = [&] {
    if (cfg.target || cfg.embedding_file)
    {
      if (f == TwistFamily::FP || f == TwistFamily::FPprime)
        throw UsageError("pushforward is defined for F, Ftilde, Fprime and Ftildeprime");
      auto rec = resolve_recipe(cfg);
      if (is_primed(f))
        rec = dualize(rec);
      const auto cf = is_primed(f) ? AbstractFamily::Lprime : AbstractFamily::L;
      const auto pushed = pushforward(extracted_r(f, cf, rec.params), rec);
      doc["target"] = rec.label;
      doc["params"] = params_to_json(rec.params);
      header = to_string(f) + " pushed forward to " + rec.label + ", " + rec.params.to_string();
      if (rec.target.name() == "poincare" && !is_primed(f))
      {
        expected = poincare_reference_r(rec.target, f == TwistFamily::F ? 1 : -1);
        doc["published"] = k_poincare_r;
      }
      return pushed;
    }
    const AbstractFamily cf = resolve_carrier(cfg, f);
    const Params p = show_params(cfg);
    const auto c = Carrier::create(cf, p, 1);
    doc["carrier"] = std::string(to_string(cf));
    doc["params"] = params_to_json(p);
    doc["published"] = published_r(f);
    header = to_string(f) + " on " + std::string(to_string(cf)) + ", " + p.to_string();
    expected = reference_r(f, *c);
    return extract_classical_r(universal_R(build_twist(f, c)));
  }();
  const auto cybe = cybe_check(r);
  doc["r"] = classical_r_to_json(r);
  if (expected)
    doc["matches_published"] = r == *expected;
  doc["cybe_residual"] = cybe.render(r.algebra());
  if (cfg.format == "json")
  {
    out << doc.dump(2) << '\n';
    return;
  }
  out << "classical r-matrix of " << header << '\n';
  if (doc.contains("published"))
    out << "published: " << doc["published"].get<std::string>() << '\n';
  out << "r = " << r.to_string() << '\n';
  if (expected)
    out << "matches published: " << (r == *expected ? "yes" : "no") << '\n';
  out << "CYBE residual: " << cybe.render(r.algebra()) << '\n';
}

void show_embedding(const RunConfig &cfg, std::ostream &out)
{
  const auto rec = resolve_recipe(cfg);
  if (cfg.format == "json")
  {
    out << embedding_to_json(rec).dump(2) << '\n';
    return;
  }
  out << "embedding " << rec.label << ": " << rec.source.name() << " -> " << rec.target.name() << ", "
      << rec.params.to_string() << '\n';
  for (std::size_t k = 0; k < rec.images.size(); ++k)
    out << "  " << rec.source.symbol(k) << " -> " << rec.target.render(rec.images[k]) << '\n';
  const auto rep = embedding_check(rec);
  out << "relations: " << rep.relations.size() << " checked, "
      << (rep.passed() ? std::string("all hold") : "failing:");
  for (const auto &f : rep.failed_relations())
    out << ' ' << f;
  out << '\n';
}

void run_export(const RunConfig &cfg, std::ostream &out)
{
  ordered_json doc;
  if (cfg.topic == "algebra")
    doc = algebra_to_json(resolve_algebra(cfg));
  else if (cfg.topic == "embedding")
    doc = embedding_to_json(resolve_recipe(cfg));
  else
  {
    const TwistFamily f = single_family(cfg);
    if (!is_composite(f))
      throw UsageError("classical r-matrices are defined for the composite twists only");
    const AbstractFamily cf = resolve_carrier(cfg, f);
    doc = classical_r_to_json(extracted_r(f, cf, show_params(cfg)));
  }
  if (cfg.output)
  {
    std::ofstream file(*cfg.output);
    if (!file)
      throw UsageError("cannot write " + *cfg.output);
    file << doc.dump(2) << '\n';
  }
  else
    out << doc.dump(2) << '\n';
}

void add_shared_options(CLI::App &sub, RunConfig &cfg)
{
  sub.add_option("--family", cfg.family, "Twist family (comma-separated list for verify)");
  sub.add_option("--algebra", cfg.algebra, "Algebra: Lc, Lcd, L, Lprime, isu, iso, schrodinger, poincare");
  sub.add_option("--algebra-file", cfg.algebra_file, "Algebra definition JSON");
  sub.add_option("--embedding-file", cfg.embedding_file, "Embedding recipe JSON");
  sub.add_option("--target", cfg.target, "Target algebra of the embedding");
  sub.add_option("--n", cfg.n, "Size parameter of the target algebra");
  sub.add_option("--params", cfg.params, "Parameters, e.g. γ=1,δ=1,μ=i");
  sub.add_option("--order", cfg.order, "Truncation order N")->check(CLI::Range(0, 6));
  sub.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub.add_flag("--verbatim", cfg.verbatim, "Use the recipes exactly as printed");
  sub.add_option("--generator", cfg.generator, "Restrict to one generator");
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Exact verification of Drinfel'd twists in truncated enveloping algebras", "twistkit"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto *verify = app.add_subcommand("verify", "Run verification suites");
  add_shared_options(*verify, cfg);
  verify->add_option("--suite", cfg.suite, "Suite to run")->check(CLI::IsMember(suite_names()));
  verify->add_option("--trials", cfg.trials, "Random parameter triples")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", cfg.seed, "Seed for the random parameter triples");
  verify->add_flag("--strict-paper", cfg.strict_paper, "Treat recorded mismatches as failures");
  verify->add_flag("--timing", cfg.timing, "Include wall-clock times");
  verify->add_option("--jobs", cfg.jobs, "Worker threads (0: one per hardware thread)");

  auto *show = app.add_subcommand("show", "Print algebras, twists, coproducts, r-matrices or embeddings");
  add_shared_options(*show, cfg);
  show->add_option("what", cfg.topic, "algebra | twist | coproduct | rmatrix | embedding")
      ->required()
      ->check(CLI::IsMember({"algebra", "twist", "coproduct", "rmatrix", "embedding"}));

  auto *exp = app.add_subcommand("export", "Write algebra, embedding or r-matrix JSON documents");
  add_shared_options(*exp, cfg);
  exp->add_option("what", cfg.topic, "algebra | embedding | rmatrix")
      ->required()
      ->check(CLI::IsMember({"algebra", "embedding", "rmatrix"}));
  exp->add_option("-o,--output", cfg.output, "Output path (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try
  {
    if (verify->parsed())
    {
      cfg.command = Command::verify;
      const Report report = run_verify(cfg);
      if (cfg.format == "json")
        out << report_to_json(report, cfg).dump(2) << '\n';
      else
        print_report_text(report, cfg, out);
      return report.exit_code();
    }
    if (show->parsed())
    {
      cfg.command = Command::show;
      if (cfg.topic == "algebra")
        show_algebra(cfg, out);
      else if (cfg.topic == "twist")
        show_twist(cfg, out);
      else if (cfg.topic == "coproduct")
        show_coproduct(cfg, out);
      else if (cfg.topic == "rmatrix")
        show_rmatrix(cfg, out);
      else
        show_embedding(cfg, out);
      return 0;
    }
    cfg.command = Command::export_;
    run_export(cfg, out);
    return 0;
  }
  catch (const UsageError &e)
  {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  catch (const AlgebraError &e)
  {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  catch (const std::exception &e)
  {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace twistkit::cli
