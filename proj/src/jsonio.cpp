#include "twistkit/jsonio.hpp"

#include <fstream>

namespace twistkit
{

using nlohmann::json;
using nlohmann::ordered_json;

namespace
{

const json &field(const json &doc, const char *key)
{
  if (!doc.is_object() || !doc.contains(key))
    throw DocumentError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string string_field(const json &doc, const char *key)
{
  const json &v = field(doc, key);
  if (!v.is_string())
    throw DocumentError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

GaussianRational scalar(const json &v)
{
  if (v.is_number_integer())
    return GaussianRational(Rational(v.get<long>()));
  if (!v.is_string())
    throw DocumentError("coefficient must be a Gaussian-rational string");
  try
  {
    return parse_gaussian(v.get<std::string>());
  }
  catch (const ParseError &e)
  {
    throw DocumentError("bad coefficient '" + v.get<std::string>() + "': " + e.what());
  }
}

std::size_t symbol_index(const LieAlgebra &alg, const json &v)
{
  if (!v.is_string())
    throw DocumentError("generator symbol must be a string");
  const auto idx = alg.find(v.get<std::string>());
  if (!idx)
    throw DocumentError("unknown generator '" + v.get<std::string>() + "' in " + alg.name());
  return *idx;
}

std::vector<GaussianRational> scalar_list(const json &doc, const char *key)
{
  std::vector<GaussianRational> out;
  if (!doc.contains(key))
    return out;
  const json &v = doc.at(key);
  if (!v.is_array())
    throw DocumentError(std::string("field '") + key + "' must be an array");
  for (const auto &x : v)
    out.push_back(scalar(x));
  return out;
}

ordered_json scalar_list_to_json(const std::vector<GaussianRational> &xs)
{
  ordered_json out = ordered_json::array();
  for (const auto &x : xs)
    out.push_back(x.to_string());
  return out;
}

} // namespace

ordered_json lie_element_to_json(const LieAlgebra &alg, const LieElement &x)
{
  ordered_json out = ordered_json::array();
  for (const auto &[i, c] : x)
    out.push_back({{"coef", c.to_string()}, {"gen", alg.symbol(i)}});
  return out;
}

LieElement lie_element_from_json(const LieAlgebra &alg, const json &doc)
{
  if (!doc.is_array())
    throw DocumentError("linear combination must be an array of {coef, gen}");
  LieElement out;
  for (const auto &term : doc)
    add_scaled(out, basis_element(symbol_index(alg, field(term, "gen"))), scalar(field(term, "coef")));
  return out;
}

ordered_json algebra_to_json(const LieAlgebra &alg)
{
  ordered_json gens = ordered_json::array();
  for (const auto &g : alg.generators())
    gens.push_back({{"symbol", g.symbol}, {"zdegree", g.zdegree}});
  ordered_json brackets = ordered_json::array();
  for (const auto &[ij, value] : alg.table())
    brackets.push_back({{"lhs", {alg.symbol(ij.first), alg.symbol(ij.second)}}, {"rhs", lie_element_to_json(alg, value)}});
  return {{"name", alg.name()}, {"generators", gens}, {"brackets", brackets}};
}

LieAlgebra algebra_from_json(const json &doc)
{
  const std::string name = string_field(doc, "name");
  const json &gens = field(doc, "generators");
  if (!gens.is_array() || gens.empty())
    throw DocumentError("'generators' must be a non-empty array");
  std::vector<Generator> generators;
  for (const auto &g : gens)
  {
    const json &deg = g.contains("zdegree") ? g.at("zdegree") : json(0);
    if (!deg.is_number_integer())
      throw DocumentError("'zdegree' must be an integer");
    generators.push_back({string_field(g, "symbol"), deg.get<int>()});
  }
  // a bracket-free shell resolves symbols and rejects duplicates
  const LieAlgebra symbols = [&] {
    try
    {
      return LieAlgebra(name, generators, {});
    }
    catch (const AlgebraError &e)
    {
      throw DocumentError(e.what());
    }
  }();
  std::vector<std::tuple<std::size_t, std::size_t, LieElement>> brackets;
  if (doc.contains("brackets"))
  {
    const json &bs = doc.at("brackets");
    if (!bs.is_array())
      throw DocumentError("'brackets' must be an array");
    for (const auto &b : bs)
    {
      const json &lhs = field(b, "lhs");
      if (!lhs.is_array() || lhs.size() != 2)
        throw DocumentError("bracket 'lhs' must be a pair of symbols");
      brackets.emplace_back(symbol_index(symbols, lhs[0]), symbol_index(symbols, lhs[1]),
                            lie_element_from_json(symbols, field(b, "rhs")));
    }
  }
  try
  {
    return LieAlgebra(name, std::move(generators), brackets);
  }
  catch (const AlgebraError &e)
  {
    throw DocumentError(e.what());
  }
}

ordered_json params_to_json(const Params &p)
{
  return {{"gamma", p.gamma.to_string()}, {"delta", p.delta.to_string()}, {"mu", p.mu.to_string()}};
}

ordered_json embedding_to_json(const EmbeddingRecipe &rec)
{
  ordered_json images = ordered_json::array();
  for (std::size_t i = 0; i < rec.images.size(); ++i)
    images.push_back({{"gen", rec.source.symbol(i)}, {"image", lie_element_to_json(rec.target, rec.images[i])}});
  return {{"label", rec.label},
          {"params", params_to_json(rec.params)},
          {"alphas", scalar_list_to_json(rec.alphas)},
          {"betas", scalar_list_to_json(rec.betas)},
          {"source", algebra_to_json(rec.source)},
          {"target", algebra_to_json(rec.target)},
          {"images", images}};
}

EmbeddingRecipe embedding_from_json(const json &doc)
{
  EmbeddingRecipe rec{string_field(doc, "label"), algebra_from_json(field(doc, "source")),
                      algebra_from_json(field(doc, "target")), {}, {}, {}, {}};
  if (doc.contains("params"))
  {
    const json &p = doc.at("params");
    rec.params = {scalar(field(p, "gamma")), scalar(field(p, "delta")), scalar(field(p, "mu"))};
  }
  rec.alphas = scalar_list(doc, "alphas");
  rec.betas = scalar_list(doc, "betas");
  rec.images.assign(rec.source.dimension(), LieElement{});
  std::vector<bool> seen(rec.source.dimension(), false);
  const json &images = field(doc, "images");
  if (!images.is_array())
    throw DocumentError("'images' must be an array");
  for (const auto &img : images)
  {
    const auto i = symbol_index(rec.source, field(img, "gen"));
    if (seen[i])
      throw DocumentError("duplicate image for " + rec.source.symbol(i));
    seen[i] = true;
    rec.images[i] = lie_element_from_json(rec.target, field(img, "image"));
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw DocumentError("missing image for " + rec.source.symbol(i));
  return rec;
}

ordered_json classical_r_to_json(const ClassicalR &r)
{
  ordered_json out = ordered_json::array();
  for (const auto &[ij, c] : r.terms())
    out.push_back({{"pair", {r.algebra().symbol(ij.first), r.algebra().symbol(ij.second)}}, {"coef", c.to_string()}});
  return out;
}

ClassicalR classical_r_from_json(const LieAlgebra &alg, const json &doc)
{
  if (!doc.is_array())
    throw DocumentError("r-matrix must be an array of {pair, coef}");
  ClassicalR r(alg);
  for (const auto &t : doc)
  {
    const json &pair = field(t, "pair");
    if (!pair.is_array() || pair.size() != 2)
      throw DocumentError("'pair' must hold two symbols");
    r.add_wedge(symbol_index(alg, pair[0]), symbol_index(alg, pair[1]), scalar(field(t, "coef")));
  }
  return r;
}

json read_json_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw DocumentError("cannot open " + path);
  try
  {
    return json::parse(in);
  }
  catch (const json::parse_error &e)
  {
    throw DocumentError(path + ": " + e.what());
  }
}

} // namespace twistkit
