#include "twistkit/rmat.hpp"

#include <sstream>

namespace twistkit
{

namespace
{

template <class Map, class Key>
void accumulate(Map &m, const Key &k, const GaussianRational &c)
{
  if (c.is_zero())
    return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted)
  {
    it->second += c;
    if (it->second.is_zero())
      m.erase(it);
  }
}

} // namespace

// ---------------------------------------------------------------------------
// ClassicalR

ClassicalR::ClassicalR(LieAlgebra algebra) : m_algebra(std::move(algebra)) {}

ClassicalR ClassicalR::from_wedges(LieAlgebra algebra, const std::vector<Wedge> &wedges)
{
  ClassicalR out(std::move(algebra));
  for (const auto &w : wedges)
    for (const auto &[i, a] : w.left)
      for (const auto &[j, b] : w.right)
        out.add_wedge(i, j, w.coef * a * b);
  return out;
}

void ClassicalR::add_wedge(std::size_t i, std::size_t j, const GaussianRational &c)
{
  if (i >= m_algebra.dimension() || j >= m_algebra.dimension())
    throw std::out_of_range("wedge references an unknown generator");
  if (i == j)
    return;
  if (i < j)
    accumulate(m_terms, std::pair{i, j}, c);
  else
    accumulate(m_terms, std::pair{j, i}, -c);
}

std::map<std::pair<std::size_t, std::size_t>, GaussianRational> ClassicalR::tensor_coefficients() const
{
  std::map<std::pair<std::size_t, std::size_t>, GaussianRational> out;
  for (const auto &[ij, c] : m_terms)
  {
    out.emplace(ij, c);
    out.emplace(std::pair{ij.second, ij.first}, -c);
  }
  return out;
}

void ClassicalR::require_same(const ClassicalR &o) const
{
  if (!m_algebra.same_structure(o.m_algebra))
    throw StructureMismatch("r-matrices over different algebras");
}

ClassicalR &ClassicalR::operator+=(const ClassicalR &o)
{
  require_same(o);
  for (const auto &[k, c] : o.m_terms)
    accumulate(m_terms, k, c);
  return *this;
}

ClassicalR &ClassicalR::operator-=(const ClassicalR &o)
{
  require_same(o);
  for (const auto &[k, c] : o.m_terms)
    accumulate(m_terms, k, -c);
  return *this;
}

ClassicalR &ClassicalR::operator*=(const GaussianRational &c)
{
  if (c.is_zero())
    m_terms.clear();
  for (auto &[k, v] : m_terms)
    v *= c;
  return *this;
}

bool operator==(const ClassicalR &a, const ClassicalR &b)
{
  return a.m_algebra.same_structure(b.m_algebra) && a.m_terms == b.m_terms;
}

std::string ClassicalR::to_string() const
{
  if (m_terms.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[ij, c] : m_terms)
  {
    if (!first)
      os << " + ";
    first = false;
    os << render_coefficient(c) << " · " << m_algebra.symbol(ij.first) << "∧" << m_algebra.symbol(ij.second);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

TensorElement universal_R(const TwistBundle &tw) { return flip21(tw.element) * tw.inverse; }

QybeResult qybe_check(const TensorElement &R)
{
  const TensorElement r12 = leg_embed(R, Placement::p12);
  const TensorElement r13 = leg_embed(R, Placement::p13);
  const TensorElement r23 = leg_embed(R, Placement::p23);
  TensorElement lhs = r12 * r13 * r23;
  TensorElement rhs = r23 * r13 * r12;
  TensorElement residual = lhs - rhs;
  return {std::move(lhs), std::move(rhs), std::move(residual)};
}

ClassicalR extract_classical_r(const TensorElement &R)
{
  if (R.legs() != 2)
    throw RMatrixError("universal R-matrix must have 2 legs");
  if (!(R.component(0) == R.one_like()))
    throw RMatrixError("degree-0 part of R is not 1⊗1");
  const LieAlgebra &alg = R.uea()->algebra();
  std::map<std::pair<std::size_t, std::size_t>, GaussianRational> coeffs;
  const TensorElement linear = R.component(1);
  for (const auto &[k, c] : linear.terms())
  {
    if (k[0].length() != 1 || k[1].length() != 1)
      throw RMatrixError("degree-1 part of R is not a sum of generator⊗generator terms");
    coeffs.emplace(std::pair<std::size_t, std::size_t>{k[0].factors()[0].generator, k[1].factors()[0].generator}, -c);
  }
  ClassicalR r(alg);
  for (const auto &[ij, c] : coeffs)
  {
    const auto [i, j] = ij;
    auto it = coeffs.find({j, i});
    const GaussianRational partner = it == coeffs.end() ? GaussianRational() : it->second;
    if (i == j || !(partner == -c))
      throw RMatrixError("degree-1 part of R is not antisymmetric");
    if (i < j)
      r.add_wedge(i, j, c);
  }
  return r;
}

std::string CybeResult::render(const LieAlgebra &alg) const
{
  if (residual.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[k, c] : residual)
  {
    if (!first)
      os << " + ";
    first = false;
    os << render_coefficient(c) << " · " << alg.symbol(k[0]) << "⊗" << alg.symbol(k[1]) << "⊗" << alg.symbol(k[2]);
  }
  return os.str();
}

CybeResult cybe_check(const ClassicalR &r)
{
  const LieAlgebra &alg = r.algebra();
  const auto t = r.tensor_coefficients();
  CybeResult out;
  for (const auto &[ab, x] : t)
    for (const auto &[cd, y] : t)
    {
      const auto [a, b] = ab;
      const auto [c, d] = cd;
      const GaussianRational xy = x * y;
      // [r12, r13]: [x_a, x_c] ⊗ x_b ⊗ x_d
      for (const auto &[k, s] : alg.bracket(a, c))
        accumulate(out.residual, std::array{k, b, d}, xy * s);
      // [r12, r23]: x_a ⊗ [x_b, x_c] ⊗ x_d
      for (const auto &[k, s] : alg.bracket(b, c))
        accumulate(out.residual, std::array{a, k, d}, xy * s);
      // [r13, r23]: x_a ⊗ x_c ⊗ [x_b, x_d]
      for (const auto &[k, s] : alg.bracket(b, d))
        accumulate(out.residual, std::array{a, c, k}, xy * s);
    }
  return out;
}

namespace
{

void require_valid_recipe(const EmbeddingRecipe &rec, const LieAlgebra &source)
{
  if (!rec.source.same_structure(source))
    throw AlgebraError("r-matrix algebra does not match the embedding source " + rec.source.name());
  const auto report = embedding_check(rec);
  if (!report.passed())
  {
    std::string failed;
    for (const auto &f : report.failed_relations())
      failed += (failed.empty() ? "" : ", ") + f;
    throw AlgebraError("embedding '" + rec.label + "' fails its relation check: " + failed);
  }
}

} // namespace

ClassicalR pushforward(const ClassicalR &r, const EmbeddingRecipe &rec)
{
  require_valid_recipe(rec, r.algebra());
  std::vector<ClassicalR::Wedge> wedges;
  for (const auto &[ij, c] : r.terms())
    wedges.push_back({rec.images[ij.first], rec.images[ij.second], c});
  return ClassicalR::from_wedges(rec.target, wedges);
}

Tensor3 pushforward(const Tensor3 &t, const EmbeddingRecipe &rec)
{
  Tensor3 out;
  for (const auto &[k, c] : t)
    for (const auto &[a, x] : rec.images.at(k[0]))
      for (const auto &[b, y] : rec.images.at(k[1]))
        for (const auto &[d, z] : rec.images.at(k[2]))
          accumulate(out, std::array{a, b, d}, c * x * y * z);
  return out;
}

ClassicalR reference_r(TwistFamily family, const Carrier &carrier)
{
  const LieAlgebra &alg = carrier.algebra();
  const Params &p = carrier.params();
  auto g = [&](std::string_view s) { return basis_element(alg.index_of(s)); };
  std::vector<ClassicalR::Wedge> w{{g("A"), g("B"), 1}, {g("H"), g("E"), p.gamma / p.delta}};
  switch (family)
  {
  case TwistFamily::FP:
  case TwistFamily::FPprime:
    break;
  case TwistFamily::F:
    w.push_back({g("J"), g("B"), 1});
    break;
  case TwistFamily::Ftilde:
    w.push_back({g("J"), g("B"), -1});
    break;
  case TwistFamily::Fprime:
    w.push_back({g("J"), g("A"), 1});
    break;
  case TwistFamily::Ftildeprime:
    w.push_back({g("J"), g("A"), -1});
    break;
  default:
    throw AlgebraError("no published classical r-matrix for " + to_string(family));
  }
  return ClassicalR::from_wedges(alg, w);
}

ClassicalR poincare_reference_r(const LieAlgebra &poincare, int sign)
{
  const GaussianRational I = GaussianRational::i();
  auto g = [&](std::string_view s) { return basis_element(poincare.index_of(s)); };
  auto add_scaled = [](LieElement x, const LieElement &y, const GaussianRational &c) {
    twistkit::add_scaled(x, y, c);
    return x;
  };
  const LieElement j_minus = add_scaled(g("J_1"), g("J_2"), -I);
  const LieElement p_plus = add_scaled(g("P_1"), g("P_2"), I);
  const LieElement k_minus = add_scaled(g("K_1"), g("K_2"), -I);
  const LieElement left = add_scaled(scaled(g("J_3"), GaussianRational(sign)), p_plus, 1);
  const LieElement right = add_scaled(j_minus, k_minus, I);
  const LieElement pt_minus_p3 = add_scaled(g("P_t"), g("P_3"), -1);
  return ClassicalR::from_wedges(poincare, {{left, right, 1}, {g("K_3"), pt_minus_p3, 2 * I}});
}

} // namespace twistkit
