#ifndef TWISTKIT_LIEALG_HPP
#define TWISTKIT_LIEALG_HPP

#include "twistkit/scalars.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace twistkit
{

/// Linear combination of generators, keyed by generator index. Never stores
/// zero coefficients.
using LieElement = std::map<std::size_t, GaussianRational>;

void add_scaled(LieElement &into, const LieElement &x, const GaussianRational &c);
LieElement scaled(const LieElement &x, const GaussianRational &c);
LieElement basis_element(std::size_t index, GaussianRational c = 1);

struct Generator
{
  std::string symbol;
  int zdegree = 0;
};

class AlgebraError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Finite-dimensional Lie algebra given by structure constants on an ordered
/// basis. The basis order fixes the PBW order used by the enveloping algebra.
///
/// Only brackets [x_i, x_j] with i < j are stored. Construction checks that
/// every stored bracket is homogeneous for the z-grading:
/// deg [x_i, x_j] = deg x_i + deg x_j.
class LieAlgebra
{
public:
  using BracketTable = std::map<std::pair<std::size_t, std::size_t>, LieElement>;

  /// `brackets` entries may be given with i > j; they are normalized by
  /// antisymmetry. Conflicting duplicates and [x_i, x_i] != 0 are rejected.
  LieAlgebra(std::string name, std::vector<Generator> generators,
             const std::vector<std::tuple<std::size_t, std::size_t, LieElement>> &brackets);

  const std::string &name() const noexcept { return m_name; }
  std::size_t dimension() const noexcept { return m_generators.size(); }
  const std::vector<Generator> &generators() const noexcept { return m_generators; }
  const Generator &generator(std::size_t i) const { return m_generators.at(i); }
  const std::string &symbol(std::size_t i) const { return m_generators.at(i).symbol; }
  int zdegree(std::size_t i) const { return m_generators.at(i).zdegree; }
  bool is_graded() const noexcept;

  std::optional<std::size_t> find(std::string_view symbol) const;
  /// Throws AlgebraError for an unknown symbol.
  std::size_t index_of(std::string_view symbol) const;

  /// [x_i, x_j] with antisymmetry applied.
  LieElement bracket(std::size_t i, std::size_t j) const;
  LieElement bracket(const LieElement &x, const LieElement &y) const;
  const BracketTable &table() const noexcept { return m_table; }

  std::string render(const LieElement &x) const;

  friend bool operator==(const LieAlgebra &a, const LieAlgebra &b)
  {
    return a.m_name == b.m_name && a.m_table == b.m_table && a.same_generators(b);
  }
  /// Same generators, gradings and structure constants (name ignored).
  bool same_structure(const LieAlgebra &o) const { return m_table == o.m_table && same_generators(o); }

private:
  bool same_generators(const LieAlgebra &o) const;

  std::string m_name;
  std::vector<Generator> m_generators;
  BracketTable m_table;
};

// ---------------------------------------------------------------------------
// Builders

enum class AbstractFamily
{
  Lc,
  Lcd,
  L,
  Lprime
};

enum class ConcreteFamily
{
  isu,
  iso,
  schrodinger,
  poincare
};

std::string_view to_string(AbstractFamily f);
std::string_view to_string(ConcreteFamily f);
std::optional<AbstractFamily> parse_abstract_family(std::string_view s);
std::optional<ConcreteFamily> parse_concrete_family(std::string_view s);

/// Deformation parameters (gamma, delta, mu) of the carrier algebras.
struct Params
{
  GaussianRational gamma{1};
  GaussianRational delta{1};
  GaussianRational mu{1};

  friend bool operator==(const Params &, const Params &) = default;
  std::string to_string() const;
};

/// Carrier algebras on the basis (J,) H, E, A, B.
/// z-degrees: E, B -> 1 for L/Lc; E, A -> 1 for L'/L'c; everything else 0.
LieAlgebra build_abstract(AbstractFamily family, const Params &p);

/// isu(n): U^a_b (a, b = 1..n, row-major), then P^a, then P_a.
/// iso(n): Y_ab (a < b, lexicographic), then P_a.
/// schrodinger(n): P_t, P_a, G_a, J_ab (a < b), K, D, M.
/// poincare: P_t, P_1..3, J_1..3, K_1..3 (n is ignored).
LieAlgebra build_concrete(ConcreteFamily family, int n);

/// If `alg` has exactly the structure of one of the carrier algebras for
/// some parameters, returns them.
struct AbstractInfo
{
  AbstractFamily family;
  Params params;
};
std::optional<AbstractInfo> classify_abstract(const LieAlgebra &alg);

// ---------------------------------------------------------------------------
// Jacobi identity

struct JacobiViolation
{
  std::array<std::size_t, 3> triple;
  LieElement residual;
};

struct JacobiReport
{
  std::vector<JacobiViolation> violations;
  std::size_t triples_checked = 0;
  bool passed() const noexcept { return violations.empty(); }
};

/// Cyclic sum [[x,y],z] + [[y,z],x] + [[z,x],y] over all i < j < k.
JacobiReport jacobi_check(const LieAlgebra &alg);

// ---------------------------------------------------------------------------
// Embeddings of L into the concrete algebras

enum class RecipeVariant
{
  corrected,
  verbatim
};

struct EmbeddingRecipe
{
  std::string label;
  LieAlgebra source;
  LieAlgebra target;
  /// images[i] is the image of source generator i.
  std::vector<LieElement> images;
  Params params;
  std::vector<GaussianRational> alphas;
  std::vector<GaussianRational> betas;
};

/// Coefficient lists may be empty (all ones). isu/iso use gamma = -2 sum
/// alpha_k beta_k over k = 2..floor(n/2); schrodinger uses one alpha per odd k.
EmbeddingRecipe build_embedding(ConcreteFamily family, int n, std::vector<GaussianRational> alphas = {},
                                std::vector<GaussianRational> betas = {},
                                RecipeVariant variant = RecipeVariant::corrected);

/// Identity homomorphism of a carrier algebra onto itself.
EmbeddingRecipe identity_embedding(const LieAlgebra &carrier);

struct RelationResult
{
  std::size_t x;
  std::size_t y;
  std::string name; // "[H,E]"
  bool passed;
  LieElement residual; // in target basis
};

struct EmbeddingReport
{
  std::vector<RelationResult> relations;
  bool passed() const noexcept;
  std::vector<std::string> failed_relations() const;
};

/// [img x, img y] - img [x, y] for every pair of source generators.
EmbeddingReport embedding_check(const EmbeddingRecipe &rec);

/// L <-> L' via H -> H, E -> E, A -> -B, B -> A, J -> J.
LieAlgebra dualize(const LieAlgebra &alg);
EmbeddingRecipe dualize(const EmbeddingRecipe &rec);

} // namespace twistkit

#endif
