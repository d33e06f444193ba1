#ifndef TWISTKIT_RMAT_HPP
#define TWISTKIT_RMAT_HPP

#include "twistkit/twistengine.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>

namespace twistkit
{

class RMatrixError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Σ c_ij x_i ∧ x_j over i < j, with x∧y = x⊗y − y⊗x.
class ClassicalR
{
public:
  using Terms = std::map<std::pair<std::size_t, std::size_t>, GaussianRational>;

  explicit ClassicalR(LieAlgebra algebra);

  /// Bilinear expansion of Σ c · x∧y for Lie-algebra elements x, y.
  struct Wedge
  {
    LieElement left;
    LieElement right;
    GaussianRational coef{1};
  };
  static ClassicalR from_wedges(LieAlgebra algebra, const std::vector<Wedge> &wedges);

  const LieAlgebra &algebra() const noexcept { return m_algebra; }
  const Terms &terms() const noexcept { return m_terms; }
  bool is_zero() const noexcept { return m_terms.empty(); }

  /// Adds c · x_i∧x_j, reordering to i < j.
  void add_wedge(std::size_t i, std::size_t j, const GaussianRational &c);
  /// Full tensor coefficients r^{ab} of Σ r^{ab} x_a⊗x_b.
  std::map<std::pair<std::size_t, std::size_t>, GaussianRational> tensor_coefficients() const;

  ClassicalR &operator+=(const ClassicalR &o);
  ClassicalR &operator-=(const ClassicalR &o);
  ClassicalR &operator*=(const GaussianRational &c);
  friend ClassicalR operator+(ClassicalR a, const ClassicalR &b) { return a += b; }
  friend ClassicalR operator-(ClassicalR a, const ClassicalR &b) { return a -= b; }
  friend ClassicalR operator*(ClassicalR a, const GaussianRational &c) { return a *= c; }
  friend bool operator==(const ClassicalR &a, const ClassicalR &b);

  /// "c · X∧Y + ...", sorted by generator indices; "0" when empty.
  std::string to_string() const;

private:
  void require_same(const ClassicalR &o) const;

  LieAlgebra m_algebra;
  Terms m_terms;
};

/// R = F₂₁ F⁻¹.
TensorElement universal_R(const TwistBundle &tw);

struct QybeResult
{
  TensorElement lhs; // R₁₂R₁₃R₂₃
  TensorElement rhs; // R₂₃R₁₃R₁₂
  TensorElement residual;
  bool passed() const { return residual.is_zero(); }
};
QybeResult qybe_check(const TensorElement &R);

/// Classical r-matrix with R = 1⊗1 − r + (degree ≥ 2), i.e. r is minus the
/// degree-1 component of R. Throws RMatrixError if the degree-0 part is not
/// 1⊗1 or the degree-1 part is not an antisymmetric generator⊗generator sum.
ClassicalR extract_classical_r(const TensorElement &R);

using Tensor3 = std::map<std::array<std::size_t, 3>, GaussianRational>;

struct CybeResult
{
  Tensor3 residual;
  bool passed() const { return residual.empty(); }
  std::string render(const LieAlgebra &alg) const;
};

/// [[r,r]] = [r₁₂,r₁₃] + [r₁₂,r₂₃] + [r₁₃,r₂₃] in g⊗g⊗g from structure constants.
CybeResult cybe_check(const ClassicalR &r);

/// Applies images⊗images to r. Throws AlgebraError if the recipe fails its
/// embedding check or r lives on a different algebra than the recipe source.
ClassicalR pushforward(const ClassicalR &r, const EmbeddingRecipe &rec);
/// images⊗images⊗images applied to a 3-tensor over the source.
Tensor3 pushforward(const Tensor3 &t, const EmbeddingRecipe &rec);

/// Published classical r-matrix for a twist on its carrier:
///   F, F̃:    ±J∧B + A∧B + (γ/δ)H∧E
///   F', F̃':  ±J∧A + A∧B + (γ/δ)H∧E
///   F_P, F_P': A∧B + (γ/δ)H∧E
/// Throws AlgebraError for single-factor twists.
ClassicalR reference_r(TwistFamily family, const Carrier &carrier);

/// (±J₃ + P₊)∧(J₋ + iK₋) + 2i K₃∧(P_t − P₃) with J₋ = J₁ − iJ₂,
/// P₊ = P₁ + iP₂, K₋ = K₁ − iK₂, on the Poincaré algebra.
ClassicalR poincare_reference_r(const LieAlgebra &poincare, int sign = 1);

} // namespace twistkit

#endif
