#ifndef TWISTKIT_TWISTENGINE_HPP
#define TWISTKIT_TWISTENGINE_HPP

#include "twistkit/hopf.hpp"
#include "twistkit/liealg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace twistkit
{

/// Abstract carrier algebra (Lc, Lcd, L or L') with its parameters, truncated
/// enveloping algebra and the primitive series built from it:
///   σ = ln(1 + γE)/δ,  ρ = ln(1 + μBe^{−δσ})/μ (L),  ρ' = ln(1 + μA)/μ (L').
class Carrier
{
public:
  static std::shared_ptr<const Carrier> create(AbstractFamily family, const Params &params, int order);

  AbstractFamily family() const noexcept { return m_family; }
  const Params &params() const noexcept { return m_params; }
  const UeaPtr &uea() const noexcept { return m_uea; }
  const LieAlgebra &algebra() const noexcept { return m_uea->algebra(); }
  int order() const noexcept { return m_uea->order(); }
  bool has_j() const noexcept;

  UEAElement one() const { return UEAElement::one(m_uea); }
  UEAElement generator(std::string_view symbol) const { return UEAElement::generator(m_uea, symbol); }

  const UEAElement &sigma() const noexcept { return m_sigma; }
  /// ρ on L, ρ' on L'. Throws AlgebraError on the 4-dimensional carriers.
  const UEAElement &rho() const;

  /// exp(a·δσ + b·μρ + c·μσ), where ρ means ρ' on L'. The terms commute.
  /// The μσ slot exists only to evaluate misprinted exponents.
  const UEAElement &exponential(int a, int b = 0, int c = 0) const;

  std::shared_ptr<const Carrier> with_order(int order) const { return create(m_family, m_params, order); }

private:
  Carrier(AbstractFamily family, const Params &params, int order);

  AbstractFamily m_family;
  Params m_params;
  UeaPtr m_uea;
  UEAElement m_sigma;
  std::optional<UEAElement> m_rho;

  mutable std::mutex m_mutex;
  mutable std::map<std::tuple<int, int, int>, UEAElement> m_exp_cache;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

enum class TwistFamily
{
  FP,
  FPprime,
  F,
  Ftilde,
  Fprime,
  Ftildeprime,
  Phi_j,
  Phi_P,
  Phi_Pprime,
  Phi,
  Phi21,
  PhiPrime,
  PhiPrime21
};

std::string to_string(TwistFamily f);
/// Accepts the enumerator names ("FP", "Ftildeprime", "Phi_j", ...).
TwistFamily parse_twist_family(std::string_view s);
/// The six composite twists, in canonical order.
const std::vector<TwistFamily> &composite_twists();
const std::vector<TwistFamily> &all_twist_families();
/// Whether the twist can be built on the carrier.
bool supports(TwistFamily twist, AbstractFamily carrier);
/// Smallest carrier on which the twist lives: Lc for FP/Φ_j/Φ_P, Lcd for
/// FP'/Φ_P', L for F, F̃, Φ, Φ₂₁ and L' for the primed extensions.
AbstractFamily natural_carrier(TwistFamily twist);

/// Twisting element with its factor decomposition (left to right) and
/// order-by-order inverse.
struct TwistBundle
{
  TwistFamily family;
  CarrierPtr carrier;
  std::vector<std::string> factor_names;
  std::vector<TensorElement> factors;
  TensorElement element;
  TensorElement inverse;

  Conjugation conjugation() const { return {&element, &inverse}; }

  /// Multiplies the factors in order and inverts the product.
  static TwistBundle from_factors(TwistFamily family, CarrierPtr carrier, std::vector<std::string> names,
                                  std::vector<TensorElement> factors);
};

/// Throws AlgebraError if the twist is not supported on the carrier.
TwistBundle build_twist(TwistFamily family, const CarrierPtr &carrier);

/// Δ_F(x) = F Δ(x) F⁻¹.
TensorElement twisted_coproduct(const TwistBundle &tw, const UEAElement &x);

/// Twist whose deformed coproduct the single factors live over: Φ_P and Φ_P'
/// twist U_j (base Φ_j), Φ and Φ₂₁ twist U_P (base F_P), Φ' and Φ'₂₁ twist
/// U_P' (base F_P'). Composite twists and Φ_j twist the undeformed algebra.
std::optional<TwistFamily> base_twist(TwistFamily f);

struct CocycleResult
{
  std::optional<TwistFamily> base; // Δ below is Δ_base when set
  TensorElement lhs;               // F₁₂ (Δ⊗id)(F)
  TensorElement rhs;               // F₂₃ (id⊗Δ)(F)
  TensorElement residual; // lhs − rhs
  bool passed() const { return residual.is_zero(); }
};
/// Cocycle condition, relative to base_twist(tw.family) when there is one.
CocycleResult cocycle_check(const TwistBundle &tw);

struct CounitResult
{
  UEAElement left;  // (ε⊗id)(F)
  UEAElement right; // (id⊗ε)(F)
  bool passed() const;
};
CounitResult counit_check(const TwistBundle &tw);

bool inverse_check(const TwistBundle &tw);

// ---------------------------------------------------------------------------
// Expected twisted coproducts

/// One summand c · (left ⊗ right) of a closed-form coproduct. Factors are
/// written as products of generators and exponentials, e.g. "J e^{-δσ-μρ}".
struct FormulaTerm
{
  std::function<GaussianRational(const Params &)> coef;
  std::string coef_label; // "", "-", "-δ", "+γ", ...
  std::string left;
  std::string right;
};

enum class ReadingKind
{
  verbatim,
  alternative,
  corrected
};
std::string to_string(ReadingKind k);

struct Reading
{
  ReadingKind kind;
  std::string note;
  std::vector<FormulaTerm> terms;
};

struct TableEntry
{
  std::string generator;
  /// Empty when no closed form is published; the coproduct is then only
  /// computed and emitted.
  std::vector<Reading> readings;
};

/// Published coproduct table for a composite twist on a given carrier.
/// Throws AlgebraError for twists without a table.
std::vector<TableEntry> coproduct_table(TwistFamily family, AbstractFamily carrier);

/// Evaluates a factor such as "e^{-μρ} B e^{-2δσ}" in the carrier.
UEAElement evaluate_factor(const Carrier &c, std::string_view text);
TensorElement evaluate_formula(const Carrier &c, const std::vector<FormulaTerm> &terms);
std::string render_formula(const std::vector<FormulaTerm> &terms);

enum class EntryStatus
{
  match,
  recorded_mismatch,
  fail,
  computed
};
std::string to_string(EntryStatus s);

struct ReadingOutcome
{
  Reading reading;
  bool matches;
  TensorElement difference; // computed − expected
};

struct CoproductComparison
{
  std::string generator;
  EntryStatus status;
  TensorElement computed;
  std::vector<ReadingOutcome> outcomes;
  /// Human-readable adjudication for typo-ledger entries.
  std::string ledger;
};

/// Verbatim match → match; otherwise a matching corrected/alternative reading
/// → recorded_mismatch; otherwise fail. Entries without readings → computed.
std::vector<CoproductComparison> coproduct_table_check(const TwistBundle &tw);

// ---------------------------------------------------------------------------
// Factorization identities

enum class FactorizationId
{
  fac_FP,       // Ψ = F_P:  (Δ⊗id)Ψ = Ψ₁₃Ψ₂₃, (id⊗Δ_{F_P})Ψ = Ψ₁₂Ψ₁₃
  fac_FPprime,  // Ψ = F_P'
  fac_PhiP,     // Ψ = Φ_P:  (Δ_j⊗id)Ψ = Ψ₁₃Ψ₂₃, (id⊗Δ_P)Ψ = Ψ₁₂Ψ₁₃
  fac2,         // Ψ = Φ_P': (Δ_P'⊗id)Ψ = Ψ₁₃Ψ₂₃, (id⊗Δ_j)Ψ = Ψ₁₂Ψ₁₃
  fact1_P,      // (Δ_P⊗id)Φ = Φ₁₃Φ₂₃, (id⊗Δ_F)Φ = Φ₁₂Φ₁₃
  fact1_Pprime, // same with P', F', Φ'
  fact2_P,      // (Δ_F̃⊗id)Φ₂₁ = ..., (id⊗Δ_P)Φ₂₁ = ...
  fact2_Pprime  // same with P', F̃', Φ'₂₁
};

std::string to_string(FactorizationId id);
FactorizationId parse_factorization(std::string_view s);
const std::vector<FactorizationId> &all_factorizations();
/// Carrier family the identity lives on.
AbstractFamily factorization_carrier(FactorizationId id);

struct FactorizationResult
{
  FactorizationId id;
  TensorElement left_residual;  // (Δ_α⊗id)Ψ − Ψ₁₃Ψ₂₃
  TensorElement right_residual; // (id⊗Δ_f)Ψ − Ψ₁₂Ψ₁₃
  bool passed() const { return left_residual.is_zero() && right_residual.is_zero(); }
};

/// The carrier must be of factorization_carrier(id) family.
FactorizationResult factorization_check(FactorizationId id, const CarrierPtr &carrier);

// ---------------------------------------------------------------------------

struct GeneratorCheck
{
  std::string generator;
  bool passed;
  bool vacuous = false;
  TensorElement residual;
};

struct ClassicalLimitResult
{
  bool element_is_one; // rebuilt at order 0
  std::vector<GeneratorCheck> generators;
  bool passed() const;
};

/// Degree-0 part of Δ_F(x) equals that of Δ(x) for every generator, and the
/// twist rebuilt at truncation order 0 is 1⊗1.
ClassicalLimitResult classical_limit_check(const TwistBundle &tw);

/// (Δ_F⊗id)Δ_F(x) = (id⊗Δ_F)Δ_F(x) for every generator.
std::vector<GeneratorCheck> twisted_coassociativity_check(const TwistBundle &tw);

/// Δ_F([x,y]) = [Δ_F(x), Δ_F(y)] for every generator pair; returns failures.
std::vector<std::pair<std::string, std::string>> homomorphism_check(const TwistBundle &tw);

/// Δ_F(x) = x⊗1 + 1⊗x.
bool is_primitive(const TwistBundle &tw, const UEAElement &x);

} // namespace twistkit

#endif
