#pragma once

// States, evolutions, measurements and composition over the dual-complex
// ring, plus translation between h-parametrized conventional operators and
// dual-complex ones (extension) and back (correction).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dcq/linalg.hpp"

namespace dcq {

/// A unit dual-complex vector: ‖ψ‖ = 1 and Re⟨ψ|φ⟩ = 0 for vec = ψ + εφ.
class QuantumState {
 public:
  /// Validates the unit norm on both parts. Throws InvalidArgument.
  static QuantumState from_unit(DCVector vec, const Tolerances& tol = kDefaultTolerances);

  const DCVector& vec() const { return vec_; }
  Index dim() const { return vec_.dim(); }

 private:
  explicit QuantumState(DCVector vec) : vec_(std::move(vec)) {}
  DCVector vec_;
};

/// Max deviation of vnorm(v) from 1 + 0ε over both parts.
double unit_norm_residual(const DCVector& v, const Tolerances& tol = kDefaultTolerances);

/// Divides by vnorm(v). Throws InfinitesimalVector.
QuantumState normalize(const DCVector& v, const Tolerances& tol = kDefaultTolerances);

class Measurement {
 public:
  /// Validates Σ M†M = I on both parts. Labels default to "0", "1", ...
  /// Throws IncompleteMeasurement.
  static Measurement create(std::vector<DCMatrix> operators, std::vector<std::string> labels = {},
                            const Tolerances& tol = kDefaultTolerances);

  const std::vector<DCMatrix>& operators() const { return operators_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return operators_.size(); }
  Index dim() const { return operators_.front().cols(); }

 private:
  Measurement(std::vector<DCMatrix> ops, std::vector<std::string> labels)
      : operators_(std::move(ops)), labels_(std::move(labels)) {}
  std::vector<DCMatrix> operators_;
  std::vector<std::string> labels_;
};

struct Outcome {
  std::string label;
  DualReal probability;
  std::optional<QuantumState> post;  // empty for a zero-probability branch

  bool zero_branch() const { return !post.has_value(); }
};

QuantumState evolve(const QuantumState& s, const DCMatrix& u,
                    const Tolerances& tol = kDefaultTolerances);

/// Evolves under exp(−i·dt·H) (ħ = 1). Throws NotHermitian.
QuantumState schrodinger_step(const QuantumState& s, const DCMatrix& h, double dt,
                              const Tolerances& tol = kDefaultTolerances);

/// p(m) = ⟨ψ|M†M|ψ⟩ and post-states M ψ / √p(m). Outcomes with a significant
/// probability at or below τ come back as zero branches.
std::vector<Outcome> measure(const QuantumState& s, const Measurement& m,
                             const Tolerances& tol = kDefaultTolerances);

/// Draws an outcome index from the significant parts of p(m).
std::size_t sample(const QuantumState& s, const Measurement& m, std::uint64_t seed,
                   const Tolerances& tol = kDefaultTolerances);

QuantumState tensor(const QuantumState& a, const QuantumState& b,
                    const Tolerances& tol = kDefaultTolerances);
DCMatrix tensor_op(const DCMatrix& a, const DCMatrix& b);

// Extension and correction ------------------------------------------------

/// Central-difference step for black-box families.
inline constexpr double kDerivativeStep = 1e-6;

struct ParamUnitary {
  std::function<CMatrix(double)> evaluate;
  std::optional<CMatrix> derivative_at_zero;
};

/// U + ε iHU from U = U_0 and iHU = dU/dh at 0, with H projected onto the
/// Hermitian matrices. Throws NotUnitaryAtZero.
DCMatrix dc_extend_unitary(const ParamUnitary& p, const Tolerances& tol = kDefaultTolerances);

/// exp(ihH) U for U_ε = (I + iεH)U. Throws NotUnitary.
CMatrix complex_correct_unitary(const DCMatrix& u, double h,
                                const Tolerances& tol = kDefaultTolerances);

/// U_ε with ε replaced by the real number h: U + h·iHU.
CMatrix evaluate_at(const DCMatrix& m, double h);

using ParamMeasurement = std::function<std::vector<CMatrix>(double)>;

/// M_m = family(0), N_m = d/dh family at 0. Throws IncompleteFamily when the
/// family is not complete at 0.
Measurement dc_extend_measurement(const ParamMeasurement& family,
                                  std::vector<std::string> labels = {},
                                  const Tolerances& tol = kDefaultTolerances);

/// (⟨m| ⊗ I) exp(ihH)U (|0⟩ ⊗ I) for the Stinespring dilation U_ε = (I + iεH)U
/// of the measurement. The optional generator fixes the dilation gauge.
std::vector<CMatrix> complex_correct_measurement(
    const Measurement& m, double h, const std::optional<CMatrix>& complement_generator = std::nullopt,
    const Tolerances& tol = kDefaultTolerances);

/// ‖M ψ‖² for a conventional operator and the significant part of ψ.
double conventional_probability(const CMatrix& m, const CVector& psi);

}  // namespace dcq
