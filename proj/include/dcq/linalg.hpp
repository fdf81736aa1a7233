#pragma once

// Dense linear algebra over the dual-complex ring.
//
// Vectors and matrices keep their significant and infinitesimal parts as two
// complex Eigen objects, M = sig + ε·inf. Products expand as
// (A + εB)(C + εD) = AC + ε(AD + BC).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dcq/scalar.hpp"

namespace dcq {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

class DCVector {
 public:
  DCVector() = default;
  explicit DCVector(Index dim);
  DCVector(CVector sig, CVector inf);
  static DCVector from_sig(CVector sig);
  static DCVector basis(Index dim, Index k);

  Index dim() const { return sig_.size(); }
  DualComplex operator[](Index i) const { return {sig_(i), inf_(i)}; }
  void set(Index i, const DualComplex& w);

  const CVector& sig() const { return sig_; }
  const CVector& inf() const { return inf_; }

  bool operator==(const DCVector& o) const { return sig_ == o.sig_ && inf_ == o.inf_; }

 private:
  CVector sig_;
  CVector inf_;
};

DCVector operator+(const DCVector& a, const DCVector& b);
DCVector operator-(const DCVector& a, const DCVector& b);
DCVector operator*(const DualComplex& s, const DCVector& v);

/// ⟨u|v⟩ = Σ u_k* v_k, conjugate-linear in the first slot.
DualComplex inner(const DCVector& u, const DCVector& v);

/// ⟨v|v⟩ as a dual real. Always defined.
DualReal norm_squared(const DCVector& v);

/// ‖v‖ = ‖ψ‖ + Re⟨ψ|φ⟩/‖ψ‖ ε. Throws InfinitesimalModulus for a nonzero
/// infinitesimal vector, whose norm is 0 with an undefined ε-part.
DualReal vnorm(const DCVector& v, const Tolerances& tol = kDefaultTolerances);

/// Max absolute component difference over both parts.
double max_abs_diff(const DCVector& a, const DCVector& b);

class DCMatrix {
 public:
  DCMatrix() = default;
  DCMatrix(Index rows, Index cols);
  DCMatrix(CMatrix sig, CMatrix inf);
  static DCMatrix from_sig(CMatrix sig);
  static DCMatrix identity(Index n);

  Index rows() const { return sig_.rows(); }
  Index cols() const { return sig_.cols(); }
  bool is_square() const { return rows() == cols(); }

  DualComplex operator()(Index r, Index c) const { return {sig_(r, c), inf_(r, c)}; }
  void set(Index r, Index c, const DualComplex& w);

  const CMatrix& sig() const { return sig_; }
  const CMatrix& inf() const { return inf_; }

  DCVector col(Index c) const;
  void set_col(Index c, const DCVector& v);
  DCMatrix block(Index r0, Index c0, Index nr, Index nc) const;

  bool operator==(const DCMatrix& o) const { return sig_ == o.sig_ && inf_ == o.inf_; }

 private:
  CMatrix sig_;
  CMatrix inf_;
};

DCMatrix operator+(const DCMatrix& a, const DCMatrix& b);
DCMatrix operator-(const DCMatrix& a, const DCMatrix& b);
DCMatrix operator*(const DCMatrix& a, const DCMatrix& b);
DCMatrix operator*(const DualComplex& s, const DCMatrix& m);
DCVector operator*(const DCMatrix& m, const DCVector& v);

DCMatrix adjoint(const DCMatrix& m);
DCMatrix kron(const DCMatrix& a, const DCMatrix& b);
DCVector kron(const DCVector& a, const DCVector& b);
/// |u⟩⟨v|
DCMatrix outer(const DCVector& u, const DCVector& v);

double max_abs_diff(const DCMatrix& a, const DCMatrix& b);

struct OpClass {
  bool hermitian = false;
  bool anti_hermitian = false;
  bool unitary = false;
  bool none() const { return !hermitian && !anti_hermitian && !unitary; }
};

double hermiticity_residual(const DCMatrix& m);
double anti_hermiticity_residual(const DCMatrix& m);
double unitarity_residual(const DCMatrix& m);

/// Flags judged on both parts at tol.rtol. Throws NonSquare.
OpClass classify_op(const DCMatrix& m, const Tolerances& tol = kDefaultTolerances);

struct UnitaryParts {
  CMatrix unitary;    // U = sig part
  CMatrix hermitian;  // H with inf = iHU
};

/// U_ε = (I + iεH)U. Throws NotUnitary.
UnitaryParts decompose_unitary(const DCMatrix& u, const Tolerances& tol = kDefaultTolerances);
DCMatrix compose_unitary(const CMatrix& u, const CMatrix& h);

/// Complex matrix exponential (scaling and squaring).
CMatrix expm(const CMatrix& a);

/// exp(A + εB) = e^A + ε L_exp(A, B), with the Fréchet derivative read off
/// the upper-right block of exp([[A, B], [0, A]]). Throws NonSquare.
DCMatrix mat_exp(const DCMatrix& a);

// Spectral decompositions --------------------------------------------------

enum class SpectrumKind { Hermitian, Unitary };

struct EigenPair {
  DualComplex value;
  DCVector vector;
};

struct DualSpectrum {
  SpectrumKind kind = SpectrumKind::Hermitian;
  std::vector<EigenPair> pairs;

  /// Σ value_j |j⟩⟨j|
  DCMatrix reconstruct() const;
  /// max |⟨j|k⟩ − δ_jk| over both parts.
  double orthonormality_residual() const;
};

/// For a unitary eigenvalue e^{iθ}(1 + iμε): θ in (−π, π].
double eigen_phase(const DualComplex& value);
/// For a unitary eigenvalue e^{iθ}(1 + iμε): μ.
double eigen_shift(const DualComplex& value);

/// Dual eigenpairs of a dual-complex Hermitian operator. Eigenvalues of the
/// significant part closer than tol.delta are treated as one degenerate
/// cluster, inside which the projected infinitesimal part is diagonalized.
/// Sorted by (significant eigenvalue, ε-shift). Throws NotHermitian.
DualSpectrum eig_hermitian(const DCMatrix& h, const Tolerances& tol = kDefaultTolerances);

/// Dual eigenpairs e^{iθ_j}(1 + iμ_jε) of a dual-complex unitary. Sorted by
/// (θ, μ). Throws NotUnitary.
DualSpectrum eig_unitary(const DCMatrix& u, const Tolerances& tol = kDefaultTolerances);

/// Σ_j (iθ_j + iμ_jε)|j⟩⟨j| with θ_j principal. Throws NotUnitary.
DCMatrix log_unitary(const DCMatrix& u, const Tolerances& tol = kDefaultTolerances);

// Semipositivity ------------------------------------------------------------

struct SemipositivityReport {
  bool pass = true;
  double worst_violation = 0.0;
  DualReal worst_value;
  std::size_t probes = 0;
};

/// Probes ⟨ψ|E|ψ⟩ on basis-pair vectors plus `trials` random unit vectors and
/// requires each value to be appreciably positive or zero on both parts.
SemipositivityReport check_appreciably_semipositive(const DCMatrix& e, std::size_t trials,
                                                    std::uint64_t seed,
                                                    const Tolerances& tol = kDefaultTolerances);

// Dilation ------------------------------------------------------------------

/// Σ_m M_m† M_m
DCMatrix completeness_sum(std::span<const DCMatrix> family);

/// A (kd)×(kd) dual-complex unitary whose first block-column stacks the k
/// operators M_m (ancilla index most significant). The remaining columns are
/// completed deterministically by dual Gram–Schmidt over the standard basis.
/// An optional Hermitian generator K on the completed columns applies the
/// gauge U_ε ← U_ε (I_d ⊕ (I + iεK)). Throws IncompleteFamily.
DCMatrix stinespring(std::span<const DCMatrix> family,
                     const std::optional<CMatrix>& complement_generator = std::nullopt,
                     const Tolerances& tol = kDefaultTolerances);

/// (⟨m| ⊗ I) U (|0⟩ ⊗ I) for a system of dimension d.
DCMatrix dilation_block(const DCMatrix& u, Index m, Index d);
CMatrix dilation_block(const CMatrix& u, Index m, Index d);

}  // namespace dcq
