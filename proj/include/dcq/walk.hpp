#pragma once

// The Dirac quantum walk on a periodic 1D lattice, its continuum limit
// against plane-wave solutions of the Dirac equation, and the discrete
// Lorentz-covariance patch check.

#include <cstdint>
#include <functional>
#include <vector>

#include "dcq/linalg.hpp"

namespace dcq {

/// Amplitudes ψ⁺(x), ψ⁻(x) on sites x = 0..sites−1 with periodic indexing.
struct WalkState {
  Index sites = 0;
  double dx = 1.0;
  std::vector<DualComplex> plus;
  std::vector<DualComplex> minus;
  std::int64_t time = 0;

  static WalkState zeros(Index sites, double dx = 1.0);
};

/// Σ_x |ψ⁺|² + |ψ⁻|² as a dual real.
DualReal total_norm(const WalkState& w);

/// [[−imε, 1], [1, −imε]]: significant part σ_x, infinitesimal part −im·I.
DCMatrix dirac_gate(double m);

/// The complex-corrected walk gate [[−i sin mh, cos mh], [cos mh, −i sin mh]].
CMatrix corrected_dirac_gate(double m, double h);

/// One step with a 2×2 gate acting on (ψ⁺(x), ψ⁻(x)): the first output row
/// moves to x−1 as ψ⁻, the second to x+1 as ψ⁺.
WalkState step(const WalkState& w, const DCMatrix& gate);
WalkState step(const WalkState& w, double m);

/// Initial state plus every `every`-th state, and always the last one.
std::vector<WalkState> run(const WalkState& w, const DCMatrix& gate, std::int64_t steps,
                           std::int64_t every = 1);
std::vector<WalkState> run(const WalkState& w, double m, std::int64_t steps,
                           std::int64_t every = 1);

// Continuum limit -----------------------------------------------------------

/// ψ(x, t) = u e^{i(kx − ωt)} with ω = ±√(k² + m²) and u the unit eigenvector
/// of kσ_z + mσ_x for ω, solving ∂_t ψ = −σ_z ∂_x ψ − i m σ_x ψ.
struct DiracPlaneWave {
  double k = 1.0;
  double m = 1.0;
  bool positive_energy = true;

  double omega() const;
  Complex u_plus() const;
  Complex u_minus() const;
  Complex plus(double x, double t) const;
  Complex minus(double x, double t) const;
};

/// Lattice sampling of a plane wave at t = 0, normalized to unit total norm.
WalkState sample_plane_wave(const DiracPlaneWave& wave, Index sites, double length);

struct ContinuumRun {
  Index sites = 0;
  double h = 0.0;
  std::int64_t steps = 0;
  double time = 0.0;
  double relative_l2_error = 0.0;
};

/// Runs the corrected walk with h = length/sites for round(t_final/h) steps
/// and compares with the analytic wave at the time actually reached.
ContinuumRun continuum_error(const DiracPlaneWave& wave, Index sites, double t_final,
                             double length);

enum class GateForm { Corrected, Linearized };

struct ContinuumResidual {
  Complex plus;
  Complex minus;
  double magnitude() const;
};

using Field = std::function<Complex(double x, double t)>;

/// One-step local residual ψ(x, t+h) − walk prediction from the neighbours at
/// x ∓ h. Corrected uses the sin/cos gate; Linearized uses σ_x − imh·I, the
/// dual gate evaluated at ε = h.
ContinuumResidual continuum_residual(const Field& psi_plus, const Field& psi_minus, double m,
                                     double x, double t, double h,
                                     GateForm form = GateForm::Corrected);

// Discrete Lorentz covariance ----------------------------------------------

struct LorentzPatch {
  int alpha = 1;
  int beta = 1;
  double m = 0.0;
  double m_prime = 0.0;
  DCMatrix enc_alpha;  // alpha × 1
  DCMatrix enc_beta;   // beta × 1
};

/// Uniform spreading encodings (1/√α, ..., 1/√α)ᵀ and m′ = m/√(αβ).
/// Throws InvalidArgument for α or β below 1.
LorentzPatch lorentz_encodings(int alpha, int beta, double m);

/// A patch with caller-supplied encodings. Throws PatchMismatch when their
/// wire counts disagree with α, β, NotUnitary when they are not isometries.
LorentzPatch make_patch(int alpha, int beta, double m, DCMatrix enc_alpha, DCMatrix enc_beta,
                        const Tolerances& tol = kDefaultTolerances);

struct PatchWires {
  std::vector<DualComplex> right;  // α right-moving outputs
  std::vector<DualComplex> left;   // β left-moving outputs
};

/// Encode, then sweep the α×β grid of gates with mass m′.
PatchWires patch_lhs(const LorentzPatch& p, const DualComplex& plus, const DualComplex& minus,
                     const std::function<DCMatrix(double)>& gate);
/// One gate with mass m, then encode.
PatchWires patch_rhs(const LorentzPatch& p, const DualComplex& plus, const DualComplex& minus,
                     const std::function<DCMatrix(double)>& gate);

/// Max wire difference over both parts.
double wire_discrepancy(const PatchWires& a, const PatchWires& b);

enum class CovarianceMode { DualExact, Corrected };

struct CovarianceReport {
  CovarianceMode mode = CovarianceMode::DualExact;
  int alpha = 1;
  int beta = 1;
  double max_discrepancy = 0.0;
  /// log2(D(h)/D(h/2)) in corrected mode; NaN in dual mode or when D(h)
  /// vanishes at roundoff level.
  double fitted_order = 0.0;
};

/// Dual mode compares both sides with dirac_gate. Corrected mode uses the
/// sin/cos gate at h and h/2 and reports D(h). Throws PatchMismatch.
CovarianceReport covariance_check(const LorentzPatch& p, const DualComplex& plus,
                                  const DualComplex& minus, CovarianceMode mode, double h = 1e-2);

}  // namespace dcq
