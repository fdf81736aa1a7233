#include "dcq/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "dcq/random.hpp"

namespace dcq {

namespace {

constexpr Complex kI{0.0, 1.0};

DCVector scale_by_inverse(const DCVector& v, const DualReal& n, const Tolerances& tol) {
  return div(DualComplex(1.0), DualComplex(n), tol) * v;
}

}  // namespace

double unit_norm_residual(const DCVector& v, const Tolerances& tol) {
  try {
    const DualReal n = vnorm(v, tol);
    return std::max(std::abs(n.sig() - 1.0), std::abs(n.inf()));
  } catch (const InfinitesimalModulus&) {
    return 1.0;
  }
}

QuantumState QuantumState::from_unit(DCVector vec, const Tolerances& tol) {
  if (const double r = unit_norm_residual(vec, tol); r > tol.state_tol) {
    throw Error(ErrorCode::InvalidArgument, "not a unit dual vector (residual " +
                                                std::to_string(r) + ")");
  }
  return QuantumState(std::move(vec));
}

QuantumState normalize(const DCVector& v, const Tolerances& tol) {
  if (v.sig().norm() <= tol.tau) {
    throw Error(ErrorCode::InfinitesimalVector, "cannot normalize an infinitesimal vector");
  }
  return QuantumState::from_unit(scale_by_inverse(v, vnorm(v, tol), tol), tol);
}

Measurement Measurement::create(std::vector<DCMatrix> operators, std::vector<std::string> labels,
                                const Tolerances& tol) {
  if (operators.empty()) throw Error(ErrorCode::IncompleteMeasurement, "no operators");
  const Index d = operators.front().cols();
  for (const auto& m : operators) {
    if (m.rows() != d || m.cols() != d) {
      throw Error(ErrorCode::DimMismatch, "measurement operators must share a square shape");
    }
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < operators.size(); ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != operators.size()) {
    throw Error(ErrorCode::DimMismatch, "one label per operator");
  }
  const double r = max_abs_diff(completeness_sum(operators), DCMatrix::identity(d));
  if (r > tol.state_tol) {
    throw Error(ErrorCode::IncompleteMeasurement, "completeness residual " + std::to_string(r));
  }
  return Measurement(std::move(operators), std::move(labels));
}

QuantumState evolve(const QuantumState& s, const DCMatrix& u, const Tolerances& tol) {
  if (!u.is_square()) throw Error(ErrorCode::NonSquare, "evolution");
  if (u.cols() != s.dim()) throw Error(ErrorCode::DimMismatch, "evolution vs state");
  if (const double r = unitarity_residual(u); r > tol.rtol) {
    throw Error(ErrorCode::NotUnitary, "unitarity residual " + std::to_string(r));
  }
  return QuantumState::from_unit(u * s.vec(), tol);
}

QuantumState schrodinger_step(const QuantumState& s, const DCMatrix& h, double dt,
                              const Tolerances& tol) {
  if (!h.is_square()) throw Error(ErrorCode::NonSquare, "Hamiltonian");
  if (const double r = hermiticity_residual(h); r > tol.rtol) {
    throw Error(ErrorCode::NotHermitian, "hermiticity residual " + std::to_string(r));
  }
  return evolve(s, mat_exp(DualComplex(Complex{0.0, -dt}) * h), tol);
}

std::vector<Outcome> measure(const QuantumState& s, const Measurement& m, const Tolerances& tol) {
  if (m.dim() != s.dim()) throw Error(ErrorCode::DimMismatch, "measurement vs state");
  std::vector<Outcome> out;
  out.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const DCVector phi = m.operators()[i] * s.vec();
    const DualReal p = norm_squared(phi);
    Outcome o{m.labels()[i], p, std::nullopt};
    if (p.sig() > tol.tau) {
      o.post = QuantumState::from_unit(scale_by_inverse(phi, dual_sqrt(p, tol), tol), tol);
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::size_t sample(const QuantumState& s, const Measurement& m, std::uint64_t seed,
                   const Tolerances& tol) {
  const auto outcomes = measure(s, m, tol);
  std::vector<double> weights;
  weights.reserve(outcomes.size());
  double total = 0.0;
  for (const auto& o : outcomes) {
    weights.push_back(std::max(0.0, o.probability.sig()));
    total += weights.back();
  }
  Rng rng(seed);
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  // Rounding can leave u == total; fall back to the last nonzero weight.
  for (std::size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0.0) return i;
  return 0;
}

QuantumState tensor(const QuantumState& a, const QuantumState& b, const Tolerances& tol) {
  return QuantumState::from_unit(kron(a.vec(), b.vec()), tol);
}

DCMatrix tensor_op(const DCMatrix& a, const DCMatrix& b) { return kron(a, b); }

// Extension and correction ----------------------------------------------------

DCMatrix dc_extend_unitary(const ParamUnitary& p, const Tolerances& tol) {
  const CMatrix u = p.evaluate(0.0);
  if (u.rows() != u.cols()) throw Error(ErrorCode::NonSquare, "parametrized unitary");
  const double r = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (r > tol.rtol) {
    throw Error(ErrorCode::NotUnitaryAtZero, "unitarity residual " + std::to_string(r));
  }
  const CMatrix du = p.derivative_at_zero
                         ? *p.derivative_at_zero
                         : CMatrix((p.evaluate(kDerivativeStep) - p.evaluate(-kDerivativeStep)) /
                                   (2.0 * kDerivativeStep));
  CMatrix h = -kI * du * u.adjoint();
  h = 0.5 * (h + h.adjoint()).eval();
  return compose_unitary(u, h);
}

CMatrix complex_correct_unitary(const DCMatrix& u, double h, const Tolerances& tol) {
  const UnitaryParts parts = decompose_unitary(u, tol);
  const CMatrix herm = 0.5 * (parts.hermitian + parts.hermitian.adjoint());
  return expm(kI * h * herm) * parts.unitary;
}

CMatrix evaluate_at(const DCMatrix& m, double h) { return m.sig() + h * m.inf(); }

Measurement dc_extend_measurement(const ParamMeasurement& family, std::vector<std::string> labels,
                                  const Tolerances& tol) {
  const std::vector<CMatrix> at_zero = family(0.0);
  const std::vector<CMatrix> ahead = family(kDerivativeStep);
  const std::vector<CMatrix> behind = family(-kDerivativeStep);
  if (at_zero.empty() || ahead.size() != at_zero.size() || behind.size() != at_zero.size()) {
    throw Error(ErrorCode::IncompleteFamily, "family must keep its outcome count");
  }
  const Index d = at_zero.front().cols();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& m : at_zero) {
    if (m.rows() != d || m.cols() != d) {
      throw Error(ErrorCode::DimMismatch, "family operators must share a square shape");
    }
    sum += m.adjoint() * m;
  }
  if (const double r = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(); r > tol.state_tol) {
    throw Error(ErrorCode::IncompleteFamily, "completeness residual at h=0: " + std::to_string(r));
  }
  std::vector<DCMatrix> ops;
  ops.reserve(at_zero.size());
  for (std::size_t i = 0; i < at_zero.size(); ++i) {
    ops.emplace_back(at_zero[i], (ahead[i] - behind[i]) / (2.0 * kDerivativeStep));
  }
  try {
    return Measurement::create(std::move(ops), std::move(labels), tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IncompleteMeasurement) throw;
    throw Error(ErrorCode::IncompleteFamily, std::string("first-order completeness: ") + e.what());
  }
}

std::vector<CMatrix> complex_correct_measurement(const Measurement& m, double h,
                                                 const std::optional<CMatrix>& complement_generator,
                                                 const Tolerances& tol) {
  const DCMatrix u = stinespring(m.operators(), complement_generator, tol);
  // The dilation is only as unitary as the family is complete.
  Tolerances loose = tol;
  loose.rtol = std::max(tol.rtol, tol.state_tol);
  const CMatrix corrected = complex_correct_unitary(u, h, loose);
  std::vector<CMatrix> out;
  out.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.push_back(dilation_block(corrected, static_cast<Index>(i), m.dim()));
  }
  return out;
}

double conventional_probability(const CMatrix& m, const CVector& psi) {
  return (m * psi).squaredNorm();
}

}  // namespace dcq
