#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "dcq/linalg.hpp"

namespace dcq {

namespace {

constexpr Complex kI{0.0, 1.0};

// Single-linkage clusters of eigenvalues closer than delta.
std::vector<std::vector<Index>> cluster(const CVector& lambda, double delta) {
  const Index n = lambda.size();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index j = 0; j < n; ++j)
    for (Index k = j + 1; k < n; ++k)
      if (std::abs(lambda(j) - lambda(k)) <= delta) parent[find(k)] = find(j);

  std::vector<std::vector<Index>> groups;
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (Index j = 0; j < n; ++j) {
    const Index root = find(j);
    if (slot[root] < 0) {
      slot[root] = static_cast<Index>(groups.size());
      groups.emplace_back();
    }
    groups[slot[root]].push_back(j);
  }
  return groups;
}

struct AdaptedBasis {
  CMatrix basis;                  // columns |j0⟩
  CVector lambda;                 // cluster-averaged eigenvalues
  std::vector<Index> cluster_of;  // cluster id per column
  CMatrix h;                      // h_kj = ⟨k0|J|j0⟩
};

// Rotates each degenerate cluster so the projected J is diagonal there.
AdaptedBasis adapt_to_perturbation(CMatrix basis, CVector lambda, const CMatrix& j,
                                   bool unit_modulus, double delta) {
  const Index n = lambda.size();
  std::vector<Index> cluster_of(static_cast<std::size_t>(n));
  const auto groups = cluster(lambda, delta);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& members = groups[g];
    const Index s = static_cast<Index>(members.size());
    Complex mean{};
    for (Index idx : members) mean += lambda(idx);
    mean /= static_cast<double>(s);
    if (unit_modulus) mean /= std::abs(mean);
    for (Index idx : members) {
      lambda(idx) = mean;
      cluster_of[idx] = static_cast<Index>(g);
    }
    if (s == 1) continue;
    CMatrix qc(n, s);
    for (Index c = 0; c < s; ++c) qc.col(c) = basis.col(members[c]);
    CMatrix projected = qc.adjoint() * j * qc;
    projected = 0.5 * (projected + projected.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(projected);
    const CMatrix rotated = qc * es.eigenvectors();
    for (Index c = 0; c < s; ++c) basis.col(members[c]) = rotated.col(c);
  }
  CMatrix h = basis.adjoint() * j * basis;
  return {std::move(basis), std::move(lambda), std::move(cluster_of), std::move(h)};
}

void sort_pairs(DualSpectrum& spectrum) {
  auto key = [&](const EigenPair& p) {
    if (spectrum.kind == SpectrumKind::Hermitian) {
      return std::pair{p.value.sig().real(), p.value.inf().real()};
    }
    return std::pair{eigen_phase(p.value), eigen_shift(p.value)};
  };
  std::stable_sort(spectrum.pairs.begin(), spectrum.pairs.end(),
                   [&](const EigenPair& a, const EigenPair& b) { return key(a) < key(b); });
}

DCMatrix eigenvector_matrix(const DualSpectrum& s) {
  const Index n = static_cast<Index>(s.pairs.size());
  DCMatrix v(n, n);
  for (Index j = 0; j < n; ++j) v.set_col(j, s.pairs[j].vector);
  return v;
}

// V diag(values) V†
DCMatrix spectral_sum(const DualSpectrum& s, const std::vector<DualComplex>& values) {
  const Index n = static_cast<Index>(values.size());
  DCMatrix d(n, n);
  for (Index j = 0; j < n; ++j) d.set(j, j, values[j]);
  const DCMatrix v = eigenvector_matrix(s);
  return v * d * adjoint(v);
}

}  // namespace

double eigen_phase(const DualComplex& value) {
  double theta = std::arg(value.sig());
  if (theta <= -std::numbers::pi) theta = std::numbers::pi;
  return theta;
}

double eigen_shift(const DualComplex& value) { return std::imag(value.inf() / value.sig()); }

DCMatrix DualSpectrum::reconstruct() const {
  std::vector<DualComplex> values;
  values.reserve(pairs.size());
  for (const auto& p : pairs) values.push_back(p.value);
  return spectral_sum(*this, values);
}

double DualSpectrum::orthonormality_residual() const {
  const DCMatrix v = eigenvector_matrix(*this);
  return max_abs_diff(adjoint(v) * v, DCMatrix::identity(v.cols()));
}

DualSpectrum eig_hermitian(const DCMatrix& h, const Tolerances& tol) {
  if (!h.is_square()) throw Error(ErrorCode::NonSquare, "eig_hermitian");
  if (const double r = hermiticity_residual(h); r > tol.rtol) {
    throw Error(ErrorCode::NotHermitian, "hermiticity residual " + std::to_string(r));
  }
  const Index n = h.rows();
  const CMatrix sig = 0.5 * (h.sig() + h.sig().adjoint());
  const CMatrix inf = 0.5 * (h.inf() + h.inf().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sig);
  const AdaptedBasis ab = adapt_to_perturbation(es.eigenvectors(), es.eigenvalues().cast<Complex>(),
                                                inf, false, tol.delta);

  DualSpectrum out;
  out.kind = SpectrumKind::Hermitian;
  out.pairs.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const double theta = ab.lambda(j).real();
    // (H − θ_j)|j1⟩ = (μ_j − J)|j0⟩ ⇒ ⟨k0|j1⟩ = h_kj / (θ_j − θ_k) across clusters.
    CVector first = CVector::Zero(n);
    for (Index k = 0; k < n; ++k) {
      if (ab.cluster_of[k] == ab.cluster_of[j]) continue;
      first += ab.h(k, j) / (theta - ab.lambda(k).real()) * ab.basis.col(k);
    }
    out.pairs.push_back({DualComplex(theta, ab.h(j, j).real()),
                         DCVector(ab.basis.col(j), std::move(first))});
  }
  sort_pairs(out);
  return out;
}

DualSpectrum eig_unitary(const DCMatrix& u, const Tolerances& tol) {
  const UnitaryParts parts = decompose_unitary(u, tol);
  const Index n = u.rows();
  const CMatrix j = 0.5 * (parts.hermitian + parts.hermitian.adjoint());
  // Schur vectors of a normal matrix form an orthonormal eigenbasis, also
  // inside degenerate eigenspaces.
  Eigen::ComplexSchur<CMatrix> schur(parts.unitary);
  const AdaptedBasis ab = adapt_to_perturbation(schur.matrixU(), schur.matrixT().diagonal(), j,
                                                true, tol.delta);

  DualSpectrum out;
  out.kind = SpectrumKind::Unitary;
  out.pairs.reserve(static_cast<std::size_t>(n));
  for (Index jj = 0; jj < n; ++jj) {
    const Complex lambda = ab.lambda(jj);
    // α_jk = iλ_j h_kj / (λ_j − λ_k) across clusters, zero inside.
    CVector first = CVector::Zero(n);
    for (Index k = 0; k < n; ++k) {
      if (ab.cluster_of[k] == ab.cluster_of[jj]) continue;
      first += kI * lambda * ab.h(k, jj) / (lambda - ab.lambda(k)) * ab.basis.col(k);
    }
    const double mu = ab.h(jj, jj).real();
    out.pairs.push_back({DualComplex(lambda, kI * lambda * mu),
                         DCVector(ab.basis.col(jj), std::move(first))});
  }
  sort_pairs(out);
  return out;
}

DCMatrix log_unitary(const DCMatrix& u, const Tolerances& tol) {
  const DualSpectrum s = eig_unitary(u, tol);
  std::vector<DualComplex> logs;
  logs.reserve(s.pairs.size());
  for (const auto& p : s.pairs) {
    logs.emplace_back(kI * eigen_phase(p.value), kI * eigen_shift(p.value));
  }
  return spectral_sum(s, logs);
}

}  // namespace dcq
