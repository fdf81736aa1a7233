#include <cmath>

#include "dcq/linalg.hpp"
#include "dcq/random.hpp"

namespace dcq {

namespace {

double violation(const DualComplex& q, const Tolerances& tol) {
  double v = 0.0;
  // A Hermitian E gives real expectations; imaginary parts are violations.
  v = std::max(v, std::abs(q.sig().imag()) > tol.tau ? std::abs(q.sig().imag()) : 0.0);
  v = std::max(v, std::abs(q.inf().imag()) > tol.tau ? std::abs(q.inf().imag()) : 0.0);
  const double s = q.sig().real();
  const double i = q.inf().real();
  if (s > tol.tau) return v;
  if (s < -tol.tau) return std::max(v, -s);
  if (std::abs(i) > tol.tau) return std::max(v, std::abs(i));
  return v;
}

// v / ‖v‖ with the dual reciprocal of the norm.
DCVector normalized(const DCVector& v, const Tolerances& tol) {
  const DualReal n = vnorm(v, tol);
  const DualComplex inv = div(DualComplex(1.0), DualComplex(n), tol);
  return inv * v;
}

DCVector orthogonalize(DCVector v, const std::vector<DCVector>& basis) {
  // Two passes of modified Gram–Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) v = v - inner(q, v) * q;
  }
  return v;
}

}  // namespace

SemipositivityReport check_appreciably_semipositive(const DCMatrix& e, std::size_t trials,
                                                    std::uint64_t seed, const Tolerances& tol) {
  if (!e.is_square()) throw Error(ErrorCode::NonSquare, "semipositivity check");
  const Index n = e.rows();
  SemipositivityReport report;

  auto probe = [&](const DCVector& psi) {
    const DualComplex q = inner(psi, e * psi);
    ++report.probes;
    const double v = violation(q, tol);
    if (report.probes == 1 || v > report.worst_violation) {
      report.worst_violation = v;
      report.worst_value = DualReal(q.sig().real(), q.inf().real());
    }
  };

  const double r = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < n; ++i) {
    probe(DCVector::basis(n, i));
    for (Index j = i + 1; j < n; ++j) {
      CVector plus = CVector::Zero(n);
      plus(i) = r;
      plus(j) = r;
      probe(DCVector::from_sig(plus));
      plus(j) = Complex{0.0, r};
      probe(DCVector::from_sig(plus));
    }
  }
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) probe(random_unit_vector(rng, n));

  report.pass = report.worst_violation == 0.0;
  return report;
}

DCMatrix completeness_sum(std::span<const DCMatrix> family) {
  if (family.empty()) throw Error(ErrorCode::IncompleteFamily, "empty operator family");
  DCMatrix sum(family.front().cols(), family.front().cols());
  for (const auto& m : family) sum = sum + adjoint(m) * m;
  return sum;
}

DCMatrix stinespring(std::span<const DCMatrix> family,
                     const std::optional<CMatrix>& complement_generator,
                     const Tolerances& tol) {
  if (family.empty()) throw Error(ErrorCode::IncompleteFamily, "empty operator family");
  const Index d = family.front().rows();
  for (const auto& m : family) {
    if (!m.is_square()) throw Error(ErrorCode::NonSquare, "dilation operand");
    if (m.rows() != d) throw Error(ErrorCode::DimMismatch, "operators differ in shape");
  }
  const Index k = static_cast<Index>(family.size());
  const Index n = k * d;
  if (const double r = max_abs_diff(completeness_sum(family), DCMatrix::identity(d));
      r > tol.state_tol) {
    throw Error(ErrorCode::IncompleteFamily, "completeness residual " + std::to_string(r));
  }

  DCMatrix u(n, n);
  std::vector<DCVector> columns;
  columns.reserve(static_cast<std::size_t>(n));
  for (Index c = 0; c < d; ++c) {
    DCVector col(n);
    for (Index m = 0; m < k; ++m)
      for (Index row = 0; row < d; ++row) col.set(m * d + row, family[m](row, c));
    u.set_col(c, col);
    columns.push_back(std::move(col));
  }

  // Complete with standard basis vectors: scan in index order and take the
  // candidate with the largest residual (earliest on ties).
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index c = d; c < n; ++c) {
    Index best = -1;
    double best_norm = -1.0;
    DCVector best_residual;
    for (Index i = 0; i < n; ++i) {
      if (used[i]) continue;
      DCVector residual = orthogonalize(DCVector::basis(n, i), columns);
      const double norm = residual.sig().norm();
      if (norm > best_norm + 1e-12) {
        best = i;
        best_norm = norm;
        best_residual = std::move(residual);
      }
    }
    used[best] = true;
    DCVector col = normalized(best_residual, tol);
    u.set_col(c, col);
    columns.push_back(std::move(col));
  }

  if (complement_generator) {
    const CMatrix& kgen = *complement_generator;
    if (kgen.rows() != n - d || kgen.cols() != n - d) {
      throw Error(ErrorCode::DimMismatch, "complement generator must be (kd-d)x(kd-d)");
    }
    if (kgen.size() > 0 && (kgen - kgen.adjoint()).cwiseAbs().maxCoeff() > tol.rtol) {
      throw Error(ErrorCode::NotHermitian, "complement generator");
    }
    CMatrix gauge_inf = CMatrix::Zero(n, n);
    gauge_inf.bottomRightCorner(n - d, n - d) = Complex{0.0, 1.0} * kgen;
    u = u * DCMatrix(CMatrix::Identity(n, n), gauge_inf);
  }
  return u;
}

DCMatrix dilation_block(const DCMatrix& u, Index m, Index d) { return u.block(m * d, 0, d, d); }

CMatrix dilation_block(const CMatrix& u, Index m, Index d) { return u.block(m * d, 0, d, d); }

}  // namespace dcq
