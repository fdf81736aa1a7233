#include "dcq/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace dcq {

namespace {

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimMismatch, std::string(what) + ": " + std::to_string(a) +
                                            " vs " + std::to_string(b));
  }
}

void require_square(const DCMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw Error(ErrorCode::NonSquare, std::string(what) + ": " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()));
  }
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

// DCVector ------------------------------------------------------------------

DCVector::DCVector(Index dim) : sig_(CVector::Zero(dim)), inf_(CVector::Zero(dim)) {}

DCVector::DCVector(CVector sig, CVector inf) : sig_(std::move(sig)), inf_(std::move(inf)) {
  require_same_dim(sig_.size(), inf_.size(), "vector parts");
}

DCVector DCVector::from_sig(CVector sig) {
  CVector inf = CVector::Zero(sig.size());
  return {std::move(sig), std::move(inf)};
}

DCVector DCVector::basis(Index dim, Index k) {
  DCVector v(dim);
  v.sig_(k) = 1.0;
  return v;
}

void DCVector::set(Index i, const DualComplex& w) {
  sig_(i) = w.sig();
  inf_(i) = w.inf();
}

DCVector operator+(const DCVector& a, const DCVector& b) {
  require_same_dim(a.dim(), b.dim(), "vector sum");
  return {a.sig() + b.sig(), a.inf() + b.inf()};
}

DCVector operator-(const DCVector& a, const DCVector& b) {
  require_same_dim(a.dim(), b.dim(), "vector difference");
  return {a.sig() - b.sig(), a.inf() - b.inf()};
}

DCVector operator*(const DualComplex& s, const DCVector& v) {
  return {s.sig() * v.sig(), s.inf() * v.sig() + s.sig() * v.inf()};
}

DualComplex inner(const DCVector& u, const DCVector& v) {
  require_same_dim(u.dim(), v.dim(), "inner product");
  // Eigen's dot() conjugates its left operand.
  return {u.sig().dot(v.sig()), u.sig().dot(v.inf()) + u.inf().dot(v.sig())};
}

DualReal norm_squared(const DCVector& v) {
  return {v.sig().squaredNorm(), 2.0 * std::real(v.sig().dot(v.inf()))};
}

DualReal vnorm(const DCVector& v, const Tolerances& tol) {
  const double n = v.sig().norm();
  if (n <= tol.tau) {
    if (v.inf().norm() > tol.tau) {
      throw InfinitesimalModulus("norm of an infinitesimal vector is 0 with undefined ε-part");
    }
    return {};
  }
  return {n, std::real(v.sig().dot(v.inf())) / n};
}

double max_abs_diff(const DCVector& a, const DCVector& b) {
  require_same_dim(a.dim(), b.dim(), "vector comparison");
  return std::max(max_abs(a.sig() - b.sig()), max_abs(a.inf() - b.inf()));
}

// DCMatrix ------------------------------------------------------------------

DCMatrix::DCMatrix(Index rows, Index cols)
    : sig_(CMatrix::Zero(rows, cols)), inf_(CMatrix::Zero(rows, cols)) {}

DCMatrix::DCMatrix(CMatrix sig, CMatrix inf) : sig_(std::move(sig)), inf_(std::move(inf)) {
  require_same_dim(sig_.rows(), inf_.rows(), "matrix parts (rows)");
  require_same_dim(sig_.cols(), inf_.cols(), "matrix parts (cols)");
}

DCMatrix DCMatrix::from_sig(CMatrix sig) {
  CMatrix inf = CMatrix::Zero(sig.rows(), sig.cols());
  return {std::move(sig), std::move(inf)};
}

DCMatrix DCMatrix::identity(Index n) { return from_sig(CMatrix::Identity(n, n)); }

void DCMatrix::set(Index r, Index c, const DualComplex& w) {
  sig_(r, c) = w.sig();
  inf_(r, c) = w.inf();
}

DCVector DCMatrix::col(Index c) const { return {sig_.col(c), inf_.col(c)}; }

void DCMatrix::set_col(Index c, const DCVector& v) {
  require_same_dim(rows(), v.dim(), "column assignment");
  sig_.col(c) = v.sig();
  inf_.col(c) = v.inf();
}

DCMatrix DCMatrix::block(Index r0, Index c0, Index nr, Index nc) const {
  return {sig_.block(r0, c0, nr, nc), inf_.block(r0, c0, nr, nc)};
}

DCMatrix operator+(const DCMatrix& a, const DCMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "matrix sum (rows)");
  require_same_dim(a.cols(), b.cols(), "matrix sum (cols)");
  return {a.sig() + b.sig(), a.inf() + b.inf()};
}

DCMatrix operator-(const DCMatrix& a, const DCMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "matrix difference (rows)");
  require_same_dim(a.cols(), b.cols(), "matrix difference (cols)");
  return {a.sig() - b.sig(), a.inf() - b.inf()};
}

DCMatrix operator*(const DCMatrix& a, const DCMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "matrix product");
  return {a.sig() * b.sig(), a.sig() * b.inf() + a.inf() * b.sig()};
}

DCMatrix operator*(const DualComplex& s, const DCMatrix& m) {
  return {s.sig() * m.sig(), s.inf() * m.sig() + s.sig() * m.inf()};
}

DCVector operator*(const DCMatrix& m, const DCVector& v) {
  require_same_dim(m.cols(), v.dim(), "matrix-vector product");
  return {m.sig() * v.sig(), m.sig() * v.inf() + m.inf() * v.sig()};
}

DCMatrix adjoint(const DCMatrix& m) { return {m.sig().adjoint(), m.inf().adjoint()}; }

namespace {

CMatrix kron_c(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

DCMatrix kron(const DCMatrix& a, const DCMatrix& b) {
  return {kron_c(a.sig(), b.sig()), kron_c(a.sig(), b.inf()) + kron_c(a.inf(), b.sig())};
}

DCVector kron(const DCVector& a, const DCVector& b) {
  const DCMatrix k = kron(DCMatrix(a.sig(), a.inf()), DCMatrix(b.sig(), b.inf()));
  return k.col(0);
}

DCMatrix outer(const DCVector& u, const DCVector& v) {
  return {u.sig() * v.sig().adjoint(), u.sig() * v.inf().adjoint() + u.inf() * v.sig().adjoint()};
}

double max_abs_diff(const DCMatrix& a, const DCMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "matrix comparison (rows)");
  require_same_dim(a.cols(), b.cols(), "matrix comparison (cols)");
  return std::max(max_abs(a.sig() - b.sig()), max_abs(a.inf() - b.inf()));
}

// Classification ------------------------------------------------------------

double hermiticity_residual(const DCMatrix& m) {
  require_square(m, "hermiticity");
  return max_abs_diff(adjoint(m), m);
}

double anti_hermiticity_residual(const DCMatrix& m) {
  require_square(m, "anti-hermiticity");
  return max_abs_diff(adjoint(m), DualComplex(-1.0) * m);
}

double unitarity_residual(const DCMatrix& m) {
  require_square(m, "unitarity");
  return max_abs_diff(adjoint(m) * m, DCMatrix::identity(m.rows()));
}

OpClass classify_op(const DCMatrix& m, const Tolerances& tol) {
  require_square(m, "classify_op");
  return {hermiticity_residual(m) <= tol.rtol, anti_hermiticity_residual(m) <= tol.rtol,
          unitarity_residual(m) <= tol.rtol};
}

UnitaryParts decompose_unitary(const DCMatrix& u, const Tolerances& tol) {
  require_square(u, "decompose_unitary");
  if (const double r = unitarity_residual(u); r > tol.rtol) {
    throw Error(ErrorCode::NotUnitary, "unitarity residual " + std::to_string(r));
  }
  const Complex minus_i{0.0, -1.0};
  return {u.sig(), minus_i * u.inf() * u.sig().adjoint()};
}

DCMatrix compose_unitary(const CMatrix& u, const CMatrix& h) {
  return {u, Complex{0.0, 1.0} * h * u};
}

// Exponential ---------------------------------------------------------------

CMatrix expm(const CMatrix& a) { return a.exp(); }

DCMatrix mat_exp(const DCMatrix& a) {
  require_square(a, "mat_exp");
  const Index n = a.rows();
  if (n == 0) return a;
  // L(A, B) is linear in B; balance the blocks so the scaling step is driven
  // by ‖A‖ rather than by an unrelated ‖B‖.
  const double norm_a = a.sig().cwiseAbs().colwise().sum().maxCoeff();
  const double norm_b = a.inf().cwiseAbs().colwise().sum().maxCoeff();
  double scale = 1.0;
  if (norm_b > 0.0 && norm_a > 0.0) scale = norm_a / norm_b;
  CMatrix block = CMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = a.sig();
  block.bottomRightCorner(n, n) = a.sig();
  block.topRightCorner(n, n) = scale * a.inf();
  const CMatrix e = expm(block);
  return {e.topLeftCorner(n, n), e.topRightCorner(n, n) / scale};
}

}  // namespace dcq
