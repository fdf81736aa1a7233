#pragma once

// Generators and reference implementations shared by the test suites. The
// references are written from definitions (power series, limits) and do not
// call the library routine they check.

#include <cmath>
#include <complex>
#include <vector>

#include "dcq/linalg.hpp"
#include "dcq/random.hpp"

namespace dcq::test {

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

inline Complex random_complex(Rng& rng, double scale = 2.0) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

inline DualComplex random_dual(Rng& rng, double scale = 2.0) {
  return {random_complex(rng, scale), random_complex(rng, scale)};
}

/// Significant part bounded away from zero.
inline DualComplex random_appreciable(Rng& rng, double min_abs = 0.25, double scale = 2.0) {
  for (;;) {
    DualComplex w = random_dual(rng, scale);
    if (std::abs(w.sig()) >= min_abs) return w;
  }
}

inline double rel_diff(const Complex& a, const Complex& b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

inline double dual_rel_diff(const DualComplex& a, const DualComplex& b) {
  return std::max(rel_diff(a.sig(), b.sig()), rel_diff(a.inf(), b.inf()));
}

/// ε-part of exp(A + εB) from the power series:
/// Σ_{n≥1} (1/n!) Σ_{k=0}^{n−1} A^k B A^{n−1−k}.
inline DCMatrix series_mat_exp(const DCMatrix& m, int terms = 60) {
  const CMatrix& a = m.sig();
  const CMatrix& b = m.inf();
  const Index n = a.rows();
  // powers[k] = A^k
  std::vector<CMatrix> powers{CMatrix::Identity(n, n)};
  for (int k = 1; k <= terms; ++k) powers.push_back(powers.back() * a);
  CMatrix sig = CMatrix::Zero(n, n);
  CMatrix inf = CMatrix::Zero(n, n);
  double fact = 1.0;
  for (int p = 0; p <= terms; ++p) {
    if (p > 0) fact *= p;
    sig += powers[p] / fact;
    if (p == 0) continue;
    CMatrix inner = CMatrix::Zero(n, n);
    for (int k = 0; k < p; ++k) inner += powers[k] * b * powers[p - 1 - k];
    inf += inner / fact;
  }
  return {sig, inf};
}

/// Taylor series of the complex exponential.
inline CMatrix series_expm(const CMatrix& a, int terms = 60) {
  const Index n = a.rows();
  CMatrix term = CMatrix::Identity(n, n);
  CMatrix sum = term;
  for (int p = 1; p <= terms; ++p) {
    term = term * a / static_cast<double>(p);
    sum += term;
  }
  return sum;
}

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace dcq::test
