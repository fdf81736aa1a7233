#pragma once

/**
 * Dual and dual-complex scalars.
 *
 * A dual-complex number is w = z + tε with z, t complex and ε² = 0. The
 * product rule (z1 + t1ε)(z2 + t2ε) = z1z2 + (t1z2 + z1t2)ε is exactly the
 * product rule of calculus, so holomorphic functions extend as
 * f(z + tε) = f(z) + t f'(z) ε.
 *
 * Dual reals a + bε carry probabilities and norms. They are ordered
 * lexicographically (ε positive but smaller than every positive real).
 */

#include <cmath>
#include <complex>
#include <compare>
#include <string>

#include "dcq/error.hpp"

namespace dcq {

using Complex = std::complex<double>;

/// Numerical cutoffs. The algebra is exact; floating point is not.
struct Tolerances {
  double tau = 1e-12;       // appreciability cutoff on |sig|
  double delta = 1e-8;      // eigenvalue clustering distance
  double rtol = 1e-10;      // structural checks (Hermitian, unitary)
  double state_tol = 1e-9;  // unit-norm states, complete measurements
};

inline constexpr Tolerances kDefaultTolerances{};

class DualReal {
 public:
  constexpr DualReal(double sig = 0.0, double inf = 0.0) : sig_(sig), inf_(inf) {}

  constexpr double sig() const { return sig_; }
  constexpr double inf() const { return inf_; }

  constexpr DualReal operator-() const { return {-sig_, -inf_}; }
  friend constexpr DualReal operator+(DualReal a, DualReal b) {
    return {a.sig_ + b.sig_, a.inf_ + b.inf_};
  }
  friend constexpr DualReal operator-(DualReal a, DualReal b) {
    return {a.sig_ - b.sig_, a.inf_ - b.inf_};
  }
  friend constexpr DualReal operator*(DualReal a, DualReal b) {
    return {a.sig_ * b.sig_, a.inf_ * b.sig_ + a.sig_ * b.inf_};
  }
  constexpr DualReal& operator+=(DualReal o) { return *this = *this + o; }

  constexpr bool operator==(const DualReal&) const = default;
  // Lexicographic with ε > 0.
  constexpr std::partial_ordering operator<=>(const DualReal& o) const {
    if (auto c = sig_ <=> o.sig_; c != 0) return c;
    return inf_ <=> o.inf_;
  }

 private:
  double sig_;
  double inf_;
};

class DualComplex {
 public:
  constexpr DualComplex(Complex sig = {}, Complex inf = {}) : sig_(sig), inf_(inf) {}
  constexpr DualComplex(double sig) : sig_(sig), inf_() {}
  constexpr DualComplex(DualReal r) : sig_(r.sig()), inf_(r.inf()) {}

  static constexpr DualComplex epsilon() { return {Complex{}, Complex{1.0, 0.0}}; }

  constexpr Complex sig() const { return sig_; }
  constexpr Complex inf() const { return inf_; }

  DualComplex operator-() const { return {-sig_, -inf_}; }
  friend DualComplex operator+(const DualComplex& a, const DualComplex& b) {
    return {a.sig_ + b.sig_, a.inf_ + b.inf_};
  }
  friend DualComplex operator-(const DualComplex& a, const DualComplex& b) {
    return {a.sig_ - b.sig_, a.inf_ - b.inf_};
  }
  // inf·inf is never formed: ε² = 0 holds at the representation level.
  friend DualComplex operator*(const DualComplex& a, const DualComplex& b) {
    return {a.sig_ * b.sig_, a.inf_ * b.sig_ + a.sig_ * b.inf_};
  }
  friend DualComplex operator/(const DualComplex& a, const DualComplex& b);

  DualComplex& operator+=(const DualComplex& o) { return *this = *this + o; }
  DualComplex& operator-=(const DualComplex& o) { return *this = *this - o; }
  DualComplex& operator*=(const DualComplex& o) { return *this = *this * o; }

  bool operator==(const DualComplex&) const = default;

 private:
  Complex sig_;
  Complex inf_;
};

enum class Magnitude { Appreciable, Infinitesimal, Zero };
enum class Ordering { Less, Equal, Greater };

Magnitude classify(const DualComplex& w, const Tolerances& tol = kDefaultTolerances);
inline bool is_appreciable(const DualComplex& w, const Tolerances& tol = kDefaultTolerances) {
  return classify(w, tol) == Magnitude::Appreciable;
}

DualComplex mul(const DualComplex& a, const DualComplex& b);

/// Division by an appreciable divisor; throws DivisorInfinitesimal otherwise.
DualComplex div(const DualComplex& a, const DualComplex& b,
                const Tolerances& tol = kDefaultTolerances);

/// (t1ε)/(t2ε) := t1/t2 + 0ε. The divisor has no inverse; this picks the free
/// infinitesimal part as zero and must not be used as a general division.
DualComplex div_infinitesimal_convention(const DualComplex& a, const DualComplex& b,
                                         const Tolerances& tol = kDefaultTolerances);

DualComplex pow_int(const DualComplex& w, unsigned n);

/// k-th branch of the n-th root. The same branch value appears in the
/// significant part and in the denominator of the infinitesimal part.
DualComplex nth_root(const DualComplex& w, unsigned n, unsigned k = 0,
                     const Tolerances& tol = kDefaultTolerances);

/// f(z) + t f'(z) ε for f holomorphic at z.
template <typename F, typename FPrime>
DualComplex extend_analytic(F&& f, FPrime&& fprime, const DualComplex& w) {
  return {f(w.sig()), w.inf() * fprime(w.sig())};
}

DualComplex exp_s(const DualComplex& w);
DualComplex log_s(const DualComplex& w, const Tolerances& tol = kDefaultTolerances);
DualComplex sin_s(const DualComplex& w);
DualComplex cos_s(const DualComplex& w);

/// The linear conjugation w* = z* + t*ε.
DualComplex conj(const DualComplex& w);

/// w*w = |z|² + 2Re(z*t)ε; always defined.
DualReal abs_squared(const DualComplex& w);

/// Thrown when the modulus of a nonzero infinitesimal is requested. The
/// modulus itself is zero; only its infinitesimal part is undefined.
class InfinitesimalModulus : public Error {
 public:
  explicit InfinitesimalModulus(const std::string& what)
      : Error(ErrorCode::ModulusOfInfinitesimal, what) {}
  DualReal value() const { return {}; }
};

/// |w| = |z| + Re(z*t)/|z| ε.
DualReal modulus(const DualComplex& w, const Tolerances& tol = kDefaultTolerances);

/// √(a + bε) = √a + b/(2√a) ε for appreciable a > 0; √0 = 0.
DualReal dual_sqrt(const DualReal& p, const Tolerances& tol = kDefaultTolerances);

Ordering compare(const DualReal& a, const DualReal& b);

/// "a+bi + (c+di)ε"
std::string to_string(const DualComplex& w);
std::string to_string(const DualReal& r);

}  // namespace dcq
