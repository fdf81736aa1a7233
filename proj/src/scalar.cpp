#include "dcq/scalar.hpp"

#include <numbers>
#include <sstream>

namespace dcq {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisorInfinitesimal: return "DivisorInfinitesimal";
    case ErrorCode::BothPartsZero: return "BothPartsZero";
    case ErrorCode::RootOfInfinitesimal: return "RootOfInfinitesimal";
    case ErrorCode::LogOfInfinitesimal: return "LogOfInfinitesimal";
    case ErrorCode::ModulusOfInfinitesimal: return "ModulusOfInfinitesimal";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::IncompleteFamily: return "IncompleteFamily";
    case ErrorCode::InfinitesimalVector: return "InfinitesimalVector";
    case ErrorCode::IncompleteMeasurement: return "IncompleteMeasurement";
    case ErrorCode::NotUnitaryAtZero: return "NotUnitaryAtZero";
    case ErrorCode::PatchMismatch: return "PatchMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

DualComplex operator/(const DualComplex& a, const DualComplex& b) { return div(a, b); }

Magnitude classify(const DualComplex& w, const Tolerances& tol) {
  if (std::abs(w.sig()) > tol.tau) return Magnitude::Appreciable;
  if (std::abs(w.inf()) > tol.tau) return Magnitude::Infinitesimal;
  return Magnitude::Zero;
}

DualComplex mul(const DualComplex& a, const DualComplex& b) { return a * b; }

DualComplex div(const DualComplex& a, const DualComplex& b, const Tolerances& tol) {
  const Complex z2 = b.sig();
  if (std::abs(z2) <= tol.tau) {
    throw Error(ErrorCode::DivisorInfinitesimal,
                "divisor " + to_string(b) + " has no multiplicative inverse");
  }
  return {a.sig() / z2, (z2 * a.inf() - a.sig() * b.inf()) / (z2 * z2)};
}

DualComplex div_infinitesimal_convention(const DualComplex& a, const DualComplex& b,
                                         const Tolerances& tol) {
  if (std::abs(a.sig()) > tol.tau || std::abs(b.sig()) > tol.tau) {
    throw Error(ErrorCode::InvalidArgument,
                "convention applies to infinitesimal operands only");
  }
  if (std::abs(b.inf()) <= tol.tau) {
    throw Error(ErrorCode::BothPartsZero, "divisor " + to_string(b) + " is zero");
  }
  return {a.inf() / b.inf(), Complex{}};
}

DualComplex pow_int(const DualComplex& w, unsigned n) {
  if (n == 0) return {Complex{1.0, 0.0}, Complex{}};
  const Complex z = w.sig();
  Complex zn1{1.0, 0.0};  // z^{n-1}
  for (unsigned i = 1; i < n; ++i) zn1 *= z;
  return {zn1 * z, static_cast<double>(n) * zn1 * w.inf()};
}

DualComplex nth_root(const DualComplex& w, unsigned n, unsigned k, const Tolerances& tol) {
  if (n == 0 || k >= n) {
    throw Error(ErrorCode::InvalidArgument, "root branch requires 0 <= k < n, n >= 1");
  }
  if (!is_appreciable(w, tol)) {
    throw Error(ErrorCode::RootOfInfinitesimal, "root of " + to_string(w));
  }
  const double nn = static_cast<double>(n);
  const double r = std::pow(std::abs(w.sig()), 1.0 / nn);
  const double phase = (std::arg(w.sig()) + 2.0 * std::numbers::pi * k) / nn;
  const Complex root = std::polar(r, phase);
  Complex root_n1{1.0, 0.0};
  for (unsigned i = 1; i < n; ++i) root_n1 *= root;
  return {root, w.inf() / (nn * root_n1)};
}

DualComplex exp_s(const DualComplex& w) {
  const Complex e = std::exp(w.sig());
  return {e, e * w.inf()};
}

DualComplex log_s(const DualComplex& w, const Tolerances& tol) {
  if (!is_appreciable(w, tol)) {
    throw Error(ErrorCode::LogOfInfinitesimal, "log of " + to_string(w));
  }
  return {std::log(w.sig()), w.inf() / w.sig()};
}

DualComplex sin_s(const DualComplex& w) {
  return {std::sin(w.sig()), std::cos(w.sig()) * w.inf()};
}

DualComplex cos_s(const DualComplex& w) {
  return {std::cos(w.sig()), -std::sin(w.sig()) * w.inf()};
}

DualComplex conj(const DualComplex& w) { return {std::conj(w.sig()), std::conj(w.inf())}; }

DualReal abs_squared(const DualComplex& w) {
  return {std::norm(w.sig()), 2.0 * std::real(std::conj(w.sig()) * w.inf())};
}

DualReal modulus(const DualComplex& w, const Tolerances& tol) {
  const double r = std::abs(w.sig());
  if (r <= tol.tau) {
    if (std::abs(w.inf()) > tol.tau) {
      throw InfinitesimalModulus("modulus of infinitesimal " + to_string(w) +
                                 " is 0 with undefined infinitesimal part");
    }
    return {};
  }
  return {r, std::real(std::conj(w.sig()) * w.inf()) / r};
}

DualReal dual_sqrt(const DualReal& p, const Tolerances& tol) {
  if (p.sig() > tol.tau) {
    const double s = std::sqrt(p.sig());
    return {s, p.inf() / (2.0 * s)};
  }
  if (std::abs(p.sig()) <= tol.tau && std::abs(p.inf()) <= tol.tau) return {};
  throw Error(ErrorCode::RootOfInfinitesimal,
              "square root of " + to_string(p) + " is not defined");
}

Ordering compare(const DualReal& a, const DualReal& b) {
  const auto c = a <=> b;
  if (c == std::partial_ordering::unordered) {
    throw Error(ErrorCode::InvalidArgument, "NaN has no place in the dual order");
  }
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

namespace {

void put_complex(std::ostringstream& os, Complex z) {
  os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
}

}  // namespace

std::string to_string(const DualComplex& w) {
  std::ostringstream os;
  put_complex(os, w.sig());
  os << " + (";
  put_complex(os, w.inf());
  os << ")ε";
  return os.str();
}

std::string to_string(const DualReal& r) {
  std::ostringstream os;
  os << r.sig() << (std::signbit(r.inf()) ? " - " : " + ") << std::abs(r.inf()) << "ε";
  return os.str();
}

}  // namespace dcq
