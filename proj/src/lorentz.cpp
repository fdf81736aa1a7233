#include <cmath>
#include <limits>

#include "dcq/walk.hpp"

namespace dcq {

namespace {

DCMatrix uniform_spread(int n) {
  return DCMatrix::from_sig(CMatrix::Constant(n, 1, Complex{1.0 / std::sqrt(double(n)), 0.0}));
}

// (out⁻, out⁺) = G (in⁺, in⁻)
std::pair<DualComplex, DualComplex> apply_gate(const DCMatrix& g, const DualComplex& p,
                                               const DualComplex& q) {
  return {g(0, 0) * p + g(0, 1) * q, g(1, 0) * p + g(1, 1) * q};
}

void check_wires(const LorentzPatch& p) {
  if (p.enc_alpha.rows() != p.alpha || p.enc_alpha.cols() != 1 || p.enc_beta.rows() != p.beta ||
      p.enc_beta.cols() != 1) {
    throw Error(ErrorCode::PatchMismatch, "encoding wire counts disagree with alpha, beta");
  }
}

}  // namespace

LorentzPatch lorentz_encodings(int alpha, int beta, double m) {
  if (alpha < 1 || beta < 1) throw Error(ErrorCode::InvalidArgument, "alpha, beta must be >= 1");
  return make_patch(alpha, beta, m, uniform_spread(alpha), uniform_spread(beta));
}

LorentzPatch make_patch(int alpha, int beta, double m, DCMatrix enc_alpha, DCMatrix enc_beta,
                        const Tolerances& tol) {
  if (alpha < 1 || beta < 1) throw Error(ErrorCode::InvalidArgument, "alpha, beta must be >= 1");
  LorentzPatch p{alpha, beta, m, m / std::sqrt(double(alpha) * double(beta)),
                 std::move(enc_alpha), std::move(enc_beta)};
  check_wires(p);
  for (const DCMatrix* e : {&p.enc_alpha, &p.enc_beta}) {
    if (const double r = max_abs_diff(adjoint(*e) * *e, DCMatrix::identity(1)); r > tol.rtol) {
      throw Error(ErrorCode::NotUnitary, "encoding is not an isometry");
    }
  }
  return p;
}

PatchWires patch_lhs(const LorentzPatch& p, const DualComplex& plus, const DualComplex& minus,
                     const std::function<DCMatrix(double)>& gate) {
  check_wires(p);
  PatchWires w;
  for (int a = 0; a < p.alpha; ++a) w.right.push_back(p.enc_alpha(a, 0) * plus);
  for (int b = 0; b < p.beta; ++b) w.left.push_back(p.enc_beta(b, 0) * minus);
  const DCMatrix g = gate(p.m_prime);
  // Right-mover a meets left-movers 1..β in turn.
  for (int a = 0; a < p.alpha; ++a) {
    for (int b = 0; b < p.beta; ++b) {
      const auto [out_minus, out_plus] = apply_gate(g, w.right[a], w.left[b]);
      w.left[b] = out_minus;
      w.right[a] = out_plus;
    }
  }
  return w;
}

PatchWires patch_rhs(const LorentzPatch& p, const DualComplex& plus, const DualComplex& minus,
                     const std::function<DCMatrix(double)>& gate) {
  check_wires(p);
  const auto [out_minus, out_plus] = apply_gate(gate(p.m), plus, minus);
  PatchWires w;
  for (int a = 0; a < p.alpha; ++a) w.right.push_back(p.enc_alpha(a, 0) * out_plus);
  for (int b = 0; b < p.beta; ++b) w.left.push_back(p.enc_beta(b, 0) * out_minus);
  return w;
}

double wire_discrepancy(const PatchWires& a, const PatchWires& b) {
  if (a.right.size() != b.right.size() || a.left.size() != b.left.size()) {
    throw Error(ErrorCode::PatchMismatch, "wire counts disagree");
  }
  double d = 0.0;
  auto diff = [&](const DualComplex& x, const DualComplex& y) {
    d = std::max({d, std::abs(x.sig() - y.sig()), std::abs(x.inf() - y.inf())});
  };
  for (std::size_t i = 0; i < a.right.size(); ++i) diff(a.right[i], b.right[i]);
  for (std::size_t i = 0; i < a.left.size(); ++i) diff(a.left[i], b.left[i]);
  return d;
}

CovarianceReport covariance_check(const LorentzPatch& p, const DualComplex& plus,
                                  const DualComplex& minus, CovarianceMode mode, double h) {
  CovarianceReport r;
  r.mode = mode;
  r.alpha = p.alpha;
  r.beta = p.beta;
  r.fitted_order = std::numeric_limits<double>::quiet_NaN();
  if (mode == CovarianceMode::DualExact) {
    const auto gate = [](double m) { return dirac_gate(m); };
    r.max_discrepancy = wire_discrepancy(patch_lhs(p, plus, minus, gate),
                                         patch_rhs(p, plus, minus, gate));
    return r;
  }
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "corrected mode needs h > 0");
  auto discrepancy = [&](double hh) {
    const auto gate = [hh](double m) { return DCMatrix::from_sig(corrected_dirac_gate(m, hh)); };
    return wire_discrepancy(patch_lhs(p, plus, minus, gate), patch_rhs(p, plus, minus, gate));
  };
  const double d_h = discrepancy(h);
  const double d_half = discrepancy(h / 2.0);
  r.max_discrepancy = d_h;
  // Below this the patch is covariant up to roundoff and no order is defined.
  constexpr double kRoundoff = 1e-14;
  if (d_h > kRoundoff && d_half > 0.0) r.fitted_order = std::log2(d_h / d_half);
  return r;
}

}  // namespace dcq
