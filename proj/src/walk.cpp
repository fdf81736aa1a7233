#include "dcq/walk.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace dcq {

namespace {

constexpr Complex kI{0.0, 1.0};

Index wrap(Index x, Index n) { return ((x % n) + n) % n; }

}  // namespace

WalkState WalkState::zeros(Index sites, double dx) {
  if (sites < 1) throw Error(ErrorCode::InvalidArgument, "walk needs at least one site");
  WalkState w;
  w.sites = sites;
  w.dx = dx;
  w.plus.assign(static_cast<std::size_t>(sites), DualComplex{});
  w.minus.assign(static_cast<std::size_t>(sites), DualComplex{});
  return w;
}

DualReal total_norm(const WalkState& w) {
  DualReal n;
  for (Index x = 0; x < w.sites; ++x) {
    n += abs_squared(w.plus[x]);
    n += abs_squared(w.minus[x]);
  }
  return n;
}

DCMatrix dirac_gate(double m) {
  CMatrix sig(2, 2);
  sig << 0.0, 1.0, 1.0, 0.0;
  const CMatrix inf = Complex{0.0, -m} * CMatrix::Identity(2, 2);
  return {sig, inf};
}

CMatrix corrected_dirac_gate(double m, double h) {
  const Complex s{0.0, -std::sin(m * h)};
  const Complex c{std::cos(m * h), 0.0};
  CMatrix g(2, 2);
  g << s, c, c, s;
  return g;
}

WalkState step(const WalkState& w, const DCMatrix& gate) {
  if (gate.rows() != 2 || gate.cols() != 2) throw Error(ErrorCode::DimMismatch, "walk gate");
  const DualComplex g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
  WalkState out = WalkState::zeros(w.sites, w.dx);
  out.time = w.time + 1;
  for (Index x = 0; x < w.sites; ++x) {
    const DualComplex& p = w.plus[x];
    const DualComplex& q = w.minus[x];
    out.minus[wrap(x - 1, w.sites)] = g00 * p + g01 * q;
    out.plus[wrap(x + 1, w.sites)] = g10 * p + g11 * q;
  }
  return out;
}

WalkState step(const WalkState& w, double m) { return step(w, dirac_gate(m)); }

std::vector<WalkState> run(const WalkState& w, const DCMatrix& gate, std::int64_t steps,
                           std::int64_t every) {
  if (steps < 0) throw Error(ErrorCode::InvalidArgument, "negative step count");
  if (every < 1) throw Error(ErrorCode::InvalidArgument, "snapshot interval must be positive");
  std::vector<WalkState> out{w};
  WalkState cur = w;
  for (std::int64_t s = 1; s <= steps; ++s) {
    cur = step(cur, gate);
    if (s % every == 0 || s == steps) out.push_back(cur);
  }
  return out;
}

std::vector<WalkState> run(const WalkState& w, double m, std::int64_t steps, std::int64_t every) {
  return run(w, dirac_gate(m), steps, every);
}

// Continuum limit -----------------------------------------------------------

double DiracPlaneWave::omega() const {
  const double e = std::hypot(k, m);
  return positive_energy ? e : -e;
}

// Unit eigenvector of [[k, m], [m, −k]] for ω: ∝ (ω + k, m) or (m, ω − k),
// whichever is better conditioned.
static std::pair<double, double> plane_wave_spinor(double k, double m, double w) {
  const bool first = std::abs(w + k) >= std::abs(w - k);
  const double a = first ? w + k : m;
  const double b = first ? m : w - k;
  const double n = std::hypot(a, b);
  return {a / n, b / n};
}

Complex DiracPlaneWave::u_plus() const { return plane_wave_spinor(k, m, omega()).first; }

Complex DiracPlaneWave::u_minus() const { return plane_wave_spinor(k, m, omega()).second; }

Complex DiracPlaneWave::plus(double x, double t) const {
  return u_plus() * std::exp(kI * (k * x - omega() * t));
}

Complex DiracPlaneWave::minus(double x, double t) const {
  return u_minus() * std::exp(kI * (k * x - omega() * t));
}

WalkState sample_plane_wave(const DiracPlaneWave& wave, Index sites, double length) {
  const double h = length / static_cast<double>(sites);
  const double scale = 1.0 / std::sqrt(static_cast<double>(sites));
  WalkState w = WalkState::zeros(sites, h);
  for (Index x = 0; x < sites; ++x) {
    const double pos = h * static_cast<double>(x);
    w.plus[x] = DualComplex(scale * wave.plus(pos, 0.0));
    w.minus[x] = DualComplex(scale * wave.minus(pos, 0.0));
  }
  return w;
}

ContinuumRun continuum_error(const DiracPlaneWave& wave, Index sites, double t_final,
                             double length) {
  if (sites < 2) throw Error(ErrorCode::InvalidArgument, "continuum run needs two sites");
  ContinuumRun r;
  r.sites = sites;
  r.h = length / static_cast<double>(sites);
  r.steps = std::llround(t_final / r.h);
  r.time = static_cast<double>(r.steps) * r.h;

  const DCMatrix gate = DCMatrix::from_sig(corrected_dirac_gate(wave.m, r.h));
  WalkState w = sample_plane_wave(wave, sites, length);
  for (std::int64_t s = 0; s < r.steps; ++s) w = step(w, gate);

  const double scale = 1.0 / std::sqrt(static_cast<double>(sites));
  double err = 0.0, ref = 0.0;
  for (Index x = 0; x < sites; ++x) {
    const double pos = r.h * static_cast<double>(x);
    const Complex ep = scale * wave.plus(pos, r.time);
    const Complex em = scale * wave.minus(pos, r.time);
    err += std::norm(w.plus[x].sig() - ep) + std::norm(w.minus[x].sig() - em);
    ref += std::norm(ep) + std::norm(em);
  }
  r.relative_l2_error = std::sqrt(err / ref);
  return r;
}

double ContinuumResidual::magnitude() const { return std::max(std::abs(plus), std::abs(minus)); }

ContinuumResidual continuum_residual(const Field& psi_plus, const Field& psi_minus, double m,
                                     double x, double t, double h, GateForm form) {
  const DCMatrix dual = dirac_gate(m);
  const CMatrix g = form == GateForm::Corrected ? corrected_dirac_gate(m, h)
                                                : CMatrix(dual.sig() + h * dual.inf());
  // ψ⁺ arrives from x − h through the second row, ψ⁻ from x + h through the first.
  const Complex pred_plus = g(1, 0) * psi_plus(x - h, t) + g(1, 1) * psi_minus(x - h, t);
  const Complex pred_minus = g(0, 0) * psi_plus(x + h, t) + g(0, 1) * psi_minus(x + h, t);
  return {psi_plus(x, t + h) - pred_plus, psi_minus(x, t + h) - pred_minus};
}

}  // namespace dcq
