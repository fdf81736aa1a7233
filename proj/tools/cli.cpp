#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dcq/io.hpp"
#include "dcq/quantum.hpp"
#include "dcq/random.hpp"
#include "dcq/walk.hpp"

namespace dcq::cli {

namespace {

using io::json;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Common {
  double tau = kDefaultTolerances.tau;
  double delta = kDefaultTolerances.delta;
  double rtol = kDefaultTolerances.rtol;
  std::uint64_t seed = 1;

  Tolerances tolerances() const {
    Tolerances t = kDefaultTolerances;
    t.tau = tau;
    t.delta = delta;
    t.rtol = rtol;
    return t;
  }
};

struct WalkArgs {
  double mass = 1.0;
  int sites = 128;
  std::int64_t steps = 64;
  std::int64_t every = 1;
  std::string out;
  std::string init = "right";
  std::string gate = "dual";
  double h = 0.1;
  double k = 1.0;
};

struct CheckArgs {
  std::string what;
  std::string in;
  std::string out;
  int alpha = 2;
  int beta = 3;
  std::string mode = "dual";
  double mass = 1.0;
  double h = 1e-2;
  std::size_t trials = 64;
};

struct TranslateArgs {
  std::string in;
  std::string out;
  bool extend = false;
  bool correct = false;
  double h = 0.0;
};

struct ConvergenceArgs {
  std::string target = "continuum";
  std::vector<double> h_list;
  double mass = 1.0;
  double k = 1.0;
  double time = 1.0;
  int jobs = 1;
  std::string out;
};

void require_finite(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "numeric flags must be finite");
  }
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

json report(const std::string& check, bool pass, double worst) {
  return {{"check", check}, {"pass", pass}, {"worst_residual", worst}};
}

// f'(0) from samples on a grid containing 0: three-point when both
// neighbours exist, one-sided otherwise.
template <class T>
T derivative_at_zero(const std::vector<double>& h, const std::vector<T>& f) {
  std::ptrdiff_t zero = -1, below = -1, above = -1;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto idx = static_cast<std::ptrdiff_t>(i);
    if (h[i] == 0.0) zero = idx;
    if (h[i] < 0.0 && (below < 0 || h[i] > h[below])) below = idx;
    if (h[i] > 0.0 && (above < 0 || h[i] < h[above])) above = idx;
  }
  if (zero < 0) throw Error(ErrorCode::InvalidArgument, "h-grid must contain 0");
  if (below < 0 && above < 0) throw Error(ErrorCode::InvalidArgument, "h-grid needs a neighbour of 0");
  if (below < 0) return T((f[above] - f[zero]) / h[above]);
  if (above < 0) return T((f[zero] - f[below]) / -h[below]);
  const double a = -h[below], b = h[above];
  return T((a * a * f[above] - b * b * f[below] - (a * a - b * b) * f[zero]) / (a * b * (a + b)));
}

std::size_t index_of_zero(const std::vector<double>& h) {
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] == 0.0) return i;
  throw Error(ErrorCode::InvalidArgument, "h-grid must contain 0");
}

// walk ----------------------------------------------------------------------

int cmd_walk(const WalkArgs& a, std::ostream& out) {
  require_finite({a.mass, a.h, a.k});
  if (a.steps < 0) throw Error(ErrorCode::InvalidArgument, "--steps must be >= 0");
  const DCMatrix gate = a.gate == "dual" ? dirac_gate(a.mass)
                                         : DCMatrix::from_sig(corrected_dirac_gate(a.mass, a.h));
  WalkState w = WalkState::zeros(a.sites, a.h);
  if (a.init == "right") {
    w.plus[a.sites / 2] = DualComplex(1.0);
  } else if (a.init == "left") {
    w.minus[a.sites / 2] = DualComplex(1.0);
  } else {
    w = sample_plane_wave(DiracPlaneWave{a.k, a.mass, true}, a.sites, a.h * a.sites);
  }
  const auto traj = run(w, gate, a.steps, a.every);
  std::ostringstream csv;
  io::write_trajectory_csv(csv, traj);
  if (a.out.empty()) {
    out << csv.str();
  } else {
    io::write_file(a.out, csv.str());
    out << "final dual norm: " << to_string(total_norm(traj.back())) << "\n";
  }
  return kPass;
}

// check ---------------------------------------------------------------------

int cmd_check(const CheckArgs& a, const Common& c, std::ostream& out) {
  const Tolerances tol = c.tolerances();
  if (a.what == "covariance") {
    require_finite({a.mass, a.h});
    const LorentzPatch patch = lorentz_encodings(a.alpha, a.beta, a.mass);
    Rng rng(c.seed);
    const DCVector in = random_unit_vector(rng, 2);
    const bool dual = a.mode == "dual";
    const CovarianceReport r = covariance_check(patch, in[0], in[1],
                                                dual ? CovarianceMode::DualExact
                                                     : CovarianceMode::Corrected,
                                                a.h);
    bool pass;
    if (dual) {
      pass = r.max_discrepancy < 1e-12;
    } else if (std::isnan(r.fitted_order)) {
      pass = r.max_discrepancy < 1e-14;
    } else {
      pass = r.fitted_order >= 1.8 && r.fitted_order <= 2.2;
    }
    json j = report("covariance", pass, r.max_discrepancy);
    j.update(io::to_json(r));
    emit(j, a.out, out);
    return pass ? kPass : kCheckFailed;
  }

  if (a.in.empty()) throw Error(ErrorCode::InvalidArgument, "--in is required for " + a.what);
  const DCMatrix m = io::operator_from_json(io::read_file(a.in));
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "operator must be square");
  bool pass = false;
  double worst = 0.0;
  if (a.what == "unitary") {
    worst = unitarity_residual(m);
    pass = worst <= tol.rtol;
  } else if (a.what == "hermitian") {
    worst = hermiticity_residual(m);
    pass = worst <= tol.rtol;
  } else if (a.what == "spectrum") {
    // Reconstruction and orthonormality of the dual eigendecomposition.
    constexpr double kSpectralTol = 1e-8;
    const OpClass k = classify_op(m, tol);
    if (!k.unitary && !k.hermitian) {
      worst = std::min(unitarity_residual(m), hermiticity_residual(m));
    } else {
      const DualSpectrum s = k.unitary ? eig_unitary(m, tol) : eig_hermitian(m, tol);
      worst = std::max(max_abs_diff(s.reconstruct(), m), s.orthonormality_residual());
      pass = worst <= kSpectralTol;
    }
  } else {
    const SemipositivityReport r = check_appreciably_semipositive(m, a.trials, c.seed, tol);
    worst = r.worst_violation;
    pass = r.pass;
  }
  emit(report(a.what, pass, worst), a.out, out);
  return pass ? kPass : kCheckFailed;
}

// translate -----------------------------------------------------------------

int cmd_translate(const TranslateArgs& a, const Common& c, std::ostream& out) {
  require_finite({a.h});
  const Tolerances tol = c.tolerances();
  const json doc = io::read_file(a.in);
  const std::string kind = io::kind_of(doc);
  json result;
  if (a.correct) {
    if (kind == "unitary") {
      const CMatrix u = complex_correct_unitary(io::operator_from_json(doc), a.h, tol);
      result = io::operator_to_json(DCMatrix::from_sig(u), "unitary");
    } else if (kind == "measurement") {
      const io::MeasurementFile f = io::measurement_from_json(doc);
      const Measurement m = Measurement::create(f.operators, f.labels, tol);
      io::MeasurementFile corrected{{}, m.labels(), std::nullopt};
      for (const auto& op : complex_correct_measurement(m, a.h, f.dilation_gauge, tol)) {
        corrected.operators.push_back(DCMatrix::from_sig(op));
      }
      result = io::measurement_to_json(corrected);
    } else {
      throw Error(ErrorCode::ParseError, "--correct expects a unitary or measurement file");
    }
  } else {
    if (kind == "unitary_family") {
      const io::UnitaryFamilyFile f = io::unitary_family_from_json(doc);
      const std::size_t z = index_of_zero(f.h);
      ParamUnitary p{[&](double) { return f.samples[z]; }, derivative_at_zero(f.h, f.samples)};
      result = io::operator_to_json(dc_extend_unitary(p, tol), "unitary");
    } else if (kind == "measurement_family") {
      const io::MeasurementFamilyFile f = io::measurement_family_from_json(doc);
      const std::size_t z = index_of_zero(f.h);
      const std::size_t k = f.samples[z].size();
      std::vector<DCMatrix> ops;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<CMatrix> series;
        for (const auto& row : f.samples) {
          if (row.size() != k) throw Error(ErrorCode::IncompleteFamily, "outcome count varies");
          series.push_back(row[i]);
        }
        ops.emplace_back(f.samples[z][i], derivative_at_zero(f.h, series));
      }
      CMatrix sum = CMatrix::Zero(ops.front().cols(), ops.front().cols());
      for (const auto& op : ops) sum += op.sig().adjoint() * op.sig();
      if ((sum - CMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() > tol.state_tol) {
        throw Error(ErrorCode::IncompleteFamily, "family is not complete at h = 0");
      }
      Measurement m = [&] {
        try {
          return Measurement::create(ops, f.labels, tol);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::IncompleteMeasurement) throw;
          throw Error(ErrorCode::IncompleteFamily, e.what());
        }
      }();
      result = io::measurement_to_json({m.operators(), m.labels(), std::nullopt});
    } else {
      throw Error(ErrorCode::ParseError,
                  "--extend expects a unitary_family or measurement_family file");
    }
  }
  emit(result, a.out, out);
  return kPass;
}

// convergence ---------------------------------------------------------------

int cmd_convergence(const ConvergenceArgs& a, std::ostream& out) {
  require_finite({a.mass, a.k, a.time});
  for (double h : a.h_list) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "h must be > 0");
  }
  const double length = 2.0 * std::numbers::pi;
  const std::size_t n = a.h_list.size();
  std::vector<json> rows(n);

  auto task = [&](std::size_t i) {
    const double h = a.h_list[i];
    if (a.target == "continuum") {
      const auto sites = static_cast<Index>(std::llround(length / h));
      const ContinuumRun r = continuum_error(DiracPlaneWave{a.k, a.mass, true},
                                             std::max<Index>(sites, 2), a.time, length);
      rows[i] = {{"h", r.h}, {"sites", r.sites}, {"steps", r.steps}, {"error", r.relative_l2_error}};
    } else {
      const double e = (evaluate_at(dirac_gate(a.mass), h) - corrected_dirac_gate(a.mass, h))
                           .cwiseAbs()
                           .maxCoeff();
      rows[i] = {{"h", h}, {"error", e}};
    }
  };

  // Independent tasks; each writes only its own slot.
  const std::size_t jobs = std::clamp<std::size_t>(static_cast<std::size_t>(a.jobs), 1, n);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += jobs) task(i);
    });
  }
  for (std::size_t i = 0; i < n; i += jobs) task(i);
  for (auto& th : pool) th.join();

  json orders = json::array();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double e0 = rows[i]["error"], e1 = rows[i + 1]["error"];
    const double h0 = rows[i]["h"], h1 = rows[i + 1]["h"];
    orders.push_back((e0 > 0.0 && e1 > 0.0) ? json(std::log(e0 / e1) / std::log(h0 / h1))
                                            : json(nullptr));
  }
  emit({{"target", a.target}, {"results", rows}, {"orders", orders}}, a.out, out);
  return kPass;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual-complex quantum toolkit"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Common common;
  // "-h" stays free for the step-size flag.
  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--tau", common.tau, "infinitesimal threshold")->check(CLI::PositiveNumber);
    sub->add_option("--delta", common.delta, "eigenvalue clustering radius")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rtol", common.rtol, "operator property tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "random seed");
  };

  WalkArgs wa;
  CLI::App* walk = app.add_subcommand("walk", "run the Dirac walk and write a trajectory CSV");
  walk->add_option("--mass", wa.mass, "mass m");
  walk->add_option("--sites", wa.sites, "lattice sites")->check(CLI::Range(2, 1 << 28));
  walk->add_option("--steps", wa.steps, "number of steps")->check(CLI::NonNegativeNumber);
  walk->add_option("--every", wa.every, "snapshot interval")->check(CLI::PositiveNumber);
  walk->add_option("--out", wa.out, "CSV path (stdout when omitted)");
  walk->add_option("--init", wa.init, "initial condition")
      ->check(CLI::IsMember({"right", "left", "plane"}));
  walk->add_option("--gate", wa.gate, "dual gate or sin/cos corrected gate")
      ->check(CLI::IsMember({"dual", "corrected"}));
  walk->add_option("--h", wa.h, "lattice step for the corrected gate and plane waves")
      ->check(CLI::PositiveNumber);
  walk->add_option("--k", wa.k, "plane-wave number");
  add_common(walk);

  CheckArgs ca;
  CLI::App* check = app.add_subcommand("check", "verify an operator property or covariance");
  check->add_option("what", ca.what, "property")
      ->required()
      ->check(CLI::IsMember({"unitary", "hermitian", "spectrum", "semipositive", "covariance"}));
  check->add_option("--in", ca.in, "operator JSON");
  check->add_option("--out", ca.out, "report path (stdout when omitted)");
  check->add_option("--alpha", ca.alpha, "patch alpha")->check(CLI::PositiveNumber);
  check->add_option("--beta", ca.beta, "patch beta")->check(CLI::PositiveNumber);
  check->add_option("--mode", ca.mode, "covariance mode")
      ->check(CLI::IsMember({"dual", "corrected"}));
  check->add_option("--mass", ca.mass, "mass m");
  check->add_option("--h", ca.h, "corrected-mode step")->check(CLI::PositiveNumber);
  check->add_option("--trials", ca.trials, "random semipositivity probes");
  add_common(check);

  TranslateArgs ta;
  CLI::App* translate = app.add_subcommand("translate", "extend or correct an operator file");
  translate->add_option("--in", ta.in, "input JSON")->required();
  translate->add_option("--out", ta.out, "output path (stdout when omitted)");
  auto* ext = translate->add_flag("--extend", ta.extend, "sampled family to dual-complex");
  auto* cor = translate->add_flag("--correct", ta.correct, "dual-complex to conventional");
  ext->excludes(cor);
  translate->add_option("--h", ta.h, "correction parameter");
  add_common(translate);

  ConvergenceArgs va;
  CLI::App* conv = app.add_subcommand("convergence", "error sweep over a list of h values");
  conv->add_option("--target", va.target, "continuum or correction")
      ->check(CLI::IsMember({"continuum", "correction"}));
  conv->add_option("--h-list", va.h_list, "step sizes")->required()->delimiter(',');
  conv->add_option("--mass", va.mass, "mass m");
  conv->add_option("--k", va.k, "plane-wave number");
  conv->add_option("--time", va.time, "physical time");
  conv->add_option("--jobs", va.jobs, "parallel sweeps")->check(CLI::PositiveNumber);
  conv->add_option("--out", va.out, "report path (stdout when omitted)");
  add_common(conv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*walk) return cmd_walk(wa, out);
    if (*check) return cmd_check(ca, common, out);
    if (*translate) {
      if (!ta.extend && !ta.correct) {
        err << "usage error: translate needs --extend or --correct\n";
        return kUsage;
      }
      return cmd_translate(ta, common, out);
    }
    return cmd_convergence(va, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace dcq::cli
