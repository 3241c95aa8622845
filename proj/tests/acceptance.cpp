// Acceptance suite: end-to-end checks of the propagator library on the
// Walker-Preston benchmark. Each criterion prints one PASS/FAIL line; the
// exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cfprop/bench.hpp"
#include "cfprop/oracle.hpp"
#include "cfprop/schemes.hpp"

using namespace cfprop;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& label, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= x.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

WaveVector random_unit(int n, std::mt19937& gen) {
  std::normal_distribution<double> dist;
  WaveVector u(n);
  for (int i = 0; i < n; ++i) u[i] = Complex(dist(gen), dist(gen));
  u /= u.norm();
  return u;
}

Eigen::MatrixXcd random_hermitian(int n, std::mt19937& gen) {
  std::normal_distribution<double> dist;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(dist(gen), dist(gen));
  return (a + a.adjoint()) / (2.0 * std::sqrt(2.0 * n));
}

struct Fixture {
  SpatialGrid grid = SpatialGrid::make(-0.8, 4.32, 64);
  MorseConfig morse{};
  KineticOperator kinetic{grid, morse.mu};
  PotentialModel model = walker_preston_model(morse, grid);
  WaveVector u0 = morse_ground_state(morse, grid);
  double tp = 2.0 * std::numbers::pi / morse.omega;
};

// --- criterion 1: global convergence orders -------------------------------

void criterion_1(const Fixture& fx) {
  const auto start = std::chrono::steady_clock::now();
  BenchConfig cfg;        // walker-preston-64 preset
  cfg.m_max = 24;         // keep the Krylov wall out of the order measurement
  std::vector<BenchRecord> records;
  std::string detail;
  bool pass = true;
  try {
    records = run_benchmark(cfg);
  } catch (const std::exception& e) {
    report(1, false, "convergence orders", std::string("benchmark failed: ") + e.what());
    return;
  }
  const std::map<std::string, double> expected = {
      {"midpoint", 2.0}, {"midpoint-avg", 2.0}, {"cf4-2", 4.0},
      {"cf6-2d", 6.0},   {"cf6-3", 6.0},        {"cf6-5alv", 6.0}};
  for (const auto& [name, order] : expected) {
    std::vector<double> lt, le;
    for (const auto& r : records) {
      // pre-saturation band: ~two decades above the observed error floor
      if (r.scheme == name && r.error_l2 > 3e-9 && r.error_l2 < 3e-2) {
        lt.push_back(std::log(r.tau));
        le.push_back(std::log(r.error_l2));
      }
    }
    if (lt.size() < 3) {
      pass = false;
      detail += name + ": <3 points; ";
      continue;
    }
    const double slope = fit_slope(lt, le);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s %.2f (%zu pts); ", name.c_str(), slope, lt.size());
    detail += buf;
    if (std::abs(slope - order) > 0.3) pass = false;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "runtime %.1fs (< 300s required)", secs);
  detail += buf;
  if (secs >= 300.0) pass = false;
  report(1, pass, "convergence orders 2/2/4/6/6/6 (+/- 0.3)", detail);
}

// --- criterion 2: local orders and the Magnus defect ----------------------

void criterion_2(const Fixture& fx) {
  bool pass = true;
  std::string detail;
  const double t_generic = 0.31 * fx.tp;
  char buf[128];

  try {
    const std::vector<double> taus4 = {fx.tp / 8, fx.tp / 16, fx.tp / 32, fx.tp / 64};
    const auto r4 = oracle::local_order(builtin_scheme("cf4-2"), fx.model, fx.kinetic, fx.u0,
                                        t_generic, taus4);
    std::snprintf(buf, sizeof(buf), "cf4-2 local %.2f; ", r4.slope);
    detail += buf;
    if (std::abs(r4.slope - 5.0) > 0.4) pass = false;

    const std::vector<double> taus6 = {fx.tp / 8, fx.tp / 16, fx.tp / 32};
    for (const char* name : {"cf6-2d", "cf6-3"}) {
      const auto r6 = oracle::local_order(builtin_scheme(name), fx.model, fx.kinetic, fx.u0,
                                          t_generic, taus6);
      std::snprintf(buf, sizeof(buf), "%s local %.2f; ", name, r6.slope);
      detail += buf;
      if (std::abs(r6.slope - 7.0) > 0.4) pass = false;
    }

    // Defect against exp(Omega6 - z [212]), z = 1/21600. The slope is
    // measured at t_k = 0 where the asymptotic regime is reachable in
    // double precision; the z-term separation is checked at a generic
    // phase where [212] carries signal.
    const double z = 1.0 / 21600.0;
    const Eigen::MatrixXcd tmat = oracle::dense_kinetic_matrix(fx.kinetic);
    KrylovConfig tight;
    tight.tol = 1e-14;
    tight.m_max = 40;
    const SchemeTable cf42 = builtin_scheme("cf4-2");
    std::vector<double> lt, le;
    for (double tau : {fx.tp / 8, fx.tp / 16, fx.tp / 32, fx.tp / 64}) {
      FftCounter c;
      const WaveVector u_s = step(cf42, fx.u0, 0.0, tau, fx.model, fx.kinetic, tight, c);
      const WaveVector u_d = oracle::dense_expm_action(
          oracle::magnus6_defect_generator(tmat, fx.model, 0.0, tau, z), fx.u0, 1.0);
      lt.push_back(std::log(tau));
      le.push_back(std::log((u_s - u_d).norm()));
    }
    const double dslope = fit_slope(lt, le);
    std::snprintf(buf, sizeof(buf), "defect slope %.2f (>= 7 at t_k=0); ", dslope);
    detail += buf;
    if (dslope < 7.0) pass = false;

    const double tau_sep = fx.tp / 128;
    FftCounter c;
    const WaveVector u_s = step(cf42, fx.u0, t_generic, tau_sep, fx.model, fx.kinetic, tight, c);
    const WaveVector with_z = oracle::dense_expm_action(
        oracle::magnus6_defect_generator(tmat, fx.model, t_generic, tau_sep, z), fx.u0, 1.0);
    const WaveVector without_z = oracle::dense_expm_action(
        oracle::magnus6_generator(tmat, fx.model, t_generic, tau_sep), fx.u0, 1.0);
    const double ratio = (u_s - without_z).norm() / (u_s - with_z).norm();
    std::snprintf(buf, sizeof(buf), "z-term separation x%.1f (>= 5)", ratio);
    detail += buf;
    if (ratio < 5.0) pass = false;
  } catch (const std::exception& e) {
    pass = false;
    detail += std::string(" exception: ") + e.what();
  }
  report(2, pass, "local orders 5/7/7 (+/- 0.4) and z[212] leading defect", detail);
}

// --- criterion 3: efficiency direction at error 1e-8 ----------------------

void criterion_3(const Fixture& fx) {
  BenchConfig cfg;  // default Krylov cap m_max = 10
  std::vector<BenchRecord> records;
  try {
    records = run_benchmark(cfg);
  } catch (const std::exception& e) {
    report(3, false, "efficiency ratios", std::string("benchmark failed: ") + e.what());
    return;
  }
  const double c5 = cost_at_error(records, "cf6-5alv", 1e-8);
  const double c3 = cost_at_error(records, "cf6-3", 1e-8);
  const double c2 = cost_at_error(records, "cf6-2d", 1e-8);
  bool pass = c5 > 0 && c3 > 0 && c2 > 0;
  double r53 = 0.0, r52 = 0.0;
  if (pass) {
    r53 = c5 / c3;
    r52 = c5 / c2;
    pass = r53 >= 1.3 && r52 >= 1.3;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "cost@1e-8: cf6-5alv %.0f, cf6-3 %.0f, cf6-2d %.0f; ratios %.2f / %.2f (>= 1.3)",
                c5, c3, c2, r53, r52);
  report(3, pass, "CF6:5 costs >= 1.3x the new sixth-order schemes at 1e-8", buf);
}

// --- criterion 4: unitarity over ten periods ------------------------------

void criterion_4(const Fixture& fx) {
  KrylovConfig kcfg;
  kcfg.tol = 1e-12;
  kcfg.m_max = 16;
  bool pass = true;
  std::string detail;
  for (const auto& name : builtin_scheme_names()) {
    const PropagationResult r = propagate(builtin_scheme(name), fx.u0, 0.0, 10.0 * fx.tp, 1024,
                                          fx.model, fx.kinetic, kcfg);
    const double drift = std::abs(r.state.norm() - 1.0);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s %.1e; ", name.c_str(), drift);
    detail += buf;
    if (!(drift < 1e-10)) pass = false;
  }
  report(4, pass, "norm drift < 1e-10 over 10 periods, every scheme", detail);
}

// --- criterion 5: Krylov vs dense oracle on random Hermitian systems ------

void criterion_5() {
  std::mt19937 gen(12345);
  const int n = 64;
  int good_ratio = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXcd h = random_hermitian(n, gen);
    const WaveVector u = random_unit(n, gen);
    const double tau = 6.0;
    KrylovConfig cfg;
    cfg.tol = 1e-13;
    cfg.m_max = 64;
    KrylovStats stats;
    const WaveVector approx = expm_action(
        [&h](const WaveVector& in, WaveVector& out) { out = h * in; }, u, tau, cfg, &stats);
    const WaveVector exact = oracle::dense_expm_action(oracle::DenseHermitian(h), u, tau);
    const double err = (approx - exact).norm();
    worst = std::max(worst, err);
    const double ratio = stats.est_err / std::max(err, 1e-300);
    if (ratio >= 1e-2 && ratio <= 1e2) ++good_ratio;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "worst error %.2e (<= 1e-10); estimator in band %d/50 (>= 45)",
                worst, good_ratio);
  report(5, worst <= 1e-10 && good_ratio >= 45, "Krylov oracle equivalence on 50 instances",
         buf);
}

// --- criterion 6: autonomous reduction ------------------------------------

void criterion_6(const Fixture& fx) {
  PotentialModel frozen = fx.model;
  frozen.envelope = nullptr;
  const double tau = 5.0;
  KrylovConfig cfg;
  cfg.tol = 1e-12;
  cfg.m_max = 30;
  const WaveVector vdiag = frozen.static_part.cast<Complex>();
  FftCounter c;
  const WaveVector one_shot = expm_action(
      [&](const WaveVector& in, WaveVector& out) {
        fx.kinetic.apply(in, out, c);
        out += vdiag.cwiseProduct(in);
      },
      fx.u0, tau, cfg);
  bool pass = true;
  std::string detail;
  for (const char* name : {"cf4-2", "cf6-2d"}) {
    FftCounter cs;
    const WaveVector stepped =
        step(builtin_scheme(name), fx.u0, 0.0, tau, frozen, fx.kinetic, cfg, cs);
    const double err = (stepped - one_shot).norm();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s %.1e; ", name, err);
    detail += buf;
    if (!(err < 1e-10)) pass = false;
  }
  report(6, pass, "time-independent V: one step equals exp(-i tau (T+V)) u to 1e-10", detail);
}

// --- criterion 7: Appendix-B identity --------------------------------------

void criterion_7() {
  const AlphaWeights wg = alpha_weights_for(gauss_legendre6());
  const double dev_g = (wg.w - alpha_matrix_g()).cwiseAbs().maxCoeff();
  const QuadratureRule lo = gauss_lobatto4();
  const AlphaWeights wl = alpha_weights_for(lo);
  const QuadratureRule gl = gauss_legendre6();
  double worst = 0.0;
  const double coeff[3][3] = {{1.0, 0.0, 0.0}, {0.3, -1.2, 0.0}, {0.7, 0.4, 2.5}};
  for (const auto& c : coeff) {
    auto h = [&](double t) { return c[0] + c[1] * t + c[2] * t * t; };
    for (int row = 0; row < 3; ++row) {
      double ag = 0.0, al = 0.0;
      for (int j = 0; j < gl.size(); ++j) ag += wg.w(row, j) * h(gl.nodes[j]);
      for (int j = 0; j < lo.size(); ++j) al += wl.w(row, j) * h(lo.nodes[j]);
      worst = std::max(worst, std::abs(ag - al));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "|W(GL6) - G| = %.1e (<= 1e-14); alpha mismatch %.1e (<= 1e-12)",
                dev_g, worst);
  report(7, dev_g <= 1e-14 && worst <= 1e-12, "alpha_weights_for(GL6) = G; order-6 rules agree",
         buf);
}

// --- criterion 8: time symmetry --------------------------------------------

void criterion_8(const Fixture& fx) {
  KrylovConfig cfg;
  cfg.tol = 1e-13;
  cfg.m_max = 24;
  const double tau = fx.tp / 256;
  const double t_k = 0.27 * fx.tp;
  bool pass = true;
  std::string detail;
  for (const auto& name : builtin_scheme_names()) {
    FftCounter c;
    const SchemeTable scheme = builtin_scheme(name);
    const WaveVector fwd = step(scheme, fx.u0, t_k, tau, fx.model, fx.kinetic, cfg, c);
    const WaveVector back = step(scheme, fwd, t_k + tau, -tau, fx.model, fx.kinetic, cfg, c);
    const double err = (back - fx.u0).norm();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s %.1e; ", name.c_str(), err);
    detail += buf;
    if (!(err < 1e-9)) pass = false;
  }
  report(8, pass, "forward then time-reversed step returns the state to 1e-9", detail);
}

// --- criterion 9: [212] diagonality in action ------------------------------

void criterion_9() {
  // Smooth fully periodic model so that spectral derivatives and products
  // of band-limited data are exact; the commutator's action must then be
  // the modified-potential multiplication.
  const SpatialGrid g = SpatialGrid::make(0.0, 5.12, 64);
  PotentialModel m;
  m.mu = 1745.0;
  const double w = 2.0 * std::numbers::pi / g.length();
  m.static_part.resize(64);
  m.field_profile.resize(64);
  m.field_profile_deriv = RealVector(64);
  for (int j = 0; j < 64; ++j) {
    const double th = w * g.points[j];
    m.static_part[j] = 0.3 * (1.0 - std::cos(th));
    m.field_profile[j] = 0.05 * std::sin(th) + 0.02 * std::cos(2.0 * th);
    (*m.field_profile_deriv)[j] = w * (0.05 * std::cos(th) - 0.04 * std::sin(2.0 * th));
  }
  m.envelope = [](double t) { return 0.011025 * std::cos(0.01787 * t); };

  const KineticOperator kin(g, m.mu);
  const Eigen::MatrixXcd tmat = oracle::dense_kinetic_matrix(kin);
  const double tp = 2.0 * std::numbers::pi / 0.01787;
  const double t_k = 0.31 * tp;
  const double tau = tp / 16;
  const auto c212 = oracle::commutator_212_hermitian(tmat, m, t_k, tau);

  // spectral-derivative evaluation of the predicted diagonal
  FourierTransform fft(64);
  FftCounter fc;
  const RealVector dvf = spectral_derivative(m.field_profile, g, fft, fc);
  const QuadratureRule gl = gauss_legendre6();
  const double f1 = m.envelope_at(t_k + gl.nodes[0] * tau);
  const double f3 = m.envelope_at(t_k + gl.nodes[2] * tau);
  RealVector v(64);
  for (int j = 0; j < 64; ++j) {
    const double dv = (f3 - f1) * dvf[j];
    v[j] = -tau * tau * tau * (5.0 / (3.0 * m.mu)) * dv * dv;
  }

  // band-limited subspace: modes |m| <= 10
  std::mt19937 gen(99);
  std::normal_distribution<double> dist;
  double resid_frob = 0.0;
  double ref_frob = 0.0;
  double entrywise = 0.0;
  const double vscale = v.cwiseAbs().maxCoeff();
  for (int trial = 0; trial < 12; ++trial) {
    WaveVector coeffs = WaveVector::Zero(64);
    for (int mm = -10; mm <= 10; ++mm) {
      coeffs[(mm + 64) % 64] = Complex(dist(gen), dist(gen));
    }
    FftCounter c;
    WaveVector psi = coeffs;
    fft.inverse(psi, c);
    psi /= psi.norm();
    const WaveVector lhs = c212.matrix() * psi;
    const WaveVector rhs = v.cast<Complex>().cwiseProduct(psi);
    resid_frob += (lhs - rhs).squaredNorm();
    ref_frob += rhs.squaredNorm();
    entrywise = std::max(entrywise, (lhs - rhs).cwiseAbs().maxCoeff() / vscale);
  }
  const double mass = std::sqrt(resid_frob / ref_frob);
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "off-diagonal action mass %.1e (< 1e-8); entrywise mismatch %.1e (< 1e-8)", mass,
                entrywise);
  report(9, mass < 1e-8 && entrywise < 1e-8,
         "[212] acts as -tau^3 (5/(3 mu)) (V3'-V1')^2 on resolved states", buf);
}

}  // namespace

int main() {
  std::printf("cfprop acceptance suite\n");
  const auto start = std::chrono::steady_clock::now();
  Fixture fx;
  criterion_1(fx);
  criterion_2(fx);
  criterion_3(fx);
  criterion_4(fx);
  criterion_5();
  criterion_6(fx);
  criterion_7();
  criterion_8(fx);
  criterion_9();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s (%d/9 passed, %.1fs)\n", g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES",
              9 - g_failures, secs);
  return g_failures;
}
