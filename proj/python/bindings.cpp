#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfprop/bench.hpp"
#include "cfprop/krylov.hpp"
#include "cfprop/quadrature.hpp"
#include "cfprop/schemes.hpp"

namespace py = pybind11;
using namespace cfprop;

namespace {

QuadratureRule rule_from_arrays(const RealVector& nodes, const RealVector& weights, int order) {
  QuadratureRule r;
  r.nodes = nodes;
  r.weights = weights;
  r.order = order;
  r.validate();
  return r;
}

BenchConfig config_from_kwargs(const std::string& preset, const std::vector<std::string>& schemes,
                               const std::vector<int>& steps, double periods, double tol,
                               int m_max) {
  BenchConfig cfg = BenchConfig::preset(preset);
  if (!schemes.empty()) cfg.schemes = schemes;
  if (!steps.empty()) cfg.step_counts = steps;
  if (periods > 0.0) cfg.periods = periods;
  if (tol > 0.0) {
    cfg.tol_mode = "fixed";
    cfg.tol_value = tol;
  }
  if (m_max > 0) cfg.m_max = m_max;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Commutator-free exponential propagators for the 1-D time-dependent "
            "Schrodinger equation";

  m.def("scheme_names", &builtin_scheme_names, "Names of the built-in propagators");

  m.def(
      "gl6",
      [] {
        const QuadratureRule r = gauss_legendre6();
        return py::make_tuple(r.nodes, r.weights);
      },
      "Nodes and weights of the three-point Gauss-Legendre rule");

  m.def(
      "lobatto4",
      [] {
        const QuadratureRule r = gauss_lobatto4();
        return py::make_tuple(r.nodes, r.weights);
      },
      "Nodes and weights of the four-point Gauss-Lobatto rule");

  m.def(
      "alpha_weights",
      [](const RealVector& nodes, const RealVector& weights, int order) {
        return Eigen::MatrixXd(alpha_weights_for(rule_from_arrays(nodes, weights, order)).w);
      },
      py::arg("nodes"), py::arg("weights"), py::arg("order") = 6,
      "3 x k matrix mapping Hamiltonian samples to the alpha combinations");

  m.def(
      "grid_points",
      [](double x0, double xN, int n) { return SpatialGrid::make(x0, xN, n).points; },
      py::arg("x0"), py::arg("xN"), py::arg("n"));

  m.def(
      "morse_ground_state",
      [](double x0, double xN, int n, double depth, double width, double mu) {
        MorseConfig cfg;
        cfg.depth = depth;
        cfg.width = width;
        cfg.mu = mu;
        return WaveVector(morse_ground_state(cfg, SpatialGrid::make(x0, xN, n)));
      },
      py::arg("x0") = -0.8, py::arg("xN") = 4.32, py::arg("n") = 64, py::arg("depth") = 0.2251,
      py::arg("width") = 1.1741, py::arg("mu") = 1745.0,
      "Normalized Morse ground state sampled on the periodic grid");

  m.def(
      "expm_action",
      [](const Eigen::MatrixXcd& h, const WaveVector& u, double tau, double tol, int m_max) {
        KrylovConfig cfg;
        cfg.tol = tol;
        cfg.m_max = m_max;
        KrylovStats stats;
        const WaveVector out = expm_action(
            [&h](const WaveVector& in, WaveVector& y) { y = h * in; }, u, tau, cfg, &stats);
        py::dict info;
        info["m_used"] = stats.m_used;
        info["est_err"] = stats.est_err;
        info["hit_cap"] = stats.hit_cap;
        info["exact_breakdown"] = stats.exact_breakdown;
        return py::make_tuple(out, info);
      },
      py::arg("h"), py::arg("u"), py::arg("tau"), py::arg("tol") = 1e-12, py::arg("m_max") = 10,
      "Adaptive Lanczos approximation of exp(-i tau H) u for Hermitian H");

  m.def(
      "propagate",
      [](const std::string& scheme, const std::string& preset, int n_steps, double periods,
         double tol, int m_max) {
        BenchConfig cfg = config_from_kwargs(preset, {scheme}, {}, periods, tol, m_max);
        const BenchContext ctx = make_context(cfg);
        KrylovConfig kcfg;
        kcfg.tol = tol > 0.0 ? tol : cfg.krylov_tol_for(n_steps);
        kcfg.m_max = cfg.m_max;
        const PropagationResult r = propagate(builtin_scheme(scheme), ctx.initial_state, 0.0,
                                              cfg.horizon(), n_steps, ctx.model, ctx.kinetic,
                                              kcfg);
        py::dict out;
        out["state"] = r.state;
        out["fft_pairs"] = r.fft_pairs;
        out["norm"] = r.state.norm();
        out["max_m_used"] = r.stats.max_m_used;
        out["cap_hits"] = r.stats.krylov_cap_hits;
        out["tau"] = cfg.horizon() / n_steps;
        return out;
      },
      py::arg("scheme") = "cf6-3", py::arg("preset") = "walker-preston-64",
      py::arg("n_steps") = 512, py::arg("periods") = 0.0, py::arg("tol") = 0.0,
      py::arg("m_max") = 0,
      "Propagate the Walker-Preston initial state and report diagnostics");

  m.def(
      "benchmark",
      [](const std::string& preset, const std::vector<std::string>& schemes,
         const std::vector<int>& steps, double periods, double tol, int m_max) {
        const BenchConfig cfg = config_from_kwargs(preset, schemes, steps, periods, tol, m_max);
        py::list out;
        for (const BenchRecord& r : run_benchmark(cfg)) {
          py::dict d;
          d["scheme"] = r.scheme;
          d["n_steps"] = r.n_steps;
          d["tau"] = r.tau;
          d["fft_pairs"] = r.fft_pairs;
          d["error_l2"] = r.error_l2;
          d["wall_time_s"] = r.wall_time_s;
          out.append(d);
        }
        return out;
      },
      py::arg("preset") = "walker-preston-64",
      py::arg("schemes") = std::vector<std::string>{}, py::arg("steps") = std::vector<int>{},
      py::arg("periods") = 0.0, py::arg("tol") = 0.0, py::arg("m_max") = 0,
      "Error-versus-cost sweep; returns one record per (scheme, n_steps) cell");

  m.def("preset_names", &BenchConfig::preset_names);
}
