#include "cfprop/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace cfprop {

namespace {

struct XRow {
  double x1, x2, x3;
  double modified_weight;
};

struct SchemeDefinition {
  const char* name;
  int order;
  bool requires_derivative;
  std::vector<XRow> rows;
};

std::array<double, 3> solve_x(const std::array<double, 3>& sample_row) {
  // sample weights a_l = sum_k x_k G_{k,l}  <=>  G^T x = a
  Eigen::Vector3d a(sample_row[0], sample_row[1], sample_row[2]);
  Eigen::Vector3d x = alpha_matrix_g().transpose().fullPivLu().solve(a);
  for (int i = 0; i < 3; ++i) {
    // snap solver residue so structurally diagonal stages stay exact
    if (std::abs(x[i]) < 1e-15) x[i] = 0.0;
  }
  return {x[0], x[1], x[2]};
}

XRow from_samples(const std::array<double, 3>& a, double mw = 0.0) {
  const std::array<double, 3> x = solve_x(a);
  return {x[0], x[1], x[2], mw};
}

std::array<double, 3> reversed(const std::array<double, 3>& a) {
  return {a[2], a[1], a[0]};
}

SchemeDefinition scheme_definition(std::string_view name) {
  if (name == "midpoint") {
    return {"midpoint", 2, false, {{1.0, 0.0, 0.0, 0.0}}};
  }
  if (name == "midpoint-avg") {
    return {"midpoint-avg", 2, false, {{1.0, 0.0, 1.0 / 12.0, 0.0}}};
  }
  if (name == "cf4-2" || name == "cf6-2d") {
    const double x12 = -1.0 / 60.0, x13 = 1.0 / 60.0;
    const double x21 = 0.5, x22 = -2.0 / 15.0, x23 = 1.0 / 40.0;
    const double mw = (name == "cf6-2d") ? 1.0 : 0.0;
    return {name == "cf6-2d" ? "cf6-2d" : "cf4-2", name == "cf6-2d" ? 6 : 4,
            name == "cf6-2d",
            {{0.0, x12, x13, mw},
             {x21, x22, x23, 0.0},
             {x21, -x22, x23, 0.0},
             {0.0, -x12, x13, mw}}};
  }
  if (name == "cf6-3") {
    const double a11 = 0.01994096265093610745;
    const std::array<double, 3> r1{a11, 0.0, -a11};
    const std::array<double, 3> r2{0.4882524910228221957, -0.0046136830175630621,
                                   0.0834019108602182940};
    const std::array<double, 3> r3{-0.29387662410526271191, 0.4536718104795705687,
                                   -0.29387662410526271191};
    return {"cf6-3", 6, false,
            {from_samples(r1), from_samples(r2), from_samples(r3),
             from_samples(reversed(r2)), from_samples(reversed(r1))}};
  }
  if (name == "cf6-5alv") {
    const std::array<double, 3> r1{0.203952578716323, -0.059581898090478, 0.015629319374155};
    const std::array<double, 3> r2{0.133906069544898, 0.314511533222506, -0.060893550742092};
    const std::array<double, 3> r3{-0.014816639115506, -0.065414825819611, -0.014816639115506};
    return {"cf6-5alv", 6, false,
            {from_samples(r1), from_samples(r2), from_samples(r3),
             from_samples(reversed(r2)), from_samples(reversed(r1))}};
  }
  throw std::invalid_argument("builtin_scheme: unknown scheme '" + std::string(name) + "'");
}

}  // namespace

int SchemeTable::exponentials_per_step() const {
  int n = 0;
  for (const auto& s : stages) {
    if (s.kinetic_coeff != 0.0) ++n;
  }
  return n;
}

std::vector<std::string> builtin_scheme_names() {
  return {"midpoint", "midpoint-avg", "cf4-2", "cf6-2d", "cf6-3", "cf6-5alv"};
}

SchemeTable builtin_scheme(std::string_view name) {
  return builtin_scheme(name, gauss_legendre6());
}

SchemeTable builtin_scheme(std::string_view name, const QuadratureRule& rule) {
  const SchemeDefinition def = scheme_definition(name);
  SchemeTable table;
  table.name = def.name;
  table.order = def.order;
  table.requires_derivative = def.requires_derivative;
  table.time_symmetric = true;
  table.rule = rule;
  table.alpha_weights = alpha_weights_for(rule);
  const auto& w = table.alpha_weights.w;

  double kinetic_sum = 0.0;
  for (const XRow& row : def.rows) {
    Stage st;
    st.x = {row.x1, row.x2, row.x3};
    st.modified_weight = row.modified_weight;
    st.kinetic_coeff = row.x1;  // rows 2 and 3 of W sum to zero
    st.potential_weights =
        (row.x1 * w.row(0) + row.x2 * w.row(1) + row.x3 * w.row(2)).transpose();
    if (std::abs(st.potential_weights.sum() - st.kinetic_coeff) > 1e-12) {
      throw std::logic_error("builtin_scheme: stage weight sum inconsistent");
    }
    kinetic_sum += st.kinetic_coeff;
    table.stages.push_back(std::move(st));
  }
  if (std::abs(kinetic_sum - 1.0) > 1e-12) {
    throw std::logic_error("builtin_scheme: kinetic coefficients must sum to 1");
  }
  // time symmetry of the stored rows: x_{m-i+1,j} = (-1)^{j+1} x_{i,j}
  const std::size_t m = table.stages.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = table.stages[i].x;
    const auto& b = table.stages[m - 1 - i].x;
    if (std::abs(a[0] - b[0]) > 1e-12 || std::abs(a[1] + b[1]) > 1e-12 ||
        std::abs(a[2] - b[2]) > 1e-12) {
      throw std::logic_error("builtin_scheme: table is not time symmetric");
    }
  }
  return table;
}

void StepStats::merge(const KrylovStats& k) {
  if (k.hit_cap) ++krylov_cap_hits;
  max_m_used = std::max(max_m_used, k.m_used);
  total_m += k.m_used;
  max_est_err = std::max(max_est_err, k.est_err);
}

WaveVector step(const SchemeTable& scheme, const WaveVector& u, double t_k, double tau,
                const PotentialModel& model, const KineticOperator& kinetic,
                const KrylovConfig& kcfg, FftCounter& counter, StepStats* stats,
                LanczosProcess* workspace) {
  if (tau == 0.0 || !std::isfinite(tau)) {
    throw std::invalid_argument("step: tau must be finite and nonzero");
  }
  if (u.size() != kinetic.grid().n_points) {
    throw std::invalid_argument("step: state length does not match grid");
  }
  if (scheme.requires_derivative && model.separable() && !model.has_derivative()) {
    throw std::runtime_error("step: scheme '" + scheme.name +
                             "' requires a potential derivative the model does not supply");
  }
  if (model.mu != kinetic.mu()) {
    throw std::invalid_argument("step: model and kinetic operator disagree on the mass");
  }

  const int k = scheme.rule.size();
  std::vector<RealVector> samples(k);
  for (int l = 0; l < k; ++l) {
    samples[l] = model.potential_at(t_k + scheme.rule.nodes[l] * tau);
  }

  RealVector vtilde;
  bool has_vtilde = false;
  for (const Stage& st : scheme.stages) {
    if (st.modified_weight != 0.0) {
      has_vtilde = true;
      break;
    }
  }
  if (has_vtilde) {
    if (model.separable()) {
      vtilde = modified_potential(model, t_k, tau, scheme.rule,
                                  scheme.alpha_weights.w.row(1).transpose());
    } else {
      // general V(x, t): differentiate the sampled snapshots spectrally
      vtilde = modified_potential_sampled(model, t_k, tau, scheme.rule,
                                          scheme.alpha_weights.w.row(1).transpose(),
                                          kinetic.grid(), kinetic.plan(), counter);
    }
  }

  const int n = static_cast<int>(u.size());
  WaveVector state = u;
  RealVector diag(n);
  for (const Stage& st : scheme.stages) {
    diag.setZero();
    for (int l = 0; l < k; ++l) {
      diag += st.potential_weights[l] * samples[l];
    }
    if (st.modified_weight != 0.0) {
      diag += (st.modified_weight * tau * tau) * vtilde;
    }
    if (st.kinetic_coeff == 0.0) {
      for (int j = 0; j < n; ++j) {
        state[j] *= std::polar(1.0, -tau * diag[j]);
      }
    } else {
      const double a = st.kinetic_coeff;
      const WaveVector cdiag = diag.cast<Complex>();
      HermitianAction apply_h = [&](const WaveVector& in, WaveVector& out) {
        kinetic.apply(in, out, counter);
        out = a * out + cdiag.cwiseProduct(in);
      };
      KrylovStats kstats;
      state = expm_action(apply_h, state, tau, kcfg, &kstats, workspace);
      if (stats) stats->merge(kstats);
    }
  }
  return state;
}

PropagationResult propagate(const SchemeTable& scheme, const WaveVector& u0, double t0,
                            double t_f, int n_steps, const PotentialModel& model,
                            const KineticOperator& kinetic, const KrylovConfig& kcfg) {
  if (n_steps < 1) {
    throw std::invalid_argument("propagate: n_steps must be at least 1");
  }
  if (scheme.requires_derivative && model.separable() && !model.has_derivative()) {
    throw std::runtime_error("propagate: scheme '" + scheme.name +
                             "' requires a potential derivative the model does not supply");
  }
  const double tau = (t_f - t0) / n_steps;
  FftCounter counter;
  LanczosProcess workspace(static_cast<int>(u0.size()), kcfg.m_max);
  PropagationResult result;
  result.state = u0;
  for (int s = 0; s < n_steps; ++s) {
    result.state = step(scheme, result.state, t0 + s * tau, tau, model, kinetic, kcfg, counter,
                        &result.stats, &workspace);
  }
  result.fft_pairs = counter.transforms / 2;
  return result;
}

}  // namespace cfprop
