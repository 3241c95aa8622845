#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cfprop/bench.hpp"
#include "cfprop/quadrature.hpp"
#include "cfprop/schemes.hpp"

namespace {

using namespace cfprop;

struct CommonOptions {
  std::string preset = "walker-preston-64";
  std::string config_path;
  std::string schemes_csv;
  std::string steps_csv;
  double tol = 0.0;     // > 0 selects fixed mode
  double target = 0.0;  // > 0 selects scaled mode with this target
  int m_max = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--preset", opt.preset, "Named preset (see --list-presets)")
      ->check(CLI::IsMember(BenchConfig::preset_names()));
  cmd->add_option("--config", opt.config_path, "Flat key=value configuration file");
  cmd->add_option("--schemes", opt.schemes_csv, "Comma-separated scheme list");
  cmd->add_option("--steps", opt.steps_csv, "Comma-separated step counts");
  cmd->add_option("--tol", opt.tol, "Fixed Krylov tolerance");
  cmd->add_option("--target", opt.target, "Target error for the scaled tolerance policy");
  cmd->add_option("--m-max", opt.m_max, "Krylov dimension cap");
}

BenchConfig build_config(const CommonOptions& opt) {
  BenchConfig cfg = BenchConfig::preset(opt.preset);
  if (!opt.config_path.empty()) {
    cfg.apply_file(opt.config_path);
  }
  if (!opt.schemes_csv.empty()) {
    cfg.apply_entry("run.schemes", opt.schemes_csv);
  }
  if (!opt.steps_csv.empty()) {
    cfg.apply_entry("run.steps", opt.steps_csv);
  }
  if (opt.tol > 0.0) {
    cfg.tol_mode = "fixed";
    cfg.tol_value = opt.tol;
  }
  if (opt.target > 0.0) {
    cfg.tol_mode = "scaled";
    cfg.target_error = opt.target;
  }
  if (opt.m_max > 0) {
    cfg.m_max = opt.m_max;
  }
  cfg.validate();
  return cfg;
}

std::vector<double> parse_number_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

int run_propagate(const CommonOptions& opt, const std::string& scheme_name, int n_steps) {
  BenchConfig cfg = build_config(opt);
  const BenchContext ctx = make_context(cfg);
  const SchemeTable scheme = builtin_scheme(scheme_name);
  const int n = n_steps > 0 ? n_steps : cfg.step_counts.back();
  KrylovConfig kcfg;
  kcfg.tol = cfg.krylov_tol_for(n);
  kcfg.m_max = cfg.m_max;
  const PropagationResult r =
      propagate(scheme, ctx.initial_state, 0.0, cfg.horizon(), n, ctx.model, ctx.kinetic, kcfg);
  std::printf("scheme          %s\n", scheme.name.c_str());
  std::printf("grid            [%g, %g) N=%d\n", cfg.x0, cfg.xN, cfg.n_points);
  std::printf("horizon         %.10g (%g optical periods)\n", cfg.horizon(), cfg.periods);
  std::printf("n_steps         %d  (tau = %.10g)\n", n, cfg.horizon() / n);
  std::printf("krylov tol      %.3e  (m_max %d)\n", kcfg.tol, kcfg.m_max);
  std::printf("final norm      %.15f\n", r.state.norm());
  std::printf("norm drift      %.3e\n", std::abs(r.state.norm() - 1.0));
  std::printf("fft pairs       %lld\n", static_cast<long long>(r.fft_pairs));
  std::printf("max m used      %d\n", r.stats.max_m_used);
  std::printf("cap hits        %d\n", r.stats.krylov_cap_hits);
  return 0;
}

int run_bench(const CommonOptions& opt, const std::string& out_override) {
  BenchConfig cfg = build_config(opt);
  if (!out_override.empty()) cfg.out_path = out_override;
  const std::vector<BenchRecord> records = run_benchmark(cfg, &std::cerr);
  emit_table(records, std::cout);
  emit_csv(records, cfg.out_path);
  std::cerr << "# wrote " << cfg.out_path << "\n";
  return 0;
}

int run_quadrature(const std::string& rule_name, const std::string& nodes_csv,
                   const std::string& weights_csv, int order,
                   const std::string& config_path) {
  QuadratureRule rule;
  if (!nodes_csv.empty() || !weights_csv.empty()) {
    const std::vector<double> nodes = parse_number_list(nodes_csv);
    const std::vector<double> weights = parse_number_list(weights_csv);
    rule.nodes = Eigen::Map<const RealVector>(nodes.data(), nodes.size());
    rule.weights = Eigen::Map<const RealVector>(weights.data(), weights.size());
    rule.order = order;
  } else if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open '" + config_path + "'");
    std::string line;
    std::vector<double> nodes, weights;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(0, eq);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      const std::string value = line.substr(eq + 1);
      if (key == "rule.nodes") nodes = parse_number_list(value);
      else if (key == "rule.weights") weights = parse_number_list(value);
      else if (key == "rule.order") order = std::stoi(value);
    }
    rule.nodes = Eigen::Map<const RealVector>(nodes.data(), nodes.size());
    rule.weights = Eigen::Map<const RealVector>(weights.data(), weights.size());
    rule.order = order;
  } else if (rule_name == "gl6") {
    rule = gauss_legendre6();
  } else if (rule_name == "lobatto4") {
    rule = gauss_lobatto4();
  } else {
    throw std::runtime_error("unknown rule '" + rule_name + "'");
  }
  const AlphaWeights w = alpha_weights_for(rule);
  std::printf("nodes  ");
  for (int j = 0; j < rule.size(); ++j) std::printf(" %.16g", rule.nodes[j]);
  std::printf("\nweights");
  for (int j = 0; j < rule.size(); ++j) std::printf(" %.16g", rule.weights[j]);
  std::printf("\nalpha weight matrix W (3 x %d):\n", rule.size());
  for (int i = 0; i < 3; ++i) {
    std::printf("  alpha_%d:", i + 1);
    for (int j = 0; j < rule.size(); ++j) std::printf(" % .16e", w.w(i, j));
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cfprop: commutator-free exponential propagators for the 1-D\n"
      "time-dependent Schrodinger equation"};
  app.require_subcommand(0, 1);

  CommonOptions popt;
  std::string scheme_name = "cf6-3";
  int n_steps = 0;
  CLI::App* prop = app.add_subcommand("propagate", "Single propagation with diagnostics");
  add_common(prop, popt);
  prop->add_option("--scheme", scheme_name, "Propagator name");
  prop->add_option("--n", n_steps, "Step count (default: finest in config)");

  CommonOptions bopt;
  std::string out_override;
  CLI::App* bench = app.add_subcommand("bench", "Error-vs-cost sweep, CSV output");
  add_common(bench, bopt);
  bench->add_option("--out", out_override, "CSV output path");

  std::string rule_name = "gl6";
  std::string nodes_csv, weights_csv, rule_config;
  int order = 6;
  CLI::App* quad = app.add_subcommand("quadrature", "Print alpha-combination tables");
  quad->add_option("--rule", rule_name, "gl6 or lobatto4");
  quad->add_option("--nodes", nodes_csv, "Custom rule nodes (comma separated)");
  quad->add_option("--weights", weights_csv, "Custom rule weights (comma separated)");
  quad->add_option("--order", order, "Order of the custom rule");
  quad->add_option("--config", rule_config, "Config file with rule.nodes/rule.weights");

  bool list_presets = false;
  app.add_flag("--list-presets", list_presets, "List preset names and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_presets) {
      for (const auto& p : BenchConfig::preset_names()) std::puts(p.c_str());
      return 0;
    }
    if (prop->parsed()) return run_propagate(popt, scheme_name, n_steps);
    if (bench->parsed()) return run_bench(bopt, out_override);
    if (quad->parsed()) return run_quadrature(rule_name, nodes_csv, weights_csv, order,
                                              rule_config);
    std::cerr << app.help();
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
