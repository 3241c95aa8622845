#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cfprop/model.hpp"
#include "cfprop/schemes.hpp"
#include "cfprop/spectral.hpp"

namespace cfprop {

/// Benchmark configuration. Defaults reproduce the Walker-Preston
/// experiment on the N = 64 grid; see BenchConfig::preset for variants.
/// The file format is flat `section.key = value` text (see README).
struct BenchConfig {
  // grid
  double x0 = -0.8;
  double xN = 4.32;
  int n_points = 64;
  // model
  double depth = 0.2251;
  double width = 1.1741;
  double mu = 1745.0;
  double amplitude = 0.011025;
  double omega = 0.01787;
  // run
  double periods = 10.0;
  std::vector<std::string> schemes = {"midpoint", "midpoint-avg", "cf4-2",
                                      "cf6-2d",   "cf6-3",        "cf6-5alv"};
  std::vector<int> step_counts = {64, 96, 128, 192, 256, 384, 512, 768, 1024, 1536, 2048};
  std::string tol_mode = "scaled";  // "scaled" or "fixed"
  double tol_value = 1e-12;         // fixed mode
  double target_error = 1e-10;      // scaled mode: tol = target / (10 n), floor 1e-14
  int m_max = 10;
  int reference_factor = 16;  // n_ref = factor * finest step count
  double reference_tol = 1e-15;
  double reference_agreement = 1e-11;  // two-scheme cross-check gate
  std::string out_path = "bench.csv";

  static std::vector<std::string> preset_names();
  static BenchConfig preset(const std::string& name);

  void apply_file(const std::string& path);
  void apply_entry(const std::string& key, const std::string& value);
  void validate() const;

  double optical_period() const;
  double horizon() const { return periods * optical_period(); }
  double krylov_tol_for(int n_steps) const;
  MorseConfig morse() const;
};

struct BenchRecord {
  std::string scheme;
  int n_steps = 0;
  double tau = 0.0;
  std::int64_t fft_pairs = 0;
  double error_l2 = 0.0;
  double wall_time_s = 0.0;
};

struct BenchContext {
  SpatialGrid grid;
  KineticOperator kinetic;
  PotentialModel model;
  WaveVector initial_state;
};

BenchContext make_context(const BenchConfig& cfg);

/// Reference state at the final time: the three-exponential sixth-order
/// scheme at reference_factor times the finest step count, tol
/// reference_tol, verified against the two-exponential sixth-order scheme
/// at the same resolution. Throws with a diagnostic when the two routes
/// disagree beyond the gate.
WaveVector compute_reference(const BenchConfig& cfg, const BenchContext& ctx,
                             double* cross_agreement = nullptr);

/// Full sweep over (scheme, n_steps); errors are 2-norm distances to the
/// reference at the final time, cost is the exact FFT-pair count.
std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg, std::ostream* log = nullptr);

std::string format_csv(const std::vector<BenchRecord>& records);
void emit_csv(const std::vector<BenchRecord>& records, const std::string& path);
std::vector<BenchRecord> parse_csv(std::istream& in);
void emit_table(const std::vector<BenchRecord>& records, std::ostream& out);

/// Interpolated FFT-pair cost at which a scheme's error-vs-cost polyline
/// crosses `target_error` (log-log interpolation); negative when the
/// records never bracket the target.
double cost_at_error(const std::vector<BenchRecord>& records, const std::string& scheme,
                     double target_error);

}  // namespace cfprop
