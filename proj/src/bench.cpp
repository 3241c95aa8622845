#include "cfprop/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cfprop {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value '" + v + "' for " + key);
  }
}

int parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value '" + v + "' for " + key);
  }
}

}  // namespace

std::vector<std::string> BenchConfig::preset_names() {
  return {"walker-preston-64", "walker-preston-128", "walker-preston-64-half",
          "walker-preston-128-half"};
}

BenchConfig BenchConfig::preset(const std::string& name) {
  BenchConfig cfg;
  if (name == "walker-preston-64") {
    return cfg;
  }
  if (name == "walker-preston-128") {
    cfg.n_points = 128;
    return cfg;
  }
  if (name == "walker-preston-64-half" || name == "walker-preston-128-half") {
    cfg.n_points = (name == "walker-preston-64-half") ? 64 : 128;
    cfg.amplitude *= 0.5;
    cfg.omega *= 0.5;
    return cfg;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

void BenchConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path + "'");
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_entry(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void BenchConfig::apply_entry(const std::string& key, const std::string& value) {
  if (key == "grid.x0") x0 = parse_double(value, key);
  else if (key == "grid.xN") xN = parse_double(value, key);
  else if (key == "grid.n") n_points = parse_int(value, key);
  else if (key == "model.depth") depth = parse_double(value, key);
  else if (key == "model.width") width = parse_double(value, key);
  else if (key == "model.mu") mu = parse_double(value, key);
  else if (key == "model.amplitude") amplitude = parse_double(value, key);
  else if (key == "model.omega") omega = parse_double(value, key);
  else if (key == "run.periods") periods = parse_double(value, key);
  else if (key == "run.schemes") schemes = split(value, ',');
  else if (key == "run.steps") {
    step_counts.clear();
    for (const auto& s : split(value, ',')) step_counts.push_back(parse_int(s, key));
  } else if (key == "run.tol_mode") tol_mode = value;
  else if (key == "run.tol") tol_value = parse_double(value, key);
  else if (key == "run.target_error") target_error = parse_double(value, key);
  else if (key == "run.m_max") m_max = parse_int(value, key);
  else if (key == "run.reference_factor") reference_factor = parse_int(value, key);
  else if (key == "run.reference_tol") reference_tol = parse_double(value, key);
  else if (key == "run.reference_agreement") reference_agreement = parse_double(value, key);
  else if (key == "run.out") out_path = value;
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void BenchConfig::validate() const {
  if (!(xN > x0)) throw std::invalid_argument("config: grid.xN must exceed grid.x0");
  if (!(depth > 0.0 && width > 0.0 && mu > 0.0 && amplitude >= 0.0 && omega > 0.0)) {
    throw std::invalid_argument("config: physical parameters must be positive");
  }
  if (!(periods > 0.0)) throw std::invalid_argument("config: run.periods must be positive");
  if (schemes.empty()) throw std::invalid_argument("config: no schemes selected");
  if (step_counts.empty()) throw std::invalid_argument("config: no step counts");
  for (std::size_t i = 0; i + 1 < step_counts.size(); ++i) {
    if (!(step_counts[i] < step_counts[i + 1])) {
      throw std::invalid_argument("config: step counts must be strictly increasing");
    }
  }
  if (tol_mode != "scaled" && tol_mode != "fixed") {
    throw std::invalid_argument("config: run.tol_mode must be 'scaled' or 'fixed'");
  }
  for (const auto& s : schemes) {
    builtin_scheme(s);  // throws on unknown names
  }
}

double BenchConfig::optical_period() const { return 2.0 * std::numbers::pi / omega; }

double BenchConfig::krylov_tol_for(int n_steps) const {
  if (tol_mode == "fixed") return tol_value;
  return std::clamp(target_error / (10.0 * n_steps), 1e-14, 1e-8);
}

MorseConfig BenchConfig::morse() const {
  MorseConfig m;
  m.depth = depth;
  m.width = width;
  m.mu = mu;
  m.amplitude = amplitude;
  m.omega = omega;
  return m;
}

BenchContext make_context(const BenchConfig& cfg) {
  cfg.validate();
  SpatialGrid grid = SpatialGrid::make(cfg.x0, cfg.xN, cfg.n_points);
  KineticOperator kinetic(grid, cfg.mu);
  PotentialModel model = walker_preston_model(cfg.morse(), grid);
  WaveVector u0 = morse_ground_state(cfg.morse(), grid);
  return BenchContext{std::move(grid), std::move(kinetic), std::move(model), std::move(u0)};
}

WaveVector compute_reference(const BenchConfig& cfg, const BenchContext& ctx,
                             double* cross_agreement) {
  const int finest = *std::max_element(cfg.step_counts.begin(), cfg.step_counts.end());
  const int n_ref = cfg.reference_factor * finest;
  KrylovConfig kcfg;
  kcfg.tol = cfg.reference_tol;
  kcfg.m_max = std::max(cfg.m_max, 12);
  const double t_f = cfg.horizon();
  const SchemeTable primary = builtin_scheme("cf6-3");
  const SchemeTable check = builtin_scheme("cf6-2d");
  const PropagationResult a =
      propagate(primary, ctx.initial_state, 0.0, t_f, n_ref, ctx.model, ctx.kinetic, kcfg);
  const PropagationResult b =
      propagate(check, ctx.initial_state, 0.0, t_f, n_ref, ctx.model, ctx.kinetic, kcfg);
  const double dist = (a.state - b.state).norm();
  if (cross_agreement) *cross_agreement = dist;
  if (!(dist <= cfg.reference_agreement)) {
    std::ostringstream msg;
    msg << "reference self-check failed: cf6-3 and cf6-2d at n=" << n_ref << " differ by "
        << dist << " (gate " << cfg.reference_agreement << ")";
    throw std::runtime_error(msg.str());
  }
  return a.state;
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg, std::ostream* log) {
  const BenchContext ctx = make_context(cfg);
  double cross = 0.0;
  const WaveVector reference = compute_reference(cfg, ctx, &cross);
  if (log) {
    *log << "# reference cross-check distance: " << cross << "\n";
  }
  const double t_f = cfg.horizon();
  std::vector<BenchRecord> records;
  for (const auto& name : cfg.schemes) {
    const SchemeTable scheme = builtin_scheme(name);
    for (int n : cfg.step_counts) {
      KrylovConfig kcfg;
      kcfg.tol = cfg.krylov_tol_for(n);
      kcfg.m_max = cfg.m_max;
      const auto start = std::chrono::steady_clock::now();
      const PropagationResult r =
          propagate(scheme, ctx.initial_state, 0.0, t_f, n, ctx.model, ctx.kinetic, kcfg);
      const auto stop = std::chrono::steady_clock::now();
      BenchRecord rec;
      rec.scheme = name;
      rec.n_steps = n;
      rec.tau = t_f / n;
      rec.fft_pairs = r.fft_pairs;
      rec.error_l2 = (r.state - reference).norm();
      rec.wall_time_s = std::chrono::duration<double>(stop - start).count();
      if (log) {
        *log << "# " << name << " n=" << n << " err=" << rec.error_l2
             << " pairs=" << rec.fft_pairs << "\n";
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::string format_csv(const std::vector<BenchRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("format_csv: no records");
  }
  std::string out = "scheme,n_steps,tau,fft_pairs,error_l2,wall_time_s\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%.17g,%lld,%.16e,%.6f\n", r.scheme.c_str(), r.n_steps,
                  r.tau, static_cast<long long>(r.fft_pairs), r.error_l2, r.wall_time_s);
    out += buf;
  }
  return out;
}

void emit_csv(const std::vector<BenchRecord>& records, const std::string& path) {
  const std::string body = format_csv(records);  // throws before touching the file
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit_csv: cannot write '" + path + "'");
  }
  out << body;
}

std::vector<BenchRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "scheme,n_steps,tau,fft_pairs,error_l2,wall_time_s") {
    throw std::runtime_error("parse_csv: bad header");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 6) throw std::runtime_error("parse_csv: bad row '" + line + "'");
    BenchRecord r;
    r.scheme = f[0];
    r.n_steps = parse_int(f[1], "n_steps");
    r.tau = parse_double(f[2], "tau");
    r.fft_pairs = static_cast<std::int64_t>(std::stoll(f[3]));
    r.error_l2 = parse_double(f[4], "error_l2");
    r.wall_time_s = parse_double(f[5], "wall_time_s");
    records.push_back(std::move(r));
  }
  return records;
}

void emit_table(const std::vector<BenchRecord>& records, std::ostream& out) {
  if (records.empty()) {
    throw std::invalid_argument("emit_table: no records");
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-14s %8s %12s %10s %14s %10s\n", "scheme", "n_steps", "tau",
                "fft_pairs", "error_l2", "time_s");
  out << buf;
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%-14s %8d %12.6g %10lld %14.6e %10.3f\n", r.scheme.c_str(),
                  r.n_steps, r.tau, static_cast<long long>(r.fft_pairs), r.error_l2,
                  r.wall_time_s);
    out << buf;
  }
}

double cost_at_error(const std::vector<BenchRecord>& records, const std::string& scheme,
                     double target_error) {
  std::vector<std::pair<double, double>> pts;  // (error, cost), error ascending
  for (const auto& r : records) {
    if (r.scheme == scheme && r.error_l2 > 0.0 && r.fft_pairs > 0) {
      pts.emplace_back(r.error_l2, static_cast<double>(r.fft_pairs));
    }
  }
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& [e0, c0] = pts[i];
    const auto& [e1, c1] = pts[i + 1];
    if (e0 <= target_error && target_error <= e1) {
      const double t = (std::log(target_error) - std::log(e0)) / (std::log(e1) - std::log(e0));
      return std::exp(std::log(c0) + t * (std::log(c1) - std::log(c0)));
    }
  }
  return -1.0;
}

}  // namespace cfprop
