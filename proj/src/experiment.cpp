#include "star/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "star/instance_io.hpp"

namespace star {

const char* to_string(Setting setting) {
  switch (setting) {
    case Setting::Er: return "er";
    case Setting::Spectrum: return "spectrum";
    case Setting::File: return "file";
  }
  return "unknown";
}

const char* to_string(Objective objective) {
  return objective == Objective::Utility ? "utility" : "service";
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::MalformedLine, "config key " + key + ": bad number '" + text + "'");
  }
}

Mechanism parse_mechanism(const std::string& name) {
  if (name == "star") return Mechanism::Star;
  if (name == "st") return Mechanism::SocialTrustOnly;
  if (name == "rp") return Mechanism::ReciprocityOnly;
  fail(ErrorCode::MalformedLine, "unknown mechanism '" + name + "'");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto ltrim = line.find_first_not_of(" \t\r");
    if (ltrim == std::string::npos) continue;
    auto rtrim = line.find_last_not_of(" \t\r");
    line = line.substr(ltrim, rtrim - ltrim + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::MalformedLine, "config line " + std::to_string(line_no) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);

    if (key == "setting") {
      if (value == "er") cfg.setting = Setting::Er;
      else if (value == "spectrum") cfg.setting = Setting::Spectrum;
      else if (value == "file") cfg.setting = Setting::File;
      else fail(ErrorCode::MalformedLine, "unknown setting '" + value + "'");
    } else if (key == "sweep") {
      cfg.sweep_param = value;
    } else if (key == "grid") {
      cfg.grid.clear();
      for (const auto& item : split_list(value)) cfg.grid.push_back(parse_double(item, key));
      if (cfg.grid.empty()) fail(ErrorCode::MalformedLine, "empty grid");
    } else if (key == "replications") {
      cfg.replications = static_cast<int>(parse_double(value, key));
      if (cfg.replications < 1) fail(ErrorCode::MalformedLine, "replications must be >= 1");
    } else if (key == "mechanisms") {
      cfg.mechanisms.clear();
      for (const auto& item : split_list(value)) cfg.mechanisms.push_back(parse_mechanism(item));
    } else if (key == "objective") {
      if (value == "utility") cfg.objective = Objective::Utility;
      else if (value == "service") cfg.objective = Objective::Service;
      else fail(ErrorCode::MalformedLine, "unknown objective '" + value + "'");
    } else if (key == "seed") {
      cfg.master_seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "output") {
      cfg.output_path = value;
    } else if (key == "per_user") {
      cfg.per_user = value == "true" || value == "1";
    } else if (key == "per_user_output") {
      cfg.per_user_path = value;
    } else if (key == "timing_output") {
      cfg.timing_path = value;
    } else if (key == "N") {
      cfg.er.n = static_cast<int>(parse_double(value, key));
      cfg.spectrum.n = cfg.er.n;
    } else if (key == "P_S") {
      cfg.er.p_s = parse_double(value, key);
    } else if (key == "P_R") {
      cfg.er.p_r = parse_double(value, key);
    } else if (key == "mu_S") {
      cfg.er.mu_s = parse_double(value, key);
    } else if (key == "sigma2_S") {
      cfg.er.sigma2_s = parse_double(value, key);
    } else if (key == "mu_R") {
      cfg.er.mu_r = parse_double(value, key);
    } else if (key == "sigma2_R") {
      cfg.er.sigma2_r = parse_double(value, key);
    } else if (key == "mu_U") {
      cfg.er.mu_u = parse_double(value, key);
    } else if (key == "sigma2_U") {
      cfg.er.sigma2_u = parse_double(value, key);
    } else if (key == "precision") {
      cfg.er.precision = static_cast<int>(parse_double(value, key));
      cfg.spectrum.precision = cfg.er.precision;
    } else if (key == "N_S") {
      cfg.spectrum.n_s = static_cast<int>(parse_double(value, key));
    } else if (key == "N_R") {
      cfg.spectrum.n_r = static_cast<int>(parse_double(value, key));
    } else if (key == "max_providers") {
      cfg.spectrum.max_providers = static_cast<int>(parse_double(value, key));
    } else if (key == "spectrum_P_S") {
      cfg.spectrum_p_s = parse_double(value, key);
    } else if (key == "dataset") {
      cfg.dataset_path = value;
    } else if (key == "instance") {
      cfg.instance_path = value;
    } else if (key == "mode") {
      if (value == "divisible") cfg.file_mode = ServiceMode::Divisible;
      else if (value == "indivisible") cfg.file_mode = ServiceMode::Indivisible;
      else fail(ErrorCode::MalformedLine, "unknown mode '" + value + "'");
    } else if (key.rfind("user_", 0) == 0) {
      // user_<param>=v1,v2,...  assigns per-user values in node id order 1..N.
      std::string param = key.substr(5);
      auto values = split_list(value);
      for (std::size_t i = 0; i < values.size(); ++i) {
        auto& ov = cfg.er.user_overrides[static_cast<NodeId>(i + 1)];
        double v = parse_double(values[i], key);
        if (param == "P_S") ov.p_s = v;
        else if (param == "P_R") ov.p_r = v;
        else if (param == "mu_S") ov.mu_s = v;
        else if (param == "mu_R") ov.mu_r = v;
        else if (param == "mu_U") ov.mu_u = v;
        else fail(ErrorCode::MalformedLine, "unknown per-user parameter '" + param + "'");
      }
    } else {
      fail(ErrorCode::MalformedLine, "unknown config key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  return parse_config(in);
}

std::vector<MechanismMetrics> run_on_instance(const SocialRequestGraph& g,
                                              const std::vector<Mechanism>& mechanisms,
                                              Objective objective, ServiceMode mode) {
  const SocialRequestGraph solve_graph = objective == Objective::Service ? with_unit_utilities(g) : g;
  double unit = static_cast<double>(pow10(g.precision));
  double requested = static_cast<double>(total_requested_service(g)) / unit;

  std::vector<MechanismMetrics> out;
  for (Mechanism mechanism : mechanisms) {
    auto start = std::chrono::steady_clock::now();
    BenchmarkSolution bench;
    switch (mechanism) {
      case Mechanism::Star: bench = solve_star(solve_graph, mode); break;
      case Mechanism::SocialTrustOnly: bench = solve_st(solve_graph, mode); break;
      case Mechanism::ReciprocityOnly: bench = solve_rp(solve_graph, mode); break;
    }
    auto stop = std::chrono::steady_clock::now();

    MechanismMetrics m;
    m.mechanism = mechanism;
    m.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    m.iterations = static_cast<double>(bench.solution.iterations);
    m.total_service = static_cast<double>(flow_total_service(g, bench.solution.flow)) / unit;
    // Utility is always measured against the instance's own utilities, even
    // when the solve maximized service.
    m.total_utility = static_cast<double>(flow_utility(g, bench.solution.flow)) / (unit * unit);
    m.completion_ratio = requested > 0 ? m.total_service / requested : 1.0;
    for (const auto& [id, raw] : per_node_received_service(g, bench.solution.flow))
      m.received[id] = static_cast<double>(raw) / unit;
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

struct Replication {
  bool ok = false;
  std::string error;
  std::vector<MechanismMetrics> metrics;
};

struct Stats {
  double mean = 0;
  double se = 0;
  int n = 0;
};

Stats aggregate(const std::vector<double>& xs) {
  Stats s;
  s.n = static_cast<int>(xs.size());
  if (s.n == 0) {
    s.mean = std::nan("");
    s.se = std::nan("");
    return s;
  }
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / s.n;
  if (s.n > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.se = std::sqrt(ss / (static_cast<double>(s.n) * (s.n - 1)));
  }
  return s;
}

SocialRequestGraph generate_instance(const ExperimentConfig& cfg, double value,
                                     std::uint64_t seed) {
  if (cfg.setting == Setting::File) {
    int precision = cfg.er.precision;
    return parse_instance_file(cfg.instance_path, precision);
  }
  if (cfg.setting == Setting::Er) {
    ErParams p = cfg.er;
    p.seed = seed;
    if (cfg.sweep_param == "P_S") p.p_s = value;
    else if (cfg.sweep_param == "P_R") p.p_r = value;
    else if (cfg.sweep_param == "mu_S") p.mu_s = value;
    else if (cfg.sweep_param == "mu_R") p.mu_r = value;
    else if (cfg.sweep_param == "mu_U") p.mu_u = value;
    else if (cfg.sweep_param == "N") p.n = static_cast<int>(value);
    else if (cfg.sweep_param != "none")
      fail(ErrorCode::MalformedLine, "unknown sweep parameter '" + cfg.sweep_param + "'");
    return gen_er_instance(p);
  }
  SpectrumParams p = cfg.spectrum;
  p.seed = seed;
  if (cfg.sweep_param == "N") p.n = static_cast<int>(value);
  else if (cfg.sweep_param == "N_R") p.n_r = static_cast<int>(value);
  else if (cfg.sweep_param == "N_S") p.n_s = static_cast<int>(value);
  else if (cfg.sweep_param != "none")
    fail(ErrorCode::MalformedLine, "unknown sweep parameter '" + cfg.sweep_param + "'");
  SocialRequestGraph social =
      cfg.dataset_path.empty()
          ? gen_spectrum_social(p, cfg.spectrum_p_s)
          : [&] {
              std::ifstream in(cfg.dataset_path);
              if (!in) fail(ErrorCode::IoError, "cannot open " + cfg.dataset_path);
              return load_social_edge_list(in, p.n, p.n_s, derive_seed(p.seed, 1), p.precision);
            }();
  return gen_spectrum_instance(p, social);
}

ServiceMode mode_for(const ExperimentConfig& cfg) {
  switch (cfg.setting) {
    case Setting::Er: return ServiceMode::Divisible;
    case Setting::Spectrum: return ServiceMode::Indivisible;
    case Setting::File: return cfg.file_mode;
  }
  return ServiceMode::Divisible;
}

}  // namespace

MetricsTable run_experiment(const ExperimentConfig& cfg) {
  const std::size_t points = cfg.grid.size();
  const std::size_t reps = static_cast<std::size_t>(cfg.replications);
  std::vector<Replication> results(points * reps);
  ServiceMode mode = mode_for(cfg);

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    while (true) {
      std::size_t task = cursor.fetch_add(1);
      if (task >= results.size()) return;
      std::size_t pi = task / reps;
      std::size_t rep = task % reps;
      Replication& slot = results[task];
      try {
        // Seeds depend on the replication index only, pairing instances
        // across grid points (the swept parameter perturbs one coupled draw
        // stream instead of resampling the whole instance).
        std::uint64_t seed = derive_seed(cfg.master_seed, 1, rep);
        SocialRequestGraph g = generate_instance(cfg, cfg.grid[pi], seed);
        slot.metrics = run_on_instance(g, cfg.mechanisms, cfg.objective, mode);
        slot.ok = true;
      } catch (const std::exception& e) {
        slot.error = "point " + std::to_string(pi) + " rep " + std::to_string(rep) + ": " + e.what();
      }
    }
  };
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  MetricsTable table;
  for (const auto& r : results)
    if (!r.ok) table.errors.push_back(r.error);

  for (std::size_t pi = 0; pi < points; ++pi) {
    // Collect per-mechanism series in replication order.
    std::map<Mechanism, std::map<std::string, std::vector<double>>> series;
    std::map<Mechanism, std::map<NodeId, std::vector<double>>> received;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const Replication& r = results[pi * reps + rep];
      if (!r.ok) continue;
      double rp_service = 0, rp_utility = 0;
      bool has_rp = false;
      for (const auto& m : r.metrics) {
        if (m.mechanism == Mechanism::ReciprocityOnly) {
          has_rp = true;
          rp_service = m.total_service;
          rp_utility = m.total_utility;
        }
      }
      for (const auto& m : r.metrics) {
        auto& s = series[m.mechanism];
        s["total_service"].push_back(m.total_service);
        s["total_utility"].push_back(m.total_utility);
        s["completion_ratio"].push_back(m.completion_ratio);
        s["iterations"].push_back(m.iterations);
        s["wall_ms"].push_back(m.wall_ms);
        if (has_rp && m.mechanism != Mechanism::ReciprocityOnly) {
          if (rp_service > 0) s["total_service_over_rp"].push_back(m.total_service / rp_service);
          if (rp_utility > 0) s["total_utility_over_rp"].push_back(m.total_utility / rp_utility);
        }
        for (const auto& [id, v] : m.received) received[m.mechanism][id].push_back(v);
      }
    }

    for (Mechanism mechanism : cfg.mechanisms) {
      auto it = series.find(mechanism);
      if (it == series.end()) continue;
      for (const auto& [metric, xs] : it->second) {
        Stats s = aggregate(xs);
        MetricsRow row{cfg.sweep_param, cfg.grid[pi], to_string(mechanism), metric,
                       s.mean,          s.se,         s.n};
        if (metric == "wall_ms")
          table.timing.push_back(row);
        else
          table.rows.push_back(row);
      }
      if (cfg.per_user && points == 1) {
        for (const auto& [id, xs] : received[mechanism]) {
          Stats s = aggregate(xs);
          table.per_user.push_back({id, to_string(mechanism), s.mean});
        }
      }
    }
  }
  return table;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void emit_results(const MetricsTable& table, std::ostream& out) {
  out << "param,value,mechanism,metric,mean,stderr,n\n";
  for (const auto& r : table.rows)
    out << r.param << "," << fmt_double(r.value) << "," << r.mechanism << "," << r.metric << ","
        << fmt_double(r.mean) << "," << fmt_double(r.stderr_) << "," << r.n << "\n";
}

void emit_per_user(const MetricsTable& table, std::ostream& out) {
  out << "user_id,mechanism,received_service\n";
  for (const auto& r : table.per_user)
    out << r.user_id << "," << r.mechanism << "," << fmt_double(r.received_service) << "\n";
}

void emit_timing(const MetricsTable& table, std::ostream& out) {
  out << "param,value,mechanism,metric,mean,stderr,n\n";
  for (const auto& r : table.timing)
    out << r.param << "," << fmt_double(r.value) << "," << r.mechanism << "," << r.metric << ","
        << fmt_double(r.mean) << "," << fmt_double(r.stderr_) << "," << r.n << "\n";
}

std::vector<MetricsRow> parse_metrics_csv(std::istream& in) {
  std::vector<MetricsRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      if (line != "param,value,mechanism,metric,mean,stderr,n")
        fail(ErrorCode::MalformedLine, "unexpected CSV header: " + line);
      header = false;
      continue;
    }
    auto fields = split_list(line);
    if (fields.size() != 7) fail(ErrorCode::MalformedLine, "bad CSV row: " + line);
    MetricsRow r;
    r.param = fields[0];
    r.value = parse_double(fields[1], "value");
    r.mechanism = fields[2];
    r.metric = fields[3];
    r.mean = parse_double(fields[4], "mean");
    r.stderr_ = parse_double(fields[5], "stderr");
    r.n = static_cast<int>(parse_double(fields[6], "n"));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace star
