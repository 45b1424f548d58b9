#pragma once

#include <iosfwd>

#include "star/benchmarks.hpp"
#include "star/simgen.hpp"

namespace star {

enum class Setting { Er, Spectrum, File };
enum class Objective { Utility, Service };

const char* to_string(Setting setting);
const char* to_string(Objective objective);

struct ExperimentConfig {
  Setting setting = Setting::Er;
  std::string sweep_param = "none";  // "none" runs a single unnamed point
  std::vector<double> grid{0.0};
  int replications = 50;
  std::vector<Mechanism> mechanisms{Mechanism::Star, Mechanism::SocialTrustOnly,
                                    Mechanism::ReciprocityOnly};
  Objective objective = Objective::Service;
  std::uint64_t master_seed = 1;
  std::string output_path = "results.csv";
  bool per_user = false;
  std::string per_user_path = "per_user.csv";
  std::string timing_path;  // wall-clock stats go to a separate opt-in file

  ErParams er;
  SpectrumParams spectrum;
  double spectrum_p_s = 0.2;  // synthetic social side when no dataset is given
  std::string dataset_path;
  std::string instance_path;  // setting=file
  ServiceMode file_mode = ServiceMode::Divisible;
  int jobs = 1;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

// Metrics for one mechanism on one instance; values are unscaled.
struct MechanismMetrics {
  Mechanism mechanism = Mechanism::Star;
  double total_service = 0;
  double total_utility = 0;
  double completion_ratio = 0;  // provided / requested; 1 when nothing is requested
  double iterations = 0;
  double wall_ms = 0;
  std::map<NodeId, double> received;  // service received per user
};

std::vector<MechanismMetrics> run_on_instance(const SocialRequestGraph& g,
                                              const std::vector<Mechanism>& mechanisms,
                                              Objective objective, ServiceMode mode);

struct MetricsRow {
  std::string param;
  double value = 0;
  std::string mechanism;
  std::string metric;
  double mean = 0;
  double stderr_ = 0;
  int n = 0;
};

struct PerUserRow {
  NodeId user_id = 0;
  std::string mechanism;
  double received_service = 0;
};

struct MetricsTable {
  std::vector<MetricsRow> rows;
  std::vector<PerUserRow> per_user;
  std::vector<MetricsRow> timing;  // wall_ms rows, kept out of the main CSV
  std::vector<std::string> errors;
};

// Runs the full sweep. Replications are independent tasks; the result is a
// deterministic function of (config, master seed) regardless of `jobs`.
// RP-normalized metrics average per-instance ratios and exclude instances
// where RP is zero; their `n` column reports how many were included.
MetricsTable run_experiment(const ExperimentConfig& config);

// CSV with header param,value,mechanism,metric,mean,stderr,n.
void emit_results(const MetricsTable& table, std::ostream& out);
void emit_per_user(const MetricsTable& table, std::ostream& out);
void emit_timing(const MetricsTable& table, std::ostream& out);

// Parses emit_results output back into rows (round-trip checks).
std::vector<MetricsRow> parse_metrics_csv(std::istream& in);

}  // namespace star
