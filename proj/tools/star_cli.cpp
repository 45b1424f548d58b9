// Command-line front end: instance generation, solving, feasibility checks,
// decomposition, benchmark mechanisms, batch simulation, and oracle
// cross-checks. All file output is byte-deterministic for a fixed seed and
// flag set.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "star/benchmarks.hpp"
#include "star/experiment.hpp"
#include "star/feasibility.hpp"
#include "star/instance_io.hpp"
#include "star/oracle.hpp"
#include "star/simgen.hpp"

using namespace star;

namespace {

struct OutputTarget {
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path);
    out << text;
  }
};

ServiceMode parse_mode(const std::string& name) {
  if (name == "divisible") return ServiceMode::Divisible;
  if (name == "indivisible") return ServiceMode::Indivisible;
  fail(ErrorCode::MalformedLine, "unknown mode '" + name + "'");
}

char arc_letter(ArcKind kind) {
  switch (kind) {
    case ArcKind::RequestForward: return 'R';
    case ArcKind::RequestBackward: return 'B';
    case ArcKind::Social: return 'S';
  }
  return '?';
}

std::string cycle_trace_line(const CycleTrace& t, const ScalingInfo& info) {
  std::ostringstream out;
  out << "cycle path=";
  for (std::size_t i = 0; i < t.kinds.size(); ++i)
    out << t.node_sequence[i] << "-" << arc_letter(t.kinds[i]) << ">";
  out << t.node_sequence.back();
  out << " weight=" << format_decimal(t.weight, info.k);
  out << " rc=" << format_decimal(t.value * info.flow_to_raw_factor(), pow10(info.precision));
  out << "\n";
  return out.str();
}

std::string solution_text(const SocialRequestGraph& g, const Solution& sol, bool trace) {
  std::ostringstream out;
  write_flow(out, g, sol.flow);
  out << "utility=" << sol.utility.str() << " service=" << sol.total_service.str()
      << " iterations=" << sol.iterations << "\n";
  if (trace)
    for (const auto& t : sol.cycles_used) out << cycle_trace_line(t, sol.scaling);
  return out.str();
}

int cmd_gen_er(const ErParams& params, const OutputTarget& target) {
  std::ostringstream out;
  write_instance(out, gen_er_instance(params));
  target.write(out.str());
  return 0;
}

int cmd_gen_spectrum(const SpectrumParams& params, double p_s, const std::string& dataset,
                     const OutputTarget& target) {
  SocialRequestGraph social = [&] {
    if (dataset.empty()) return gen_spectrum_social(params, p_s);
    std::ifstream in(dataset);
    if (!in) fail(ErrorCode::IoError, "cannot open " + dataset);
    return load_social_edge_list(in, params.n, params.n_s, derive_seed(params.seed, 1),
                                 params.precision);
  }();
  std::ostringstream out;
  write_instance(out, gen_spectrum_instance(params, social));
  target.write(out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social-trust-assisted-reciprocity circulation toolkit"};
  app.require_subcommand(1);

  int precision = 6;
  app.add_option("--precision", precision, "fractional digits for instance numbers")
      ->capture_default_str();

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->require_subcommand(1);

  ErParams er;
  std::string gen_output;
  auto* gen_er = gen->add_subcommand("er", "random setting (directed edge probabilities)");
  gen_er->add_option("--n", er.n, "number of users")->capture_default_str();
  gen_er->add_option("--p-s", er.p_s, "social direction probability")->capture_default_str();
  gen_er->add_option("--p-r", er.p_r, "request edge probability")->capture_default_str();
  gen_er->add_option("--mu-s", er.mu_s, "mean social credit limit")->capture_default_str();
  gen_er->add_option("--sigma2-s", er.sigma2_s, "credit limit variance")->capture_default_str();
  gen_er->add_option("--mu-r", er.mu_r, "mean request amount")->capture_default_str();
  gen_er->add_option("--sigma2-r", er.sigma2_r, "request amount variance")->capture_default_str();
  gen_er->add_option("--mu-u", er.mu_u, "mean utility per unit")->capture_default_str();
  gen_er->add_option("--sigma2-u", er.sigma2_u, "utility variance")->capture_default_str();
  gen_er->add_option("--seed", er.seed, "random seed")->capture_default_str();
  gen_er->add_option("-o,--output", gen_output, "output file (default stdout)");

  SpectrumParams spectrum;
  double spectrum_p_s = 0.2;
  std::string dataset;
  auto* gen_sp = gen->add_subcommand("spectrum", "practical setting (channel sensing)");
  gen_sp->add_option("--n", spectrum.n, "number of users")->capture_default_str();
  gen_sp->add_option("--n-s", spectrum.n_s, "credit limit upper bound")->capture_default_str();
  gen_sp->add_option("--n-r", spectrum.n_r, "request amount upper bound")->capture_default_str();
  gen_sp->add_option("--max-providers", spectrum.max_providers, "providers per request")
      ->capture_default_str();
  gen_sp->add_option("--p-s", spectrum_p_s, "synthetic social direction probability")
      ->capture_default_str();
  gen_sp->add_option("--dataset", dataset, "social edge list file (overrides --p-s)");
  gen_sp->add_option("--seed", spectrum.seed, "random seed")->capture_default_str();
  gen_sp->add_option("-o,--output", gen_output, "output file (default stdout)");

  // ---- solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "maximum-utility circulation");
  std::string solve_instance, solve_mode = "divisible", solve_objective = "utility";
  std::string solve_output;
  bool solve_trace = false;
  solve->add_option("instance", solve_instance, "instance file")->required();
  solve->add_option("--mode", solve_mode, "divisible|indivisible")->capture_default_str();
  solve->add_option("--objective", solve_objective, "utility|service")->capture_default_str();
  solve->add_flag("--trace", solve_trace, "append one line per canceled cycle");
  solve->add_option("-o,--output", solve_output, "output file (default stdout)");

  // ---- feasibility ----------------------------------------------------------
  auto* feas = app.add_subcommand("feasibility", "can all requests be satisfied?");
  std::string feas_instance, feas_output;
  feas->add_option("instance", feas_instance, "instance file")->required();
  feas->add_option("-o,--output", feas_output, "output file (default stdout)");

  // ---- decompose ------------------------------------------------------------
  auto* dec = app.add_subcommand("decompose", "split a circulation into balanced cycles");
  std::string dec_instance, dec_flow, dec_output;
  dec->add_option("instance", dec_instance, "instance file")->required();
  dec->add_option("flow", dec_flow, "flow file (solver output format)")->required();
  dec->add_option("-o,--output", dec_output, "output file (default stdout)");

  // ---- benchmark ------------------------------------------------------------
  auto* bench = app.add_subcommand("benchmark", "run one mechanism");
  std::string bench_instance, bench_mech = "star", bench_mode = "divisible";
  std::string bench_objective = "utility", bench_output;
  bench->add_option("instance", bench_instance, "instance file")->required();
  bench->add_option("--mechanism", bench_mech, "star|st|rp")->capture_default_str();
  bench->add_option("--mode", bench_mode, "divisible|indivisible")->capture_default_str();
  bench->add_option("--objective", bench_objective, "utility|service")->capture_default_str();
  bench->add_option("-o,--output", bench_output, "output file (default stdout)");

  // ---- simulate -------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "batch sweep from a config file");
  std::string sim_config;
  int sim_jobs = 1;
  sim->add_option("--config", sim_config, "key=value config file")->required();
  sim->add_option("--jobs", sim_jobs, "worker threads")->capture_default_str();

  // ---- oracle-check ---------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle-check", "compare solver against brute force");
  std::string oracle_instance, oracle_output;
  std::int64_t oracle_states = 10'000'000;
  int oracle_nodes = 5;
  std::int64_t oracle_cap = 3;
  oracle->add_option("instance", oracle_instance, "instance file")->required();
  oracle->add_option("--max-states", oracle_states, "enumeration guard")->capture_default_str();
  oracle->add_option("--max-nodes", oracle_nodes, "node limit")->capture_default_str();
  oracle->add_option("--max-capacity", oracle_cap, "per-edge capacity limit")->capture_default_str();
  oracle->add_option("-o,--output", oracle_output, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    er.precision = precision;
    spectrum.precision = precision;

    if (gen_er->parsed()) return cmd_gen_er(er, {gen_output});
    if (gen_sp->parsed()) return cmd_gen_spectrum(spectrum, spectrum_p_s, dataset, {gen_output});

    if (solve->parsed()) {
      auto g = parse_instance_file(solve_instance, precision);
      ServiceMode mode = parse_mode(solve_mode);
      Solution sol = solve_objective == "service" ? solve_max_service(g, mode)
                                                  : solve_max_utility(g, mode);
      OutputTarget{solve_output}.write(solution_text(g, sol, solve_trace));
      return 0;
    }

    if (feas->parsed()) {
      auto g = parse_instance_file(feas_instance, precision);
      auto result = all_requests_satisfiable(g);
      std::ostringstream out;
      out << "satisfiable " << (result.satisfiable ? "true" : "false") << "\n";
      out << "P " << result.total_imbalance.str() << "\n";
      out << "maxflow " << result.max_flow_value.str() << "\n";
      if (result.witness) write_flow(out, g, *result.witness);
      OutputTarget{feas_output}.write(out.str());
      return 0;
    }

    if (dec->parsed()) {
      auto g = parse_instance_file(dec_instance, precision);
      std::ifstream in(dec_flow);
      if (!in) fail(ErrorCode::IoError, "cannot open " + dec_flow);
      Flow f = parse_flow(in, g);
      auto cycles = decompose_circulation(g, f);
      std::int64_t unit = pow10(g.precision);
      std::ostringstream out;
      for (const auto& c : cycles) {
        out << "cycle value=" << format_decimal(c.value, unit)
            << " class=" << to_string(classify_cycle(c)) << " path=";
        for (const auto& s : c.steps)
          out << s.from << "-" << (s.kind == TraversalKind::Request ? 'R' : 'S') << ">";
        out << c.steps.front().from << "\n";
      }
      OutputTarget{dec_output}.write(out.str());
      return 0;
    }

    if (bench->parsed()) {
      auto g = parse_instance_file(bench_instance, precision);
      ServiceMode mode = parse_mode(bench_mode);
      const SocialRequestGraph solve_graph =
          bench_objective == "service" ? with_unit_utilities(g) : g;
      BenchmarkSolution result;
      if (bench_mech == "star") result = solve_star(solve_graph, mode);
      else if (bench_mech == "st") result = solve_st(solve_graph, mode);
      else if (bench_mech == "rp") result = solve_rp(solve_graph, mode);
      else fail(ErrorCode::MalformedLine, "unknown mechanism '" + bench_mech + "'");
      std::ostringstream out;
      write_flow(out, g, result.solution.flow);
      out << "mechanism=" << to_string(result.mechanism)
          << " exactness=" << to_string(result.exactness)
          << " utility=" << result.solution.utility.str()
          << " service=" << result.solution.total_service.str()
          << " iterations=" << result.solution.iterations << "\n";
      OutputTarget{bench_output}.write(out.str());
      return 0;
    }

    if (sim->parsed()) {
      auto cfg = parse_config_file(sim_config);
      cfg.jobs = sim_jobs;
      auto table = run_experiment(cfg);
      for (const auto& e : table.errors) std::cerr << "replication failed: " << e << "\n";
      {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) fail(ErrorCode::IoError, "cannot write " + cfg.output_path);
        emit_results(table, out);
      }
      if (cfg.per_user && !table.per_user.empty()) {
        std::ofstream out(cfg.per_user_path, std::ios::binary);
        if (!out) fail(ErrorCode::IoError, "cannot write " + cfg.per_user_path);
        emit_per_user(table, out);
      }
      if (!cfg.timing_path.empty()) {
        std::ofstream out(cfg.timing_path, std::ios::binary);
        if (!out) fail(ErrorCode::IoError, "cannot write " + cfg.timing_path);
        emit_timing(table, out);
      }
      std::cout << "wrote " << table.rows.size() << " rows to " << cfg.output_path << "\n";
      return table.errors.empty() ? 0 : 1;
    }

    if (oracle->parsed()) {
      auto g = parse_instance_file(oracle_instance, precision);
      auto scaled = scale_to_integral(g, ServiceMode::Divisible);
      SmallInstanceLimits limits;
      limits.max_states = oracle_states;
      limits.max_nodes = oracle_nodes;
      limits.max_capacity = oracle_cap;
      std::int64_t oracle_util = brute_force_optimum(scaled.graph, limits);
      bool oracle_feasible = brute_force_feasible(scaled.graph, limits);
      auto sol = solve_max_utility(g, ServiceMode::Divisible);
      auto feas_result = all_requests_satisfiable(g);
      Quantity oracle_q(oracle_util, scaled.info.utility_divisor());
      bool match = oracle_q == sol.utility && oracle_feasible == feas_result.satisfiable;
      std::ostringstream out;
      out << "oracle_optimum " << oracle_q.str() << "\n";
      out << "solver_optimum " << sol.utility.str() << "\n";
      out << "oracle_feasible " << (oracle_feasible ? "true" : "false") << "\n";
      out << "solver_feasible " << (feas_result.satisfiable ? "true" : "false") << "\n";
      out << (match ? "MATCH" : "MISMATCH") << "\n";
      OutputTarget{oracle_output}.write(out.str());
      return match ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
