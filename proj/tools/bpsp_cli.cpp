// Command-line front end: instance generation, heuristic and QAOA runs,
// circuit/graph export and the reproduction experiments.
//
// Exit codes: 0 success, 2 usage error, 1 tolerance failure (experiment),
// 3 any other runtime error.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "bpsp/bpsp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string with_instance(std::size_t id, const std::string& what) {
  return "instance " + std::to_string(id) + ": " + what;
}

void cmd_gen(std::int32_t n, std::size_t count, std::uint64_t seed, const std::string& out) {
  std::string text;
  for (std::size_t i = 0; i < count; ++i) {
    text += bpsp::io::instance_to_jsonl(bpsp::experiments::seeded_instance(n, seed, i));
    text += '\n';
  }
  bpsp::io::write_text_file(out, text);
}

void cmd_solve(const std::string& algo, const std::string& in, const std::string& out, std::int32_t cap) {
  static const std::vector<std::string> kAlgos{"greedy", "red-first", "recursive-greedy", "brute-force",
                                               "random-baseline"};
  if (std::find(kAlgos.begin(), kAlgos.end(), algo) == kAlgos.end()) {
    throw bpsp::Error(bpsp::ErrorKind::UnknownAlgo, algo);
  }
  const auto instances = bpsp::io::read_jsonl_file(in);
  bpsp::io::CsvWriter csv({"instance_id", "n", "algo", "color_changes", "wall_time_ms"});
  for (std::size_t id = 0; id < instances.size(); ++id) {
    const auto& inst = instances[id].instance;
    const auto start = std::chrono::steady_clock::now();
    double changes = 0.0;
    try {
      if (algo == "greedy") {
        changes = static_cast<double>(bpsp::color_changes(inst, bpsp::greedy(inst)));
      } else if (algo == "red-first") {
        changes = static_cast<double>(bpsp::color_changes(inst, bpsp::red_first(inst)));
      } else if (algo == "recursive-greedy") {
        changes = static_cast<double>(bpsp::color_changes(inst, bpsp::recursive_greedy(inst)));
      } else if (algo == "brute-force") {
        changes = static_cast<double>(bpsp::brute_force_opt(inst, cap).opt_changes);
      } else {
        changes = bpsp::random_guess_expectation(inst);
      }
    } catch (const bpsp::Error& e) {
      throw bpsp::Error(e.kind(), with_instance(id, e.what()));
    }
    csv.row(id, inst.n(), algo, changes, elapsed_ms(start));
  }
  bpsp::io::write_text_file(out, csv.str());
}

void cmd_qaoa(std::size_t p, const std::string& method, std::size_t shots, std::uint64_t seed,
              const std::string& in, const std::string& out, std::optional<std::int32_t> cap) {
  if (method != "statevector" && method != "lightcone") throw UsageError("--method must be statevector or lightcone");
  if (method == "lightcone" && shots > 0) throw UsageError("--shots requires --method statevector");
  const auto params = bpsp::tree_params(p);
  const auto instances = bpsp::io::read_jsonl_file(in);
  bpsp::io::CsvWriter csv(
      {"instance_id", "n", "p", "method", "mean_energy_adj", "mean_color_changes", "wall_time_ms"});
  for (std::size_t id = 0; id < instances.size(); ++id) {
    const auto& inst = instances[id].instance;
    const auto g = bpsp::to_ising(inst);
    const auto start = std::chrono::steady_clock::now();
    bpsp::ExpectationResult result;
    try {
      if (method == "lightcone") {
        bpsp::LightconeOptions opts;
        if (cap) opts.cap_qubits = *cap;
        result = bpsp::lightcone_expectation(g, params, opts);
      } else {
        bpsp::SimOptions opts;
        if (cap) opts.cap_qubits = *cap;
        if (shots == 0) {
          result = bpsp::expectation(g, params, opts);
        } else {
          const auto state = bpsp::simulate_state(g, params, opts);
          std::mt19937_64 rng(bpsp::mix_seed(seed, id));
          double energy = 0.0;
          for (const auto& s : bpsp::sample(state, shots, rng)) {
            energy += static_cast<double>(bpsp::adjacency_energy(g, s));
          }
          result.mean_adjacency_energy = energy / static_cast<double>(shots);
          result.mean_color_changes = bpsp::color_changes_from_energy(result.mean_adjacency_energy, g.n());
        }
      }
    } catch (const bpsp::Error& e) {
      throw bpsp::Error(e.kind(), with_instance(id, e.what()));
    }
    csv.row(id, inst.n(), p, method, result.mean_adjacency_energy, result.mean_color_changes, elapsed_ms(start));
  }
  bpsp::io::write_text_file(out, csv.str());
}

void cmd_graph(const std::string& in, const std::string& out) {
  std::string text;
  for (const auto& parsed : bpsp::io::read_jsonl_file(in)) {
    text += bpsp::io::graph_to_json(bpsp::to_ising(parsed.instance)).dump();
    text += '\n';
  }
  bpsp::io::write_text_file(out, text);
}

void cmd_compile(std::size_t p, const std::string& in, const std::string& out) {
  const auto params = bpsp::tree_params(p);
  std::string text;
  for (const auto& parsed : bpsp::io::read_jsonl_file(in)) {
    text += bpsp::io::circuit_to_json(bpsp::ion::compile(bpsp::to_ising(parsed.instance), params)).dump();
    text += '\n';
  }
  bpsp::io::write_text_file(out, text);
}

int cmd_experiment(const std::string& name, const bpsp::experiments::Config& cfg, const std::string& out) {
  const auto result = bpsp::experiments::run(name, cfg);
  const std::filesystem::path csv_path = out.empty() ? name + ".csv" : out;
  auto summary_path = csv_path;
  summary_path.replace_extension(".summary.json");
  bpsp::io::write_text_file(csv_path.string(), result.csv);
  const auto summary = result.summary();
  bpsp::io::write_text_file(summary_path.string(), summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return result.pass() ? kExitOk : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary paint shop solvers, QAOA simulation and experiments"};
  app.require_subcommand(1);

  std::int32_t n = 0;
  std::size_t count = 1;
  std::uint64_t seed = bpsp::experiments::kDefaultSeed;
  std::size_t p = 1;
  std::string method = "statevector";
  std::size_t shots = 0;
  double alpha = 0.0;
  std::string in;
  std::string out;
  std::string algo;
  std::int32_t cap_qubits = 0;
  std::string experiment;

  auto* gen = app.add_subcommand("gen", "Write seeded random instances as JSONL");
  gen->add_option("--n", n, "Cars per instance")->required()->check(CLI::PositiveNumber);
  gen->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Master seed");
  gen->add_option("--out", out, "Output JSONL path")->required();

  auto* solve = app.add_subcommand("solve", "Run a classical algorithm on every instance");
  solve->add_option("--algo", algo, "greedy|red-first|recursive-greedy|brute-force|random-baseline")->required();
  solve->add_option("--in", in, "Input JSONL")->required();
  solve->add_option("--out", out, "Output CSV")->required();
  auto* solve_cap = solve->add_option("--cap-qubits", cap_qubits, "Brute-force size cap (default 24)");

  auto* qaoa = app.add_subcommand("qaoa", "QAOA expectation with the fixed tree parameters");
  qaoa->add_option("--p", p, "QAOA levels (1..5)")->required();
  qaoa->add_option("--method", method, "statevector|lightcone");
  qaoa->add_option("--shots", shots, "0 = exact expectation, otherwise sample this many shots");
  qaoa->add_option("--seed", seed, "Sampling seed");
  qaoa->add_option("--in", in, "Input JSONL")->required();
  qaoa->add_option("--out", out, "Output CSV")->required();
  auto* qaoa_cap = qaoa->add_option("--cap-qubits", cap_qubits, "Statevector / lightcone support cap");

  auto* graph = app.add_subcommand("graph", "Export the coupling graph of every instance as JSONL");
  graph->add_option("--in", in, "Input JSONL")->required();
  graph->add_option("--out", out, "Output JSONL")->required();

  auto* compile = app.add_subcommand("compile", "Export trapped-ion native circuits as JSONL");
  compile->add_option("--p", p, "QAOA levels (1..5)")->required();
  compile->add_option("--in", in, "Input JSONL")->required();
  compile->add_option("--out", out, "Output JSONL")->required();

  auto* exp = app.add_subcommand("experiment", "Reproduce a figure or table; writes CSV + summary JSON");
  exp->add_option("name", experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(bpsp::experiments::names()));
  auto* exp_n = exp->add_option("--n", n, "Instance size (largest size for fig3/fig6)")->check(CLI::PositiveNumber);
  auto* exp_count = exp->add_option("--count", count, "Instances")->check(CLI::PositiveNumber);
  auto* exp_seed = exp->add_option("--seed", seed, "Master seed");
  auto* exp_p = exp->add_option("--p", p, "QAOA levels (fig3, fig6)");
  auto* exp_alpha = exp->add_option("--alpha", alpha, "Approximation ratio (fig6)")->check(CLI::Range(1.0, 1e9));
  auto* exp_cap = exp->add_option("--cap-qubits", cap_qubits, "Statevector / lightcone cap");
  exp->add_option("--out", out, "Output CSV (summary goes next to it)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      cmd_gen(n, count, seed, out);
    } else if (*solve) {
      cmd_solve(algo, in, out, *solve_cap ? cap_qubits : bpsp::kDefaultOracleCap);
    } else if (*qaoa) {
      cmd_qaoa(p, method, shots, seed, in, out, *qaoa_cap ? std::optional(cap_qubits) : std::nullopt);
    } else if (*graph) {
      cmd_graph(in, out);
    } else if (*compile) {
      cmd_compile(p, in, out);
    } else if (*exp) {
      bpsp::experiments::Config cfg;
      if (*exp_n) cfg.n = n;
      if (*exp_count) cfg.count = count;
      if (*exp_seed) cfg.seed = seed;
      if (*exp_p) cfg.p = p;
      if (*exp_alpha) cfg.alpha = alpha;
      if (*exp_cap) cfg.cap_qubits = cap_qubits;
      return cmd_experiment(experiment, cfg, out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bpsp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage = e.kind() == bpsp::ErrorKind::UnknownAlgo || e.kind() == bpsp::ErrorKind::UnknownParams;
    return usage ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
