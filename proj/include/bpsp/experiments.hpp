#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpsp/error.hpp"
#include "bpsp/heuristics.hpp"
#include "bpsp/instance.hpp"
#include "bpsp/io.hpp"
#include "bpsp/ising.hpp"
#include "bpsp/lightcone.hpp"
#include "bpsp/parallel.hpp"
#include "bpsp/qaoa.hpp"

namespace bpsp::experiments {

/// Overrides for an experiment; unset fields take the experiment's defaults.
struct Config {
  std::optional<std::int32_t> n;
  std::optional<std::size_t> count;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> p;
  std::optional<double> alpha;
  std::optional<std::int32_t> cap_qubits;
};

struct Check {
  std::string name;
  double value = 0.0;
  double lower = -HUGE_VAL;
  double upper = HUGE_VAL;

  bool pass() const { return value >= lower && value <= upper; }
};

struct Result {
  std::string name;
  std::string csv;
  std::vector<Check> checks;
  nlohmann::json headline = nlohmann::json::object();
  nlohmann::json config = nlohmann::json::object();
  double runtime_s = 0.0;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
  }

  /// Keys are sorted (nlohmann::json uses std::map); bounds that are
  /// unbounded are written as null.
  nlohmann::json summary() const {
    nlohmann::json out;
    out["experiment"] = name;
    out["config"] = config;
    out["headline"] = headline;
    out["pass"] = pass();
    out["runtime_s"] = runtime_s;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json j;
      j["name"] = c.name;
      j["value"] = c.value;
      j["lower"] = std::isfinite(c.lower) ? nlohmann::json(c.lower) : nlohmann::json(nullptr);
      j["upper"] = std::isfinite(c.upper) ? nlohmann::json(c.upper) : nlohmann::json(nullptr);
      j["pass"] = c.pass();
      list.push_back(std::move(j));
    }
    out["checks"] = std::move(list);
    return out;
  }
};

inline constexpr std::uint64_t kDefaultSeed = 2021;

/// Lower bound for checks that require a strictly positive value.
inline constexpr double kStrictlyPositive = std::numeric_limits<double>::min();

/// Instance i of a seeded family; independent of evaluation order.
inline BpspInstance seeded_instance(std::int32_t n, std::uint64_t master, std::size_t index) {
  std::mt19937_64 rng(mix_seed(master, index));
  return random_instance(n, rng);
}

inline std::vector<BpspInstance> seeded_instances(std::int32_t n, std::size_t count, std::uint64_t master) {
  std::vector<BpspInstance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(seeded_instance(n, master, i));
  return out;
}

/// Least-squares slope of y against x.
inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = k * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (k * sxy - sx * sy) / denom;
}

namespace detail {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline nlohmann::json base_config(std::int32_t n, std::size_t count, std::uint64_t seed) {
  return {{"n", n}, {"count", count}, {"seed", seed}};
}

inline Result table1(const Config& cfg, std::size_t p, std::int32_t default_n, std::size_t default_count,
                     double target, double tol) {
  detail::Timer timer;
  const auto n = cfg.n.value_or(default_n);
  const auto count = cfg.count.value_or(default_count);
  const auto seed = cfg.seed.value_or(kDefaultSeed);
  LightconeOptions opts;
  if (cfg.cap_qubits) opts.cap_qubits = *cfg.cap_qubits;
  const auto params = tree_params(p);

  std::vector<ExpectationResult> rows(count);
  for (std::size_t i = 0; i < count; ++i) {
    rows[i] = lightcone_expectation(to_ising(seeded_instance(n, seed, i)), params, opts);
  }
  io::CsvWriter csv({"instance_id", "n", "p", "mean_energy_adj", "mean_color_changes", "color_changes_per_car"});
  double mean = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double per_car = rows[i].mean_color_changes / n;
    mean += per_car;
    csv.row(i, n, p, rows[i].mean_adjacency_energy, rows[i].mean_color_changes, per_car);
  }
  mean /= static_cast<double>(count);

  Result r;
  r.name = "table1-p" + std::to_string(p);
  r.csv = csv.str();
  r.config = base_config(n, count, seed);
  r.config["p"] = p;
  r.headline = {{"mean_color_changes_per_car", mean}, {"reference", target}};
  r.checks.push_back({"mean_color_changes_per_car", mean, target - tol, target + tol});
  r.runtime_s = timer.seconds();
  return r;
}

}  // namespace detail

/// Lightcone p=1 over random instances; reference 0.675 color changes per car.
inline Result table1_p1(const Config& cfg = {}) { return detail::table1(cfg, 1, 1000, 20, 0.675, 0.01); }

/// Lightcone p=2; reference 0.568.
inline Result table1_p2(const Config& cfg = {}) { return detail::table1(cfg, 2, 300, 10, 0.568, 0.02); }

/// Greedy against statevector QAOA at p = 1..5 on the same instances.
inline Result fig2(const Config& cfg = {}) {
  detail::Timer timer;
  const auto n = cfg.n.value_or(16);
  const auto count = cfg.count.value_or(100);
  const auto seed = cfg.seed.value_or(kDefaultSeed);
  SimOptions opts;
  if (cfg.cap_qubits) opts.cap_qubits = *cfg.cap_qubits;

  constexpr std::size_t kLevels = 5;
  std::vector<std::array<double, kLevels + 1>> rows(count);
  parallel_for(count, [&](std::size_t i) {
    const auto inst = seeded_instance(n, seed, i);
    const auto g = to_ising(inst);
    rows[i][0] = static_cast<double>(color_changes(inst, greedy(inst)));
    for (std::size_t p = 1; p <= kLevels; ++p) rows[i][p] = expectation(g, tree_params(p), opts).mean_color_changes;
  });

  io::CsvWriter csv({"instance_id", "n", "greedy", "qaoa_p1", "qaoa_p2", "qaoa_p3", "qaoa_p4", "qaoa_p5"});
  std::array<double, kLevels + 1> mean{};
  for (std::size_t i = 0; i < count; ++i) {
    csv.row(i, n, rows[i][0], rows[i][1], rows[i][2], rows[i][3], rows[i][4], rows[i][5]);
    for (std::size_t k = 0; k <= kLevels; ++k) mean[k] += rows[i][k];
  }
  for (auto& m : mean) m /= static_cast<double>(count);

  Result r;
  r.name = "fig2";
  r.csv = csv.str();
  r.config = detail::base_config(n, count, seed);
  r.headline = {{"greedy", mean[0]}, {"qaoa_p1", mean[1]}, {"qaoa_p2", mean[2]},
                {"qaoa_p3", mean[3]}, {"qaoa_p4", mean[4]}, {"qaoa_p5", mean[5]}};
  const double greedy_mean = mean[0];
  r.checks.push_back({"greedy_mean_over_half_n", greedy_mean / (n / 2.0), 0.9, 1.1});
  r.checks.push_back({"qaoa_p1_minus_p2", mean[1] - mean[2], kStrictlyPositive, HUGE_VAL});
  r.checks.push_back({"qaoa_p2_minus_p3", mean[2] - mean[3], kStrictlyPositive, HUGE_VAL});
  r.checks.push_back({"qaoa_p3_relative_gap_to_greedy", std::abs(mean[3] - greedy_mean) / greedy_mean, 0.0, 0.1});
  r.checks.push_back({"greedy_minus_qaoa_p4", greedy_mean - mean[4], kStrictlyPositive, HUGE_VAL});
  r.checks.push_back({"greedy_minus_qaoa_p5", greedy_mean - mean[5], kStrictlyPositive, HUGE_VAL});
  r.runtime_s = timer.seconds();
  return r;
}

/// Distribution of p_alpha over random instances for n = 3..n at p=1 and
/// alpha in {1, 2, 3}. The headline check is that the hardest instances
/// (minimum p_alpha at alpha = 1) decay with n.
inline Result fig3(const Config& cfg = {}) {
  detail::Timer timer;
  const auto n_max = cfg.n.value_or(10);
  const auto count = cfg.count.value_or(200);
  const auto seed = cfg.seed.value_or(kDefaultSeed);
  const auto p = cfg.p.value_or(1);
  const auto params = tree_params(p);
  const std::array<double, 3> alphas{1.0, 2.0, 3.0};

  io::CsvWriter csv({"instance_id", "n", "alpha", "p_alpha"});
  nlohmann::json per_n = nlohmann::json::object();
  std::vector<double> xs, log_min;
  for (std::int32_t n = 3; n <= n_max; ++n) {
    std::array<std::vector<double>, 3> values;
    for (std::size_t i = 0; i < count; ++i) {
      const auto inst = seeded_instance(n, mix_seed(seed, static_cast<std::uint64_t>(n)), i);
      const auto state = simulate_state(to_ising(inst), params);
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        const double pa = p_alpha(inst, state, alphas[a]);
        values[a].push_back(pa);
        csv.row(i, n, alphas[a], pa);
      }
    }
    nlohmann::json entry;
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      auto sorted = values[a];
      std::sort(sorted.begin(), sorted.end());
      entry["alpha_" + std::to_string(static_cast<int>(alphas[a]))] = {
          {"min", sorted.front()}, {"median", sorted[sorted.size() / 2]}, {"max", sorted.back()}};
    }
    per_n[std::to_string(n)] = entry;
    xs.push_back(n);
    log_min.push_back(std::log(*std::min_element(values[0].begin(), values[0].end())));
  }
  const double slope = fitted_slope(xs, log_min);

  Result r;
  r.name = "fig3";
  r.csv = csv.str();
  r.config = detail::base_config(n_max, count, seed);
  r.config["p"] = p;
  r.headline = {{"per_n", per_n}, {"log_min_p_alpha1_slope", slope}};
  r.checks.push_back({"log_min_p_alpha1_slope", slope, -HUGE_VAL, 0.0});
  r.runtime_s = timer.seconds();
  return r;
}

/// p_alpha of the hard instance for n = 10, 12, ..., n.
inline Result fig6(const Config& cfg = {}) {
  detail::Timer timer;
  const auto n_max = cfg.n.value_or(20);
  const auto p = cfg.p.value_or(1);
  const auto alpha = cfg.alpha.value_or(5.0);
  SimOptions opts;
  if (cfg.cap_qubits) opts.cap_qubits = *cfg.cap_qubits;
  const auto params = tree_params(p);

  io::CsvWriter csv({"n", "p", "alpha", "opt", "p_alpha"});
  std::vector<double> xs, logs, values;
  for (std::int32_t n = 10; n <= n_max; n += 2) {
    const auto inst = hard_instance(n);
    const auto state = simulate_state(to_ising(inst), params, opts);
    const double pa = p_alpha(inst, state, alpha);
    csv.row(n, p, alpha, brute_force_opt(inst).opt_changes, pa);
    xs.push_back(n);
    logs.push_back(std::log(pa));
    values.push_back(pa);
  }
  double min_step = HUGE_VAL;
  for (std::size_t k = 1; k < values.size(); ++k) min_step = std::min(min_step, values[k - 1] - values[k]);
  const double slope = fitted_slope(xs, logs);

  Result r;
  r.name = "fig6";
  r.csv = csv.str();
  r.config = {{"n", n_max}, {"p", p}, {"alpha", alpha}};
  r.headline = {{"log_p_alpha_slope", slope}, {"p_alpha", values}};
  r.checks.push_back({"min_decrease_between_sizes", min_step, kStrictlyPositive, HUGE_VAL});
  r.checks.push_back({"log_p_alpha_slope", slope, -HUGE_VAL, -kStrictlyPositive});
  r.runtime_s = timer.seconds();
  return r;
}

/// Merged coupling distribution and mean degree.
inline Result coupling_statistics(const Config& cfg = {}) {
  detail::Timer timer;
  const auto n = cfg.n.value_or(100000);
  const auto count = cfg.count.value_or(100);
  const auto seed = cfg.seed.value_or(kDefaultSeed);

  io::CsvWriter csv({"instance_id", "n", "J_minus2", "J_minus1", "J_zero", "J_plus1", "J_plus2", "mean_degree"});
  CouplingStats total;
  for (std::size_t i = 0; i < count; ++i) {
    const auto stats = coupling_stats(seeded_instance(n, seed, i));
    auto at = [&](std::int32_t J) {
      auto it = stats.histogram.find(J);
      return it == stats.histogram.end() ? std::uint64_t{0} : it->second;
    };
    csv.row(i, n, at(-2), at(-1), at(0), at(1), at(2), stats.mean_degree());
    total.merge(stats);
  }

  Result r;
  r.name = "coupling-stats";
  r.csv = csv.str();
  r.config = detail::base_config(n, count, seed);
  r.headline = {{"p_J_minus1", total.probability(-1)},
                {"p_J_plus1", total.probability(1)},
                {"p_abs_J_2", total.fraction_strong()},
                {"zero_sum_merges", total.histogram.count(0) ? total.histogram.at(0) : 0},
                {"mean_degree", total.mean_degree()},
                {"max_degree", total.max_degree}};
  r.checks.push_back({"p_J_minus1", total.probability(-1), 2.0 / 3.0 - 0.01, 2.0 / 3.0 + 0.01});
  r.checks.push_back({"p_J_plus1", total.probability(1), 1.0 / 3.0 - 0.01, 1.0 / 3.0 + 0.01});
  r.checks.push_back({"p_abs_J_2", total.fraction_strong(), 0.0, 0.01});
  r.checks.push_back({"mean_degree", total.mean_degree(), 3.99, 4.0});
  r.runtime_s = timer.seconds();
  return r;
}

/// Greedy, red-first and recursive greedy color changes per car.
inline Result heuristic_asymptotics(const Config& cfg = {}) {
  detail::Timer timer;
  const auto n = cfg.n.value_or(10000);
  const auto count = cfg.count.value_or(100);
  const auto seed = cfg.seed.value_or(kDefaultSeed);

  io::CsvWriter csv({"instance_id", "n", "greedy", "red_first", "recursive_greedy"});
  double g = 0, rf = 0, rg = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = seeded_instance(n, seed, i);
    const auto a = color_changes(inst, greedy(inst));
    const auto b = color_changes(inst, red_first(inst));
    const auto c = color_changes(inst, recursive_greedy(inst));
    csv.row(i, n, a, b, c);
    g += static_cast<double>(a);
    rf += static_cast<double>(b);
    rg += static_cast<double>(c);
  }
  const double scale = static_cast<double>(count) * n;
  g /= scale;
  rf /= scale;
  rg /= scale;

  Result r;
  r.name = "heuristic-asymptotics";
  r.csv = csv.str();
  r.config = detail::base_config(n, count, seed);
  r.headline = {{"greedy", g}, {"red_first", rf}, {"recursive_greedy", rg}};
  r.checks.push_back({"greedy_per_car", g, 0.5 - 0.02, 0.5 + 0.02});
  r.checks.push_back({"red_first_per_car", rf, 2.0 / 3.0 - 0.02, 2.0 / 3.0 + 0.02});
  r.checks.push_back({"recursive_greedy_per_car", rg, 0.4 - 0.02, 0.4 + 0.02});
  r.runtime_s = timer.seconds();
  return r;
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> kNames{"fig2", "table1-p1", "table1-p2", "fig3",
                                               "fig6", "coupling-stats", "heuristic-asymptotics"};
  return kNames;
}

inline Result run(const std::string& name, const Config& cfg = {}) {
  if (name == "fig2") return fig2(cfg);
  if (name == "table1-p1") return table1_p1(cfg);
  if (name == "table1-p2") return table1_p2(cfg);
  if (name == "fig3") return fig3(cfg);
  if (name == "fig6") return fig6(cfg);
  if (name == "coupling-stats") return coupling_statistics(cfg);
  if (name == "heuristic-asymptotics") return heuristic_asymptotics(cfg);
  throw Error(ErrorKind::InvalidArgument, "unknown experiment " + name);
}

}  // namespace bpsp::experiments
