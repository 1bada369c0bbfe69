#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bpsp/error.hpp"
#include "bpsp/instance.hpp"
#include "bpsp/ising.hpp"
#include "bpsp/statevector.hpp"

namespace bpsp {

struct Angles {
  double gamma = 0.0;
  double beta = 0.0;

  friend bool operator==(const Angles&, const Angles&) = default;
};

class QaoaParams {
 public:
  QaoaParams() = default;
  explicit QaoaParams(std::vector<Angles> angles) : angles_(std::move(angles)) {
    for (const auto& a : angles_) {
      if (!std::isfinite(a.gamma) || !std::isfinite(a.beta)) {
        throw Error(ErrorKind::InvalidArgument, "QAOA angles must be finite");
      }
    }
  }

  std::size_t p() const noexcept { return angles_.size(); }
  std::span<const Angles> angles() const noexcept { return angles_; }
  const Angles& level(std::size_t l) const { return angles_.at(l); }

  QaoaParams negated() const {
    auto out = angles_;
    for (auto& a : out) a = {-a.gamma, -a.beta};
    return QaoaParams(std::move(out));
  }

 private:
  std::vector<Angles> angles_;
};

inline constexpr std::size_t kMaxTreeLevel = 5;

/// Fixed tree parameters (gamma_l, beta_l) for p = 1..5.
inline QaoaParams tree_params(std::size_t p) {
  static constexpr std::array<std::array<Angles, kMaxTreeLevel>, kMaxTreeLevel> kTable{{
      {{{0.52358, -0.39269}}},
      {{{0.40784, -0.53411}, {0.73974, -0.28296}}},
      {{{0.35450, -0.58794}, {0.65138, -0.42318}, {0.75426, -0.22301}}},
      {{{0.31500, -0.60498}, {0.58754, -0.47780}, {0.67322, -0.36127}, {0.77120, -0.18753}}},
      {{{0.29092, -0.62254}, {0.54678, -0.50507}, {0.60334, -0.41672}, {0.68722, -0.32534}, {0.78446, -0.16280}}},
  }};
  if (p < 1 || p > kMaxTreeLevel) {
    throw Error(ErrorKind::UnknownParams, "tree parameters exist for p = 1..5, got p = " + std::to_string(p));
  }
  const auto& row = kTable[p - 1];
  return QaoaParams(std::vector<Angles>(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(p)));
}

/// How gamma scales the phase layer. Halved applies exp(-i gamma * 1/2 sum J ZZ),
/// Full applies exp(-i gamma * sum J ZZ). The tree parameters were calibrated
/// against Halved (p=1 lightcone reproduces 0.675 color changes per car).
enum class PhaseConvention { Halved, Full };

inline constexpr PhaseConvention kCalibratedConvention = PhaseConvention::Halved;

constexpr double phase_scale(PhaseConvention convention) noexcept {
  return convention == PhaseConvention::Halved ? 0.5 : 1.0;
}

inline constexpr std::int32_t kDefaultStatevectorCap = 22;

struct SimOptions {
  std::int32_t cap_qubits = kDefaultStatevectorCap;
  PhaseConvention convention = kCalibratedConvention;
};

namespace detail {

inline std::vector<kernels::LocalCoupling> local_couplings(const CouplingGraph& g) {
  std::vector<kernels::LocalCoupling> pairs;
  pairs.reserve(g.num_couplings());
  for (const auto& c : g.couplings()) {
    pairs.push_back({static_cast<std::size_t>(c.i), static_cast<std::size_t>(c.j), static_cast<double>(c.J)});
  }
  return pairs;
}

inline void check_size(const CouplingGraph& g, std::int32_t cap) {
  if (g.n() > cap) {
    throw Error(ErrorKind::TooLarge,
                "statevector limited to " + std::to_string(cap) + " qubits, got " + std::to_string(g.n()));
  }
}

}  // namespace detail

/// Runs the p-level circuit from |+>^n. `diag` must be the pair-energy diagonal
/// of the graph; the constant offset is a global phase and is skipped.
inline void evolve(std::span<Amplitude> amps, std::size_t num_qubits, std::span<const double> diag,
                   const QaoaParams& params, PhaseConvention convention) {
  const double scale = phase_scale(convention);
  for (const auto& level : params.angles()) {
    kernels::apply_phase(amps, diag, scale * level.gamma);
    for (std::size_t q = 0; q < num_qubits; ++q) kernels::apply_rx_half(amps, q, level.beta);
  }
}

inline Statevector simulate_state(const CouplingGraph& g, const QaoaParams& params, const SimOptions& opts = {}) {
  detail::check_size(g, opts.cap_qubits);
  const auto n = static_cast<std::size_t>(g.n());
  Statevector state;
  state.qubit_ids.resize(n);
  std::iota(state.qubit_ids.begin(), state.qubit_ids.end(), 0);
  state.amplitudes = kernels::uniform(n);
  const auto pairs = detail::local_couplings(g);
  const auto diag = kernels::diagonal_energy(n, pairs);
  evolve(state.amplitudes, n, diag, params, opts.convention);
  return state;
}

struct ExpectationResult {
  double mean_adjacency_energy = 0.0;
  double mean_color_changes = 0.0;
};

/// Exact expectation of the adjacency energy for a full-graph state.
inline double adjacency_energy_expectation(const CouplingGraph& g, const Statevector& state) {
  if (state.num_qubits() != static_cast<std::size_t>(g.n())) {
    throw Error(ErrorKind::InvalidArgument, "state does not cover the graph");
  }
  const auto diag = kernels::diagonal_energy(state.num_qubits(), detail::local_couplings(g));
  double e = 0.0;
  for (std::size_t k = 0; k < diag.size(); ++k) e += std::norm(state.amplitudes[k]) * diag[k];
  return e + static_cast<double>(g.constant());
}

inline ExpectationResult expectation(const CouplingGraph& g, const QaoaParams& params, const SimOptions& opts = {}) {
  const auto state = simulate_state(g, params, opts);
  ExpectationResult r;
  r.mean_adjacency_energy = adjacency_energy_expectation(g, state);
  r.mean_color_changes = color_changes_from_energy(r.mean_adjacency_energy, g.n());
  return r;
}

/// <Z_a> for local bit a.
inline double z_expectation(const Statevector& state, std::size_t bit) {
  double e = 0.0;
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    e += ((k >> bit) & 1U ? -1.0 : 1.0) * std::norm(state.amplitudes[k]);
  }
  return e;
}

/// <Z_a Z_b> for local bits a, b.
inline double zz_expectation(const Statevector& state, std::size_t bit_a, std::size_t bit_b) {
  double e = 0.0;
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    const bool differ = ((k >> bit_a) ^ (k >> bit_b)) & 1U;
    e += (differ ? -1.0 : 1.0) * std::norm(state.amplitudes[k]);
  }
  return e;
}

/// i.i.d. basis indices drawn from |a_k|^2.
template <class Rng>
std::vector<std::uint64_t> sample_indices(const Statevector& state, std::size_t shots, Rng& rng) {
  if (shots < 1) throw Error(ErrorKind::InvalidArgument, "shots must be >= 1");
  std::vector<double> cdf(state.amplitudes.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    acc += std::norm(state.amplitudes[k]);
    cdf[k] = acc;
  }
  std::uniform_real_distribution<double> uniform(0.0, acc);
  std::vector<std::uint64_t> out(shots);
  for (auto& idx : out) {
    const double u = uniform(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    idx = static_cast<std::uint64_t>(it - cdf.begin());
  }
  return out;
}

/// Samples as spin configurations ordered like state.qubit_ids.
template <class Rng>
std::vector<SpinConfig> sample(const Statevector& state, std::size_t shots, Rng& rng) {
  const auto indices = sample_indices(state, shots, rng);
  std::vector<SpinConfig> out;
  out.reserve(indices.size());
  for (auto idx : indices) out.push_back(spins_from_basis(idx, static_cast<std::int32_t>(state.num_qubits())));
  return out;
}

/// Probability that one sample is an alpha-approximation, i.e. has at most
/// alpha * OPT color changes (inclusive).
inline double p_alpha(const BpspInstance& inst, const Statevector& state, double alpha,
                      std::int32_t oracle_cap = kDefaultOracleCap) {
  if (!(alpha >= 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be >= 1");
  if (state.num_qubits() != static_cast<std::size_t>(inst.n())) {
    throw Error(ErrorKind::InvalidArgument, "p_alpha needs a full-instance state");
  }
  const auto opt = brute_force_opt(inst, oracle_cap).opt_changes;
  const auto g = to_ising(inst);
  const auto diag = kernels::diagonal_energy(state.num_qubits(), detail::local_couplings(g));
  const double threshold = alpha * static_cast<double>(opt) + 1e-9;
  double prob = 0.0;
  for (std::size_t k = 0; k < diag.size(); ++k) {
    const double changes = color_changes_from_energy(diag[k] + static_cast<double>(g.constant()), inst.n());
    if (changes <= threshold) prob += std::norm(state.amplitudes[k]);
  }
  return prob;
}

/// Position of a measured mean between ideal simulation (0) and random
/// guessing (1).
inline double delta_c_metric(double qpu_mean, double sim_mean, double random_mean) {
  const double denom = random_mean - sim_mean;
  if (denom == 0.0) throw Error(ErrorKind::DegenerateBaseline, "random and simulated means coincide");
  return (qpu_mean - sim_mean) / denom;
}

}  // namespace bpsp
