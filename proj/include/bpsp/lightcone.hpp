#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bpsp/error.hpp"
#include "bpsp/ising.hpp"
#include "bpsp/parallel.hpp"
#include "bpsp/qaoa.hpp"
#include "bpsp/statevector.hpp"

namespace bpsp {

inline constexpr std::int32_t kDefaultLightconeCap = 26;

/// Qubits within graph distance p of an edge, and the couplings among them.
/// `support` is ordered by (distance, qubit), so the edge endpoints occupy
/// local bits 0 and 1.
struct LightconeTask {
  std::pair<Qubit, Qubit> edge;
  std::vector<Qubit> support;
  std::vector<int> distance;  // parallel to support
  std::vector<Coupling> included_edges;
  std::size_t levels = 0;

  /// Qubits strictly inside the outermost shell (distance < levels).
  std::size_t interior_size() const {
    const auto p = static_cast<int>(levels);
    return static_cast<std::size_t>(std::count_if(distance.begin(), distance.end(), [&](int d) { return d < p; }));
  }
};

/// Upper bound on the support on graphs of maximum degree 4.
constexpr std::size_t max_support_degree4(std::size_t p) {
  std::size_t pow3 = 1;
  for (std::size_t l = 0; l <= p; ++l) pow3 *= 3;
  return pow3 - 1;
}

inline LightconeTask lightcone_support(const CouplingGraph& g, std::pair<Qubit, Qubit> edge, std::size_t p) {
  if (g.coupling(edge.first, edge.second) == 0) {
    throw Error(ErrorKind::InvalidArgument, "edge (" + std::to_string(edge.first) + "," +
                                                std::to_string(edge.second) + ") is not a coupling");
  }
  LightconeTask task;
  task.edge = edge;
  task.levels = p;
  std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
  std::vector<Qubit> frontier{edge.first, edge.second};
  dist[static_cast<std::size_t>(edge.first)] = 0;
  dist[static_cast<std::size_t>(edge.second)] = 0;
  task.support = frontier;
  task.distance = {0, 0};
  for (std::size_t layer = 1; layer <= p; ++layer) {
    std::vector<Qubit> grown;
    for (Qubit u : frontier) {
      for (const auto& nb : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(nb.q)] == -1) {
          dist[static_cast<std::size_t>(nb.q)] = static_cast<int>(layer);
          grown.push_back(nb.q);
        }
      }
    }
    std::sort(grown.begin(), grown.end());
    for (Qubit q : grown) {
      task.support.push_back(q);
      task.distance.push_back(static_cast<int>(layer));
    }
    frontier = std::move(grown);
  }
  for (Qubit q : task.support) {
    for (const auto& nb : g.neighbors(q)) {
      if (q < nb.q && dist[static_cast<std::size_t>(nb.q)] != -1) task.included_edges.push_back({q, nb.q, nb.J});
    }
  }
  std::sort(task.included_edges.begin(), task.included_edges.end(),
            [](const Coupling& a, const Coupling& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  return task;
}

/// Statevector: dense simulation of the restricted circuit on the whole
/// support. Reduced: density matrix on the interior (distance < p) only; the
/// outermost shell is only ever touched by first-level phase gates, so it is
/// traced out exactly as a per-entry dephasing factor. Auto picks whichever
/// needs fewer amplitudes.
enum class LightconeBackend { Auto, Statevector, Reduced };

struct LightconeOptions {
  std::int32_t cap_qubits = kDefaultLightconeCap;
  PhaseConvention convention = kCalibratedConvention;
  LightconeBackend backend = LightconeBackend::Auto;
  unsigned threads = 0;
};

namespace detail {

inline double zz_statevector(const LightconeTask& task, const QaoaParams& params, PhaseConvention convention) {
  const std::size_t m = task.support.size();
  std::vector<kernels::LocalCoupling> pairs;
  pairs.reserve(task.included_edges.size());
  auto local_of = [&](Qubit q) {
    return static_cast<std::size_t>(std::find(task.support.begin(), task.support.end(), q) - task.support.begin());
  };
  for (const auto& c : task.included_edges) pairs.push_back({local_of(c.i), local_of(c.j), static_cast<double>(c.J)});
  Statevector state;
  state.qubit_ids = task.support;
  state.amplitudes = kernels::uniform(m);
  const auto diag = kernels::diagonal_energy(m, pairs);
  evolve(state.amplitudes, m, diag, params, convention);
  return zz_expectation(state, 0, 1);
}

inline double zz_reduced(const LightconeTask& task, const QaoaParams& params, PhaseConvention convention) {
  const std::size_t m = task.interior_size();
  const std::size_t dim = std::size_t{1} << m;
  const double scale = phase_scale(convention);

  auto local_of = [&](Qubit q) {
    return static_cast<std::size_t>(std::find(task.support.begin(), task.support.end(), q) - task.support.begin());
  };

  // Interior couplings, and per shell qubit its couplings into the interior.
  std::vector<kernels::LocalCoupling> inner;
  std::vector<std::vector<std::pair<std::size_t, std::int32_t>>> shell(task.support.size() - m);
  for (const auto& c : task.included_edges) {
    const std::size_t a = local_of(c.i);
    const std::size_t b = local_of(c.j);
    if (a < m && b < m) {
      inner.push_back({a, b, static_cast<double>(c.J)});
    } else if (a < m) {
      shell[b - m].emplace_back(a, c.J);
    } else if (b < m) {
      shell[a - m].emplace_back(b, c.J);
    }
  }
  const auto diag = kernels::diagonal_energy(m, inner);

  // Local field h_k(x) = sum_a J_ak z_a(x) from each shell qubit k.
  std::vector<std::vector<int>> field(shell.size(), std::vector<int>(dim, 0));
  int max_field = 0;
  for (std::size_t k = 0; k < shell.size(); ++k) {
    for (std::size_t x = 0; x < dim; ++x) {
      int h = 0;
      for (const auto& [bit, J] : shell[k]) h += ((x >> bit) & 1U) ? -J : J;
      field[k][x] = h;
      max_field = std::max(max_field, std::abs(h));
    }
  }

  // rho[x | (y << m)] = <x|rho|y>, starting from |+><+|.
  std::vector<Amplitude> rho(dim * dim, Amplitude(1.0 / static_cast<double>(dim), 0.0));
  const auto levels = params.angles();

  auto phase_both = [&](double angle) {
    for (std::size_t y = 0; y < dim; ++y) {
      for (std::size_t x = 0; x < dim; ++x) {
        const double phi = -angle * (diag[x] - diag[y]);
        rho[x | (y << m)] *= Amplitude(std::cos(phi), std::sin(phi));
      }
    }
  };
  auto mixer_both = [&](double beta) {
    const Amplitude c(std::cos(beta), 0.0);
    const Amplitude s(0.0, -std::sin(beta));
    for (std::size_t q = 0; q < m; ++q) {
      kernels::apply_single(rho, q, c, s, s, c);
      kernels::apply_single(rho, q + m, c, std::conj(s), std::conj(s), c);
    }
  };

  for (std::size_t l = 0; l < levels.size(); ++l) {
    const double angle = scale * levels[l].gamma;
    phase_both(angle);
    if (l == 0 && !shell.empty()) {
      std::vector<double> cos_table(static_cast<std::size_t>(4 * max_field + 1));
      for (std::size_t d = 0; d < cos_table.size(); ++d) {
        cos_table[d] = std::cos(angle * (static_cast<double>(d) - 2.0 * max_field));
      }
      for (std::size_t y = 0; y < dim; ++y) {
        for (std::size_t x = 0; x < dim; ++x) {
          double factor = 1.0;
          for (const auto& h : field) factor *= cos_table[static_cast<std::size_t>(h[x] - h[y] + 2 * max_field)];
          rho[x | (y << m)] *= factor;
        }
      }
    }
    mixer_both(levels[l].beta);
  }

  double zz = 0.0;
  for (std::size_t x = 0; x < dim; ++x) {
    const bool differ = (x ^ (x >> 1)) & 1U;
    zz += (differ ? -1.0 : 1.0) * rho[x | (x << m)].real();
  }
  return zz;
}

}  // namespace detail

/// <Z_i Z_j> for the task's edge under the p-level circuit.
inline double lightcone_zz(const LightconeTask& task, const QaoaParams& params, const LightconeOptions& opts = {}) {
  if (task.support.size() > static_cast<std::size_t>(opts.cap_qubits)) {
    throw Error(ErrorKind::SupportTooLarge, "lightcone support of " + std::to_string(task.support.size()) +
                                                " qubits exceeds cap " + std::to_string(opts.cap_qubits));
  }
  if (task.levels != params.p()) {
    throw Error(ErrorKind::InvalidArgument, "lightcone built for p = " + std::to_string(task.levels) +
                                                " but parameters have p = " + std::to_string(params.p()));
  }
  LightconeBackend backend = opts.backend;
  if (backend == LightconeBackend::Auto) {
    backend = 2 * task.interior_size() < task.support.size() ? LightconeBackend::Reduced
                                                             : LightconeBackend::Statevector;
  }
  if (params.p() == 0) return 0.0;
  if (backend == LightconeBackend::Reduced) return detail::zz_reduced(task, params, opts.convention);
  return detail::zz_statevector(task, params, opts.convention);
}

/// Sum over couplings of J <Z_i Z_j>, each from its own lightcone.
inline ExpectationResult lightcone_expectation(const CouplingGraph& g, const QaoaParams& params,
                                               const LightconeOptions& opts = {}) {
  const auto couplings = g.couplings();
  std::vector<double> terms(couplings.size(), 0.0);
  parallel_for(
      couplings.size(),
      [&](std::size_t e) {
        const auto& c = couplings[e];
        const auto task = lightcone_support(g, {c.i, c.j}, params.p());
        terms[e] = static_cast<double>(c.J) * lightcone_zz(task, params, opts);
      },
      opts.threads);
  double energy = static_cast<double>(g.constant());
  for (double t : terms) energy += t;
  return {energy, color_changes_from_energy(energy, g.n())};
}

}  // namespace bpsp
