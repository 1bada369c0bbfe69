#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bpsp/error.hpp"
#include "bpsp/instance.hpp"

namespace bpsp {

using Qubit = std::int32_t;

struct Coupling {
  Qubit i = 0;  // i < j
  Qubit j = 0;
  std::int32_t J = 0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Merged integer couplings plus a constant offset, in adjacency-energy
/// units: E_adj(s) = constant + sum J_ij s_i s_j. Couplings are kept sorted
/// by (i, j) with i < j and never hold J == 0.
class CouplingGraph {
 public:
  CouplingGraph() = default;

  CouplingGraph(std::int32_t n, std::vector<Coupling> couplings, std::int64_t constant = 0)
      : n_(n), couplings_(std::move(couplings)), constant_(constant) {
    for (auto& c : couplings_) {
      if (c.i == c.j || c.i < 0 || c.j < 0 || c.i >= n_ || c.j >= n_) {
        throw Error(ErrorKind::InvalidArgument, "coupling endpoints out of range");
      }
      if (c.i > c.j) std::swap(c.i, c.j);
    }
    std::sort(couplings_.begin(), couplings_.end(),
              [](const Coupling& a, const Coupling& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
    // Merge duplicates and drop zero sums.
    std::vector<Coupling> merged;
    for (const auto& c : couplings_) {
      if (!merged.empty() && merged.back().i == c.i && merged.back().j == c.j) {
        merged.back().J += c.J;
      } else {
        merged.push_back(c);
      }
    }
    std::erase_if(merged, [](const Coupling& c) { return c.J == 0; });
    couplings_ = std::move(merged);
    build_adjacency();
  }

  std::int32_t n() const noexcept { return n_; }
  std::span<const Coupling> couplings() const noexcept { return couplings_; }
  std::size_t num_couplings() const noexcept { return couplings_.size(); }
  std::int64_t constant() const noexcept { return constant_; }

  struct Neighbor {
    Qubit q;
    std::int32_t J;
  };
  std::span<const Neighbor> neighbors(Qubit q) const {
    const auto b = offsets_[static_cast<std::size_t>(q)];
    const auto e = offsets_[static_cast<std::size_t>(q) + 1];
    return std::span<const Neighbor>(adjacency_).subspan(b, e - b);
  }
  std::size_t degree(Qubit q) const { return neighbors(q).size(); }

  /// Coupling value between a and b, 0 when absent.
  std::int32_t coupling(Qubit a, Qubit b) const {
    for (const auto& nb : neighbors(a)) {
      if (nb.q == b) return nb.J;
    }
    return 0;
  }

  friend bool operator==(const CouplingGraph& a, const CouplingGraph& b) {
    return a.n_ == b.n_ && a.constant_ == b.constant_ && a.couplings_ == b.couplings_;
  }

 private:
  void build_adjacency() {
    std::vector<std::size_t> deg(static_cast<std::size_t>(n_), 0);
    for (const auto& c : couplings_) {
      ++deg[static_cast<std::size_t>(c.i)];
      ++deg[static_cast<std::size_t>(c.j)];
    }
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (std::size_t q = 0; q < deg.size(); ++q) offsets_[q + 1] = offsets_[q] + deg[q];
    adjacency_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& c : couplings_) {
      adjacency_[fill[static_cast<std::size_t>(c.i)]++] = {c.j, c.J};
      adjacency_[fill[static_cast<std::size_t>(c.j)]++] = {c.i, c.J};
    }
  }

  std::int32_t n_ = 0;
  std::vector<Coupling> couplings_;
  std::int64_t constant_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

using Spin = std::int8_t;

struct SpinConfig {
  std::vector<Spin> spins;  // each +1 or -1

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;
};

/// Spin glass image of an instance. Each adjacency (w_k, w_{k+1}) adds
/// (-1)^(o_k + o_{k+1} + 1) to J between the two cars, with o the number of
/// earlier occurrences of that car. A self-adjacency (c, c) has o = (0, 1)
/// and contributes the constant +1 because s_c^2 = 1.
inline CouplingGraph to_ising(const BpspInstance& inst) {
  std::vector<Coupling> raw;
  raw.reserve(inst.length());
  std::int64_t constant = 0;
  for (std::size_t k = 0; k + 1 < inst.length(); ++k) {
    const int sign = ((inst.occurrence_at(k) + inst.occurrence_at(k + 1)) % 2 == 0) ? -1 : 1;
    const Car a = inst.car_at(k);
    const Car b = inst.car_at(k + 1);
    if (a == b) {
      constant += sign;
    } else {
      raw.push_back({a, b, sign});
    }
  }
  return CouplingGraph(inst.n(), std::move(raw), constant);
}

inline std::int64_t adjacency_energy(const CouplingGraph& g, const SpinConfig& s) {
  if (s.spins.size() != static_cast<std::size_t>(g.n())) {
    throw Error(ErrorKind::InvalidArgument, "spin configuration length does not match graph");
  }
  std::int64_t e = g.constant();
  for (const auto& c : g.couplings()) {
    e += static_cast<std::int64_t>(c.J) * s.spins[static_cast<std::size_t>(c.i)] *
         s.spins[static_cast<std::size_t>(c.j)];
  }
  return e;
}

/// Energy of the halved Hamiltonian 1/2 sum J Z Z (constant included, halved).
inline double hamiltonian_energy(const CouplingGraph& g, const SpinConfig& s) {
  return static_cast<double>(adjacency_energy(g, s)) / 2.0;
}

/// Spin +1 means the car is painted color 0 first.
inline Coloring spins_to_coloring(const BpspInstance& inst, const SpinConfig& s) {
  if (s.spins.size() != static_cast<std::size_t>(inst.n())) {
    throw Error(ErrorKind::InvalidArgument, "spin configuration length does not match instance");
  }
  Coloring c{std::vector<Color>(s.spins.size())};
  for (std::size_t i = 0; i < s.spins.size(); ++i) c.first_color[i] = s.spins[i] == 1 ? 0 : 1;
  return c;
}

inline SpinConfig coloring_to_spins(const BpspInstance& inst, const Coloring& c) {
  if (c.first_color.size() != static_cast<std::size_t>(inst.n())) {
    throw Error(ErrorKind::InvalidArgument, "coloring length does not match instance");
  }
  SpinConfig s{std::vector<Spin>(c.first_color.size())};
  for (std::size_t i = 0; i < s.spins.size(); ++i) s.spins[i] = c.first_color[i] == 0 ? 1 : -1;
  return s;
}

/// Basis index bit q set means qubit q reads |1>, i.e. spin -1.
inline SpinConfig spins_from_basis(std::uint64_t index, std::int32_t n) {
  SpinConfig s{std::vector<Spin>(static_cast<std::size_t>(n))};
  for (std::int32_t q = 0; q < n; ++q) s.spins[static_cast<std::size_t>(q)] = ((index >> q) & 1U) ? -1 : 1;
  return s;
}

/// Color changes implied by an adjacency energy.
constexpr double color_changes_from_energy(double adjacency_energy, std::int64_t n) {
  return (adjacency_energy + static_cast<double>(2 * n - 1)) / 2.0;
}

struct CouplingStats {
  std::map<std::int32_t, std::uint64_t> histogram;  // merged J (including 0) -> count
  std::uint64_t nonzero_couplings = 0;
  std::uint64_t nodes = 0;
  std::uint64_t degree_sum = 0;
  std::int32_t max_degree = 0;

  double mean_degree() const { return nodes == 0 ? 0.0 : static_cast<double>(degree_sum) / static_cast<double>(nodes); }
  /// Probability of a merged value among nonzero couplings.
  double probability(std::int32_t J) const {
    if (nonzero_couplings == 0) return 0.0;
    auto it = histogram.find(J);
    return it == histogram.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(nonzero_couplings);
  }
  double fraction_strong() const { return probability(-2) + probability(2); }

  void merge(const CouplingStats& other) {
    for (const auto& [J, count] : other.histogram) histogram[J] += count;
    nonzero_couplings += other.nonzero_couplings;
    nodes += other.nodes;
    degree_sum += other.degree_sum;
    max_degree = std::max(max_degree, other.max_degree);
  }
};

/// Merged coupling statistics for one instance. Zero-sum merges are not in
/// the graph, so they are recounted from the raw adjacencies here.
inline CouplingStats coupling_stats(const BpspInstance& inst) {
  std::vector<Coupling> raw;
  raw.reserve(inst.length());
  for (std::size_t k = 0; k + 1 < inst.length(); ++k) {
    Car a = inst.car_at(k);
    Car b = inst.car_at(k + 1);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const int sign = ((inst.occurrence_at(k) + inst.occurrence_at(k + 1)) % 2 == 0) ? -1 : 1;
    raw.push_back({a, b, sign});
  }
  std::sort(raw.begin(), raw.end(),
            [](const Coupling& x, const Coupling& y) { return std::pair(x.i, x.j) < std::pair(y.i, y.j); });
  CouplingStats stats;
  for (std::size_t k = 0; k < raw.size();) {
    std::int32_t J = 0;
    std::size_t e = k;
    for (; e < raw.size() && raw[e].i == raw[k].i && raw[e].j == raw[k].j; ++e) J += raw[e].J;
    ++stats.histogram[J];
    if (J != 0) ++stats.nonzero_couplings;
    k = e;
  }
  const auto g = to_ising(inst);
  stats.nodes = static_cast<std::uint64_t>(g.n());
  for (Qubit q = 0; q < g.n(); ++q) {
    const auto d = static_cast<std::int32_t>(g.degree(q));
    stats.degree_sum += static_cast<std::uint64_t>(d);
    stats.max_degree = std::max(stats.max_degree, d);
  }
  return stats;
}

inline CouplingStats coupling_stats(std::span<const BpspInstance> instances) {
  CouplingStats total;
  for (const auto& inst : instances) total.merge(coupling_stats(inst));
  return total;
}

/// Qubits to spin-flip so that every coupling of a +-1 tree (or forest)
/// becomes +1. Per component the smaller of the two valid flip sets is
/// chosen; on a tie the set leaving the component's smallest qubit unflipped
/// wins. Returned sorted.
inline std::vector<Qubit> tree_gauge(const CouplingGraph& g) {
  for (const auto& c : g.couplings()) {
    if (c.J != 1 && c.J != -1) {
      throw Error(ErrorKind::NonUnitCoupling, "coupling (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                                                   ") has J=" + std::to_string(c.J));
    }
  }
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<int> flipped(n, -1);
  std::vector<Qubit> parent(n, -1);
  for (Qubit root = 0; root < g.n(); ++root) {
    if (flipped[static_cast<std::size_t>(root)] != -1) continue;
    flipped[static_cast<std::size_t>(root)] = 0;
    std::vector<Qubit> component;
    std::queue<Qubit> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const Qubit u = frontier.front();
      frontier.pop();
      component.push_back(u);
      for (const auto& nb : g.neighbors(u)) {
        if (nb.q == parent[static_cast<std::size_t>(u)]) continue;
        if (flipped[static_cast<std::size_t>(nb.q)] != -1) {
          throw Error(ErrorKind::NotATree, "cycle through qubits " + std::to_string(u) + " and " + std::to_string(nb.q));
        }
        parent[static_cast<std::size_t>(nb.q)] = u;
        flipped[static_cast<std::size_t>(nb.q)] = flipped[static_cast<std::size_t>(u)] ^ (nb.J == -1 ? 1 : 0);
        frontier.push(nb.q);
      }
    }
    const auto ones = static_cast<std::size_t>(
        std::count_if(component.begin(), component.end(), [&](Qubit q) { return flipped[static_cast<std::size_t>(q)] == 1; }));
    if (2 * ones > component.size()) {
      for (Qubit q : component) flipped[static_cast<std::size_t>(q)] ^= 1;
    }
  }
  std::vector<Qubit> result;
  for (std::size_t q = 0; q < n; ++q) {
    if (flipped[q] == 1) result.push_back(static_cast<Qubit>(q));
  }
  return result;
}

/// Negates every coupling with exactly one endpoint in `flips`.
inline CouplingGraph apply_spin_flips(const CouplingGraph& g, std::span<const Qubit> flips) {
  std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
  for (Qubit q : flips) in[static_cast<std::size_t>(q)] = 1;
  std::vector<Coupling> out(g.couplings().begin(), g.couplings().end());
  for (auto& c : out) {
    if (in[static_cast<std::size_t>(c.i)] != in[static_cast<std::size_t>(c.j)]) c.J = -c.J;
  }
  return CouplingGraph(g.n(), std::move(out), g.constant());
}

}  // namespace bpsp
