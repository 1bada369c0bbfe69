#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "bpsp/error.hpp"
#include "bpsp/ising.hpp"
#include "bpsp/qaoa.hpp"
#include "bpsp/statevector.hpp"

namespace bpsp::ion {

/// R(theta, phi) = [[cos(theta/2), -i e^{-i phi} sin(theta/2)],
///                  [-i e^{i phi} sin(theta/2), cos(theta/2)]].
struct RGate {
  Qubit qubit = 0;
  double theta = 0.0;
  double phi = 0.0;
};

/// exp(-i angle/2 X_a X_b).
struct RxxGate {
  Qubit a = 0;
  Qubit b = 0;
  double angle = 0.0;
};

/// exp(-i theta/2 Z). Virtual on trapped-ion hardware (a frame update).
struct RzGate {
  Qubit qubit = 0;
  double theta = 0.0;
};

using NativeGate = std::variant<RGate, RxxGate, RzGate>;

struct NativeCircuit {
  std::int32_t n = 0;
  std::vector<NativeGate> gates;

  /// Gates run strictly one after another, so depth is the gate count.
  std::size_t depth() const noexcept { return gates.size(); }
};

struct GateCounts {
  std::size_t depth = 0;
  std::size_t singles = 0;
  std::size_t doubles = 0;
  std::size_t virtual_z = 0;  // subset of singles

  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

inline GateCounts depth_and_counts(const NativeCircuit& circuit) {
  GateCounts counts;
  counts.depth = circuit.depth();
  for (const auto& gate : circuit.gates) {
    if (std::holds_alternative<RxxGate>(gate)) {
      ++counts.doubles;
    } else {
      ++counts.singles;
      if (std::holds_alternative<RzGate>(gate)) ++counts.virtual_z;
    }
  }
  return counts;
}

/// Hadamard-conjugated QAOA circuit from |0>^n: an RXX layer per level with
/// virtual RZ(2 beta_l) layers in between, closed by R_Y(pi/2) = R(pi/2, pi/2)
/// and R_X(2 beta_p - pi) = R(2 beta_p - pi, 0) on every qubit. The phase
/// layer exp(-i s gamma J ZZ) (s from the convention) becomes RXX(2 s gamma J).
inline NativeCircuit compile(const CouplingGraph& g, const QaoaParams& params,
                             PhaseConvention convention = kCalibratedConvention) {
  NativeCircuit circuit;
  circuit.n = g.n();
  if (params.p() == 0) return circuit;
  const double scale = phase_scale(convention);
  const auto levels = params.angles();
  for (std::size_t l = 0; l < levels.size(); ++l) {
    if (l > 0) {
      for (Qubit q = 0; q < g.n(); ++q) circuit.gates.emplace_back(RzGate{q, 2.0 * levels[l - 1].beta});
    }
    for (const auto& c : g.couplings()) {
      circuit.gates.emplace_back(RxxGate{c.i, c.j, 2.0 * scale * levels[l].gamma * static_cast<double>(c.J)});
    }
  }
  const double final_beta = levels.back().beta;
  for (Qubit q = 0; q < g.n(); ++q) circuit.gates.emplace_back(RGate{q, std::numbers::pi / 2.0, std::numbers::pi / 2.0});
  for (Qubit q = 0; q < g.n(); ++q) circuit.gates.emplace_back(RGate{q, 2.0 * final_beta - std::numbers::pi, 0.0});
  return circuit;
}

inline Statevector simulate_native(const NativeCircuit& circuit, std::int32_t cap_qubits = kDefaultStatevectorCap) {
  if (circuit.n > cap_qubits) {
    throw Error(ErrorKind::TooLarge, "native simulation limited to " + std::to_string(cap_qubits) + " qubits");
  }
  const auto n = static_cast<std::size_t>(circuit.n);
  Statevector state;
  state.qubit_ids.resize(n);
  for (std::size_t q = 0; q < n; ++q) state.qubit_ids[q] = static_cast<Qubit>(q);
  state.amplitudes.assign(std::size_t{1} << n, Amplitude(0.0, 0.0));
  state.amplitudes[0] = 1.0;

  auto check = [&](Qubit q) {
    if (q < 0 || q >= circuit.n) throw Error(ErrorKind::InvalidArgument, "gate qubit out of range");
    return static_cast<std::size_t>(q);
  };
  for (const auto& gate : circuit.gates) {
    if (const auto* r = std::get_if<RGate>(&gate)) {
      const double c = std::cos(r->theta / 2.0);
      const double s = std::sin(r->theta / 2.0);
      const Amplitude m01 = Amplitude(0.0, -1.0) * std::polar(1.0, -r->phi) * s;
      const Amplitude m10 = Amplitude(0.0, -1.0) * std::polar(1.0, r->phi) * s;
      kernels::apply_single(state.amplitudes, check(r->qubit), c, m01, m10, c);
    } else if (const auto* xx = std::get_if<RxxGate>(&gate)) {
      kernels::apply_rxx(state.amplitudes, check(xx->a), check(xx->b), xx->angle);
    } else if (const auto* z = std::get_if<RzGate>(&gate)) {
      const Amplitude lo = std::polar(1.0, -z->theta / 2.0);
      const Amplitude hi = std::polar(1.0, z->theta / 2.0);
      kernels::apply_single(state.amplitudes, check(z->qubit), lo, 0.0, 0.0, hi);
    }
  }
  return state;
}

/// |<a|b>|, insensitive to global phase.
inline double overlap(const Statevector& a, const Statevector& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) throw Error(ErrorKind::InvalidArgument, "state sizes differ");
  Amplitude acc = 0.0;
  for (std::size_t k = 0; k < a.amplitudes.size(); ++k) acc += std::conj(a.amplitudes[k]) * b.amplitudes[k];
  return std::abs(acc);
}

}  // namespace bpsp::ion
