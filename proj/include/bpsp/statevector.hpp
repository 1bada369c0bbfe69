#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "bpsp/error.hpp"
#include "bpsp/ising.hpp"

namespace bpsp {

using Amplitude = std::complex<double>;

/// Dense amplitudes over an ordered qubit subset. Bit k of a basis index is
/// the state of qubit_ids[k].
struct Statevector {
  std::vector<Qubit> qubit_ids;
  std::vector<Amplitude> amplitudes;

  std::size_t num_qubits() const noexcept { return qubit_ids.size(); }

  double norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes) total += std::norm(a);
    return total;
  }
};

namespace kernels {

/// |+>^m.
inline std::vector<Amplitude> uniform(std::size_t num_qubits) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  return std::vector<Amplitude>(dim, Amplitude(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

/// Applies a 2x2 matrix [[m00, m01], [m10, m11]] to one bit of the index.
inline void apply_single(std::span<Amplitude> amps, std::size_t bit, Amplitude m00, Amplitude m01,
                         Amplitude m10, Amplitude m11) {
  const std::size_t stride = std::size_t{1} << bit;
  const std::size_t dim = amps.size();
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t k = block; k < block + stride; ++k) {
      const Amplitude a0 = amps[k];
      const Amplitude a1 = amps[k + stride];
      amps[k] = m00 * a0 + m01 * a1;
      amps[k + stride] = m10 * a0 + m11 * a1;
    }
  }
}

/// exp(-i angle X) on one bit.
inline void apply_rx_half(std::span<Amplitude> amps, std::size_t bit, double angle) {
  const Amplitude c(std::cos(angle), 0.0);
  const Amplitude s(0.0, -std::sin(angle));
  apply_single(amps, bit, c, s, s, c);
}

/// exp(-i angle/2 X0 X1) on two bits.
inline void apply_rxx(std::span<Amplitude> amps, std::size_t bit0, std::size_t bit1, double angle) {
  const double c = std::cos(angle / 2.0);
  const Amplitude s(0.0, -std::sin(angle / 2.0));
  const std::size_t mask = (std::size_t{1} << bit0) | (std::size_t{1} << bit1);
  const std::size_t low = std::size_t{1} << bit0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    // Visit each orbit {k, k^mask} once, from the member with bit0 clear.
    if (k & low) continue;
    const std::size_t partner = k ^ mask;
    const Amplitude a = amps[k];
    const Amplitude b = amps[partner];
    amps[k] = c * a + s * b;
    amps[partner] = s * a + c * b;
  }
}

struct LocalCoupling {
  std::size_t bit_a;
  std::size_t bit_b;
  double weight;
};

/// Diagonal sum weight * z_a z_b over local indices, with z = +1 for a clear bit.
inline std::vector<double> diagonal_energy(std::size_t num_qubits, std::span<const LocalCoupling> pairs) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<double> diag(dim, 0.0);
  for (const auto& p : pairs) {
    for (std::size_t k = 0; k < dim; ++k) {
      const bool differ = ((k >> p.bit_a) ^ (k >> p.bit_b)) & 1U;
      diag[k] += differ ? -p.weight : p.weight;
    }
  }
  return diag;
}

/// amps[k] *= exp(-i scale diag[k]).
inline void apply_phase(std::span<Amplitude> amps, std::span<const double> diag, double scale) {
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double phi = -scale * diag[k];
    amps[k] *= Amplitude(std::cos(phi), std::sin(phi));
  }
}

}  // namespace kernels
}  // namespace bpsp
