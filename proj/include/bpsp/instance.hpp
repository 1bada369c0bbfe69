#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bpsp/error.hpp"

namespace bpsp {

using Car = std::int32_t;
using Color = std::uint8_t;

/// A binary paint shop instance: a sequence of length 2n in which every car
/// 0..n-1 appears exactly twice. Only constructible through validate() and
/// the generators below, so a live object always satisfies the invariants.
class BpspInstance {
 public:
  std::int32_t n() const noexcept { return n_; }
  std::span<const Car> sequence() const noexcept { return sequence_; }
  std::size_t length() const noexcept { return sequence_.size(); }

  Car car_at(std::size_t pos) const { return sequence_[pos]; }
  /// 0 for the first occurrence of the car at `pos`, 1 for the second.
  int occurrence_at(std::size_t pos) const { return occurrence_[pos]; }
  std::size_t first_position(Car c) const { return first_[static_cast<std::size_t>(c)]; }
  std::size_t second_position(Car c) const { return second_[static_cast<std::size_t>(c)]; }

  friend bool operator==(const BpspInstance& a, const BpspInstance& b) {
    return a.sequence_ == b.sequence_;
  }

  friend BpspInstance validate(std::vector<Car> sequence);

 private:
  BpspInstance() = default;

  std::int32_t n_ = 0;
  std::vector<Car> sequence_;
  std::vector<std::uint8_t> occurrence_;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> second_;
};

/// Checks multiplicity first, then the identifier range, so [0,1,1] reports
/// WrongMultiplicity rather than BadIdentifier.
inline BpspInstance validate(std::vector<Car> sequence) {
  if (sequence.empty()) {
    throw Error(ErrorKind::WrongMultiplicity, "empty sequence");
  }
  const auto [lo, hi] = std::minmax_element(sequence.begin(), sequence.end());
  if (*lo < 0) {
    throw Error(ErrorKind::BadIdentifier, "negative car identifier " + std::to_string(*lo));
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(*hi) + 1, 0);
  for (Car c : sequence) ++counts[static_cast<std::size_t>(c)];
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] != 0 && counts[c] != 2) {
      throw Error(ErrorKind::WrongMultiplicity,
                  "car " + std::to_string(c) + " appears " + std::to_string(counts[c]) + " times");
    }
  }
  const auto n = static_cast<std::int32_t>(sequence.size() / 2);
  if (*hi >= n) {
    throw Error(ErrorKind::BadIdentifier,
                "car identifier " + std::to_string(*hi) + " outside 0.." + std::to_string(n - 1));
  }

  BpspInstance inst;
  inst.n_ = n;
  inst.occurrence_.resize(sequence.size());
  inst.first_.assign(static_cast<std::size_t>(n), std::numeric_limits<std::size_t>::max());
  inst.second_.assign(static_cast<std::size_t>(n), std::numeric_limits<std::size_t>::max());
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const auto c = static_cast<std::size_t>(sequence[k]);
    if (inst.first_[c] == std::numeric_limits<std::size_t>::max()) {
      inst.first_[c] = k;
      inst.occurrence_[k] = 0;
    } else {
      inst.second_[c] = k;
      inst.occurrence_[k] = 1;
    }
  }
  inst.sequence_ = std::move(sequence);
  return inst;
}

/// Uniform over distinct arrangements of {0,0,1,1,...,n-1,n-1}.
template <class Rng>
BpspInstance random_instance(std::int32_t n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  std::vector<Car> seq(2 * static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < seq.size(); ++k) seq[k] = static_cast<Car>(k / 2);
  std::shuffle(seq.begin(), seq.end(), rng);
  return validate(std::move(seq));
}

/// (w_1..w_n, w_n..w_1): one color change suffices, yet QAOA struggles.
inline BpspInstance hard_instance(std::int32_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  std::vector<Car> seq;
  seq.reserve(2 * static_cast<std::size_t>(n));
  for (Car c = 0; c < n; ++c) seq.push_back(c);
  for (Car c = n - 1; c >= 0; --c) seq.push_back(c);
  return validate(std::move(seq));
}

/// (w_1,w_1,w_2,w_2,...,w_n,w_n).
inline BpspInstance easy_instance(std::int32_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  std::vector<Car> seq;
  seq.reserve(2 * static_cast<std::size_t>(n));
  for (Car c = 0; c < n; ++c) {
    seq.push_back(c);
    seq.push_back(c);
  }
  return validate(std::move(seq));
}

/// First color per car; the second occurrence is always the other color.
struct Coloring {
  std::vector<Color> first_color;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

inline Coloring flip(Coloring c) {
  for (auto& v : c.first_color) v ^= 1;
  return c;
}

/// Per-position colors implied by a first-color assignment.
inline std::vector<Color> expand(const BpspInstance& inst, const Coloring& coloring) {
  if (coloring.first_color.size() != static_cast<std::size_t>(inst.n())) {
    throw Error(ErrorKind::InvalidArgument, "coloring length does not match instance");
  }
  std::vector<Color> colors(inst.length());
  for (std::size_t k = 0; k < inst.length(); ++k) {
    colors[k] = static_cast<Color>(coloring.first_color[static_cast<std::size_t>(inst.car_at(k))] ^
                                   inst.occurrence_at(k));
  }
  return colors;
}

/// Number of color changes between adjacent positions.
inline std::int64_t color_changes(const BpspInstance& inst, const Coloring& coloring) {
  const auto colors = expand(inst, coloring);
  std::int64_t changes = 0;
  for (std::size_t k = 0; k + 1 < colors.size(); ++k) changes += colors[k] != colors[k + 1];
  return changes;
}

struct OracleResult {
  std::int64_t opt_changes = 0;
  std::uint64_t degeneracy = 0;
  Coloring witness;
};

inline constexpr std::int32_t kDefaultOracleCap = 24;

/// Exact minimum by Gray-code enumeration over the first colors of every car
/// except w_1, which is pinned to 0 (global flip doubles the degeneracy).
inline OracleResult brute_force_opt(const BpspInstance& inst, std::int32_t cap = kDefaultOracleCap) {
  const std::int32_t n = inst.n();
  if (n > cap) {
    throw Error(ErrorKind::TooLarge,
                "brute force oracle limited to n <= " + std::to_string(cap) + ", got " + std::to_string(n));
  }
  const Car pinned = inst.car_at(0);
  std::vector<Car> free_cars;
  free_cars.reserve(static_cast<std::size_t>(n));
  for (Car c = 0; c < n; ++c) {
    if (c != pinned) free_cars.push_back(c);
  }

  Coloring current{std::vector<Color>(static_cast<std::size_t>(n), 0)};
  auto colors = expand(inst, current);
  const std::size_t len = colors.size();
  std::int64_t changes = 0;
  for (std::size_t k = 0; k + 1 < len; ++k) changes += colors[k] != colors[k + 1];

  OracleResult best{changes, 1, current};

  // Change in the number of color changes when both positions of car c flip.
  auto delta_for_flip = [&](Car c) {
    const std::size_t a = inst.first_position(c);
    const std::size_t b = inst.second_position(c);
    std::int64_t before = 0;
    std::int64_t after = 0;
    auto visit = [&](std::size_t left) {
      const bool lf = left == a || left == b;
      const bool rf = left + 1 == a || left + 1 == b;
      const Color l = colors[left];
      const Color r = colors[left + 1];
      before += l != r;
      after += static_cast<Color>(l ^ lf) != static_cast<Color>(r ^ rf);
    };
    // Adjacencies touching a or b, each counted once.
    std::size_t lefts[4];
    int count = 0;
    for (std::size_t pos : {a, b}) {
      if (pos > 0) lefts[count++] = pos - 1;
      if (pos + 1 < len) lefts[count++] = pos;
    }
    std::sort(lefts, lefts + count);
    const auto end = std::unique(lefts, lefts + count);
    for (auto* it = lefts; it != end; ++it) visit(*it);
    return after - before;
  };

  const std::uint64_t total = std::uint64_t{1} << free_cars.size();
  for (std::uint64_t k = 1; k < total; ++k) {
    const Car c = free_cars[static_cast<std::size_t>(std::countr_zero(k))];
    changes += delta_for_flip(c);
    colors[inst.first_position(c)] ^= 1;
    colors[inst.second_position(c)] ^= 1;
    current.first_color[static_cast<std::size_t>(c)] ^= 1;
    if (changes < best.opt_changes) {
      best.opt_changes = changes;
      best.degeneracy = 1;
      best.witness = current;
    } else if (changes == best.opt_changes) {
      ++best.degeneracy;
    }
  }
  best.degeneracy *= 2;
  return best;
}

/// Mean color changes under uniformly random first colors: a self-adjacency
/// always changes, any other adjacency changes with probability 1/2.
inline double random_guess_expectation(const BpspInstance& inst) {
  std::int64_t self = 0;
  for (std::size_t k = 0; k + 1 < inst.length(); ++k) self += inst.car_at(k) == inst.car_at(k + 1);
  const auto distinct = static_cast<std::int64_t>(inst.length()) - 1 - self;
  return static_cast<double>(distinct) / 2.0 + static_cast<double>(self);
}

}  // namespace bpsp
