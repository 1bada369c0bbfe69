#pragma once

#include <cstdint>
#include <vector>

#include "bpsp/instance.hpp"
#include "bpsp/ising.hpp"

namespace bpsp {

/// Walks the sequence keeping the current color. A first occurrence takes the
/// current color; a second occurrence takes the opposite of its first color,
/// which changes the current color only when it has to.
inline Coloring greedy(const BpspInstance& inst, Color initial_color = 0) {
  Coloring result{std::vector<Color>(static_cast<std::size_t>(inst.n()), 0)};
  Color current = initial_color & 1;
  for (std::size_t k = 0; k < inst.length(); ++k) {
    const auto car = static_cast<std::size_t>(inst.car_at(k));
    if (inst.occurrence_at(k) == 0) {
      result.first_color[car] = current;
    } else {
      current = static_cast<Color>(result.first_color[car] ^ 1);
    }
  }
  return result;
}

/// Every car starts with color 0.
inline Coloring red_first(const BpspInstance& inst) {
  return Coloring{std::vector<Color>(static_cast<std::size_t>(inst.n()), 0)};
}

/// Repeatedly deletes the car owning the last element of the reduced
/// sequence, then re-inserts cars in reverse order. Each re-inserted car gets
/// the first color that minimizes changes on the adjacencies it creates in
/// the current reduced sequence (ties go to color 0). The reduced sequences
/// are a doubly linked list over positions; deletions are undone in reverse.
inline Coloring recursive_greedy(const BpspInstance& inst) {
  const std::size_t len = inst.length();
  const auto n = static_cast<std::size_t>(inst.n());
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<std::size_t> prev(len), next(len);
  for (std::size_t k = 0; k < len; ++k) {
    prev[k] = k == 0 ? kNone : k - 1;
    next[k] = k + 1 == len ? kNone : k + 1;
  }
  std::size_t head = 0;
  std::size_t tail = len - 1;

  auto unlink = [&](std::size_t k) {
    if (prev[k] != kNone) next[prev[k]] = next[k]; else head = next[k];
    if (next[k] != kNone) prev[next[k]] = prev[k]; else tail = prev[k];
  };
  auto relink = [&](std::size_t k) {
    if (prev[k] != kNone) next[prev[k]] = k; else head = k;
    if (next[k] != kNone) prev[next[k]] = k; else tail = k;
  };

  std::vector<Car> deleted;
  deleted.reserve(n);
  for (std::size_t remaining = n; remaining > 1; --remaining) {
    const Car c = inst.car_at(tail);
    // The tail is the car's second occurrence; unlink it before the first.
    unlink(inst.second_position(c));
    unlink(inst.first_position(c));
    deleted.push_back(c);
  }
  (void)head;

  Coloring result{std::vector<Color>(n, 0)};
  std::vector<Color> pos_color(len, 0);
  {
    const Car base = inst.car_at(tail);
    result.first_color[static_cast<std::size_t>(base)] = 0;
    pos_color[inst.first_position(base)] = 0;
    pos_color[inst.second_position(base)] = 1;
  }

  for (auto it = deleted.rbegin(); it != deleted.rend(); ++it) {
    const Car c = *it;
    const std::size_t a = inst.first_position(c);
    const std::size_t b = inst.second_position(c);
    relink(a);
    relink(b);
    // Cost of first color x over the adjacencies touching a or b.
    auto cost = [&](Color x) {
      auto color_of = [&](std::size_t pos) -> Color {
        if (pos == a) return x;
        if (pos == b) return static_cast<Color>(x ^ 1);
        return pos_color[pos];
      };
      int changes = 0;
      for (std::size_t pos : {a, b}) {
        if (prev[pos] != kNone && prev[pos] != a) changes += color_of(prev[pos]) != color_of(pos);
        if (next[pos] != kNone) changes += color_of(pos) != color_of(next[pos]);
      }
      return changes;
    };
    const Color choice = cost(1) < cost(0) ? Color{1} : Color{0};
    result.first_color[static_cast<std::size_t>(c)] = choice;
    pos_color[a] = choice;
    pos_color[b] = static_cast<Color>(choice ^ 1);
  }
  return result;
}

/// The tree of n-1 couplings greedy solves exactly: each first occurrence at
/// position k >= 1 is coupled to the car at k-1, ferromagnetically when that
/// position is also a first occurrence.
inline CouplingGraph greedy_subsystem(const BpspInstance& inst) {
  if (inst.n() < 2) throw Error(ErrorKind::InvalidArgument, "greedy subsystem needs n >= 2");
  std::vector<Coupling> couplings;
  couplings.reserve(static_cast<std::size_t>(inst.n()) - 1);
  for (std::size_t k = 1; k < inst.length(); ++k) {
    if (inst.occurrence_at(k) != 0) continue;
    const int J = inst.occurrence_at(k - 1) == 0 ? -1 : 1;
    couplings.push_back({inst.car_at(k), inst.car_at(k - 1), J});
  }
  return CouplingGraph(inst.n(), std::move(couplings), 0);
}

}  // namespace bpsp
