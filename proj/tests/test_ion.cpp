#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bpsp/ion.hpp"

using namespace bpsp;
using namespace bpsp::ion;

TEST(Compile, SingleCoupling) {
  const CouplingGraph g(2, {{0, 1, -1}}, 0);
  const auto circuit = compile(g, tree_params(1));
  const auto counts = depth_and_counts(circuit);
  EXPECT_EQ(counts.doubles, 1U);
  EXPECT_EQ(counts.singles, 4U);
  EXPECT_EQ(counts.depth, 5U);
}

TEST(Compile, PathDepth) {
  for (std::int32_t n = 2; n <= 10; ++n) {
    const auto counts = depth_and_counts(compile(to_ising(hard_instance(n)), tree_params(1)));
    EXPECT_EQ(counts.depth, static_cast<std::size_t>(3 * n - 1));
  }
}

TEST(Compile, CountsForRandomGraphs) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto g = to_ising(random_instance(1 + static_cast<std::int32_t>(rng() % 30), rng));
    const auto n = static_cast<std::size_t>(g.n());
    const auto m = g.num_couplings();
    const auto counts = depth_and_counts(compile(g, tree_params(1)));
    EXPECT_EQ(counts.depth, m + 2 * n);
    EXPECT_EQ(counts.singles, 2 * n);
    EXPECT_EQ(counts.doubles, m);
    for (std::size_t p = 2; p <= 5; ++p) {
      const auto c = depth_and_counts(compile(g, tree_params(p)));
      EXPECT_EQ(c.singles, n * (p + 1));
      EXPECT_EQ(c.doubles, p * m);
    }
  }
}

TEST(Compile, EmptyCircuitCounts) {
  const auto counts = depth_and_counts(NativeCircuit{3, {}});
  EXPECT_EQ(counts.depth, 0U);
  EXPECT_EQ(counts.singles, 0U);
  EXPECT_EQ(counts.doubles, 0U);
}

TEST(Compile, ZeroAnglesPrepareUniform) {
  const auto g = to_ising(validate({0, 1, 2, 0, 2, 1}));
  const auto native = simulate_native(compile(g, QaoaParams({{0.0, 0.0}})));
  Statevector uniform{{0, 1, 2}, kernels::uniform(3)};
  EXPECT_NEAR(overlap(native, uniform), 1.0, 1e-12);
}

TEST(Compile, FidelityWithReference) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto g = to_ising(random_instance(2 + static_cast<std::int32_t>(rng() % 11), rng));
    for (std::size_t p = 1; p <= 3; ++p) {
      const double f = overlap(simulate_native(compile(g, tree_params(p))), simulate_state(g, tree_params(p)));
      EXPECT_GE(f, 1.0 - 1e-9);
    }
  }
}

TEST(SimulateNative, EmptyCircuit) {
  const auto s = simulate_native(NativeCircuit{3, {}});
  EXPECT_NEAR(std::abs(s.amplitudes[0]), 1.0, 1e-15);
}

TEST(SimulateNative, PiRotation) {
  const auto s = simulate_native(NativeCircuit{1, {RGate{0, std::numbers::pi, 0.0}}});
  EXPECT_NEAR(std::abs(s.amplitudes[1]), 1.0, 1e-15);
}

TEST(SimulateNative, Errors) {
  EXPECT_THROW(simulate_native(NativeCircuit{30, {}}), Error);
  EXPECT_THROW(simulate_native(NativeCircuit{1, {RzGate{3, 0.1}}}), Error);
}
