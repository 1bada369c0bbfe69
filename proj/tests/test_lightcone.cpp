#include <random>

#include <gtest/gtest.h>

#include "bpsp/lightcone.hpp"

using namespace bpsp;

TEST(Support, IsolatedEdge) {
  const CouplingGraph g(4, {{0, 1, 1}, {2, 3, -1}}, 0);
  const auto task = lightcone_support(g, {0, 1}, 1);
  EXPECT_EQ(task.support, (std::vector<Qubit>{0, 1}));
  EXPECT_EQ(task.included_edges.size(), 1U);
}

TEST(Support, PathInteriorEdge) {
  const CouplingGraph g(6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}}, 0);
  const auto task = lightcone_support(g, {2, 3}, 1);
  EXPECT_EQ(task.support.size(), 4U);
  EXPECT_EQ(task.support[0], 2);
  EXPECT_EQ(task.support[1], 3);
  EXPECT_EQ(task.interior_size(), 2U);
  EXPECT_EQ(lightcone_support(g, {2, 3}, 2).support.size(), 6U);
}

TEST(Support, MissingEdge) {
  const CouplingGraph g(3, {{0, 1, 1}}, 0);
  EXPECT_THROW(lightcone_support(g, {1, 2}, 1), Error);
}

TEST(Support, BoundOnBpspGraphs) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const auto g = to_ising(random_instance(300, rng));
    for (std::size_t p = 1; p <= 2; ++p) {
      for (const auto& c : g.couplings()) {
        EXPECT_LE(lightcone_support(g, {c.i, c.j}, p).support.size(), max_support_degree4(p));
      }
    }
  }
  EXPECT_EQ(max_support_degree4(1), 8U);
  EXPECT_EQ(max_support_degree4(2), 26U);
}

TEST(Lightcone, SupportTooLarge) {
  std::mt19937_64 rng(7);
  const auto g = to_ising(random_instance(200, rng));
  LightconeOptions opts;
  opts.cap_qubits = 3;
  try {
    lightcone_expectation(g, tree_params(2), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SupportTooLarge);
  }
}

TEST(Lightcone, LevelMismatch) {
  const CouplingGraph g(2, {{0, 1, 1}}, 0);
  EXPECT_THROW(lightcone_zz(lightcone_support(g, {0, 1}, 1), tree_params(2)), Error);
}

TEST(Lightcone, MatchesStatevector) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const std::int32_t n = 2 + static_cast<std::int32_t>(rng() % 11);
    const auto g = to_ising(random_instance(n, rng));
    for (std::size_t p = 1; p <= 2; ++p) {
      const auto lc = lightcone_expectation(g, tree_params(p));
      const auto sv = expectation(g, tree_params(p));
      EXPECT_NEAR(lc.mean_color_changes, sv.mean_color_changes, 1e-9) << "n=" << n << " p=" << p;
    }
  }
}

TEST(Lightcone, BackendsAgree) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const std::int32_t n = 4 + static_cast<std::int32_t>(rng() % 6);
    const auto g = to_ising(random_instance(n, rng));
    for (std::size_t p = 1; p <= 3; ++p) {
      const auto params = tree_params(p);
      for (const auto& c : g.couplings()) {
        const auto task = lightcone_support(g, {c.i, c.j}, p);
        LightconeOptions dense, reduced;
        dense.backend = LightconeBackend::Statevector;
        reduced.backend = LightconeBackend::Reduced;
        EXPECT_NEAR(lightcone_zz(task, params, dense), lightcone_zz(task, params, reduced), 1e-10);
      }
    }
  }
}

TEST(Lightcone, DepthOneLargeInstancesSmallSample) {
  std::mt19937_64 rng(10);
  double total = 0;
  constexpr int kCount = 3;
  for (int t = 0; t < kCount; ++t) {
    total += lightcone_expectation(to_ising(random_instance(1000, rng)), tree_params(1)).mean_color_changes / 1000.0;
  }
  EXPECT_NEAR(total / kCount, 0.675, 0.015);
}
