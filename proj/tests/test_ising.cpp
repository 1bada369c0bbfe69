#include <random>

#include <gtest/gtest.h>

#include "bpsp/heuristics.hpp"
#include "bpsp/ising.hpp"

using namespace bpsp;

TEST(ToIsing, Examples) {
  const auto a = to_ising(validate({0, 1, 0, 1}));
  ASSERT_EQ(a.num_couplings(), 1U);
  EXPECT_EQ(a.coupling(0, 1), -1);
  EXPECT_EQ(a.constant(), 0);

  const auto b = to_ising(validate({0, 1, 1, 0}));
  ASSERT_EQ(b.num_couplings(), 1U);
  EXPECT_EQ(b.coupling(1, 0), -2);
  EXPECT_EQ(b.constant(), 1);

  for (std::int32_t n = 2; n <= 8; ++n) {
    const auto h = to_ising(hard_instance(n));
    EXPECT_EQ(h.num_couplings(), static_cast<std::size_t>(n - 1));
    EXPECT_EQ(h.constant(), 1);
    for (Qubit q = 0; q + 1 < n; ++q) EXPECT_EQ(h.coupling(q, q + 1), -2);
  }

  for (std::int32_t n = 2; n <= 8; ++n) {
    const auto e = to_ising(easy_instance(n));
    EXPECT_EQ(e.constant(), n);
    for (const auto& c : e.couplings()) EXPECT_EQ(c.J, 1);
  }
}

TEST(CouplingGraph, MergesAndDropsZeros) {
  const CouplingGraph g(3, {{1, 0, 1}, {0, 1, -1}, {2, 1, 1}, {1, 2, 1}}, 0);
  ASSERT_EQ(g.num_couplings(), 1U);
  EXPECT_EQ(g.coupling(1, 2), 2);
  EXPECT_EQ(g.coupling(0, 1), 0);
  EXPECT_EQ(g.degree(0), 0U);
  EXPECT_EQ(g.degree(1), 1U);
}

TEST(Energy, IdentityOnExamples) {
  const auto inst = validate({0, 1, 0, 1});
  const auto g = to_ising(inst);
  for (std::uint64_t idx = 0; idx < 4; ++idx) {
    const auto s = spins_from_basis(idx, 2);
    const auto changes = color_changes(inst, spins_to_coloring(inst, s));
    EXPECT_DOUBLE_EQ(color_changes_from_energy(static_cast<double>(adjacency_energy(g, s)), 2),
                     static_cast<double>(changes));
    EXPECT_DOUBLE_EQ(hamiltonian_energy(g, s), adjacency_energy(g, s) / 2.0);
  }
}

TEST(Energy, WrongSpinCount) {
  const auto g = to_ising(validate({0, 1, 0, 1}));
  EXPECT_THROW(adjacency_energy(g, SpinConfig{{1}}), Error);
}

TEST(Spins, BasisConvention) {
  const auto s = spins_from_basis(0b01, 2);
  EXPECT_EQ(s.spins, (std::vector<Spin>{-1, 1}));
}

TEST(Spins, AllPlusIsRedFirst) {
  const auto inst = easy_instance(3);
  const auto c = spins_to_coloring(inst, SpinConfig{{1, 1, 1}});
  EXPECT_EQ(c, red_first(inst));
  EXPECT_EQ(color_changes(inst, c), 5);
}

TEST(Spins, RoundTrip) {
  std::mt19937_64 rng(4);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < 50; ++t) {
    const auto inst = random_instance(12, rng);
    Coloring c{std::vector<Color>(12)};
    for (auto& v : c.first_color) v = coin(rng) ? 1 : 0;
    EXPECT_EQ(spins_to_coloring(inst, coloring_to_spins(inst, c)), c);
  }
}

TEST(CouplingStats, EasyInstanceAllPlusOne) {
  const auto stats = coupling_stats(easy_instance(10));
  EXPECT_DOUBLE_EQ(stats.probability(1), 1.0);
  EXPECT_DOUBLE_EQ(stats.probability(-1), 0.0);
}

TEST(CouplingStats, MatchesGraph) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto inst = random_instance(200, rng);
    const auto g = to_ising(inst);
    const auto stats = coupling_stats(inst);
    EXPECT_EQ(stats.nonzero_couplings, g.num_couplings());
    std::uint64_t degree_sum = 0;
    for (Qubit q = 0; q < g.n(); ++q) degree_sum += g.degree(q);
    EXPECT_EQ(stats.degree_sum, degree_sum);
    for (std::int32_t J : {-2, -1, 1, 2}) {
      const auto count = std::count_if(g.couplings().begin(), g.couplings().end(),
                                       [&](const Coupling& c) { return c.J == J; });
      EXPECT_NEAR(stats.probability(J), static_cast<double>(count) / g.num_couplings(), 1e-12);
    }
  }
}

TEST(CouplingStats, LargeInstanceLimits) {
  std::mt19937_64 rng(31);
  CouplingStats total;
  for (int t = 0; t < 5; ++t) total.merge(coupling_stats(random_instance(100000, rng)));
  EXPECT_NEAR(total.probability(-1), 2.0 / 3.0, 0.01);
  EXPECT_NEAR(total.probability(1), 1.0 / 3.0, 0.01);
  EXPECT_LE(total.fraction_strong(), 0.01);
  EXPECT_GE(total.mean_degree(), 3.99);
}

TEST(TreeGauge, Paths) {
  EXPECT_TRUE(tree_gauge(CouplingGraph(3, {{0, 1, 1}, {1, 2, 1}}, 0)).empty());
  EXPECT_EQ(tree_gauge(CouplingGraph(3, {{0, 1, -1}, {1, 2, 1}}, 0)), (std::vector<Qubit>{0}));
  EXPECT_EQ(tree_gauge(CouplingGraph(3, {{0, 1, 1}, {1, 2, -1}}, 0)), (std::vector<Qubit>{2}));
  EXPECT_EQ(tree_gauge(CouplingGraph(4, {{0, 1, -1}, {2, 3, 1}}, 0)), (std::vector<Qubit>{1}));
}

TEST(TreeGauge, Errors) {
  try {
    tree_gauge(CouplingGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotATree);
  }
  try {
    tree_gauge(CouplingGraph(2, {{0, 1, -2}}, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUnitCoupling);
  }
}

TEST(TreeGauge, RandomTreesBecomeUniform) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    const std::int32_t n = 2 + static_cast<std::int32_t>(rng() % 13);
    std::vector<Coupling> edges;
    for (Qubit q = 1; q < n; ++q) {
      edges.push_back({static_cast<Qubit>(rng() % static_cast<std::uint64_t>(q)), q, (rng() & 1) ? 1 : -1});
    }
    const CouplingGraph g(n, edges, 0);
    const auto flips = tree_gauge(g);
    const auto gauged = apply_spin_flips(g, flips);
    EXPECT_LE(2 * flips.size(), static_cast<std::size_t>(n));
    for (const auto& c : gauged.couplings()) EXPECT_EQ(c.J, 1);
  }
}
