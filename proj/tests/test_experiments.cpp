#include <gtest/gtest.h>

#include "bpsp/experiments.hpp"

using namespace bpsp;
using namespace bpsp::experiments;

TEST(Experiments, Names) {
  EXPECT_EQ(names().size(), 7U);
  EXPECT_NE(std::find(names().begin(), names().end(), "fig6"), names().end());
  EXPECT_THROW(run("nope"), Error);
}

TEST(Experiments, SeededInstancesAreIndexStable) {
  const auto all = seeded_instances(12, 5, 33);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], seeded_instance(12, 33, i));
  EXPECT_NE(seeded_instance(12, 33, 0), seeded_instance(12, 34, 0));
}

TEST(Experiments, FittedSlope) {
  EXPECT_NEAR(fitted_slope({1, 2, 3}, {2, 4, 6}), 2.0, 1e-12);
  EXPECT_NEAR(fitted_slope({1, 2, 3}, {1, 0, -1}), -1.0, 1e-12);
}

TEST(Experiments, SmallRunsAreDeterministic) {
  Config cfg;
  cfg.n = 8;
  cfg.count = 3;
  for (const char* name : {"table1-p1", "coupling-stats", "heuristic-asymptotics", "fig2"}) {
    const auto a = run(name, cfg);
    const auto b = run(name, cfg);
    EXPECT_EQ(a.csv, b.csv) << name;
    EXPECT_FALSE(a.checks.empty()) << name;
  }
}

TEST(Experiments, SummaryShape) {
  Config cfg;
  cfg.n = 200;
  cfg.count = 2;
  const auto r = run("coupling-stats", cfg);
  const auto s = r.summary();
  EXPECT_EQ(s["experiment"], "coupling-stats");
  EXPECT_TRUE(s.contains("headline"));
  ASSERT_TRUE(s["checks"].is_array());
  for (const auto& c : s["checks"]) {
    EXPECT_TRUE(c.contains("lower"));
    EXPECT_TRUE(c.contains("upper"));
    EXPECT_TRUE(c.contains("pass"));
  }
  EXPECT_EQ(s["pass"].get<bool>(), r.pass());
}

TEST(Experiments, Fig3Small) {
  Config cfg;
  cfg.n = 5;
  cfg.count = 5;
  const auto r = run("fig3", cfg);
  EXPECT_NE(r.csv.find('\n'), std::string::npos);
}

TEST(Experiments, Fig6Small) {
  Config cfg;
  cfg.n = 14;
  const auto r = run("fig6", cfg);
  EXPECT_TRUE(r.pass()) << r.summary().dump(2);
}
