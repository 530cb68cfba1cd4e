// Acceptance gate: one test per shipped criterion, each printing a
// single [ACCEPTANCE] line. Tolerances are pinned here and nowhere
// else.
#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "muxdesigner/design.hpp"
#include "muxdesigner/hsps.hpp"
#include "muxdesigner/mux.hpp"
#include "muxdesigner/oracle.hpp"
#include "muxdesigner/photonics.hpp"
#include "muxdesigner/rng.hpp"

namespace muxdesigner {
namespace {

constexpr DetectorModel kTd = DetectorModel::kThreshold;
constexpr DetectorModel kNrd = DetectorModel::kNumberResolving;

class AcceptanceTest : public ::testing::Test {
 protected:
  void label(int number, std::string name) {
    number_ = number;
    name_ = std::move(name);
  }

  void TearDown() override {
    std::printf("[ACCEPTANCE] criterion %d (%s): %s\n", number_, name_.c_str(),
                HasFailure() ? "FAIL" : "PASS");
    std::fflush(stdout);
  }

 private:
  int number_ = 0;
  std::string name_ = "unlabeled";
};

ArchitectureSpec headline_tree(int n_sources) {
  return ArchitectureSpec{Architecture::kLogTree, n_sources,
                          Transmission{0.98}, Transmission{1.0},
                          Transmission{1.0}, Transmission{1.0}};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

TEST_F(AcceptanceTest, Criterion1HeadlineOperatingPoint) {
  label(1, "64 source log tree headline");
  constexpr double kQExpected = 0.8744;
  constexpr double kQTolerance = 0.001;
  constexpr double kMultiExpected = 0.0017;
  constexpr double kMultiTolerance = 0.0002;

  const PairSourceSpec source{p_pair_to_xi2(0.1), Transmission{0.99},
                              Transmission{0.99}};
  const MuxMetrics metrics =
      mux_metrics_balanced(source, kNrd, headline_tree(64));
  EXPECT_NEAR(metrics.q_exact, kQExpected, kQTolerance);
  EXPECT_NEAR(metrics.p_multi_mux, kMultiExpected, kMultiTolerance);
}

TEST_F(AcceptanceTest, Criterion2StrongPumpOperatingPoint) {
  label(2, "16 source log tree at p_pair 0.25");
  constexpr double kQExpected = 0.8965;
  constexpr double kQTolerance = 0.001;
  constexpr double kMultiExpected = 0.0083;
  constexpr double kMultiTolerance = 0.0005;

  const PairSourceSpec source{p_pair_to_xi2(0.25), Transmission{0.99},
                              Transmission{0.99}};
  const MuxMetrics metrics =
      mux_metrics_balanced(source, kNrd, headline_tree(16));
  EXPECT_NEAR(metrics.q_exact, kQExpected, kQTolerance);
  EXPECT_NEAR(metrics.p_multi_mux, kMultiExpected, kMultiTolerance);
}

TEST_F(AcceptanceTest, Criterion3SeventeenSourceArray) {
  label(3, "17 lossless sources break 0.99");
  constexpr double kExpected = 0.99248;
  constexpr double kTolerance = 1e-5;

  const double p = mux_trigger_prob(0.25, 17);
  EXPECT_GT(p, 0.99);
  EXPECT_NEAR(p, kExpected, kTolerance);
}

TEST_F(AcceptanceTest, Criterion4OptimalCountAnchors) {
  label(4, "optimal source count anchors");
  constexpr double kQFloor = 0.9;
  struct Anchor {
    double p_trig;
    double loss_db;
    int n_expected;
  };
  const Anchor anchors[] = {
      {0.01, 0.05, 512},
      {0.1, 0.07, 64},
      {0.25, 0.1, 16},
  };
  for (const Anchor& anchor : anchors) {
    const DesignSolution solution = optimal_source_count(
        Architecture::kLogTree, anchor.loss_db, anchor.p_trig);
    EXPECT_EQ(solution.n_opt, anchor.n_expected)
        << "p_trig " << anchor.p_trig << ", loss " << anchor.loss_db;
    EXPECT_GT(solution.q_at_opt, kQFloor)
        << "p_trig " << anchor.p_trig << ", loss " << anchor.loss_db;
  }
}

TEST_F(AcceptanceTest, Criterion5TolerableLossBudget) {
  label(5, "14 photon switch loss budget");
  constexpr double kLossExpectedDb = 1.0;
  constexpr double kLossToleranceDb = 0.15;
  constexpr double kMultiCeiling = 0.10;

  const PairSourceSpec source{p_pair_to_xi2(0.1), Transmission{0.9},
                              Transmission{0.9}};
  const MPhotonTarget target{14, 1e8, 100.0};
  const DesignSolution solution = max_tolerable_switch_loss(
      Architecture::kLogTree, target, source, kNrd);
  EXPECT_TRUE(solution.feasible);
  EXPECT_NEAR(solution.loss_db, kLossExpectedDb, kLossToleranceDb);
  EXPECT_LT(solution.p_multi_at_opt, kMultiCeiling);
}

TEST_F(AcceptanceTest, Criterion6MultiPhotonProseAnchors) {
  label(6, "multi photon prose anchors");
  constexpr double kRelativeTolerance = 0.30;

  const PairSourceSpec weak{SqueezingParam{0.1}, Transmission{0.9},
                            Transmission{1.0}};
  const PairSourceSpec strong{SqueezingParam{0.5}, Transmission{0.9},
                              Transmission{1.0}};
  const double nrd_weak = heralded_multi_prob(weak, kNrd);
  const double td_weak = heralded_multi_prob(weak, kTd);
  const double nrd_strong = heralded_multi_prob(strong, kNrd);
  EXPECT_NEAR(nrd_weak, 0.02, 0.02 * kRelativeTolerance);
  EXPECT_NEAR(td_weak, 0.1, 0.1 * kRelativeTolerance);
  EXPECT_NEAR(nrd_strong, 0.1, 0.1 * kRelativeTolerance);
}

TEST_F(AcceptanceTest, Criterion7OracleEquivalence) {
  label(7, "oracle equivalence");
  constexpr double kGridTolerance = 1e-10;
  constexpr double kSigmaLimit = 5.0;
  constexpr std::int64_t kTrials = 10000000;
  constexpr double kBudgetSeconds = 120.0;
  const auto start = std::chrono::steady_clock::now();

  // Closed forms against the truncated lattice sum: six squeezing
  // strengths by five idler and five signal transmissions, both
  // detector models.
  const double squeezings[] = {0.01, 0.05, 0.1, 0.25, 0.5, 0.6};
  const double idler_etas[] = {0.1, 0.5, 0.9, 0.99, 1.0};
  const double signal_etas[] = {0.0, 0.5, 0.9, 0.99, 1.0};
  for (const double xi2 : squeezings) {
    for (const double eta_i : idler_etas) {
      for (const double eta_s : signal_etas) {
        const PairSourceSpec source{SqueezingParam{xi2}, Transmission{eta_i},
                                    Transmission{eta_s}};
        for (const DetectorModel detector : {kTd, kNrd}) {
          const oracle::OracleResult exact = oracle::exact_truncated_hsps(
              source, detector, oracle::oracle_truncation(source.xi2));
          const HeraldedMetrics closed = heralded_metrics(source, detector);
          ASSERT_NEAR(closed.p_trig, exact.p_trig, kGridTolerance);
          ASSERT_NEAR(closed.p_single, exact.p_single, kGridTolerance);
          ASSERT_NEAR(closed.p_multi, exact.p_multi, kGridTolerance);
        }
      }
    }
  }

  // Ten seeded Monte Carlo scenarios, five bare sources and five
  // multiplexed arrays including an eight cell chain.
  struct HspsScenario {
    double xi2;
    double eta_i;
    double eta_s;
    DetectorModel detector;
  };
  const HspsScenario bare[] = {
      {0.1, 0.9, 0.9, kTd},   {0.1, 0.9, 0.9, kNrd}, {0.5, 0.9, 1.0, kNrd},
      {0.25, 0.99, 0.5, kTd}, {0.6, 0.5, 0.99, kNrd},
  };
  std::uint64_t stream = 0;
  const std::uint64_t seed = 20260822;
  for (const HspsScenario& scenario : bare) {
    const PairSourceSpec source{SqueezingParam{scenario.xi2},
                                Transmission{scenario.eta_i},
                                Transmission{scenario.eta_s}};
    const oracle::OracleResult mc = oracle::mc_hsps(
        source, scenario.detector, kTrials, RngSeed{seed, stream++});
    const HeraldedMetrics closed = heralded_metrics(source, scenario.detector);
    const oracle::OracleErrors& se = *mc.std_error;
    EXPECT_LT(std::abs(mc.p_trig - closed.p_trig), kSigmaLimit * se.p_trig);
    EXPECT_LT(std::abs(mc.p_single - closed.p_single),
              kSigmaLimit * se.p_single);
    EXPECT_LT(std::abs(mc.p_multi - closed.p_multi), kSigmaLimit * se.p_multi);
  }

  struct MuxScenario {
    PairSourceSpec source;
    DetectorModel detector;
    ArchitectureSpec spec;
    oracle::MuxRoutingPolicy policy;
  };
  const MuxScenario arrays[] = {
      {{p_pair_to_xi2(0.1), Transmission{0.99}, Transmission{0.99}},
       kNrd,
       headline_tree(64),
       oracle::MuxRoutingPolicy::kFirstTriggered},
      {{SqueezingParam{0.5}, Transmission{0.99}, Transmission{0.99}},
       kNrd,
       headline_tree(16),
       oracle::MuxRoutingPolicy::kFirstTriggered},
      {{SqueezingParam{0.25}, Transmission{0.9}, Transmission{0.9}},
       kTd,
       ArchitectureSpec{Architecture::kGmz, 8, Transmission{1.0},
                        Transmission{0.99}, Transmission{0.98},
                        Transmission{1.0}},
       oracle::MuxRoutingPolicy::kFirstTriggered},
      {{SqueezingParam{0.5}, Transmission{0.99}, Transmission{0.99}},
       kNrd,
       ArchitectureSpec{Architecture::kChain, 8, Transmission{0.98},
                        Transmission{1.0}, Transmission{1.0},
                        Transmission{1.0}},
       oracle::MuxRoutingPolicy::kFirstTriggered},
      {{SqueezingParam{0.1}, Transmission{0.8}, Transmission{0.7}},
       kTd,
       ArchitectureSpec{Architecture::kLogTree, 32, Transmission{0.9},
                        Transmission{1.0}, Transmission{1.0},
                        Transmission{1.0}},
       oracle::MuxRoutingPolicy::kRandomTriggered},
  };
  for (const MuxScenario& scenario : arrays) {
    const oracle::OracleResult mc =
        oracle::mc_mux(scenario.source, scenario.detector, scenario.spec,
                       kTrials, RngSeed{seed, stream++}, scenario.policy);
    const MuxMetrics closed =
        scenario.spec.arch == Architecture::kChain
            ? chain_metrics_exact(scenario.source, scenario.detector,
                                  scenario.spec.eta_switch,
                                  scenario.spec.eta_delay,
                                  scenario.spec.n_sources)
            : mux_metrics_balanced(scenario.source, scenario.detector,
                                   scenario.spec);
    const oracle::OracleErrors& se = *mc.std_error;
    EXPECT_LT(std::abs(mc.p_trig - closed.p_trig_mux),
              kSigmaLimit * se.p_trig);
    EXPECT_LT(std::abs(mc.p_single - closed.q_exact / closed.p_trig_mux),
              kSigmaLimit * se.p_single);
    EXPECT_LT(std::abs(mc.p_multi - closed.p_multi_mux),
              kSigmaLimit * se.p_multi);
  }

  EXPECT_LT(seconds_since(start), kBudgetSeconds);
}

TEST_F(AcceptanceTest, Criterion8StructuralInvariants) {
  label(8, "structural invariants");
  constexpr double kNormalizationTolerance = 1e-10;
  constexpr double kBudgetSeconds = 60.0;
  const auto start = std::chrono::steady_clock::now();

  // Conditional statistics normalize.
  for (const double xi2 : {0.01, 0.05, 0.1, 0.25, 0.5, 0.6}) {
    for (const double eta_i : {0.3, 0.9, 1.0}) {
      for (const double eta_s : {0.0, 0.6, 1.0}) {
        const PairSourceSpec source{SqueezingParam{xi2}, Transmission{eta_i},
                                    Transmission{eta_s}};
        for (const DetectorModel detector : {kTd, kNrd}) {
          const HeraldedMetrics m = heralded_metrics(source, detector);
          ASSERT_NEAR(m.p_single + m.p_multi + m.p_vacuum, 1.0,
                      kNormalizationTolerance);
        }
      }
    }
  }

  // Bound ordering across the architectures.
  for (const double xi2 : {0.1, 0.5}) {
    const PairSourceSpec source{SqueezingParam{xi2}, Transmission{0.95},
                                Transmission{0.9}};
    for (int n : {2, 8, 64}) {
      const MuxMetrics tree = mux_metrics_balanced(
          source, kNrd,
          ArchitectureSpec{Architecture::kLogTree, n, Transmission{0.97},
                           Transmission{1.0}, Transmission{1.0},
                           Transmission{0.99}});
      ASSERT_LE(tree.q_lower, tree.q_exact);
      ASSERT_LE(tree.q_exact, tree.p_trig_mux);
      const MuxMetrics chain = chain_metrics_exact(
          source, kNrd, Transmission{0.97}, Transmission{0.99}, n);
      ASSERT_LE(chain.q_lower, chain.q_exact);
      ASSERT_LE(chain.q_exact, chain.p_trig_mux);
    }
  }

  // Two thin channels compose into one with the product transmission.
  const PhotonNumberDist pairs =
      pair_number_distribution(SqueezingParam{0.4}, 60);
  const PhotonNumberDist two_step =
      loss_channel(loss_channel(pairs, Transmission{0.8}), Transmission{0.5});
  const PhotonNumberDist one_step = loss_channel(pairs, Transmission{0.4});
  for (std::size_t k = 0; k <= one_step.n_max(); ++k) {
    ASSERT_NEAR(two_step.prob(k), one_step.prob(k), 1e-12);
  }

  // Balanced optimum curves fall as per stage loss grows.
  std::vector<double> loss_axis;
  for (int i = 0; i <= 60; ++i) loss_axis.push_back(i * 0.05);
  for (const Architecture arch :
       {Architecture::kLogTree, Architecture::kGmz}) {
    for (const double p_trig : {0.01, 0.1, 0.25}) {
      double prev_q = 2.0;
      int prev_n = kDefaultSourceCap + 1;
      for (const double loss_db : loss_axis) {
        const DesignSolution solution =
            optimal_source_count(arch, loss_db, p_trig);
        ASSERT_LE(solution.q_at_opt, prev_q);
        ASSERT_LE(solution.n_opt, prev_n);
        prev_q = solution.q_at_opt;
        prev_n = solution.n_opt;
      }
    }
  }

  // Chain reach and yield fall as switch loss grows.
  for (const double p_trig : {0.1, 0.25}) {
    double prev_q = 2.0;
    int prev_cells = 1 << 20;
    for (const double loss_db : loss_axis) {
      const Transmission eta = db_to_transmission(loss_db);
      const int cells = chain_length_for_fraction(0.9, p_trig, eta);
      const double q =
          chain_q_lower(1.0, p_trig, eta, Transmission{1.0}, cells);
      ASSERT_LE(cells, prev_cells);
      ASSERT_LE(q, prev_q);
      prev_q = q;
      prev_cells = cells;
    }
  }

  // The tolerable loss budget tightens as the photon count grows.
  const PairSourceSpec budget_source{p_pair_to_xi2(0.1), Transmission{0.9},
                                     Transmission{0.9}};
  double prev_loss = kLossCapDb + 1.0;
  for (int m = 1; m <= 20; ++m) {
    const DesignSolution solution = max_tolerable_switch_loss(
        Architecture::kLogTree, MPhotonTarget{m, 1e8, 100.0}, budget_source,
        kNrd);
    ASSERT_TRUE(solution.feasible);
    ASSERT_LE(solution.loss_db, prev_loss);
    prev_loss = solution.loss_db;
  }

  EXPECT_LT(seconds_since(start), kBudgetSeconds);
}

}  // namespace
}  // namespace muxdesigner
