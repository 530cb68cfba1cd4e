#include "muxdesigner/design.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "muxdesigner/hsps.hpp"
#include "muxdesigner/mux.hpp"
#include "muxdesigner/photonics.hpp"

namespace muxdesigner {
namespace {

constexpr DetectorModel kNrd = DetectorModel::kNumberResolving;

TEST(QStarBoundTest, LogTreeSixteenSourceAnchor) {
  // (1 - 0.75^16) * (10^-0.01)^4
  EXPECT_NEAR(q_star_bound(Architecture::kLogTree, 16, 0.1, 0.25, {}, 1.0),
              0.902870123386479, 1e-14);
}

TEST(QStarBoundTest, ScalesLinearlyWithSingleProb) {
  const double full = q_star_bound(Architecture::kLogTree, 8, 0.2, 0.3, {}, 1.0);
  const double half = q_star_bound(Architecture::kLogTree, 8, 0.2, 0.3, {}, 0.5);
  EXPECT_NEAR(half, 0.5 * full, 1e-15);
}

TEST(QStarBoundTest, AuxLossesMultiplyIn) {
  AuxTransmissions aux;
  aux.eta_delay = Transmission{0.9};
  aux.eta_modulator = Transmission{0.8};
  const double tree_plain =
      q_star_bound(Architecture::kLogTree, 4, 0.5, 0.25, {}, 1.0);
  const double tree_delay =
      q_star_bound(Architecture::kLogTree, 4, 0.5, 0.25, aux, 1.0);
  // the tree has no modulator stage, only the delay applies
  EXPECT_NEAR(tree_delay, 0.9 * tree_plain, 1e-15);
  const double gmz_plain =
      q_star_bound(Architecture::kGmz, 4, 0.5, 0.25, {}, 1.0);
  const double gmz_aux = q_star_bound(Architecture::kGmz, 4, 0.5, 0.25, aux, 1.0);
  EXPECT_NEAR(gmz_aux, 0.9 * 0.8 * gmz_plain, 1e-15);
}

TEST(OptimalSourceCountTest, PublishedLogTreeAnchors) {
  const DesignSolution first =
      optimal_source_count(Architecture::kLogTree, 0.05, 0.01, {}, 1 << 20);
  EXPECT_EQ(first.n_opt, 512);
  EXPECT_NEAR(first.q_at_opt, 0.896320408245242, 1e-13);

  const DesignSolution second =
      optimal_source_count(Architecture::kLogTree, 0.07, 0.1, {}, 1 << 20);
  EXPECT_EQ(second.n_opt, 64);
  EXPECT_NEAR(second.q_at_opt, 0.906750193016759, 1e-13);
  EXPECT_GT(second.q_at_opt, 0.9);

  const DesignSolution third =
      optimal_source_count(Architecture::kLogTree, 0.1, 0.25, {}, 1 << 20);
  EXPECT_EQ(third.n_opt, 16);
  EXPECT_NEAR(third.q_at_opt, 0.902870123386479, 1e-13);
  EXPECT_GT(third.q_at_opt, 0.9);
}

TEST(OptimalSourceCountTest, CandidateScanIsNeverBeaten) {
  for (Architecture arch : {Architecture::kLogTree, Architecture::kGmz}) {
    const DesignSolution best =
        optimal_source_count(arch, 0.08, 0.15, {}, 1 << 12);
    for (int n = 1; n <= 1 << 12; n *= 2) {
      EXPECT_GE(best.q_at_opt + 1e-15,
                q_star_bound(arch, n, 0.08, 0.15, {}, 1.0))
          << "arch " << static_cast<int>(arch) << " beaten at n = " << n;
    }
    EXPECT_FALSE(best.saturated);
  }
}

TEST(OptimalSourceCountTest, ChainScansAllIntegers) {
  const DesignSolution chain =
      optimal_source_count(Architecture::kChain, 0.1, 0.25, {}, 1 << 20);
  EXPECT_EQ(chain.n_opt, 121);
  EXPECT_NEAR(chain.q_at_opt, 0.914769156404767, 1e-13);
  // the plateau value equals the infinite chain limit
  EXPECT_NEAR(chain.q_at_opt,
              chain_q_max(1.0, 0.25, db_to_transmission(0.1),
                          Transmission{1.0}),
              1e-15);
}

TEST(OptimalSourceCountTest, LosslessSaturatesAtTheCap) {
  const DesignSolution tree =
      optimal_source_count(Architecture::kLogTree, 0.0, 0.05, {}, 1000);
  EXPECT_TRUE(tree.saturated);
  EXPECT_EQ(tree.n_opt, 1000);
  // GMZ stays a power of two even when saturated
  const DesignSolution gmz =
      optimal_source_count(Architecture::kGmz, 0.0, 0.05, {}, 1000);
  EXPECT_TRUE(gmz.saturated);
  EXPECT_EQ(gmz.n_opt, 512);
  const DesignSolution chain =
      optimal_source_count(Architecture::kChain, 0.0, 0.05, {}, 1000);
  EXPECT_TRUE(chain.saturated);
  EXPECT_EQ(chain.n_opt, 1000);
}

TEST(OptimalSourceCountTest, TinySourceCapRestrictsTheScan) {
  const DesignSolution tree =
      optimal_source_count(Architecture::kLogTree, 0.1, 0.25, {}, 5);
  EXPECT_LE(tree.n_opt, 5);
  EXPECT_EQ(tree.n_opt, 4);
}

TEST(OptimalSourceCountTest, ResourceReportMatchesCount) {
  const DesignSolution tree =
      optimal_source_count(Architecture::kLogTree, 0.1, 0.25, {}, 1 << 20);
  const ResourceCounts expected =
      resource_counts(Architecture::kLogTree, tree.n_opt);
  EXPECT_EQ(tree.resources.modulators_total, expected.modulators_total);
  EXPECT_EQ(tree.resources.coupler_depth, expected.coupler_depth);
}

TEST(OptimalSourceCountExactTest, MatchesDirectScan) {
  const PairSourceSpec source{SqueezingParam{0.5}, Transmission{0.99},
                              Transmission{0.99}};
  const ArchitectureSpec seed{Architecture::kLogTree, 1, Transmission{0.98},
                              Transmission{1.0}, Transmission{1.0},
                              Transmission{1.0}};
  const DesignSolution best =
      optimal_source_count_exact(source, kNrd, seed, 1 << 20);
  EXPECT_EQ(best.n_opt, 16);
  EXPECT_NEAR(best.q_at_opt, 0.896530044576174, 1e-13);
  EXPECT_NEAR(best.p_multi_at_opt, 0.00832831920671429, 1e-14);

  for (int n : {1, 4, 16, 64, 1024}) {
    const ArchitectureSpec candidate{Architecture::kLogTree, n,
                                     Transmission{0.98}, Transmission{1.0},
                                     Transmission{1.0}, Transmission{1.0}};
    const MuxMetrics metrics = mux_metrics_balanced(source, kNrd, candidate);
    EXPECT_GE(best.q_at_opt + 1e-15, metrics.q_exact) << "beaten at n = " << n;
  }
}

TEST(MaxTolerableLossTest, FourteenPhotonBudget) {
  const PairSourceSpec source{p_pair_to_xi2(0.1), Transmission{0.9},
                              Transmission{0.9}};
  const MPhotonTarget target{14, 1e8, 100.0};
  const DesignSolution solution = max_tolerable_switch_loss(
      Architecture::kLogTree, target, source, kNrd, {}, 1 << 20);
  EXPECT_TRUE(solution.feasible);
  EXPECT_FALSE(solution.at_loss_cap);
  EXPECT_NEAR(solution.loss_db, 0.7294921875, 1e-12);
  EXPECT_EQ(solution.n_opt, 32);
  EXPECT_NEAR(solution.q_at_opt, 0.372760536242296, 1e-12);
  EXPECT_NEAR(solution.p_multi_at_opt, 0.0473031504876425, 1e-12);
  EXPECT_NEAR(solution.achieved_rate_hz, 100.004372601559, 1e-8);
  EXPECT_GE(solution.achieved_rate_hz, target.target_rate_hz);
}

TEST(MaxTolerableLossTest, BisectionResolvesWithinTolerance) {
  // 12 halvings of the 3 dB bracket land within 1e-3 dB
  EXPECT_LE(3.0 / 4096.0, kLossToleranceDb);
}

TEST(MaxTolerableLossTest, ImpossibleTargetReportsInfeasible) {
  const PairSourceSpec weak{p_pair_to_xi2(0.1), Transmission{0.5},
                            Transmission{0.5}};
  const MPhotonTarget target{20, 1e8, 100.0};
  const DesignSolution solution = max_tolerable_switch_loss(
      Architecture::kLogTree, target, weak, kNrd, {}, 1 << 20);
  EXPECT_FALSE(solution.feasible);
  EXPECT_DOUBLE_EQ(solution.loss_db, 0.0);
  EXPECT_NEAR(solution.achieved_rate_hz, 90.7598948240003, 1e-8);
  EXPECT_LT(solution.achieved_rate_hz, target.target_rate_hz);
}

TEST(MaxTolerableLossTest, EasyTargetStopsAtTheLossCap) {
  const PairSourceSpec strong{p_pair_to_xi2(0.1), Transmission{0.99},
                              Transmission{0.99}};
  const MPhotonTarget target{2, 1e8, 100.0};
  const DesignSolution solution = max_tolerable_switch_loss(
      Architecture::kLogTree, target, strong, kNrd, {}, 1 << 20);
  EXPECT_TRUE(solution.feasible);
  EXPECT_TRUE(solution.at_loss_cap);
  EXPECT_DOUBLE_EQ(solution.loss_db, kLossCapDb);
}

TEST(SweepTest, DecodesAxesWithLastAxisFastest) {
  SweepAxis outer{"a", {1.0, 2.0}};
  SweepAxis inner{"b", {10.0, 20.0, 30.0}};
  const std::vector<SweepRecord> records =
      sweep({outer, inner}, [](const std::vector<double>& point) {
        SweepRecord record;
        record.inputs = point;
        record.metrics.q_exact = point[0] * 100.0 + point[1];
        return record;
      });
  ASSERT_EQ(records.size(), 6u);
  EXPECT_EQ(records[0].metrics.q_exact, 110.0);
  EXPECT_EQ(records[1].metrics.q_exact, 120.0);
  EXPECT_EQ(records[2].metrics.q_exact, 130.0);
  EXPECT_EQ(records[3].metrics.q_exact, 210.0);
  EXPECT_EQ(records[5].metrics.q_exact, 230.0);
}

TEST(SweepTest, RejectsEmptyGrids) {
  const auto noop = [](const std::vector<double>&) { return SweepRecord{}; };
  EXPECT_THROW(sweep({}, noop), std::domain_error);
  EXPECT_THROW(sweep({SweepAxis{"a", {}}}, noop), std::domain_error);
}

TEST(DesignValidationTest, RejectsBadArguments) {
  EXPECT_THROW(optimal_source_count(Architecture::kLogTree, -0.1, 0.2, {}, 64),
               std::domain_error);
  EXPECT_THROW(optimal_source_count(Architecture::kLogTree, 0.1, 1.5, {}, 64),
               std::domain_error);
  EXPECT_THROW(optimal_source_count(Architecture::kLogTree, 0.1, 0.2, {}, 0),
               std::domain_error);
  EXPECT_THROW(q_star_bound(Architecture::kLogTree, 0, 0.1, 0.2, {}, 1.0),
               std::domain_error);
}

}  // namespace
}  // namespace muxdesigner
