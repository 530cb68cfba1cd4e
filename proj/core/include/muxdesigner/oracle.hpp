#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "muxdesigner/hsps.hpp"
#include "muxdesigner/mux.hpp"
#include "muxdesigner/photonics.hpp"
#include "muxdesigner/rng.hpp"

namespace muxdesigner::oracle {

// Standard errors of the Monte Carlo estimates, one per estimated
// probability.
struct OracleErrors {
  double p_trig = 0.0;
  double p_single = 0.0;
  double p_multi = 0.0;
};

// Ground truth statistics from one oracle run. p_single, p_multi and
// fock are conditioned on a trigger. std_error and the event counts are
// present for Monte Carlo runs only; tail_bound is meaningful for the
// truncated summation only. source_wins[j] counts Monte Carlo trials
// whose output photon was routed from source j.
struct OracleResult {
  double p_trig = 0.0;
  double p_single = 0.0;
  double p_multi = 0.0;
  PhotonNumberDist fock;
  double tail_bound = 0.0;
  std::optional<OracleErrors> std_error;
  std::optional<std::int64_t> trials;
  std::optional<std::int64_t> trigger_events;
  std::vector<std::int64_t> source_wins;
};

// Which triggered source a balanced network routes to the output.
// Balanced loss makes the choice statistically irrelevant; both are
// implemented so that claim can be tested.
enum class MuxRoutingPolicy {
  kFirstTriggered,
  kRandomTriggered,
};

// Heralded source statistics by literal summation over the joint
// photon number lattice: pair number n, idler survivors p, signal
// survivors k, each up to n_max. Never evaluates the closed forms.
// Throws NeverTriggersError when the trigger probability is zero.
OracleResult exact_truncated_hsps(const PairSourceSpec& source,
                                  DetectorModel detector, int n_max);

// Truncation the oracle uses when none is given: the photon statistics
// default plus 10 extra levels.
int oracle_truncation(SqueezingParam xi2);

// Monte Carlo simulation of one heralded source: geometric pair
// number, independent per photon loss in each arm, detector rule.
// Bit identical for equal seeds regardless of thread count. A run with
// zero trigger events reports NaN conditionals with trigger_events = 0
// instead of throwing.
OracleResult mc_hsps(const PairSourceSpec& source, DetectorModel detector,
                     std::int64_t trials, RngSeed seed);

// Monte Carlo simulation of a full multiplexed source: all n sources
// fire each clock cycle, the architecture's routing rule picks the
// winner, and position dependent losses apply (balanced network
// transmission for log-tree and GMZ, eta_switch^(j+1) for chain cell
// j). Reports conditional output statistics plus per source win
// counts.
OracleResult mc_mux(const PairSourceSpec& source, DetectorModel detector,
                    const ArchitectureSpec& spec, std::int64_t trials,
                    RngSeed seed,
                    MuxRoutingPolicy policy = MuxRoutingPolicy::kFirstTriggered);

}  // namespace muxdesigner::oracle
