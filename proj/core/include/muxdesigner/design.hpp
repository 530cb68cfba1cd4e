#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "muxdesigner/hsps.hpp"
#include "muxdesigner/mux.hpp"
#include "muxdesigner/photonics.hpp"

namespace muxdesigner {

// Fixed transmissions of the components that are not being solved for.
// Defaults are lossless.
struct AuxTransmissions {
  Transmission eta_delay{1.0};
  Transmission eta_modulator{1.0};
};

// Result of a design search. n_opt and q_at_opt are always set.
// loss_db, p_multi_at_opt and achieved_rate_hz are filled by the loss
// solver. saturated marks a lossless search that hit n_cap; at_loss_cap
// marks a loss solution clipped at the bracket upper end; feasible is
// false when no loss meets the target even with lossless switches.
struct DesignSolution {
  int n_opt = 1;
  double q_at_opt = 0.0;
  double loss_db = 0.0;
  double p_multi_at_opt = 0.0;
  double achieved_rate_hz = 0.0;
  ResourceCounts resources;
  bool saturated = false;
  bool at_loss_cap = false;
  bool feasible = true;
};

// Upper ends of the design searches.
inline constexpr int kDefaultSourceCap = 1 << 20;
inline constexpr double kLossCapDb = 3.0;
inline constexpr double kLossToleranceDb = 1e-3;

// The closed form bound q* of one architecture at source count n:
// trigger probability of the array times the network transmission at n,
// times p_single (the chain uses its own cascade bound). This is the
// objective optimal_source_count maximizes.
double q_star_bound(Architecture arch, int n, double loss_db, double p_trig,
                    const AuxTransmissions& aux = {}, double p_single = 1.0);

// Maximizes the architecture's closed form bound q* over the admissible
// source counts up to n_cap: powers of two for log-tree and GMZ, every
// integer for the chain. loss_db is the per switch (log-tree, chain) or
// per coupler (GMZ) loss; aux carries the remaining components.
// p_single scales the bound and defaults to the lossless source.
// Ties break toward smaller n. A lossless search returns n_cap with
// saturated set.
DesignSolution optimal_source_count(Architecture arch, double loss_db,
                                    double p_trig,
                                    const AuxTransmissions& aux = {},
                                    int n_cap = kDefaultSourceCap,
                                    double p_single = 1.0);

// Maximizes q_exact of the full source model over the admissible source
// counts, same search space as optimal_source_count. The spec's
// n_sources field is ignored; every other component of spec applies.
DesignSolution optimal_source_count_exact(const PairSourceSpec& source,
                                          DetectorModel detector,
                                          const ArchitectureSpec& spec,
                                          int n_cap = kDefaultSourceCap);

// Largest switch loss, in dB within [0, kLossCapDb], at which target.m
// sources each re-optimized over their source count still reach
// target.target_rate_hz. Bisection to kLossToleranceDb. The result
// carries the inner optimum n, q_exact, the m photon contamination and
// the achieved rate at the returned loss. Infeasible targets come back
// with feasible = false and the lossless achieved rate.
DesignSolution max_tolerable_switch_loss(Architecture arch,
                                         const MPhotonTarget& target,
                                         const PairSourceSpec& source,
                                         DetectorModel detector,
                                         const AuxTransmissions& aux = {},
                                         int n_cap = kDefaultSourceCap);

// One named sweep dimension.
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

// One evaluated grid point: the coordinate values in axis order plus
// the evaluated metrics and design solution.
struct SweepRecord {
  std::vector<double> inputs;
  MuxMetrics metrics;
  DesignSolution solution;
};

// Evaluates fn over the full cartesian grid in lexicographic axis
// order, last axis fastest. Rows come back in that order regardless of
// how evaluations are scheduled. Throws std::domain_error on an empty
// grid.
std::vector<SweepRecord> sweep(
    const std::vector<SweepAxis>& axes,
    const std::function<SweepRecord(const std::vector<double>&)>& fn);

}  // namespace muxdesigner
