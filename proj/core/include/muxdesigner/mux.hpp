#pragma once

#include <cstdint>

#include "muxdesigner/hsps.hpp"
#include "muxdesigner/photonics.hpp"

namespace muxdesigner {

// Switching network shape used to route one of N heralded sources to a
// single output.
enum class Architecture {
  kLogTree,
  kGmz,
  kChain,
};

// An N source multiplexed single photon source. eta_switch applies per
// 2x2 switch (log-tree and chain), eta_coupler and eta_modulator apply
// to the generalized Mach-Zehnder network, eta_delay to the storage
// line every routed photon traverses once.
struct ArchitectureSpec {
  ArchitectureSpec(Architecture arch_in, int n_sources_in,
                   Transmission eta_switch_in, Transmission eta_coupler_in,
                   Transmission eta_modulator_in, Transmission eta_delay_in);

  Architecture arch;
  int n_sources;
  Transmission eta_switch;
  Transmission eta_coupler;
  Transmission eta_modulator;
  Transmission eta_delay;
};

// Per clock cycle figures of merit of a multiplexed source.
// q_exact is the probability of emitting a triggered single photon,
// q_lower the product lower bound, p_trig_mux the probability that at
// least one source heralds, p_multi_mux the conditional multi photon
// probability given a herald.
struct MuxMetrics {
  double p_trig_mux = 0.0;
  double q_exact = 0.0;
  double q_lower = 0.0;
  double p_multi_mux = 0.0;
};

// Component counts and circuit depth of the switching network.
// 64 bit because GMZ coupler counts grow quadratically in n.
struct ResourceCounts {
  std::int64_t modulators_total = 0;
  std::int64_t couplers_total = 0;
  std::int64_t modulator_depth = 0;
  std::int64_t coupler_depth = 0;
};

// Requirement to generate m simultaneous photons from m multiplexed
// sources clocked at rep_rate_hz, at a rate of at least target_rate_hz.
struct MPhotonTarget {
  MPhotonTarget(int m_in, double rep_rate_hz_in, double target_rate_hz_in);

  int m;
  double rep_rate_hz;
  double target_rate_hz;
};

// Smallest d with 2^d >= n, computed in integer arithmetic.
int ceil_log2(int n);

// Probability that at least one of n independent sources heralds.
double mux_trigger_prob(double p_trig, int n);

// Balanced transmission the network applies to any routed photon.
// Log-tree: eta_switch^ceil_log2(N) * eta_delay. GMZ:
// eta_delay * eta_modulator * eta_coupler^(2(N-1)). The chain is
// position dependent and has no balanced equivalent.
Transmission network_transmission(const ArchitectureSpec& spec);

// Metrics of a balanced architecture (log-tree or GMZ): the heralded
// source statistics with the signal transmission multiplied by the
// network transmission, times the array trigger probability.
MuxMetrics mux_metrics_balanced(const PairSourceSpec& source,
                                DetectorModel detector,
                                const ArchitectureSpec& spec);

// Closed form lower bound on the chain emission probability for n
// cells, from p_single and p_trig of one source.
double chain_q_lower(double p_single, double p_trig, Transmission eta_switch,
                     Transmission eta_delay, int n);

// Infinite chain limit of chain_q_lower.
double chain_q_max(double p_single, double p_trig, Transmission eta_switch,
                   Transmission eta_delay);

// Number of cells needed to reach fraction f of the infinite chain
// limit. f must lie in [0, 1); the result is at least 1.
int chain_length_for_fraction(double f, double p_trig,
                              Transmission eta_switch);

// Exact chain statistics for n cells. Cell j = 0 sits nearest the
// output and wins ties; the photon routed from cell j crosses j + 1
// switches, so its signal transmission is
// eta_s * eta_delay * eta_switch^(j + 1).
MuxMetrics chain_metrics_exact(const PairSourceSpec& source,
                               DetectorModel detector,
                               Transmission eta_switch,
                               Transmission eta_delay, int n);

// Network component counts. GMZ requires n a power of two. The chain
// row counts its n switches as single modulator depth because only the
// final switch lies on the winning photon's path in the best case.
ResourceCounts resource_counts(Architecture arch, int n);

// Rate of m simultaneous photons: rep_rate_hz * q_mux^m.
double m_photon_rate(const MPhotonTarget& target, double q_mux);

// Probability that any of the m heralded outputs carries more than one
// photon: 1 - (1 - p_multi_mux)^m.
double m_photon_multi(double p_multi_mux, int m);

}  // namespace muxdesigner
