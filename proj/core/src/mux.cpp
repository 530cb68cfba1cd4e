#include "muxdesigner/mux.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace muxdesigner {

namespace {

bool is_power_of_two(int n) {
  return n >= 1 && std::has_single_bit(static_cast<unsigned>(n));
}

PairSourceSpec with_signal_scaled(const PairSourceSpec& source, double scale) {
  return PairSourceSpec(source.xi2,
                        source.eta_i,
                        Transmission(source.eta_s.value() * scale),
                        source.purity);
}

}  // namespace

ArchitectureSpec::ArchitectureSpec(Architecture arch_in, int n_sources_in,
                                   Transmission eta_switch_in,
                                   Transmission eta_coupler_in,
                                   Transmission eta_modulator_in,
                                   Transmission eta_delay_in)
    : arch(arch_in),
      n_sources(n_sources_in),
      eta_switch(eta_switch_in),
      eta_coupler(eta_coupler_in),
      eta_modulator(eta_modulator_in),
      eta_delay(eta_delay_in) {
  if (n_sources < 1) throw std::domain_error("n_sources must be at least 1");
  if (arch == Architecture::kGmz && !is_power_of_two(n_sources)) {
    throw std::domain_error(
        "the GMZ coupler construction requires a power of two source count");
  }
}

MPhotonTarget::MPhotonTarget(int m_in, double rep_rate_hz_in,
                             double target_rate_hz_in)
    : m(m_in), rep_rate_hz(rep_rate_hz_in), target_rate_hz(target_rate_hz_in) {
  if (m < 1) throw std::domain_error("photon count m must be at least 1");
  if (!(target_rate_hz > 0.0 && target_rate_hz <= rep_rate_hz)) {
    throw std::domain_error(
        "target rate must be positive and at most the repetition rate");
  }
}

int ceil_log2(int n) {
  if (n < 1) throw std::domain_error("ceil_log2 requires n >= 1");
  return std::bit_width(static_cast<unsigned>(n) - 1u);
}

double mux_trigger_prob(double p_trig, int n) {
  if (!(p_trig >= 0.0 && p_trig <= 1.0)) {
    throw std::domain_error("p_trig must lie in [0, 1]");
  }
  if (n < 1) throw std::domain_error("source count must be at least 1");
  if (p_trig == 1.0) return 1.0;
  return -std::expm1(static_cast<double>(n) * std::log1p(-p_trig));
}

Transmission network_transmission(const ArchitectureSpec& spec) {
  switch (spec.arch) {
    case Architecture::kLogTree: {
      const int depth = ceil_log2(spec.n_sources);
      return Transmission(std::pow(spec.eta_switch.value(), depth) *
                          spec.eta_delay.value());
    }
    case Architecture::kGmz: {
      const int couplers_crossed = 2 * (spec.n_sources - 1);
      return Transmission(spec.eta_delay.value() *
                          spec.eta_modulator.value() *
                          std::pow(spec.eta_coupler.value(), couplers_crossed));
    }
    case Architecture::kChain:
      break;
  }
  throw std::invalid_argument(
      "chain loss is position dependent; use chain_metrics_exact");
}

MuxMetrics mux_metrics_balanced(const PairSourceSpec& source,
                                DetectorModel detector,
                                const ArchitectureSpec& spec) {
  if (spec.arch == Architecture::kChain) {
    throw std::invalid_argument(
        "chain loss is position dependent; use chain_metrics_exact");
  }
  const double eta_net = network_transmission(spec).value();
  const PairSourceSpec through_network = with_signal_scaled(source, eta_net);
  const double p_trig = herald_trigger_prob(source, detector);
  MuxMetrics metrics;
  metrics.p_trig_mux = mux_trigger_prob(p_trig, spec.n_sources);
  metrics.q_exact =
      heralded_single_prob(through_network, detector) * metrics.p_trig_mux;
  metrics.q_lower =
      heralded_single_prob(source, detector) * metrics.p_trig_mux * eta_net;
  metrics.p_multi_mux = heralded_multi_prob(through_network, detector);
  return metrics;
}

double chain_q_lower(double p_single, double p_trig, Transmission eta_switch,
                     Transmission eta_delay, int n) {
  if (n < 1) throw std::domain_error("cell count must be at least 1");
  if (!(p_single >= 0.0 && p_single <= 1.0) ||
      !(p_trig >= 0.0 && p_trig <= 1.0)) {
    throw std::domain_error("probabilities must lie in [0, 1]");
  }
  const double eta = eta_switch.value();
  const double r = (1.0 - p_trig) * eta;
  const double geometric_sum =
      r == 1.0 ? static_cast<double>(n)
               : (1.0 - std::pow(r, static_cast<double>(n))) / (1.0 - r);
  return p_single * eta_delay.value() * p_trig * eta * geometric_sum;
}

double chain_q_max(double p_single, double p_trig, Transmission eta_switch,
                   Transmission eta_delay) {
  if (!(p_single >= 0.0 && p_single <= 1.0) ||
      !(p_trig >= 0.0 && p_trig <= 1.0)) {
    throw std::domain_error("probabilities must lie in [0, 1]");
  }
  if (p_trig == 0.0) return 0.0;
  const double eta = eta_switch.value();
  const double r = (1.0 - p_trig) * eta;
  return p_single * eta_delay.value() * p_trig * eta / (1.0 - r);
}

int chain_length_for_fraction(double f, double p_trig,
                              Transmission eta_switch) {
  if (!(f >= 0.0 && f < 1.0)) {
    throw std::domain_error("fraction must lie in [0, 1)");
  }
  if (!(p_trig >= 0.0 && p_trig <= 1.0)) {
    throw std::domain_error("p_trig must lie in [0, 1]");
  }
  const double r = (1.0 - p_trig) * eta_switch.value();
  if (r >= 1.0) {
    throw std::domain_error(
        "a lossless chain that never triggers has no finite length");
  }
  if (r == 0.0) return 1;
  const double cells = std::ceil(std::log1p(-f) / std::log(r));
  return std::max(1, static_cast<int>(cells));
}

MuxMetrics chain_metrics_exact(const PairSourceSpec& source,
                               DetectorModel detector,
                               Transmission eta_switch, Transmission eta_delay,
                               int n) {
  if (n < 1) throw std::domain_error("cell count must be at least 1");
  const double p_trig = herald_trigger_prob(source, detector);
  if (p_trig <= 0.0) {
    throw NeverTriggersError("no chain cell can ever trigger");
  }
  const double eta = eta_switch.value();
  MuxMetrics metrics;
  metrics.p_trig_mux = mux_trigger_prob(p_trig, n);
  // Cell j wins when cells 0..j-1 stay silent and j triggers; its photon
  // crosses j + 1 switches on the way out.
  double weight = p_trig;
  double signal_scale = eta_delay.value() * eta;
  double q = 0.0;
  double multi_joint = 0.0;
  for (int j = 0; j < n; ++j) {
    const PairSourceSpec cell = with_signal_scaled(source, signal_scale);
    q += weight * heralded_single_prob(cell, detector);
    multi_joint += weight * heralded_multi_prob(cell, detector);
    weight *= 1.0 - p_trig;
    signal_scale *= eta;
  }
  metrics.q_exact = q;
  metrics.p_multi_mux = multi_joint / metrics.p_trig_mux;
  metrics.q_lower = chain_q_lower(heralded_single_prob(source, detector),
                                  p_trig, eta_switch, eta_delay, n);
  return metrics;
}

ResourceCounts resource_counts(Architecture arch, int n) {
  if (n < 1) throw std::domain_error("source count must be at least 1");
  ResourceCounts counts;
  const std::int64_t big_n = n;
  switch (arch) {
    case Architecture::kLogTree: {
      const int depth = ceil_log2(n);
      counts.modulators_total = big_n - 1;
      counts.couplers_total = 2 * (big_n - 1);
      counts.modulator_depth = depth;
      counts.coupler_depth = 2 * depth;
      return counts;
    }
    case Architecture::kGmz: {
      if (!is_power_of_two(n)) {
        throw std::domain_error(
            "the GMZ coupler construction requires a power of two source "
            "count");
      }
      const std::int64_t depth = ceil_log2(n);
      counts.modulators_total = big_n;
      counts.couplers_total = big_n * (big_n + depth - 1) / 4;
      counts.modulator_depth = 1;
      counts.coupler_depth = 2 * (big_n - 1);
      return counts;
    }
    case Architecture::kChain:
      counts.modulators_total = big_n;
      counts.couplers_total = big_n;
      counts.modulator_depth = 1;
      counts.coupler_depth = big_n;
      return counts;
  }
  throw std::invalid_argument("unknown architecture");
}

double m_photon_rate(const MPhotonTarget& target, double q_mux) {
  if (!(q_mux >= 0.0 && q_mux <= 1.0)) {
    throw std::domain_error("q_mux must lie in [0, 1]");
  }
  return target.rep_rate_hz * std::pow(q_mux, static_cast<double>(target.m));
}

double m_photon_multi(double p_multi_mux, int m) {
  if (!(p_multi_mux >= 0.0 && p_multi_mux <= 1.0)) {
    throw std::domain_error("p_multi_mux must lie in [0, 1]");
  }
  if (m < 1) throw std::domain_error("photon count m must be at least 1");
  if (p_multi_mux == 1.0) return 1.0;
  return -std::expm1(static_cast<double>(m) * std::log1p(-p_multi_mux));
}

}  // namespace muxdesigner
