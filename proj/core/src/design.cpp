#include "muxdesigner/design.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "muxdesigner/parallel.hpp"

namespace muxdesigner {

namespace {

PairSourceSpec with_signal_scaled(const PairSourceSpec& source, double scale) {
  return PairSourceSpec(source.xi2,
                        source.eta_i,
                        Transmission(source.eta_s.value() * scale),
                        source.purity);
}

int largest_admissible(Architecture arch, int n_cap) {
  if (arch == Architecture::kGmz) {
    return static_cast<int>(std::bit_floor(static_cast<unsigned>(n_cap)));
  }
  return n_cap;
}

ArchitectureSpec spec_with_count(const ArchitectureSpec& base, int n) {
  return ArchitectureSpec(base.arch, n, base.eta_switch, base.eta_coupler,
                          base.eta_modulator, base.eta_delay);
}

bool solved_component_lossless(const ArchitectureSpec& spec) {
  if (spec.arch == Architecture::kGmz) return spec.eta_coupler.value() == 1.0;
  return spec.eta_switch.value() == 1.0;
}

DesignSolution chain_best_exact(const PairSourceSpec& source,
                                DetectorModel detector,
                                const ArchitectureSpec& spec, int n_cap) {
  const double p_trig = herald_trigger_prob(source, detector);
  if (p_trig <= 0.0) throw NeverTriggersError("no chain cell can ever trigger");
  const double eta = spec.eta_switch.value();
  DesignSolution best;
  best.q_at_opt = -1.0;
  double weight = p_trig;
  double silent = 1.0;  // probability that the first n cells all stay quiet
  double signal_scale = spec.eta_delay.value() * eta;
  double q = 0.0;
  double multi_joint = 0.0;
  for (int n = 1; n <= n_cap; ++n) {
    const PairSourceSpec cell = with_signal_scaled(source, signal_scale);
    q += weight * heralded_single_prob(cell, detector);
    multi_joint += weight * heralded_multi_prob(cell, detector);
    silent *= 1.0 - p_trig;
    if (q > best.q_at_opt) {
      best.n_opt = n;
      best.q_at_opt = q;
      best.p_multi_at_opt = multi_joint / (1.0 - silent);
    }
    weight *= 1.0 - p_trig;
    signal_scale *= eta;
    // Everything the remaining cells could add is at most weight/p_trig.
    if (q + weight / p_trig == q) break;
  }
  if (solved_component_lossless(spec)) {
    // A lossless chain keeps improving with every cell; the accumulated
    // q already equals q(n_cap) to double precision.
    best.saturated = true;
    best.n_opt = n_cap;
    best.q_at_opt = q;
    best.p_multi_at_opt = multi_joint / mux_trigger_prob(p_trig, n_cap);
  }
  best.resources = resource_counts(Architecture::kChain, best.n_opt);
  return best;
}

}  // namespace

double q_star_bound(Architecture arch, int n, double loss_db, double p_trig,
                    const AuxTransmissions& aux, double p_single) {
  if (!(p_single >= 0.0 && p_single <= 1.0)) {
    throw std::domain_error("p_single must lie in [0, 1]");
  }
  const Transmission eta = db_to_transmission(loss_db);
  if (arch == Architecture::kChain) {
    return chain_q_lower(p_single, p_trig, eta, aux.eta_delay, n);
  }
  const ArchitectureSpec spec(arch, n, eta, eta, aux.eta_modulator,
                              aux.eta_delay);
  return p_single * mux_trigger_prob(p_trig, n) *
         network_transmission(spec).value();
}

DesignSolution optimal_source_count(Architecture arch, double loss_db,
                                    double p_trig,
                                    const AuxTransmissions& aux, int n_cap,
                                    double p_single) {
  if (n_cap < 1) throw std::domain_error("n_cap must be at least 1");
  if (!(p_trig >= 0.0 && p_trig <= 1.0)) {
    throw std::domain_error("p_trig must lie in [0, 1]");
  }
  const double eta = db_to_transmission(loss_db).value();
  DesignSolution best;
  best.loss_db = loss_db;
  if (eta == 1.0) {
    best.saturated = true;
    best.n_opt = largest_admissible(arch, n_cap);
    best.q_at_opt =
        q_star_bound(arch, best.n_opt, loss_db, p_trig, aux, p_single);
    best.resources = resource_counts(arch, best.n_opt);
    return best;
  }
  best.q_at_opt = -1.0;
  if (arch == Architecture::kChain) {
    const double r = (1.0 - p_trig) * eta;
    const double coeff = p_single * aux.eta_delay.value() * p_trig * eta;
    double r_pow = 1.0;
    for (int n = 1; n <= n_cap; ++n) {
      r_pow *= r;
      const double q = coeff * (1.0 - r_pow) / (1.0 - r);
      if (q > best.q_at_opt) {
        best.n_opt = n;
        best.q_at_opt = q;
      }
      if (r_pow < 1e-17) break;  // 1 - r_pow saturates at 1.0 from here on
    }
  } else {
    for (int n = 1; n <= n_cap && n >= 1; n *= 2) {
      const double q = q_star_bound(arch, n, loss_db, p_trig, aux, p_single);
      if (q > best.q_at_opt) {
        best.n_opt = n;
        best.q_at_opt = q;
      }
    }
  }
  best.resources = resource_counts(arch, best.n_opt);
  return best;
}

DesignSolution optimal_source_count_exact(const PairSourceSpec& source,
                                          DetectorModel detector,
                                          const ArchitectureSpec& spec,
                                          int n_cap) {
  if (n_cap < 1) throw std::domain_error("n_cap must be at least 1");
  if (spec.arch == Architecture::kChain) {
    return chain_best_exact(source, detector, spec, n_cap);
  }
  DesignSolution best;
  best.q_at_opt = -1.0;
  if (solved_component_lossless(spec)) {
    best.saturated = true;
    best.n_opt = largest_admissible(spec.arch, n_cap);
    const MuxMetrics metrics =
        mux_metrics_balanced(source, detector, spec_with_count(spec, best.n_opt));
    best.q_at_opt = metrics.q_exact;
    best.p_multi_at_opt = metrics.p_multi_mux;
    best.resources = resource_counts(spec.arch, best.n_opt);
    return best;
  }
  for (int n = 1; n <= n_cap && n >= 1; n *= 2) {
    const MuxMetrics metrics =
        mux_metrics_balanced(source, detector, spec_with_count(spec, n));
    if (metrics.q_exact > best.q_at_opt) {
      best.n_opt = n;
      best.q_at_opt = metrics.q_exact;
      best.p_multi_at_opt = metrics.p_multi_mux;
    }
  }
  best.resources = resource_counts(spec.arch, best.n_opt);
  return best;
}

DesignSolution max_tolerable_switch_loss(Architecture arch,
                                         const MPhotonTarget& target,
                                         const PairSourceSpec& source,
                                         DetectorModel detector,
                                         const AuxTransmissions& aux,
                                         int n_cap) {
  const auto solve_at = [&](double loss_db) {
    const Transmission eta = db_to_transmission(loss_db);
    const ArchitectureSpec spec(arch, 1, eta, eta, aux.eta_modulator,
                                aux.eta_delay);
    DesignSolution sol = optimal_source_count_exact(source, detector, spec,
                                                    n_cap);
    sol.loss_db = loss_db;
    sol.achieved_rate_hz = m_photon_rate(target, sol.q_at_opt);
    sol.p_multi_at_opt = m_photon_multi(sol.p_multi_at_opt, target.m);
    return sol;
  };
  const auto feasible = [&](const DesignSolution& sol) {
    return sol.achieved_rate_hz >= target.target_rate_hz;
  };

  DesignSolution at_zero = solve_at(0.0);
  if (!feasible(at_zero)) {
    at_zero.feasible = false;
    return at_zero;
  }
  DesignSolution at_cap = solve_at(kLossCapDb);
  if (feasible(at_cap)) {
    at_cap.at_loss_cap = true;
    return at_cap;
  }
  // 12 halvings of the 3 dB bracket land below the 1e-3 dB tolerance.
  double lo = 0.0;
  double hi = kLossCapDb;
  DesignSolution at_lo = at_zero;
  for (int iter = 0; iter < 12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    DesignSolution at_mid = solve_at(mid);
    if (feasible(at_mid)) {
      lo = mid;
      at_lo = at_mid;
    } else {
      hi = mid;
    }
  }
  return at_lo;
}

std::vector<SweepRecord> sweep(
    const std::vector<SweepAxis>& axes,
    const std::function<SweepRecord(const std::vector<double>&)>& fn) {
  if (axes.empty()) throw std::domain_error("sweep grid has no axes");
  std::size_t total = 1;
  for (const SweepAxis& axis : axes) {
    if (axis.values.empty()) {
      throw std::domain_error("sweep axis " + axis.name + " has no values");
    }
    total *= axis.values.size();
  }
  std::vector<SweepRecord> rows(total);
  parallel_for(total, [&](std::size_t flat) {
    std::vector<double> coords(axes.size());
    std::size_t rem = flat;
    for (std::size_t a = axes.size(); a-- > 0;) {
      const std::vector<double>& values = axes[a].values;
      coords[a] = values[rem % values.size()];
      rem /= values.size();
    }
    rows[flat] = fn(coords);
  });
  return rows;
}

}  // namespace muxdesigner
