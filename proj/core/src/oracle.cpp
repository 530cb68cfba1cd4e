#include "muxdesigner/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "muxdesigner/parallel.hpp"

namespace muxdesigner::oracle {

namespace {

constexpr int kFockCap = 16;
constexpr std::int64_t kBlockTrials = 1 << 16;

// Geometric pair number by inverse CDF accumulation. The probability
// guard covers the astronomically deep tail where the running term
// underflows before the cumulative sum catches the variate.
int sample_pair_count(CounterRng& rng, double x) {
  const double u = rng.next_unit();
  double term = 1.0 - x;
  double cum = term;
  int n = 0;
  while (u >= cum && term > 0.0) {
    term *= x;
    cum += term;
    ++n;
  }
  return n;
}

// Binomial thinning by one Bernoulli draw per photon.
int thin(CounterRng& rng, int n, double eta) {
  if (eta <= 0.0) return 0;
  if (eta >= 1.0) return n;
  int survivors = 0;
  for (int i = 0; i < n; ++i) {
    if (rng.next_unit() < eta) ++survivors;
  }
  return survivors;
}

bool herald_accepts(DetectorModel detector, int idler_survivors) {
  if (detector == DetectorModel::kThreshold) return idler_survivors >= 1;
  return idler_survivors == 1;
}

struct TallyBlock {
  std::int64_t triggered = 0;
  std::int64_t single = 0;
  std::int64_t multi = 0;
  std::vector<std::int64_t> fock = std::vector<std::int64_t>(kFockCap + 1, 0);
  std::vector<std::int64_t> wins;
};

OracleResult finalize_tally(const std::vector<TallyBlock>& blocks,
                            std::int64_t trials, bool with_wins) {
  TallyBlock total;
  if (with_wins && !blocks.empty()) {
    total.wins.assign(blocks.front().wins.size(), 0);
  }
  for (const TallyBlock& block : blocks) {
    total.triggered += block.triggered;
    total.single += block.single;
    total.multi += block.multi;
    for (std::size_t k = 0; k < total.fock.size(); ++k) {
      total.fock[k] += block.fock[k];
    }
    for (std::size_t j = 0; j < total.wins.size(); ++j) {
      total.wins[j] += block.wins[j];
    }
  }

  OracleResult result;
  result.trials = trials;
  result.trigger_events = total.triggered;
  result.source_wins = total.wins;
  const double n_all = static_cast<double>(trials);
  const double p_trig = static_cast<double>(total.triggered) / n_all;
  result.p_trig = p_trig;
  OracleErrors errors;
  errors.p_trig = std::sqrt(p_trig * (1.0 - p_trig) / n_all);
  result.fock.probs.assign(kFockCap + 1, 0.0);
  if (total.triggered == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    result.p_single = nan;
    result.p_multi = nan;
    errors.p_single = nan;
    errors.p_multi = nan;
    std::fill(result.fock.probs.begin(), result.fock.probs.end(), nan);
  } else {
    const double n_cond = static_cast<double>(total.triggered);
    result.p_single = static_cast<double>(total.single) / n_cond;
    result.p_multi = static_cast<double>(total.multi) / n_cond;
    errors.p_single =
        std::sqrt(result.p_single * (1.0 - result.p_single) / n_cond);
    errors.p_multi =
        std::sqrt(result.p_multi * (1.0 - result.p_multi) / n_cond);
    for (std::size_t k = 0; k < result.fock.probs.size(); ++k) {
      result.fock.probs[k] = static_cast<double>(total.fock[k]) / n_cond;
    }
  }
  result.std_error = errors;
  return result;
}

}  // namespace

int oracle_truncation(SqueezingParam xi2) {
  // The lattice sums carry n^2 scale weights, so add headroom over the
  // plain geometric cutoff.
  return default_truncation(xi2) + 10;
}

OracleResult exact_truncated_hsps(const PairSourceSpec& source,
                                  DetectorModel detector, int n_max) {
  if (n_max < 1) throw std::domain_error("n_max must be at least 1");
  const double x = source.xi2.value();
  const Transmission eta_i = source.eta_i;
  const Transmission eta_s = source.eta_s;

  std::vector<double> joint(static_cast<std::size_t>(n_max) + 1, 0.0);
  double p_trig = 0.0;
  double pair_prob = 1.0 - x;
  for (int n = 0; n <= n_max; ++n) {
    const std::vector<double> idler = binomial_pmf(n, eta_i);
    double trig_weight = 0.0;
    if (detector == DetectorModel::kThreshold) {
      for (int p = 1; p <= n; ++p) trig_weight += idler[static_cast<std::size_t>(p)];
    } else if (n >= 1) {
      trig_weight = idler[1];
    }
    if (trig_weight > 0.0) {
      const double contribution = pair_prob * trig_weight;
      p_trig += contribution;
      const std::vector<double> signal = binomial_pmf(n, eta_s);
      for (int k = 0; k <= n; ++k) {
        joint[static_cast<std::size_t>(k)] += contribution * signal[static_cast<std::size_t>(k)];
      }
    }
    pair_prob *= x;
  }
  if (p_trig <= 0.0) {
    throw NeverTriggersError(
        "herald never triggers: requires xi2 > 0 and eta_i > 0");
  }

  OracleResult result;
  result.p_trig = p_trig;
  result.fock.probs.resize(joint.size());
  for (std::size_t k = 0; k < joint.size(); ++k) {
    result.fock.probs[k] = joint[k] / p_trig;
  }
  result.p_single = result.fock.probs[1];
  double multi = 0.0;
  for (std::size_t k = 2; k < result.fock.probs.size(); ++k) {
    multi += result.fock.probs[k];
  }
  result.p_multi = multi;
  // pair_prob is now (1-x) x^(n_max+1); the conditional truncation
  // error is bounded by the unconditional geometric remainder / p_trig.
  result.tail_bound = pair_prob / ((1.0 - x) * p_trig);
  result.fock.tail_bound = result.tail_bound;
  return result;
}

OracleResult mc_hsps(const PairSourceSpec& source, DetectorModel detector,
                     std::int64_t trials, RngSeed seed) {
  if (trials < 1) throw std::domain_error("trials must be at least 1");
  const double x = source.xi2.value();
  const double ei = source.eta_i.value();
  const double es = source.eta_s.value();

  const std::int64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<TallyBlock> tallies(static_cast<std::size_t>(blocks));
  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    CounterRng rng(seed);
    TallyBlock tally;
    const std::int64_t begin = static_cast<std::int64_t>(b) * kBlockTrials;
    const std::int64_t end = std::min(trials, begin + kBlockTrials);
    for (std::int64_t t = begin; t < end; ++t) {
      rng.set_counter(static_cast<std::uint64_t>(t) << 32);
      const int pairs = sample_pair_count(rng, x);
      const int idler_survivors = thin(rng, pairs, ei);
      if (!herald_accepts(detector, idler_survivors)) continue;
      const int k = thin(rng, pairs, es);
      ++tally.triggered;
      if (k == 1) ++tally.single;
      if (k >= 2) ++tally.multi;
      if (k <= kFockCap) ++tally.fock[static_cast<std::size_t>(k)];
    }
    tallies[b] = std::move(tally);
  });
  return finalize_tally(tallies, trials, false);
}

OracleResult mc_mux(const PairSourceSpec& source, DetectorModel detector,
                    const ArchitectureSpec& spec, std::int64_t trials,
                    RngSeed seed, MuxRoutingPolicy policy) {
  if (trials < 1) throw std::domain_error("trials must be at least 1");
  const double x = source.xi2.value();
  const double ei = source.eta_i.value();
  const double es = source.eta_s.value();
  const int n_sources = spec.n_sources;

  // Signal transmission seen by a photon routed from source j.
  std::vector<double> route(static_cast<std::size_t>(n_sources));
  if (spec.arch == Architecture::kChain) {
    double scale = spec.eta_delay.value() * spec.eta_switch.value();
    for (int j = 0; j < n_sources; ++j) {
      route[static_cast<std::size_t>(j)] = scale;
      scale *= spec.eta_switch.value();
    }
  } else {
    std::fill(route.begin(), route.end(), network_transmission(spec).value());
  }
  const bool random_pick = policy == MuxRoutingPolicy::kRandomTriggered &&
                           spec.arch != Architecture::kChain;

  const std::int64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<TallyBlock> tallies(static_cast<std::size_t>(blocks));
  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    CounterRng rng(seed);
    TallyBlock tally;
    tally.wins.assign(static_cast<std::size_t>(n_sources), 0);
    std::vector<int> pair_counts(static_cast<std::size_t>(n_sources));
    std::vector<int> triggered;
    triggered.reserve(static_cast<std::size_t>(n_sources));
    const std::int64_t begin = static_cast<std::int64_t>(b) * kBlockTrials;
    const std::int64_t end = std::min(trials, begin + kBlockTrials);
    for (std::int64_t t = begin; t < end; ++t) {
      rng.set_counter(static_cast<std::uint64_t>(t) << 32);
      triggered.clear();
      for (int j = 0; j < n_sources; ++j) {
        const int pairs = sample_pair_count(rng, x);
        pair_counts[static_cast<std::size_t>(j)] = pairs;
        const int idler_survivors = thin(rng, pairs, ei);
        if (herald_accepts(detector, idler_survivors)) {
          triggered.push_back(j);
        }
      }
      if (triggered.empty()) continue;
      int winner = triggered.front();
      if (random_pick && triggered.size() > 1) {
        winner = triggered[static_cast<std::size_t>(
            rng.next_below(triggered.size()))];
      }
      const int k = thin(rng, pair_counts[static_cast<std::size_t>(winner)],
                         es * route[static_cast<std::size_t>(winner)]);
      ++tally.triggered;
      ++tally.wins[static_cast<std::size_t>(winner)];
      if (k == 1) ++tally.single;
      if (k >= 2) ++tally.multi;
      if (k <= kFockCap) ++tally.fock[static_cast<std::size_t>(k)];
    }
    tallies[b] = std::move(tally);
  });
  return finalize_tally(tallies, trials, true);
}

}  // namespace muxdesigner::oracle
