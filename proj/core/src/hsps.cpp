#include "muxdesigner/hsps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace muxdesigner {

namespace {

void require_triggers(const PairSourceSpec& source, double p_trig) {
  if (p_trig <= 0.0) {
    throw NeverTriggersError(
        "herald never triggers: requires xi2 > 0 and eta_i > 0, got xi2 = " +
        std::to_string(source.xi2.value()) +
        ", eta_i = " + std::to_string(source.eta_i.value()));
  }
}

double single_prob_unpurified(const PairSourceSpec& source,
                              DetectorModel detector) {
  const double x = source.xi2.value();
  const double u = 1.0 - source.eta_i.value();
  const double es = source.eta_s.value();
  const double w = 1.0 - es;
  if (detector == DetectorModel::kThreshold) {
    const double xw = x * w;
    const double a = 1.0 - xw;
    const double b = 1.0 - xw * u;
    return (1.0 - x) * es * (1.0 - xw * xw * u) * (1.0 - x * u) /
           (a * a * b * b);
  }
  const double t = x * u * w;
  const double c = 1.0 - u * x;
  const double d = 1.0 - t;
  return c * c * es * (1.0 + t) / (d * d * d);
}

}  // namespace

PairSourceSpec::PairSourceSpec(SqueezingParam xi2_in, Transmission eta_i_in,
                               Transmission eta_s_in, double purity_in)
    : xi2(xi2_in), eta_i(eta_i_in), eta_s(eta_s_in), purity(purity_in) {
  if (!(purity_in > 0.0 && purity_in <= 1.0)) {
    throw std::domain_error("purity must lie in (0, 1]");
  }
}

double herald_trigger_prob(const PairSourceSpec& source,
                           DetectorModel detector) {
  const double x = source.xi2.value();
  const double ei = source.eta_i.value();
  const double u = 1.0 - ei;
  if (detector == DetectorModel::kThreshold) {
    return x * ei / (1.0 - x * u);
  }
  const double denom = 1.0 - u * x;
  return (1.0 - x) * x * ei / (denom * denom);
}

double heralded_single_prob(const PairSourceSpec& source,
                            DetectorModel detector) {
  require_triggers(source, herald_trigger_prob(source, detector));
  return source.purity * single_prob_unpurified(source, detector);
}

double heralded_multi_prob(const PairSourceSpec& source,
                           DetectorModel detector) {
  const double p_trig = herald_trigger_prob(source, detector);
  require_triggers(source, p_trig);
  const double x = source.xi2.value();
  const double u = 1.0 - source.eta_i.value();
  const double es = source.eta_s.value();
  const double w = 1.0 - es;
  double p_at_least_one;  // conditional probability of >= 1 signal photon
  if (detector == DetectorModel::kThreshold) {
    const double z = (1.0 - x) * x *
                     (1.0 / (1.0 - x) + u * w / (1.0 - x * u * w) -
                      u / (1.0 - x * u) - w / (1.0 - x * w));
    p_at_least_one = z / p_trig;
  } else {
    const double t = x * u * w;
    const double d = 1.0 - t;
    const double xu = x * u;
    p_at_least_one = es * (1.0 - xu * xu * w) / (d * d);
  }
  // Cancellation in exact-zero cases can leave small negative residue.
  return std::max(0.0, p_at_least_one - single_prob_unpurified(source, detector));
}

PhotonNumberDist heralded_fock_dist(const PairSourceSpec& source,
                                    DetectorModel detector, int n_max) {
  if (n_max < 0) throw std::domain_error("n_max must be nonnegative");
  const double p_trig = herald_trigger_prob(source, detector);
  require_triggers(source, p_trig);
  const double x = source.xi2.value();
  const double u = 1.0 - source.eta_i.value();
  const double es = source.eta_s.value();
  const double w = 1.0 - es;
  PhotonNumberDist dist;
  dist.probs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (detector == DetectorModel::kThreshold) {
    // P(k | trigger) = (1-x)/p_trig *
    //   [ (x es)^k / (1-xw)^(k+1) - (x u es)^k / (1-xwu)^(k+1) ]
    const double scale = (1.0 - x) / p_trig;
    const double ya = 1.0 - x * w;
    const double yb = 1.0 - x * w * u;
    double num_a = 1.0, den_a = ya;
    double num_b = 1.0, den_b = yb;
    for (int k = 0; k <= n_max; ++k) {
      dist.probs[static_cast<std::size_t>(k)] =
          scale * (num_a / den_a - num_b / den_b);
      num_a *= x * es;
      den_a *= ya;
      num_b *= x * es * u;
      den_b *= yb;
    }
  } else {
    // P(0 | trigger) = (1-ux)^2 w / (1-t)^2,
    // P(k | trigger) = (1-ux)^2 es^k x^(k-1) u^(k-1) (k+t) / (1-t)^(k+2)
    const double t = x * u * w;
    const double c = 1.0 - u * x;
    const double d = 1.0 - t;
    dist.probs[0] = c * c * w / (d * d);
    double geom = 1.0;        // (es x u)^(k-1), exactly 1 at k = 1
    double den = d * d * d;   // (1-t)^(k+2)
    for (int k = 1; k <= n_max; ++k) {
      dist.probs[static_cast<std::size_t>(k)] =
          c * c * es * geom * (static_cast<double>(k) + t) / den;
      geom *= es * x * u;
      den *= d;
    }
  }
  dist.tail_bound = std::max(0.0, 1.0 - dist.sum());
  return dist;
}

HeraldedMetrics heralded_metrics(const PairSourceSpec& source,
                                 DetectorModel detector, int n_max) {
  HeraldedMetrics metrics;
  metrics.p_trig = herald_trigger_prob(source, detector);
  require_triggers(source, metrics.p_trig);
  metrics.p_single = single_prob_unpurified(source, detector);
  metrics.p_multi = heralded_multi_prob(source, detector);
  metrics.fock = heralded_fock_dist(source, detector, n_max);
  metrics.p_vacuum = metrics.fock.probs[0];
  metrics.p_single_pure = source.purity * metrics.p_single;
  metrics.p_single_impure = (1.0 - source.purity) * metrics.p_single;
  return metrics;
}

}  // namespace muxdesigner
