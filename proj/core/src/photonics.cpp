#include "muxdesigner/photonics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace muxdesigner {

SqueezingParam::SqueezingParam(double xi2) : xi2_(xi2) {
  if (!(xi2 >= 0.0 && xi2 < 1.0)) {
    throw std::domain_error("squeezing parameter must lie in [0, 1)");
  }
}

Transmission::Transmission(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("transmission must lie in [0, 1]");
  }
}

double PhotonNumberDist::sum() const {
  double total = 0.0;
  for (double p : probs) total += p;
  return total;
}

double PhotonNumberDist::mean() const {
  double total = 0.0;
  for (std::size_t n = 1; n < probs.size(); ++n) {
    total += static_cast<double>(n) * probs[n];
  }
  return total;
}

PhotonNumberDist pair_number_distribution(SqueezingParam xi2, int n_max) {
  if (n_max < 0) throw std::domain_error("n_max must be nonnegative");
  const double x = xi2.value();
  PhotonNumberDist dist;
  dist.probs.resize(static_cast<std::size_t>(n_max) + 1);
  double term = 1.0 - x;
  for (int n = 0; n <= n_max; ++n) {
    dist.probs[static_cast<std::size_t>(n)] = term;
    term *= x;
  }
  dist.tail_bound = term / (1.0 - x);  // term is now (1-x) x^(n_max+1)
  return dist;
}

int default_truncation(SqueezingParam xi2) {
  const double x = xi2.value();
  if (x <= 0.0) return 40;
  const int needed =
      static_cast<int>(std::ceil(std::log(1e-14) / std::log(x)));
  return std::max(40, needed);
}

std::vector<double> binomial_pmf(int n, Transmission eta) {
  if (n < 0) throw std::domain_error("n must be nonnegative");
  const double p = eta.value();
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  if (p > 0.5) {
    // Mirror the recurrence so it always starts from the larger mass.
    std::vector<double> mirrored = binomial_pmf(n, Transmission(1.0 - p));
    std::reverse(mirrored.begin(), mirrored.end());
    return mirrored;
  }
  double term = 1.0;
  for (int i = 0; i < n; ++i) term *= 1.0 - p;
  const double ratio = p == 0.0 ? 0.0 : p / (1.0 - p);
  for (int k = 0; k <= n; ++k) {
    pmf[static_cast<std::size_t>(k)] = term;
    term *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return pmf;
}

PhotonNumberDist loss_channel(const PhotonNumberDist& dist, Transmission eta) {
  PhotonNumberDist out;
  out.probs.assign(dist.probs.size(), 0.0);
  out.tail_bound = dist.tail_bound;
  for (std::size_t n = 0; n < dist.probs.size(); ++n) {
    const double weight = dist.probs[n];
    if (weight == 0.0) continue;
    const std::vector<double> pmf = binomial_pmf(static_cast<int>(n), eta);
    for (std::size_t k = 0; k <= n; ++k) {
      out.probs[k] += weight * pmf[k];
    }
  }
  return out;
}

ClickProbs detector_outcome_probs(const PhotonNumberDist& dist,
                                  DetectorModel detector) {
  ClickProbs probs;
  probs.p_no_click = dist.prob(0);
  if (detector == DetectorModel::kThreshold) {
    probs.p_click_as_single = dist.sum() - dist.prob(0);
  } else {
    probs.p_click_as_single = dist.prob(1);
  }
  return probs;
}

Transmission db_to_transmission(double loss_db) {
  if (!(loss_db >= 0.0)) {
    throw std::domain_error("loss in dB must be nonnegative");
  }
  return Transmission(std::pow(10.0, -loss_db / 10.0));
}

SqueezingParam p_pair_to_xi2(double p_pair) {
  if (!(p_pair > 0.0 && p_pair <= 0.25)) {
    throw std::domain_error("p_pair must lie in (0, 0.25]");
  }
  // Stable form of (1 - sqrt(1 - 4 p)) / 2 on the branch xi2 <= 1/2.
  return SqueezingParam(2.0 * p_pair / (1.0 + std::sqrt(1.0 - 4.0 * p_pair)));
}

}  // namespace muxdesigner
