#pragma once

#include <cstddef>
#include <vector>

namespace muxdesigner {

// Squared squeezing parameter of a two-mode squeezed vacuum source.
// The photon pair number n then follows the geometric law
// P(n) = (1 - xi2) * xi2^n.
class SqueezingParam {
 public:
  explicit SqueezingParam(double xi2);

  double value() const { return xi2_; }

 private:
  double xi2_;
};

// Intensity transmission of a passive optical component, in [0, 1].
class Transmission {
 public:
  explicit Transmission(double eta);

  double value() const { return eta_; }

 private:
  double eta_;
};

// Photon number detector placed on the heralding arm.
// kThreshold clicks on one or more photons; kNumberResolving can
// discriminate the exactly-one-photon outcome.
enum class DetectorModel {
  kThreshold,
  kNumberResolving,
};

// Truncated photon number distribution. probs[n] is the probability of
// exactly n photons for n in [0, n_max]; mass beyond n_max is bounded by
// tail_bound.
struct PhotonNumberDist {
  std::vector<double> probs;
  double tail_bound = 0.0;

  std::size_t n_max() const { return probs.empty() ? 0 : probs.size() - 1; }
  double prob(std::size_t n) const { return n < probs.size() ? probs[n] : 0.0; }
  double sum() const;
  double mean() const;
};

// Click probabilities for a distribution observed by a detector.
// p_click_as_single is the probability of the outcome accepted as a
// single photon herald; p_no_click is the probability of seeing vacuum.
struct ClickProbs {
  double p_click_as_single = 0.0;
  double p_no_click = 0.0;
};

// Geometric pair number distribution truncated at n_max.
// The truncated tail is exactly xi2^(n_max + 1).
PhotonNumberDist pair_number_distribution(SqueezingParam xi2, int n_max);

// Default truncation cutoff: large enough that the geometric tail is
// below 1e-14, and never below 40.
int default_truncation(SqueezingParam xi2);

// Binomial probability mass function for n trials with success
// probability eta. Exact at eta = 0 and eta = 1.
std::vector<double> binomial_pmf(int n, Transmission eta);

// Independent per-photon loss: each photon survives with probability
// eta. Total truncated mass is preserved and the declared tail bound
// carries over.
PhotonNumberDist loss_channel(const PhotonNumberDist& dist, Transmission eta);

// Detector response to a photon number distribution.
// Threshold accepts any n >= 1 as a single; number resolving accepts
// only n = 1.
ClickProbs detector_outcome_probs(const PhotonNumberDist& dist,
                                  DetectorModel detector);

// Power loss in dB to intensity transmission, eta = 10^(-loss_db / 10).
Transmission db_to_transmission(double loss_db);

// Inverts p_pair = xi2 * (1 - xi2) on the branch xi2 <= 1/2.
// Valid for p_pair in (0, 0.25]; the two mathematical roots are
// disambiguated by always taking the smaller one.
SqueezingParam p_pair_to_xi2(double p_pair);

}  // namespace muxdesigner
