#pragma once

#include <stdexcept>

#include "muxdesigner/photonics.hpp"

namespace muxdesigner {

// One heralded single photon source: a two-mode squeezed vacuum source
// whose idler arm (transmission eta_i) feeds a heralding detector and
// whose signal arm (transmission eta_s) delivers the photon. purity is
// the spectral purity of the heralded photon, in (0, 1].
struct PairSourceSpec {
  PairSourceSpec(SqueezingParam xi2_in, Transmission eta_i_in,
                 Transmission eta_s_in, double purity_in = 1.0);

  SqueezingParam xi2;
  Transmission eta_i;
  Transmission eta_s;
  double purity;
};

// Thrown when the heralding probability is exactly zero and conditional
// statistics are undefined.
class NeverTriggersError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Signal arm statistics conditioned on a herald. fock.probs[n] is the
// conditional probability of exactly n signal photons; p_single equals
// fock.probs[1] and counts photon number only. Purity splits that mass
// into the spectrally pure part p_single_pure = purity * p_single and
// the remainder p_single_impure; it never moves mass into p_multi.
struct HeraldedMetrics {
  double p_trig = 0.0;
  double p_single = 0.0;
  double p_multi = 0.0;
  double p_vacuum = 0.0;
  double p_single_pure = 0.0;
  double p_single_impure = 0.0;
  PhotonNumberDist fock;
};

// Probability per pulse that the heralding detector accepts.
double herald_trigger_prob(const PairSourceSpec& source,
                           DetectorModel detector);

// Probability of heralding a spectrally pure single photon: the
// conditional single photon probability times the source purity.
// Throws NeverTriggersError when the trigger probability is zero.
double heralded_single_prob(const PairSourceSpec& source,
                            DetectorModel detector);

// Conditional probability of two or more signal photons given a herald.
// Purity does not enter: it relabels single photon mass, it does not
// change photon number statistics.
double heralded_multi_prob(const PairSourceSpec& source,
                           DetectorModel detector);

// Conditional signal photon number distribution given a herald,
// evaluated in closed form for n in [0, n_max].
PhotonNumberDist heralded_fock_dist(const PairSourceSpec& source,
                                    DetectorModel detector, int n_max);

// All conditional statistics at once, with fock computed up to n_max.
HeraldedMetrics heralded_metrics(const PairSourceSpec& source,
                                 DetectorModel detector, int n_max = 16);

}  // namespace muxdesigner
