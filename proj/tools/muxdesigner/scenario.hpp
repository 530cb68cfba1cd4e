#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "muxdesigner/design.hpp"
#include "muxdesigner/hsps.hpp"
#include "muxdesigner/mux.hpp"
#include "muxdesigner/photonics.hpp"

namespace muxdesigner::cli {

// Invalid configuration file or flag combination; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One optical component given either as a transmission or as a loss in
// dB, never both.
struct ComponentInput {
  std::optional<double> eta;
  std::optional<double> loss_db;
};

// Everything a command can be asked to evaluate. Unset fields fall back
// to documented defaults at resolution time.
struct Scenario {
  std::optional<double> xi2;
  std::optional<double> p_pair;
  std::optional<double> purity;
  std::optional<std::string> detector;
  std::optional<std::string> arch;
  std::optional<int> n_sources;
  ComponentInput idler;
  ComponentInput signal;
  ComponentInput switch_comp;
  ComponentInput coupler;
  ComponentInput modulator;
  ComponentInput delay;
  std::optional<int> m;
  std::optional<double> rep_rate_hz;
  std::optional<double> target_rate_hz;
};

// Parses a JSON scenario file. Unknown keys and wrong types are
// rejected with the offending field named.
Scenario load_scenario_file(const std::string& path);

// Compact canonical echo of every explicitly set field, used for the
// metadata block and its digest.
std::string scenario_echo(const Scenario& scenario);

// Turns scenario fields into core types while recording which values
// fell back to defaults.
class ScenarioResolver {
 public:
  explicit ScenarioResolver(const Scenario& scenario)
      : scenario_(scenario) {}

  SqueezingParam xi2();
  PairSourceSpec source();
  DetectorModel detector();
  Architecture architecture_kind();
  ArchitectureSpec architecture();
  AuxTransmissions aux();
  MPhotonTarget target();
  Transmission component(const ComponentInput& input, const std::string& name);

  // Sorted space separated list of every default applied, or "none".
  std::string defaults_line() const;

 private:
  void record_default(const std::string& entry);

  const Scenario& scenario_;
  std::vector<std::string> defaults_;
};

}  // namespace muxdesigner::cli
