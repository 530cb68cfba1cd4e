#include "scenario.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"

namespace muxdesigner::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail_field(const std::string& field,
                             const std::string& reason) {
  throw ConfigError(field + ": " + reason);
}

double number_field(const json& section, const std::string& section_name,
                    const std::string& key) {
  const json& value = section.at(key);
  if (!value.is_number()) {
    fail_field(section_name + "." + key, "expected a number");
  }
  return value.get<double>();
}

int integer_field(const json& section, const std::string& section_name,
                  const std::string& key) {
  const json& value = section.at(key);
  if (!value.is_number_integer()) {
    fail_field(section_name + "." + key, "expected an integer");
  }
  return value.get<int>();
}

std::string string_field(const json& section, const std::string& section_name,
                         const std::string& key) {
  const json& value = section.at(key);
  if (!value.is_string()) {
    fail_field(section_name + "." + key, "expected a string");
  }
  return value.get<std::string>();
}

void check_keys(const json& section, const std::string& section_name,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : section.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* name) {
          return key == name;
        }) == allowed.end()) {
      fail_field(section_name.empty() ? key : section_name + "." + key,
                 "unknown key");
    }
  }
}

void load_component(const json& section, const std::string& section_name,
                    const std::string& stem, ComponentInput& out) {
  const std::string eta_key = "eta_" + stem;
  const std::string loss_key = "loss_db_" + stem;
  if (section.contains(eta_key)) {
    out.eta = number_field(section, section_name, eta_key);
  }
  if (section.contains(loss_key)) {
    out.loss_db = number_field(section, section_name, loss_key);
  }
}

void echo_component(json& section, const std::string& stem,
                    const ComponentInput& input) {
  if (input.eta) section["eta_" + stem] = *input.eta;
  if (input.loss_db) section["loss_db_" + stem] = *input.loss_db;
}

}  // namespace

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& error) {
    throw ConfigError("config file " + path + " is not valid JSON: " +
                      error.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  check_keys(root, "", {"source", "detector", "architecture", "target"});

  Scenario scenario;
  if (root.contains("source")) {
    const json& source = root.at("source");
    if (!source.is_object()) fail_field("source", "expected an object");
    check_keys(source, "source",
               {"xi2", "p_pair", "purity", "eta_idler", "loss_db_idler",
                "eta_signal", "loss_db_signal"});
    if (source.contains("xi2")) {
      scenario.xi2 = number_field(source, "source", "xi2");
    }
    if (source.contains("p_pair")) {
      scenario.p_pair = number_field(source, "source", "p_pair");
    }
    if (source.contains("purity")) {
      scenario.purity = number_field(source, "source", "purity");
    }
    load_component(source, "source", "idler", scenario.idler);
    load_component(source, "source", "signal", scenario.signal);
  }
  if (root.contains("detector")) {
    if (!root.at("detector").is_string()) {
      fail_field("detector", "expected a string, \"td\" or \"nrd\"");
    }
    scenario.detector = root.at("detector").get<std::string>();
  }
  if (root.contains("architecture")) {
    const json& arch = root.at("architecture");
    if (!arch.is_object()) fail_field("architecture", "expected an object");
    check_keys(arch, "architecture",
               {"arch", "n_sources", "eta_switch", "loss_db_switch",
                "eta_coupler", "loss_db_coupler", "eta_modulator",
                "loss_db_modulator", "eta_delay", "loss_db_delay"});
    if (arch.contains("arch")) {
      scenario.arch = string_field(arch, "architecture", "arch");
    }
    if (arch.contains("n_sources")) {
      scenario.n_sources = integer_field(arch, "architecture", "n_sources");
    }
    load_component(arch, "architecture", "switch", scenario.switch_comp);
    load_component(arch, "architecture", "coupler", scenario.coupler);
    load_component(arch, "architecture", "modulator", scenario.modulator);
    load_component(arch, "architecture", "delay", scenario.delay);
  }
  if (root.contains("target")) {
    const json& target = root.at("target");
    if (!target.is_object()) fail_field("target", "expected an object");
    check_keys(target, "target", {"m", "rep_rate_hz", "target_rate_hz"});
    if (target.contains("m")) {
      scenario.m = integer_field(target, "target", "m");
    }
    if (target.contains("rep_rate_hz")) {
      scenario.rep_rate_hz = number_field(target, "target", "rep_rate_hz");
    }
    if (target.contains("target_rate_hz")) {
      scenario.target_rate_hz =
          number_field(target, "target", "target_rate_hz");
    }
  }
  return scenario;
}

std::string scenario_echo(const Scenario& scenario) {
  json root = json::object();
  json source = json::object();
  if (scenario.xi2) source["xi2"] = *scenario.xi2;
  if (scenario.p_pair) source["p_pair"] = *scenario.p_pair;
  if (scenario.purity) source["purity"] = *scenario.purity;
  echo_component(source, "idler", scenario.idler);
  echo_component(source, "signal", scenario.signal);
  if (!source.empty()) root["source"] = source;
  if (scenario.detector) root["detector"] = *scenario.detector;
  json arch = json::object();
  if (scenario.arch) arch["arch"] = *scenario.arch;
  if (scenario.n_sources) arch["n_sources"] = *scenario.n_sources;
  echo_component(arch, "switch", scenario.switch_comp);
  echo_component(arch, "coupler", scenario.coupler);
  echo_component(arch, "modulator", scenario.modulator);
  echo_component(arch, "delay", scenario.delay);
  if (!arch.empty()) root["architecture"] = arch;
  json target = json::object();
  if (scenario.m) target["m"] = *scenario.m;
  if (scenario.rep_rate_hz) target["rep_rate_hz"] = *scenario.rep_rate_hz;
  if (scenario.target_rate_hz) {
    target["target_rate_hz"] = *scenario.target_rate_hz;
  }
  if (!target.empty()) root["target"] = target;
  return root.dump();
}

SqueezingParam ScenarioResolver::xi2() {
  if (scenario_.xi2 && scenario_.p_pair) {
    throw ConfigError(
        "source: exactly one of xi2 and p_pair may be set, got both");
  }
  try {
    if (scenario_.xi2) return SqueezingParam(*scenario_.xi2);
    if (scenario_.p_pair) return p_pair_to_xi2(*scenario_.p_pair);
  } catch (const std::domain_error& error) {
    throw ConfigError(std::string("source: ") + error.what());
  }
  throw ConfigError("source: one of xi2 or p_pair is required");
}

Transmission ScenarioResolver::component(const ComponentInput& input,
                                         const std::string& name) {
  if (input.eta && input.loss_db) {
    throw ConfigError(name + ": eta and loss_db are mutually exclusive");
  }
  try {
    if (input.eta) return Transmission(*input.eta);
    if (input.loss_db) return db_to_transmission(*input.loss_db);
  } catch (const std::domain_error& error) {
    throw ConfigError(name + ": " + error.what());
  }
  record_default("eta_" + name + "=1");
  return Transmission(1.0);
}

PairSourceSpec ScenarioResolver::source() {
  const SqueezingParam xi2_value = xi2();
  const Transmission eta_i = component(scenario_.idler, "idler");
  const Transmission eta_s = component(scenario_.signal, "signal");
  double purity = 1.0;
  if (scenario_.purity) {
    purity = *scenario_.purity;
  } else {
    record_default("purity=1");
  }
  try {
    return PairSourceSpec(xi2_value, eta_i, eta_s, purity);
  } catch (const std::domain_error& error) {
    throw ConfigError(std::string("source: ") + error.what());
  }
}

DetectorModel ScenarioResolver::detector() {
  std::string name = "nrd";
  if (scenario_.detector) {
    name = *scenario_.detector;
  } else {
    record_default("detector=nrd");
  }
  if (name == "td") return DetectorModel::kThreshold;
  if (name == "nrd") return DetectorModel::kNumberResolving;
  throw ConfigError("detector: expected \"td\" or \"nrd\", got \"" + name +
                    "\"");
}

Architecture ScenarioResolver::architecture_kind() {
  std::string name = "logtree";
  if (scenario_.arch) {
    name = *scenario_.arch;
  } else {
    record_default("arch=logtree");
  }
  if (name == "logtree") return Architecture::kLogTree;
  if (name == "gmz") return Architecture::kGmz;
  if (name == "chain") return Architecture::kChain;
  throw ConfigError(
      "architecture.arch: expected \"logtree\", \"gmz\" or \"chain\", got \"" +
      name + "\"");
}

ArchitectureSpec ScenarioResolver::architecture() {
  const Architecture kind = architecture_kind();
  if (!scenario_.n_sources) {
    throw ConfigError("architecture.n_sources is required for this command");
  }
  const Transmission eta_switch = component(scenario_.switch_comp, "switch");
  const Transmission eta_coupler = component(scenario_.coupler, "coupler");
  const Transmission eta_modulator =
      component(scenario_.modulator, "modulator");
  const Transmission eta_delay = component(scenario_.delay, "delay");
  try {
    return ArchitectureSpec(kind, *scenario_.n_sources, eta_switch,
                            eta_coupler, eta_modulator, eta_delay);
  } catch (const std::domain_error& error) {
    throw ConfigError(std::string("architecture: ") + error.what());
  }
}

AuxTransmissions ScenarioResolver::aux() {
  AuxTransmissions result;
  result.eta_delay = component(scenario_.delay, "delay");
  result.eta_modulator = component(scenario_.modulator, "modulator");
  return result;
}

MPhotonTarget ScenarioResolver::target() {
  if (!scenario_.m) {
    throw ConfigError("target.m is required for this command");
  }
  double rep = 1e8;
  if (scenario_.rep_rate_hz) {
    rep = *scenario_.rep_rate_hz;
  } else {
    record_default("rep_rate_hz=1e+08");
  }
  double rate = 100.0;
  if (scenario_.target_rate_hz) {
    rate = *scenario_.target_rate_hz;
  } else {
    record_default("target_rate_hz=100");
  }
  try {
    return MPhotonTarget(*scenario_.m, rep, rate);
  } catch (const std::domain_error& error) {
    throw ConfigError(std::string("target: ") + error.what());
  }
}

std::string ScenarioResolver::defaults_line() const {
  if (defaults_.empty()) return "none";
  std::vector<std::string> sorted = defaults_;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::string line;
  for (const std::string& entry : sorted) {
    if (!line.empty()) line += ' ';
    line += entry;
  }
  return line;
}

void ScenarioResolver::record_default(const std::string& entry) {
  defaults_.push_back(entry);
}

}  // namespace muxdesigner::cli
