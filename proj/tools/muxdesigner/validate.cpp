#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <vector>

#include "muxdesigner/design.hpp"
#include "muxdesigner/hsps.hpp"
#include "muxdesigner/mux.hpp"
#include "muxdesigner/oracle.hpp"
#include "muxdesigner/photonics.hpp"
#include "muxdesigner/rng.hpp"

namespace muxdesigner::cli {

namespace {

constexpr double kMcSigmaLimit = 5.0;

struct WorstDeviation {
  double value = 0.0;
  std::string where;
};

void consider(WorstDeviation& worst, double closed, double reference,
              const std::string& where) {
  const double dev = std::abs(closed - reference);
  if (dev > worst.value) {
    worst.value = dev;
    worst.where = where;
  }
}

std::string grid_point(double eta_i, double eta_s, const char* quantity) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "eta_i=%g eta_s=%g %s", eta_i, eta_s,
                quantity);
  return buf;
}

const char* detector_name(DetectorModel detector) {
  return detector == DetectorModel::kThreshold ? "td" : "nrd";
}

// Closed forms against the literal lattice summation, one row per
// (detector, xi2) with the worst deviation over the transmission grid.
bool run_exact_grid(OutputTable& table, double tolerance) {
  const std::vector<double> xi2_grid = {0.01, 0.05, 0.1, 0.25, 0.5, 0.6};
  const std::vector<double> eta_i_grid = {0.5, 0.9, 0.99, 1.0};
  const std::vector<double> eta_s_grid = {0.0, 0.5, 0.9, 0.99, 1.0};
  bool all_pass = true;

  for (DetectorModel detector :
       {DetectorModel::kThreshold, DetectorModel::kNumberResolving}) {
    for (double xi2 : xi2_grid) {
      WorstDeviation worst;
      for (double eta_i : eta_i_grid) {
        for (double eta_s : eta_s_grid) {
          const PairSourceSpec source{SqueezingParam{xi2}, Transmission{eta_i},
                                      Transmission{eta_s}};
          const int n_max = oracle::oracle_truncation(source.xi2);
          const oracle::OracleResult reference =
              oracle::exact_truncated_hsps(source, detector, n_max);
          const HeraldedMetrics closed = heralded_metrics(source, detector);

          consider(worst, closed.p_trig, reference.p_trig,
                   grid_point(eta_i, eta_s, "p_trig"));
          consider(worst, closed.p_single, reference.p_single,
                   grid_point(eta_i, eta_s, "p_single"));
          consider(worst, closed.p_multi, reference.p_multi,
                   grid_point(eta_i, eta_s, "p_multi"));
          for (int k = 0; k <= closed.fock.n_max(); ++k) {
            char quantity[24];
            std::snprintf(quantity, sizeof quantity, "fock_%d", k);
            consider(worst, closed.fock.prob(k), reference.fock.prob(k),
                     grid_point(eta_i, eta_s, quantity));
          }
        }
      }
      const bool pass = worst.value <= tolerance;
      all_pass = all_pass && pass;
      char label[48];
      std::snprintf(label, sizeof label, "%s xi2=%g", detector_name(detector),
                    xi2);
      table.add_row({std::string("closed_vs_exact"), std::string(label),
                     worst.where, worst.value, tolerance,
                     std::string(pass ? "pass" : "FAIL")});
    }
  }
  return all_pass;
}

struct McScenario {
  std::string name;
  double xi2 = 0.0;
  double eta_i = 0.0;
  double eta_s = 0.0;
  DetectorModel detector = DetectorModel::kNumberResolving;
  std::optional<ArchitectureSpec> arch;
  oracle::MuxRoutingPolicy policy = oracle::MuxRoutingPolicy::kFirstTriggered;
};

std::vector<McScenario> mc_scenarios() {
  const double xi2_headline = p_pair_to_xi2(0.1).value();
  std::vector<McScenario> scenarios;
  scenarios.push_back({"hsps_td_weak", 0.1, 0.9, 0.9,
                       DetectorModel::kThreshold, std::nullopt,
                       oracle::MuxRoutingPolicy::kFirstTriggered});
  scenarios.push_back({"hsps_nrd_weak", 0.1, 0.9, 0.9,
                       DetectorModel::kNumberResolving, std::nullopt,
                       oracle::MuxRoutingPolicy::kFirstTriggered});
  scenarios.push_back({"hsps_nrd_half", 0.5, 0.9, 1.0,
                       DetectorModel::kNumberResolving, std::nullopt,
                       oracle::MuxRoutingPolicy::kFirstTriggered});
  scenarios.push_back({"hsps_td_quarter", 0.25, 0.99, 0.5,
                       DetectorModel::kThreshold, std::nullopt,
                       oracle::MuxRoutingPolicy::kFirstTriggered});
  scenarios.push_back({"hsps_nrd_strong", 0.6, 0.5, 0.99,
                       DetectorModel::kNumberResolving, std::nullopt,
                       oracle::MuxRoutingPolicy::kFirstTriggered});
  scenarios.push_back(
      {"logtree64_headline", xi2_headline, 0.99, 0.99,
       DetectorModel::kNumberResolving,
       ArchitectureSpec{Architecture::kLogTree, 64, Transmission{0.98},
                        Transmission{1.0}, Transmission{1.0},
                        Transmission{1.0}},
       oracle::MuxRoutingPolicy::kFirstTriggered});
  scenarios.push_back(
      {"logtree16_strong", 0.5, 0.99, 0.99, DetectorModel::kNumberResolving,
       ArchitectureSpec{Architecture::kLogTree, 16, Transmission{0.98},
                        Transmission{1.0}, Transmission{1.0},
                        Transmission{1.0}},
       oracle::MuxRoutingPolicy::kFirstTriggered});
  scenarios.push_back(
      {"gmz8_td", 0.25, 0.9, 0.9, DetectorModel::kThreshold,
       ArchitectureSpec{Architecture::kGmz, 8, Transmission{1.0},
                        Transmission{0.99}, Transmission{0.98},
                        Transmission{1.0}},
       oracle::MuxRoutingPolicy::kFirstTriggered});
  scenarios.push_back(
      {"chain8_lossy", 0.5, 0.99, 0.99, DetectorModel::kNumberResolving,
       ArchitectureSpec{Architecture::kChain, 8, Transmission{0.98},
                        Transmission{1.0}, Transmission{1.0},
                        Transmission{1.0}},
       oracle::MuxRoutingPolicy::kFirstTriggered});
  scenarios.push_back(
      {"logtree32_random_route", 0.1, 0.8, 0.7, DetectorModel::kThreshold,
       ArchitectureSpec{Architecture::kLogTree, 32, Transmission{0.9},
                        Transmission{1.0}, Transmission{1.0},
                        Transmission{1.0}},
       oracle::MuxRoutingPolicy::kRandomTriggered});
  return scenarios;
}

struct ClosedTriple {
  double p_trig = 0.0;
  double p_single = 0.0;
  double p_multi = 0.0;
};

ClosedTriple closed_reference(const McScenario& scenario,
                              const PairSourceSpec& source) {
  ClosedTriple closed;
  if (!scenario.arch) {
    const HeraldedMetrics metrics = heralded_metrics(source, scenario.detector);
    closed.p_trig = metrics.p_trig;
    closed.p_single = metrics.p_single;
    closed.p_multi = metrics.p_multi;
    return closed;
  }
  const ArchitectureSpec& spec = *scenario.arch;
  const MuxMetrics metrics =
      spec.arch == Architecture::kChain
          ? chain_metrics_exact(source, scenario.detector, spec.eta_switch,
                                spec.eta_delay, spec.n_sources)
          : mux_metrics_balanced(source, scenario.detector, spec);
  closed.p_trig = metrics.p_trig_mux;
  closed.p_single = metrics.q_exact / metrics.p_trig_mux;
  closed.p_multi = metrics.p_multi_mux;
  return closed;
}

double sigma_units(double mc, double closed, double std_error) {
  const double dev = std::abs(mc - closed);
  if (std_error > 0.0) return dev / std_error;
  return dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

// Monte Carlo estimates against the closed forms, one row per scenario
// with the worst deviation in standard error units.
bool run_mc_scenarios(OutputTable& table, std::int64_t trials,
                      std::uint64_t seed) {
  const std::vector<McScenario> scenarios = mc_scenarios();
  bool all_pass = true;
  for (std::size_t index = 0; index < scenarios.size(); ++index) {
    const McScenario& scenario = scenarios[index];
    const PairSourceSpec source{SqueezingParam{scenario.xi2},
                                Transmission{scenario.eta_i},
                                Transmission{scenario.eta_s}};
    const RngSeed stream{seed, static_cast<std::uint64_t>(index)};
    const oracle::OracleResult mc =
        scenario.arch ? oracle::mc_mux(source, scenario.detector,
                                       *scenario.arch, trials, stream,
                                       scenario.policy)
                      : oracle::mc_hsps(source, scenario.detector, trials,
                                        stream);
    const ClosedTriple closed = closed_reference(scenario, source);
    const oracle::OracleErrors& se = *mc.std_error;

    WorstDeviation worst;
    consider(worst, sigma_units(mc.p_trig, closed.p_trig, se.p_trig), 0.0,
             "p_trig");
    consider(worst, sigma_units(mc.p_single, closed.p_single, se.p_single),
             0.0, "p_single");
    consider(worst, sigma_units(mc.p_multi, closed.p_multi, se.p_multi), 0.0,
             "p_multi");

    const bool pass = worst.value <= kMcSigmaLimit;
    all_pass = all_pass && pass;
    table.add_row({std::string("mc_vs_closed"), scenario.name, worst.where,
                   worst.value, kMcSigmaLimit,
                   std::string(pass ? "pass" : "FAIL")});
  }
  return all_pass;
}

}  // namespace

ValidationReport run_validation(std::int64_t trials, std::uint64_t seed,
                                double tolerance,
                                const std::string& command_line) {
  ValidationReport report{
      OutputTable{{"check", "case", "worst_point", "deviation", "threshold",
                   "result"}},
      false};
  const bool grid_ok = run_exact_grid(report.table, tolerance);
  const bool mc_ok = run_mc_scenarios(report.table, trials, seed);
  report.passed = grid_ok && mc_ok;

  char scenario[128];
  std::snprintf(scenario, sizeof scenario,
                "{\"seed\":%llu,\"tolerance\":%g,\"trials\":%lld}",
                static_cast<unsigned long long>(seed), tolerance,
                static_cast<long long>(trials));
  stamp_standard_metadata(report.table, command_line, scenario, "none");
  report.table.add_metadata("overall",
                            report.passed ? "pass" : "FAIL");
  return report;
}

}  // namespace muxdesigner::cli
