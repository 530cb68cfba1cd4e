#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "figures.hpp"
#include "muxdesigner/design.hpp"
#include "muxdesigner/hsps.hpp"
#include "muxdesigner/mux.hpp"
#include "muxdesigner/photonics.hpp"
#include "scenario.hpp"
#include "table.hpp"
#include "validate.hpp"

namespace muxdesigner::cli {

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

// One optional flag pair per lossy component: a transmission and its
// decibel twin, mutually exclusive on the command line.
struct ComponentFlags {
  double eta = 0.0;
  double loss_db = 0.0;
  CLI::Option* eta_opt = nullptr;
  CLI::Option* loss_opt = nullptr;

  void attach(CLI::App* cmd, const std::string& stem,
              const std::string& what) {
    eta_opt = cmd->add_option("--eta-" + stem, eta,
                              "Transmission of " + what + " in [0, 1]");
    loss_opt = cmd->add_option("--loss-db-" + stem, loss_db,
                               "Loss of " + what + " in dB, >= 0");
    eta_opt->excludes(loss_opt);
    loss_opt->excludes(eta_opt);
  }

  void merge(ComponentInput& target) const {
    if (eta_opt->count() > 0) {
      target.eta = eta;
      target.loss_db.reset();
    }
    if (loss_opt->count() > 0) {
      target.loss_db = loss_db;
      target.eta.reset();
    }
  }
};

// Scenario flags shared by every computing subcommand. Command line
// values override the config file field by field.
struct ScenarioFlags {
  std::string config_path;
  double xi2 = 0.0;
  double p_pair = 0.0;
  double purity = 1.0;
  std::string detector;
  std::string arch;
  int n_sources = 0;
  int m = 0;
  double rep_rate_hz = 0.0;
  double target_rate_hz = 0.0;
  ComponentFlags idler;
  ComponentFlags signal;
  ComponentFlags switch_comp;
  ComponentFlags coupler;
  ComponentFlags modulator;
  ComponentFlags delay;

  CLI::Option* config_opt = nullptr;
  CLI::Option* xi2_opt = nullptr;
  CLI::Option* p_pair_opt = nullptr;
  CLI::Option* purity_opt = nullptr;
  CLI::Option* detector_opt = nullptr;
  CLI::Option* arch_opt = nullptr;
  CLI::Option* n_sources_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* rep_opt = nullptr;
  CLI::Option* rate_opt = nullptr;

  void attach(CLI::App* cmd) {
    config_opt = cmd->add_option("--config", config_path,
                                 "Scenario file (JSON)");
    xi2_opt = cmd->add_option("--xi2", xi2,
                              "Squeezing parameter |xi|^2 in [0, 1)");
    p_pair_opt = cmd->add_option("--p-pair", p_pair,
                                 "Pair probability in (0, 0.25]");
    xi2_opt->excludes(p_pair_opt);
    p_pair_opt->excludes(xi2_opt);
    purity_opt = cmd->add_option("--purity", purity,
                                 "Heralded photon purity in (0, 1]");
    detector_opt = cmd->add_option("--detector", detector,
                                   "Heralding detector model")
                       ->check(CLI::IsMember({"td", "nrd"}));
    arch_opt = cmd->add_option("--arch", arch, "Multiplexing architecture")
                   ->check(CLI::IsMember({"logtree", "gmz", "chain"}));
    n_sources_opt =
        cmd->add_option("--n-sources", n_sources, "Number of sources, >= 1");
    m_opt = cmd->add_option("--m", m, "Simultaneous photon count, >= 1");
    rep_opt = cmd->add_option("--rep-rate-hz", rep_rate_hz,
                              "Source clock rate in Hz");
    rate_opt = cmd->add_option("--target-rate-hz", target_rate_hz,
                               "Required m photon rate in Hz");
    idler.attach(cmd, "idler", "the idler arm");
    signal.attach(cmd, "signal", "the signal arm");
    switch_comp.attach(cmd, "switch", "one 2x2 switch");
    coupler.attach(cmd, "coupler", "one GMZ coupler");
    modulator.attach(cmd, "modulator", "one GMZ modulator");
    delay.attach(cmd, "delay", "the output delay line");
  }

  Scenario resolve_inputs() const {
    Scenario scenario;
    if (config_opt->count() > 0) {
      scenario = load_scenario_file(config_path);
    }
    if (xi2_opt->count() > 0) {
      scenario.xi2 = xi2;
      scenario.p_pair.reset();
    }
    if (p_pair_opt->count() > 0) {
      scenario.p_pair = p_pair;
      scenario.xi2.reset();
    }
    if (purity_opt->count() > 0) scenario.purity = purity;
    if (detector_opt->count() > 0) scenario.detector = detector;
    if (arch_opt->count() > 0) scenario.arch = arch;
    if (n_sources_opt->count() > 0) scenario.n_sources = n_sources;
    if (m_opt->count() > 0) scenario.m = m;
    if (rep_opt->count() > 0) scenario.rep_rate_hz = rep_rate_hz;
    if (rate_opt->count() > 0) scenario.target_rate_hz = target_rate_hz;
    idler.merge(scenario.idler);
    signal.merge(scenario.signal);
    switch_comp.merge(scenario.switch_comp);
    coupler.merge(scenario.coupler);
    modulator.merge(scenario.modulator);
    delay.merge(scenario.delay);
    return scenario;
  }
};

std::string join_command_line(int argc, char** argv) {
  std::string joined;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) joined += ' ';
    joined += argv[i];
  }
  return joined;
}

std::string arch_display_name(Architecture arch) {
  switch (arch) {
    case Architecture::kLogTree:
      return "logtree";
    case Architecture::kGmz:
      return "gmz";
    case Architecture::kChain:
      return "chain";
  }
  return "logtree";
}

void emit_table(const OutputTable& table, const std::string& out_dir,
                bool out_set, const std::string& basename) {
  if (!out_set) {
    std::fputs(table.to_csv().c_str(), stdout);
    return;
  }
  const std::string path = out_dir + "/" + basename;
  write_text_file(path, table.to_csv());
  std::printf("%s\n", path.c_str());
}

int run_hsps(const ScenarioFlags& flags, const std::string& out_dir,
             bool out_set, const std::string& command_line) {
  const Scenario scenario = flags.resolve_inputs();
  ScenarioResolver resolver{scenario};
  const PairSourceSpec source = resolver.source();
  const DetectorModel detector = resolver.detector();
  const HeraldedMetrics metrics = heralded_metrics(source, detector);

  std::vector<std::string> columns = {"p_trig", "p_single", "p_multi",
                                      "p_vacuum", "p_single_impure"};
  for (int k = 0; k <= 8; ++k) columns.push_back("fock_" + std::to_string(k));
  OutputTable table{columns};
  std::vector<Cell> row = {metrics.p_trig, metrics.p_single_pure,
                           metrics.p_multi, metrics.p_vacuum,
                           metrics.p_single_impure};
  for (int k = 0; k <= 8; ++k) row.emplace_back(metrics.fock.prob(k));
  table.add_row(std::move(row));
  stamp_standard_metadata(table, command_line, scenario_echo(scenario),
                          resolver.defaults_line());
  emit_table(table, out_dir, out_set, "hsps.csv");
  return kExitSuccess;
}

int run_mux(const ScenarioFlags& flags, const std::string& out_dir,
            bool out_set, const std::string& command_line) {
  const Scenario scenario = flags.resolve_inputs();
  ScenarioResolver resolver{scenario};
  const PairSourceSpec source = resolver.source();
  const DetectorModel detector = resolver.detector();
  const ArchitectureSpec spec = resolver.architecture();

  const MuxMetrics metrics =
      spec.arch == Architecture::kChain
          ? chain_metrics_exact(source, detector, spec.eta_switch,
                                spec.eta_delay, spec.n_sources)
          : mux_metrics_balanced(source, detector, spec);
  const ResourceCounts resources = resource_counts(spec.arch, spec.n_sources);

  OutputTable table{{"arch", "n_sources", "p_trig_mux", "q_exact", "q_lower",
                     "p_multi_mux", "modulators_total", "couplers_total",
                     "modulator_depth", "coupler_depth"}};
  table.add_row({arch_display_name(spec.arch),
                 static_cast<std::int64_t>(spec.n_sources),
                 metrics.p_trig_mux, metrics.q_exact, metrics.q_lower,
                 metrics.p_multi_mux, resources.modulators_total,
                 resources.couplers_total, resources.modulator_depth,
                 resources.coupler_depth});
  stamp_standard_metadata(table, command_line, scenario_echo(scenario),
                          resolver.defaults_line());
  emit_table(table, out_dir, out_set, "mux.csv");
  return kExitSuccess;
}

// The per stage dB loss the bound based count solver sees: the
// architecture's repeated component, from whichever twin field was set.
double solver_loss_db(ScenarioResolver& resolver, const Scenario& scenario,
                      Architecture arch) {
  const Transmission eta =
      arch == Architecture::kGmz
          ? resolver.component(scenario.coupler, "coupler")
          : resolver.component(scenario.switch_comp, "switch");
  const double loss_db = -10.0 * std::log10(eta.value());
  // log10(1) is negative zero on this branch; normalize for the report.
  return loss_db == 0.0 ? 0.0 : loss_db;
}

int run_optimize_count(const ScenarioFlags& flags, CLI::Option* p_trig_opt,
                       double p_trig, int n_cap, const std::string& out_dir,
                       bool out_set, const std::string& command_line) {
  const Scenario scenario = flags.resolve_inputs();
  ScenarioResolver resolver{scenario};
  const Architecture arch = resolver.architecture_kind();
  const AuxTransmissions aux = resolver.aux();

  DesignSolution solution;
  std::string objective;
  if (p_trig_opt->count() > 0) {
    solution = optimal_source_count(arch, solver_loss_db(resolver, scenario,
                                                         arch),
                                    p_trig, aux, n_cap);
    objective = "q_star";
  } else {
    const PairSourceSpec source = resolver.source();
    const DetectorModel detector = resolver.detector();
    const ArchitectureSpec seed{
        arch, 1, resolver.component(scenario.switch_comp, "switch"),
        resolver.component(scenario.coupler, "coupler"), aux.eta_modulator,
        aux.eta_delay};
    solution = optimal_source_count_exact(source, detector, seed, n_cap);
    objective = "q_exact";
  }

  OutputTable table{{"solve", "arch", "objective", "loss_db", "n_opt",
                     "q_at_opt", "p_multi_at_opt", "saturated",
                     "modulators_total", "couplers_total", "modulator_depth",
                     "coupler_depth"}};
  table.add_row({std::string("count"), arch_display_name(arch), objective,
                 solution.loss_db, static_cast<std::int64_t>(solution.n_opt),
                 solution.q_at_opt, solution.p_multi_at_opt,
                 static_cast<std::int64_t>(solution.saturated ? 1 : 0),
                 solution.resources.modulators_total,
                 solution.resources.couplers_total,
                 solution.resources.modulator_depth,
                 solution.resources.coupler_depth});
  stamp_standard_metadata(table, command_line, scenario_echo(scenario),
                          resolver.defaults_line());
  emit_table(table, out_dir, out_set, "optimize.csv");
  return kExitSuccess;
}

int run_optimize_loss(const ScenarioFlags& flags, int n_cap,
                      const std::string& out_dir, bool out_set,
                      const std::string& command_line) {
  const Scenario scenario = flags.resolve_inputs();
  ScenarioResolver resolver{scenario};
  const PairSourceSpec source = resolver.source();
  const DetectorModel detector = resolver.detector();
  const Architecture arch = resolver.architecture_kind();
  const AuxTransmissions aux = resolver.aux();
  const MPhotonTarget target = resolver.target();

  const DesignSolution solution =
      max_tolerable_switch_loss(arch, target, source, detector, aux, n_cap);

  OutputTable table{{"solve", "arch", "m", "max_loss_db", "n_opt", "q_at_opt",
                     "p_multi_mux_m", "achieved_rate_hz", "feasible",
                     "at_loss_cap", "saturated", "modulators_total",
                     "couplers_total", "modulator_depth", "coupler_depth"}};
  table.add_row({std::string("loss"), arch_display_name(arch),
                 static_cast<std::int64_t>(target.m), solution.loss_db,
                 static_cast<std::int64_t>(solution.n_opt), solution.q_at_opt,
                 solution.p_multi_at_opt, solution.achieved_rate_hz,
                 static_cast<std::int64_t>(solution.feasible ? 1 : 0),
                 static_cast<std::int64_t>(solution.at_loss_cap ? 1 : 0),
                 static_cast<std::int64_t>(solution.saturated ? 1 : 0),
                 solution.resources.modulators_total,
                 solution.resources.couplers_total,
                 solution.resources.modulator_depth,
                 solution.resources.coupler_depth});
  stamp_standard_metadata(table, command_line, scenario_echo(scenario),
                          resolver.defaults_line());
  emit_table(table, out_dir, out_set, "optimize.csv");
  return solution.feasible ? kExitSuccess : kExitValidationFailure;
}

int run_figure_cmd(const std::string& name, const ScenarioFlags& flags,
                   const std::string& out_dir,
                   const std::string& command_line) {
  const std::vector<std::string> paths =
      run_figure(name, flags.resolve_inputs(), out_dir, command_line);
  for (const std::string& path : paths) std::printf("%s\n", path.c_str());
  return kExitSuccess;
}

int run_validate(std::int64_t trials, std::uint64_t seed, double tolerance,
                 const std::string& out_dir, bool out_set,
                 const std::string& command_line) {
  const ValidationReport report =
      run_validation(trials, seed, tolerance, command_line);
  emit_table(report.table, out_dir, out_set, "validate.csv");
  return report.passed ? kExitSuccess : kExitValidationFailure;
}

}  // namespace

int run(int argc, char** argv) {
  const std::string command_line = join_command_line(argc, argv);

  CLI::App app{"Design calculator for multiplexed heralded photon sources"};
  app.require_subcommand(1);

  std::string out_dir = ".";

  CLI::App* hsps_cmd =
      app.add_subcommand("hsps", "Heralded statistics of one source");
  ScenarioFlags hsps_flags;
  hsps_flags.attach(hsps_cmd);
  CLI::Option* hsps_out = hsps_cmd->add_option("--out", out_dir,
                                               "Directory for CSV output");

  CLI::App* mux_cmd =
      app.add_subcommand("mux", "Per cycle metrics of a multiplexed source");
  ScenarioFlags mux_flags;
  mux_flags.attach(mux_cmd);
  CLI::Option* mux_out = mux_cmd->add_option("--out", out_dir,
                                             "Directory for CSV output");

  CLI::App* opt_cmd =
      app.add_subcommand("optimize", "Solve for source count or loss budget");
  ScenarioFlags opt_flags;
  opt_flags.attach(opt_cmd);
  std::string solve_mode;
  opt_cmd->add_option("--solve", solve_mode,
                      "count: best source number; loss: switch loss budget")
      ->required()
      ->check(CLI::IsMember({"count", "loss"}));
  double p_trig_flag = 0.0;
  CLI::Option* p_trig_opt = opt_cmd->add_option(
      "--p-trig", p_trig_flag,
      "Per source trigger probability for the bound based count solve");
  int n_cap = kDefaultSourceCap;
  opt_cmd->add_option("--n-cap", n_cap, "Largest admissible source count");
  CLI::Option* opt_out = opt_cmd->add_option("--out", out_dir,
                                             "Directory for CSV output");

  CLI::App* fig_cmd =
      app.add_subcommand("figure", "Write a preset curve family as CSV");
  std::string figure_name;
  fig_cmd->add_option("name", figure_name, "Preset name")->required();
  ScenarioFlags fig_flags;
  fig_flags.attach(fig_cmd);
  fig_cmd->add_option("--out", out_dir, "Directory for CSV output");

  CLI::App* val_cmd =
      app.add_subcommand("validate", "Compare closed forms against oracles");
  std::int64_t trials = 1000000;
  std::uint64_t seed = 12345;
  double tolerance = 1e-10;
  val_cmd->add_option("--trials", trials, "Monte Carlo trials per scenario");
  val_cmd->add_option("--seed", seed, "Monte Carlo seed");
  val_cmd->add_option("--tolerance", tolerance,
                      "Absolute tolerance against the truncated summation");
  CLI::Option* val_out = val_cmd->add_option("--out", out_dir,
                                             "Directory for CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsage;
  }

  try {
    if (hsps_cmd->parsed()) {
      return run_hsps(hsps_flags, out_dir, hsps_out->count() > 0,
                      command_line);
    }
    if (mux_cmd->parsed()) {
      return run_mux(mux_flags, out_dir, mux_out->count() > 0, command_line);
    }
    if (opt_cmd->parsed()) {
      if (solve_mode == "count") {
        return run_optimize_count(opt_flags, p_trig_opt, p_trig_flag, n_cap,
                                  out_dir, opt_out->count() > 0,
                                  command_line);
      }
      return run_optimize_loss(opt_flags, n_cap, out_dir,
                               opt_out->count() > 0, command_line);
    }
    if (fig_cmd->parsed()) {
      return run_figure_cmd(figure_name, fig_flags, out_dir, command_line);
    }
    if (val_cmd->parsed()) {
      return run_validate(trials, seed, tolerance, out_dir,
                          val_out->count() > 0, command_line);
    }
  } catch (const ConfigError& error) {
    std::fprintf(stderr, "config error: %s\n", error.what());
    return kExitUsage;
  } catch (const std::domain_error& error) {
    std::fprintf(stderr, "invalid scenario: %s\n", error.what());
    return kExitUsage;
  } catch (const std::invalid_argument& error) {
    std::fprintf(stderr, "invalid scenario: %s\n", error.what());
    return kExitUsage;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace muxdesigner::cli

int main(int argc, char** argv) { return muxdesigner::cli::run(argc, argv); }
