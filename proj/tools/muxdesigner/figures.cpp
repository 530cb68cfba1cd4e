#include "figures.hpp"

#include <stdexcept>

#include "table.hpp"

namespace muxdesigner::cli {

namespace {

std::vector<double> loss_axis() {
  std::vector<double> axis;
  axis.reserve(301);
  for (int i = 0; i <= 300; ++i) axis.push_back(i / 100.0);
  return axis;
}

std::string curve_path(const std::string& out_dir, const std::string& figure,
                       const std::string& param, double value) {
  return out_dir + "/" + figure + "_" + param + "_" + format_double(value) +
         ".csv";
}

std::vector<std::string> multi_photon_curves(const Scenario& user,
                                             DetectorModel detector,
                                             const std::string& figure,
                                             const std::string& out_dir,
                                             const std::string& command_line) {
  static constexpr double kSqueezings[] = {0.01, 0.1, 0.25, 0.5};
  std::vector<std::string> paths;
  for (const double xi2 : kSqueezings) {
    Scenario curve = user;
    curve.xi2 = xi2;
    curve.p_pair.reset();
    curve.detector = detector == DetectorModel::kThreshold ? "td" : "nrd";
    ScenarioResolver resolver(curve);
    const Transmission eta_s = resolver.component(curve.signal, "signal");
    OutputTable table({"eta_i", "p_multi"});
    for (int i = 1; i <= 100; ++i) {
      const double eta_i = i / 100.0;
      const PairSourceSpec source(SqueezingParam(xi2), Transmission(eta_i),
                                  eta_s);
      table.add_row({eta_i, heralded_multi_prob(source, detector)});
    }
    stamp_standard_metadata(table, command_line, scenario_echo(curve),
                            resolver.defaults_line());
    const std::string path = curve_path(out_dir, figure, "xi2", xi2);
    write_text_file(path, table.to_csv());
    paths.push_back(path);
  }
  return paths;
}

std::vector<std::string> balanced_optimum_curves(
    const Scenario& user, Architecture arch, const std::string& figure,
    const std::string& out_dir, const std::string& command_line) {
  static constexpr double kTriggers[] = {0.01, 0.1, 0.25};
  std::vector<std::string> paths;
  for (const double p_trig : kTriggers) {
    Scenario curve = user;
    curve.arch = arch == Architecture::kLogTree ? "logtree" : "gmz";
    ScenarioResolver resolver(curve);
    const AuxTransmissions aux = resolver.aux();
    OutputTable table({"loss_db", "q_star", "n_opt", "saturated"});
    const std::vector<SweepRecord> records =
        sweep({{"loss_db", loss_axis()}}, [&](const std::vector<double>& in) {
          SweepRecord record;
          record.inputs = in;
          record.solution = optimal_source_count(arch, in[0], p_trig, aux);
          return record;
        });
    for (const SweepRecord& record : records) {
      table.add_row({record.inputs[0], record.solution.q_at_opt,
                     static_cast<std::int64_t>(record.solution.n_opt),
                     static_cast<std::int64_t>(record.solution.saturated)});
    }
    stamp_standard_metadata(table, command_line, scenario_echo(curve),
                            resolver.defaults_line());
    const std::string path = curve_path(out_dir, figure, "ptrig", p_trig);
    write_text_file(path, table.to_csv());
    paths.push_back(path);
  }
  return paths;
}

std::vector<std::string> chain_length_curves(const Scenario& user,
                                             const std::string& out_dir,
                                             const std::string& command_line) {
  static constexpr double kTriggers[] = {0.1, 0.25};
  static constexpr double kFraction = 0.9;
  std::vector<std::string> paths;
  for (const double p_trig : kTriggers) {
    Scenario curve = user;
    curve.arch = "chain";
    ScenarioResolver resolver(curve);
    const Transmission eta_delay = resolver.component(curve.delay, "delay");
    OutputTable table({"loss_db", "q_chain", "n_cells"});
    for (const double loss_db : loss_axis()) {
      const Transmission eta = db_to_transmission(loss_db);
      const int cells = chain_length_for_fraction(kFraction, p_trig, eta);
      const double q = chain_q_lower(1.0, p_trig, eta, eta_delay, cells);
      table.add_row({loss_db, q, static_cast<std::int64_t>(cells)});
    }
    stamp_standard_metadata(table, command_line, scenario_echo(curve),
                            resolver.defaults_line());
    const std::string path = curve_path(out_dir, "fig6b", "ptrig", p_trig);
    write_text_file(path, table.to_csv());
    paths.push_back(path);
  }
  return paths;
}

std::vector<std::string> chain_vs_tree_curves(const Scenario& user,
                                              const std::string& out_dir,
                                              const std::string& command_line) {
  static constexpr double kTriggers[] = {0.1, 0.25};
  std::vector<std::string> paths;
  for (const double p_trig : kTriggers) {
    Scenario curve = user;
    ScenarioResolver resolver(curve);
    const Transmission eta_delay = resolver.component(curve.delay, "delay");
    const AuxTransmissions aux{eta_delay, Transmission(1.0)};
    OutputTable table({"loss_db", "q_chain_max", "q_logtree_star"});
    for (const double loss_db : loss_axis()) {
      const Transmission eta = db_to_transmission(loss_db);
      const double q_chain = chain_q_max(1.0, p_trig, eta, eta_delay);
      const DesignSolution tree =
          optimal_source_count(Architecture::kLogTree, loss_db, p_trig, aux);
      table.add_row({loss_db, q_chain, tree.q_at_opt});
    }
    stamp_standard_metadata(table, command_line, scenario_echo(curve),
                            resolver.defaults_line());
    const std::string path = curve_path(out_dir, "fig6c", "ptrig", p_trig);
    write_text_file(path, table.to_csv());
    paths.push_back(path);
  }
  return paths;
}

std::vector<std::string> tolerable_loss_curves(const Scenario& user,
                                               bool count_table,
                                               const std::string& out_dir,
                                               const std::string& command_line) {
  static constexpr double kEfficiencies[] = {0.9, 0.99};
  const std::string figure = count_table ? "fig7b" : "fig7a";
  std::vector<std::string> paths;
  for (const double eta : kEfficiencies) {
    Scenario curve = user;
    if (!curve.xi2 && !curve.p_pair) curve.p_pair = 0.1;
    curve.idler = ComponentInput{eta, std::nullopt};
    curve.signal = ComponentInput{eta, std::nullopt};
    curve.arch = "logtree";
    ScenarioResolver resolver(curve);
    const PairSourceSpec source = resolver.source();
    const DetectorModel detector = resolver.detector();
    const double rep =
        curve.rep_rate_hz ? *curve.rep_rate_hz : 1e8;
    const double rate =
        curve.target_rate_hz ? *curve.target_rate_hz : 100.0;
    OutputTable table(
        count_table
            ? std::vector<std::string>{"m", "n_sources"}
            : std::vector<std::string>{"m", "max_loss_db", "p_multi_mux_m",
                                       "at_loss_cap", "feasible"});
    for (int m = 2; m <= 40; ++m) {
      const MPhotonTarget target(m, rep, rate);
      const DesignSolution solution = max_tolerable_switch_loss(
          Architecture::kLogTree, target, source, detector);
      if (count_table) {
        table.add_row({static_cast<std::int64_t>(m),
                       static_cast<std::int64_t>(solution.n_opt)});
      } else {
        table.add_row({static_cast<std::int64_t>(m), solution.loss_db,
                       solution.p_multi_at_opt,
                       static_cast<std::int64_t>(solution.at_loss_cap),
                       static_cast<std::int64_t>(solution.feasible)});
      }
    }
    stamp_standard_metadata(table, command_line, scenario_echo(curve),
                            resolver.defaults_line());
    const std::string path = curve_path(out_dir, figure, "eta", eta);
    write_text_file(path, table.to_csv());
    paths.push_back(path);
  }
  return paths;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> kNames = {
      "fig2a", "fig2b", "fig3", "fig5", "fig6b", "fig6c", "fig7a", "fig7b"};
  return kNames;
}

std::vector<std::string> run_figure(const std::string& name,
                                    const Scenario& user,
                                    const std::string& out_dir,
                                    const std::string& command_line) {
  if (name == "fig2a") {
    return multi_photon_curves(user, DetectorModel::kThreshold, "fig2a",
                               out_dir, command_line);
  }
  if (name == "fig2b") {
    return multi_photon_curves(user, DetectorModel::kNumberResolving, "fig2b",
                               out_dir, command_line);
  }
  if (name == "fig3") {
    return balanced_optimum_curves(user, Architecture::kLogTree, "fig3",
                                   out_dir, command_line);
  }
  if (name == "fig5") {
    return balanced_optimum_curves(user, Architecture::kGmz, "fig5", out_dir,
                                   command_line);
  }
  if (name == "fig6b") return chain_length_curves(user, out_dir, command_line);
  if (name == "fig6c") return chain_vs_tree_curves(user, out_dir, command_line);
  if (name == "fig7a") {
    return tolerable_loss_curves(user, false, out_dir, command_line);
  }
  if (name == "fig7b") {
    return tolerable_loss_curves(user, true, out_dir, command_line);
  }
  std::string known;
  for (const std::string& figure : figure_names()) {
    if (!known.empty()) known += ", ";
    known += figure;
  }
  throw ConfigError("unknown figure \"" + name + "\"; valid names: " + known);
}

}  // namespace muxdesigner::cli
