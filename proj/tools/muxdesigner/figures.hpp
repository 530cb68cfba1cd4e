#pragma once

#include <string>
#include <vector>

#include "scenario.hpp"

namespace muxdesigner::cli {

// Names cmd_figure accepts, in display order.
const std::vector<std::string>& figure_names();

// Writes the CSV files of one figure preset into out_dir and returns
// the written paths. Curve families and axes are pinned by the preset;
// the remaining scenario fields honor user overrides.
std::vector<std::string> run_figure(const std::string& name,
                                    const Scenario& user,
                                    const std::string& out_dir,
                                    const std::string& command_line);

}  // namespace muxdesigner::cli
