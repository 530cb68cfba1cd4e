#pragma once

#include <cstdint>
#include <string>

#include "table.hpp"

namespace muxdesigner::cli {

struct ValidationReport {
  OutputTable table;
  bool passed = false;
};

// Runs the two oracle comparisons: every closed form against the
// truncated lattice summation over the full parameter grid, and the
// seeded Monte Carlo scenarios against the closed forms at five
// standard errors.
ValidationReport run_validation(std::int64_t trials, std::uint64_t seed,
                                double tolerance,
                                const std::string& command_line);

}  // namespace muxdesigner::cli
