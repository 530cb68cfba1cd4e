#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace muxdesigner::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

// Rectangular result table serialized as CSV: '#' metadata lines, a
// header row, then data rows. Doubles carry 12 significant digits.
class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columns);

  void add_metadata(std::string key, std::string value);
  void add_row(std::vector<Cell> row);

  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::string>& columns() const { return columns_; }

  std::string to_csv() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

// Fixed format for every number the tool emits.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view text);

// Hex digest string of the scenario echo, recorded in the metadata so
// any table is traceable to its inputs.
std::string digest_string(std::string_view text);

// The metadata block every table carries: tool version, invoking
// command, the pair probability convention, the scenario echo with its
// digest, and the defaults that filled unset fields.
void stamp_standard_metadata(OutputTable& table,
                             const std::string& command_line,
                             const std::string& scenario_echo_text,
                             const std::string& defaults_line);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace muxdesigner::cli
