#include "table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "muxdesigner/version.hpp"

namespace muxdesigner::cli {

OutputTable::OutputTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void OutputTable::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("row width does not match the column count");
  }
  rows_.push_back(std::move(row));
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string OutputTable::to_csv() const {
  std::string out;
  for (const auto& [key, value] : metadata_) {
    out += "# ";
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  }
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c > 0) out += ',';
    out += columns_[c];
  }
  out += '\n';
  for (const std::vector<Cell>& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      const Cell& cell = row[c];
      if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        out += std::to_string(*i);
      } else if (const auto* d = std::get_if<double>(&cell)) {
        out += format_double(*d);
      } else {
        out += std::get<std::string>(cell);
      }
    }
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const char ch : text) {
    hash ^= static_cast<unsigned char>(ch);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string digest_string(std::string_view text) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  return buffer;
}

void stamp_standard_metadata(OutputTable& table,
                             const std::string& command_line,
                             const std::string& scenario_echo_text,
                             const std::string& defaults_line) {
  table.add_metadata("muxdesigner", kVersion);
  table.add_metadata("command", command_line);
  table.add_metadata("convention",
                     "p_pair = xi2 * (1 - xi2), inverted on the xi2 <= 1/2 "
                     "branch");
  table.add_metadata("scenario", scenario_echo_text);
  table.add_metadata("digest", digest_string(scenario_echo_text));
  table.add_metadata("defaults", defaults_line);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace muxdesigner::cli
