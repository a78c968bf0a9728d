#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace psq {

// %.17g rendering used everywhere a real crosses the text boundary; 17
// significant digits round-trip doubles exactly.
std::string format_real(double x);

// ---------------------------------------------------------------------------
// Tabular output, one schema per report.
// ---------------------------------------------------------------------------

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

class Table {
 public:
  explicit Table(std::vector<std::string> columns);
  void add_row(std::vector<Cell> cells);  // size must match the header
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;  // array of objects, same content

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// ---------------------------------------------------------------------------
// Config files: UTF-8 `key=value` lines, '#' comments, whitespace trimmed.
// ---------------------------------------------------------------------------

using Config = std::map<std::string, std::string>;

Config parse_config(std::istream& in);
Config parse_config_file(const std::string& path);  // missing file -> throw
void write_config(const Config& cfg, std::ostream& out);

// ---------------------------------------------------------------------------
// Run manifest: enough to reproduce a run byte for byte.
// ---------------------------------------------------------------------------

struct RunManifest {
  std::string subcommand;
  Config parameters;        // exactly the values the run used, post-precedence
  std::string started_at;   // ISO 8601 UTC
  std::string finished_at;
  std::vector<std::string> outputs;  // files written, relative or absolute
  std::string tool_version;

  void write_json(std::ostream& out) const;
  static RunManifest read_json(std::istream& in);
};

}  // namespace psq
