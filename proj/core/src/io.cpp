#include "psq/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace psq {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  switch (c.index()) {
    case 0:
      return std::to_string(std::get<std::int64_t>(c));
    case 1:
      return std::to_string(std::get<std::uint64_t>(c));
    case 2:
      return format_real(std::get<double>(c));
    default:
      return std::get<std::string>(c);
  }
}

// Quote only when the field forces it (comma, quote, newline); quotes double.
void write_csv_field(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char ch : s) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

void write_json_string(std::ostream& out, const std::string& s) {
  out << '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\b': out << "\\b"; break;
      case '\f': out << "\\f"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out << buf;
        } else {
          out << ch;
        }
    }
  }
  out << '"';
}

void write_json_cell(std::ostream& out, const Cell& c) {
  if (c.index() == 3)
    write_json_string(out, std::get<std::string>(c));
  else
    out << cell_text(c);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty())
    throw std::invalid_argument("Table: at least one column required");
}

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("Table: row width " +
                                std::to_string(cells.size()) +
                                " does not match header width " +
                                std::to_string(columns_.size()));
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (j) out << ',';
    write_csv_field(out, columns_[j]);
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      write_csv_field(out, cell_text(row[j]));
    }
    out << '\n';
  }
}

// Hand-rolled so doubles render identically to the CSV path.
void Table::write_json(std::ostream& out) const {
  out << "[\n";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    out << "  {";
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (j) out << ", ";
      write_json_string(out, columns_[j]);
      out << ": ";
      write_json_cell(out, rows_[i][j]);
    }
    out << (i + 1 < rows_.size() ? "},\n" : "}\n");
  }
  out << "]\n";
}

Config parse_config(std::istream& in) {
  Config cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    cfg[key] = value;
  }
  return cfg;
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(in);
}

void write_config(const Config& cfg, std::ostream& out) {
  for (const auto& [key, value] : cfg) out << key << '=' << value << '\n';
}

void RunManifest::write_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : parameters) j["parameters"][key] = value;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["outputs"] = outputs;
  j["tool_version"] = tool_version;
  out << j.dump(2) << '\n';
}

RunManifest RunManifest::read_json(std::istream& in) {
  nlohmann::json j;
  in >> j;
  RunManifest m;
  m.subcommand = j.at("subcommand").get<std::string>();
  for (const auto& [key, value] : j.at("parameters").items())
    m.parameters[key] = value.get<std::string>();
  m.started_at = j.at("started_at").get<std::string>();
  m.finished_at = j.at("finished_at").get<std::string>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.tool_version = j.at("tool_version").get<std::string>();
  return m;
}

}  // namespace psq
