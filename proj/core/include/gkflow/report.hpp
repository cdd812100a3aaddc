#pragma once

// Machine-readable run reports: a versioned JSON object per command, CSV
// tables that round-trip through the bundled parser, a dependency-free SVG
// line plot, and the flat key=value run configuration.

#include <map>
#include <string>
#include <vector>

namespace gkflow::report {

// One verification record.  `anchor` describes the checked identity in
// plain mathematical terms; `id` is the stable machine key.
struct Check {
  std::string id;
  std::string anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Environment {
  double h = 1e-3;
  double dt = 1e-2;
  int samples = 64;
  unsigned long seed = 0;
};

struct Report {
  static constexpr int kSchemaVersion = 1;

  std::string command;
  std::string example;
  Environment env;
  std::map<std::string, double> params;  // extra run parameters (t_max, ...)
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  // Appends a record; pass is residual <= tolerance.
  Check& add(const std::string& id, const std::string& anchor, double residual,
             double tolerance);
  // Overall verdict: conjunction over all records.
  bool pass() const;

  std::string to_json() const;  // one UTF-8 JSON object, schema_version pinned
  std::string to_csv() const;   // header row id,anchor,residual,tolerance,pass
};

// Generic CSV cells (first row is the header).  Writing quotes any cell that
// needs it; parsing understands quoted cells with doubled quotes.
using CsvCells = std::vector<std::vector<std::string>>;
std::string csv_write(const CsvCells& cells);
CsvCells csv_parse(const std::string& text);  // throws std::runtime_error on bad syntax

// Numeric table with named columns; doubles are written with enough digits
// to round-trip exactly.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(const std::vector<double>& row);  // throws on width mismatch
  int column(const std::string& name) const;     // throws if absent

  std::string to_csv() const;
  static Table from_csv(const std::string& text);  // throws std::runtime_error
};

// Line plot of selected columns against an x column.  Each series is scaled
// to its own range (annotated in the legend) so residuals of very different
// magnitudes stay readable on one canvas.
std::string svg_line_plot(const Table& table, const std::string& x_column,
                          const std::vector<std::string>& y_columns,
                          const std::string& title);

// Flat key=value configuration ('#' comments, blank lines ignored).
struct Config {
  std::map<std::string, std::string> kv;

  static Config parse(const std::string& text);      // throws on malformed lines
  static Config load(const std::string& path);       // throws if unreadable
  static Config from_env();  // file named by GKFLOW_CONFIG; empty config if unset

  bool has(const std::string& key) const { return kv.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
};

// Writes content to path (parent directory must exist); throws on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace gkflow::report
