#include "gkflow/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gkflow::report {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Check& Report::add(const std::string& id, const std::string& anchor, double residual,
                   double tolerance) {
  checks.push_back(Check{id, anchor, residual, tolerance,
                         std::isfinite(residual) && residual <= tolerance});
  return checks.back();
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["example"] = example;
  j["pass"] = pass();
  j["environment"] = {{"h", env.h}, {"dt", env.dt}, {"samples", env.samples}, {"seed", env.seed}};
  if (!params.empty()) j["params"] = params;
  if (!warnings.empty()) j["warnings"] = warnings;
  j["checks"] = nlohmann::json::array();
  for (const Check& c : checks)
    j["checks"].push_back({{"id", c.id},
                           {"anchor", c.anchor},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
  CsvCells cells;
  cells.push_back({"id", "anchor", "residual", "tolerance", "pass"});
  for (const Check& c : checks)
    cells.push_back({c.id, c.anchor, format_double(c.residual), format_double(c.tolerance),
                     c.pass ? "1" : "0"});
  return csv_write(cells);
}

std::string csv_write(const CsvCells& cells) {
  std::ostringstream out;
  for (const auto& row : cells) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      const std::string& cell = row[i];
      if (cell.find_first_of(",\"\n") != std::string::npos) {
        out << '"';
        for (char ch : cell) {
          if (ch == '"') out << '"';
          out << ch;
        }
        out << '"';
      } else {
        out << cell;
      }
    }
    out << '\n';
  }
  return out.str();
}

CsvCells csv_parse(const std::string& text) {
  CsvCells cells;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false, row_open = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!cell.empty()) throw std::runtime_error("csv: quote inside unquoted cell");
        quoted = true;
        row_open = true;
        break;
      case ',':
        row.push_back(cell);
        cell.clear();
        row_open = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_open || !cell.empty()) {
          row.push_back(cell);
          cells.push_back(row);
        }
        cell.clear();
        row.clear();
        row_open = false;
        break;
      default:
        cell += ch;
        row_open = true;
    }
  }
  if (quoted) throw std::runtime_error("csv: unterminated quoted cell");
  if (row_open || !cell.empty()) {
    row.push_back(cell);
    cells.push_back(row);
  }
  return cells;
}

void Table::add_row(const std::vector<double>& row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("table row width " + std::to_string(row.size()) +
                                " != column count " + std::to_string(columns.size()));
  rows.push_back(row);
}

int Table::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::invalid_argument("table has no column '" + name + "'");
  return static_cast<int>(it - columns.begin());
}

std::string Table::to_csv() const {
  CsvCells cells;
  cells.push_back(columns);
  for (const auto& row : rows) {
    std::vector<std::string> r;
    r.reserve(row.size());
    for (double v : row) r.push_back(format_double(v));
    cells.push_back(r);
  }
  return csv_write(cells);
}

Table Table::from_csv(const std::string& text) {
  CsvCells cells = csv_parse(text);
  if (cells.empty()) throw std::runtime_error("csv: empty table");
  Table t;
  t.columns = cells[0];
  for (size_t r = 1; r < cells.size(); ++r) {
    if (cells[r].size() != t.columns.size())
      throw std::runtime_error("csv: row " + std::to_string(r) + " has " +
                               std::to_string(cells[r].size()) + " cells, expected " +
                               std::to_string(t.columns.size()));
    std::vector<double> row;
    row.reserve(cells[r].size());
    for (const std::string& cell : cells[r]) {
      size_t used = 0;
      double v = std::stod(cell, &used);
      if (used != cell.size()) throw std::runtime_error("csv: non-numeric cell '" + cell + "'");
      row.push_back(v);
    }
    t.rows.push_back(row);
  }
  return t;
}

std::string svg_line_plot(const Table& table, const std::string& x_column,
                          const std::vector<std::string>& y_columns, const std::string& title) {
  const int xi = table.column(x_column);
  const double w = 720, hgt = 420, ml = 60, mr = 200, mt = 40, mb = 40;
  const double pw = w - ml - mr, ph = hgt - mt - mb;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf"};
  double xmin = 0, xmax = 1;
  if (!table.rows.empty()) {
    xmin = xmax = table.rows[0][static_cast<size_t>(xi)];
    for (const auto& row : table.rows) {
      xmin = std::min(xmin, row[static_cast<size_t>(xi)]);
      xmax = std::max(xmax, row[static_cast<size_t>(xi)]);
    }
  }
  if (xmax == xmin) xmax = xmin + 1;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << hgt
      << "\" viewBox=\"0 0 " << w << " " << hgt << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << ml << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n"
      << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#999\"/>\n"
      << "<text x=\"" << ml << "\" y=\"" << hgt - 12
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << x_column << " = "
      << format_double(xmin) << "</text>\n"
      << "<text x=\"" << ml + pw << "\" y=\"" << hgt - 12
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
      << format_double(xmax) << "</text>\n";

  for (size_t s = 0; s < y_columns.size(); ++s) {
    const int yi = table.column(y_columns[s]);
    double ymin = 0, ymax = 1;
    if (!table.rows.empty()) {
      ymin = ymax = table.rows[0][static_cast<size_t>(yi)];
      for (const auto& row : table.rows) {
        ymin = std::min(ymin, row[static_cast<size_t>(yi)]);
        ymax = std::max(ymax, row[static_cast<size_t>(yi)]);
      }
    }
    double span = (ymax == ymin) ? 1.0 : ymax - ymin;
    const char* color = kColors[s % (sizeof(kColors) / sizeof(kColors[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : table.rows) {
      double px = ml + pw * (row[static_cast<size_t>(xi)] - xmin) / (xmax - xmin);
      double py = mt + ph * (1.0 - (row[static_cast<size_t>(yi)] - ymin) / span);
      out << px << "," << py << " ";
    }
    out << "\"/>\n";
    double ly = mt + 16 + 18 * static_cast<double>(s);
    out << "<rect x=\"" << ml + pw + 12 << "\" y=\"" << ly - 9
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n"
        << "<text x=\"" << ml + pw + 28 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << y_columns[s] << " ["
        << format_double(ymin) << ", " << format_double(ymax) << "]</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
    cfg.kv[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Config Config::from_env() {
  const char* path = std::getenv("GKFLOW_CONFIG");
  if (!path || !*path) return Config{};
  return load(path);
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = std::string::npos;  // fall through to the uniform error below
  }
  if (used != it->second.size())
    throw std::runtime_error("config key '" + key + "': non-numeric value '" + it->second + "'");
  return v;
}

long Config::get_long(const std::string& key, long fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  size_t used = 0;
  long v = 0;
  try {
    v = std::stol(it->second, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != it->second.size())
    throw std::runtime_error("config key '" + key + "': non-integer value '" + it->second + "'");
  return v;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace gkflow::report
