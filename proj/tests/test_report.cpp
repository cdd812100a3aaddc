#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gkflow/report.hpp"

using namespace gkflow::report;

TEST_SUITE("report") {

TEST_CASE("verification records and the overall verdict") {
  Report r;
  Check& ok = r.add("pairing", "pairing is symmetric", 1e-9, 1e-8);
  CHECK(ok.pass);
  CHECK(r.pass());

  Check& bad = r.add("jacobi", "Jacobi identity", 2e-8, 1e-8);
  CHECK(!bad.pass);
  CHECK(!r.pass());

  Report nan_report;
  CHECK(!nan_report.add("blowup", "finite residual", std::nan(""), 1.0).pass);
  CHECK(!nan_report.pass());
}

TEST_CASE("json document carries the pinned schema") {
  Report r;
  r.command = "axioms";
  r.example = "kahler_torus_T4";
  r.env.h = 1e-3;
  r.env.dt = 1e-2;
  r.env.samples = 32;
  r.env.seed = 7;
  r.params["t_max"] = 1.0;
  r.warnings.push_back("slow convergence on axis 2");
  r.add("skew", "bracket skew part matches d<a,a>/2", 3e-9, 1e-6);
  r.add("jacobi", "Jacobi identity", 1e-7, 1e-6);

  nlohmann::json j = nlohmann::json::parse(r.to_json());
  CHECK(j["schema_version"] == Report::kSchemaVersion);
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "axioms");
  CHECK(j["example"] == "kahler_torus_T4");
  CHECK(j["pass"] == true);
  CHECK(j["environment"]["h"] == 1e-3);
  CHECK(j["environment"]["dt"] == 1e-2);
  CHECK(j["environment"]["samples"] == 32);
  CHECK(j["environment"]["seed"] == 7);
  CHECK(j["params"]["t_max"] == 1.0);
  CHECK(j["warnings"].size() == 1);
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][0]["id"] == "skew");
  CHECK(j["checks"][0]["anchor"] == "bracket skew part matches d<a,a>/2");
  CHECK(j["checks"][0]["residual"] == 3e-9);
  CHECK(j["checks"][0]["tolerance"] == 1e-6);
  CHECK(j["checks"][0]["pass"] == true);
}

TEST_CASE("report csv round-trips through the bundled parser") {
  Report r;
  r.add("torsion", "torsion equals the projected twist, T(a, b, c) form", 0.25, 0.5);
  r.add("closed", "dF = 0", 1e-12, 1e-8);
  CsvCells cells = csv_parse(r.to_csv());
  REQUIRE(cells.size() == 3);
  CHECK(cells[0] == std::vector<std::string>{"id", "anchor", "residual", "tolerance", "pass"});
  CHECK(cells[1][0] == "torsion");
  CHECK(cells[1][1] == "torsion equals the projected twist, T(a, b, c) form");
  CHECK(std::stod(cells[1][2]) == 0.25);
  CHECK(cells[1][4] == "1");
  CHECK(cells[2][0] == "closed");
  CHECK(std::stod(cells[2][2]) == 1e-12);
}

TEST_CASE("csv cells with quoting round-trip exactly") {
  CsvCells cells{{"plain", "with,comma", "with\"quote"},
                 {"line\nbreak", "", "trailing"},
                 {"a", "b", "c"}};
  CHECK(csv_parse(csv_write(cells)) == cells);

  CHECK_THROWS_AS(csv_parse("\"never closed"), std::runtime_error);
  CHECK_THROWS_AS(csv_parse("mid\"quote,x"), std::runtime_error);
}

TEST_CASE("numeric table: exact double round-trip and malformed input") {
  Table t;
  t.columns = {"t", "r1", "r2"};
  t.add_row({0.1, 1.0 / 3.0, 1e-17});
  t.add_row({0.2, 2.0 / 7.0, 3.5});
  CHECK(t.column("r2") == 2);
  CHECK_THROWS_AS(t.column("absent"), std::invalid_argument);
  CHECK_THROWS_AS(t.add_row({1.0, 2.0}), std::invalid_argument);

  Table back = Table::from_csv(t.to_csv());
  CHECK(back.columns == t.columns);
  REQUIRE(back.rows.size() == 2);
  for (size_t r = 0; r < 2; ++r)
    for (size_t c = 0; c < 3; ++c) CHECK(back.rows[r][c] == t.rows[r][c]);

  CHECK_THROWS_AS(Table::from_csv(""), std::runtime_error);
  CHECK_THROWS_AS(Table::from_csv("t,r1\n0.1,12abc\n"), std::runtime_error);
  CHECK_THROWS_AS(Table::from_csv("t,r1\n0.1\n"), std::runtime_error);  // ragged row
}

TEST_CASE("svg line plot emits one polyline per series with a scaled legend") {
  Table t;
  t.columns = {"t", "r1", "margin"};
  for (int k = 1; k <= 5; ++k)
    t.add_row({0.1 * k, 1e-9 * k, 1.0 - 0.05 * k});
  std::string svg = svg_line_plot(t, "t", {"r1", "margin"}, "flow residuals");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("flow residuals") != std::string::npos);
  CHECK(svg.find("r1 [") != std::string::npos);      // legend carries the range
  CHECK(svg.find("margin [") != std::string::npos);
  size_t first = svg.find("<polyline");
  REQUIRE(first != std::string::npos);
  CHECK(svg.find("<polyline", first + 1) != std::string::npos);  // second series
}

TEST_CASE("flat configuration: parsing, lookups, validation") {
  Config cfg = Config::parse(
      "# run defaults\n"
      "  h = 1e-3  \n"
      "example=synthetic_flow_R4   # inline comment\n"
      "empty=\n"
      "chain = a=b\n"
      "steps = 42\n");
  CHECK(cfg.has("h"));
  CHECK(cfg.get("h", "") == "1e-3");
  CHECK(cfg.get("example", "") == "synthetic_flow_R4");
  CHECK(cfg.get("empty", "fallback").empty());
  CHECK(cfg.get("chain", "") == "a=b");  // split at the first '='
  CHECK(cfg.get("absent", "fallback") == "fallback");
  CHECK(cfg.get_double("h", 0.0) == 1e-3);
  CHECK(cfg.get_double("absent", 2.5) == 2.5);
  CHECK(cfg.get_long("steps", 0) == 42);
  CHECK_THROWS_AS(cfg.get_double("example", 0.0), std::runtime_error);
  CHECK_THROWS_AS(cfg.get_long("h", 0), std::runtime_error);  // 1e-3 is not an integer

  CHECK_THROWS_AS(Config::parse("novalue\n"), std::runtime_error);
  CHECK_THROWS_AS(Config::parse(" = 3\n"), std::runtime_error);
  CHECK(Config::parse("# only comments\n\n").kv.empty());
}

TEST_CASE("configuration file and environment lookup") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "gkflow_test_config.cfg";
  write_file(path.string(), "dt = 5e-3\nexample = torus_T3_H\n");

  Config loaded = Config::load(path.string());
  CHECK(loaded.get_double("dt", 0.0) == 5e-3);

  ::setenv("GKFLOW_CONFIG", path.string().c_str(), 1);
  Config env = Config::from_env();
  CHECK(env.get("example", "") == "torus_T3_H");

  ::unsetenv("GKFLOW_CONFIG");
  CHECK(Config::from_env().kv.empty());

  CHECK_THROWS_AS(Config::load((fs::temp_directory_path() / "gkflow_missing.cfg").string()),
                  std::runtime_error);
  fs::remove(path);
}

TEST_CASE("write_file round-trips and reports failures") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "gkflow_test_write.txt";
  write_file(path.string(), "line1\nline2");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "line1\nline2");
  fs::remove(path);

  CHECK_THROWS_AS(write_file("/gkflow_no_such_dir/out.txt", "x"), std::runtime_error);
}

}  // TEST_SUITE
