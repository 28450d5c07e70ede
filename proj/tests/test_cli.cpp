#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <vector>

#include "cli_runner.hpp"
#include "json.hpp"
#include "llt/families.hpp"
#include "llt/limit_law.hpp"
#include "llt/llt_stats.hpp"
#include "llt/report_io.hpp"

namespace {

const char *kBernSpec = R"({"kind": "bernoulli", "params": {"p": 0.5}, "n": 4096})";
const char *kSpan2Spec = R"({"kind": "span_lattice", "params": {"d": 2}, "n": 1,
  "base": {"kind": "bernoulli", "params": {"p": 0.5}}})";

std::vector<std::vector<std::string>> read_csv(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

} // namespace

TEST_CASE("stats prints a report matching the library") {
  cli::write_file("cli_bern.json", kBernSpec);
  const auto res = cli::run("stats --spec cli_bern.json --law normal --mod 2,3 --json");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  const auto expected = llt::full_report(llt::sum_law(llt::bernoulli(0.5, 4096)),
                                         *llt::standard_normal(), {2, 3}, 4096);
  CHECK(j.at("n") == 4096);
  CHECK(j.at("eps").get<double>() == expected.eps);
  CHECK(j.at("v") == expected.v);
  CHECK(j.at("scaled_llt_err").get<double>() == expected.scaled_llt_err);
  CHECK(j.at("window_diff").get<double>() == expected.window_diff);
  CHECK(j.at("mod_dev").at("3").get<double>() == expected.mod_dev.at(3));
}

TEST_CASE("stats error paths") {
  cli::write_file("cli_point.json", R"({"kind": "finite", "params": {"offset": 2, "weights": [1.0]}, "n": 3})");
  CHECK(cli::run("stats --spec cli_point.json").exit_code == 2);

  cli::write_file("cli_bern.json", kBernSpec);
  CHECK(cli::run("stats --spec cli_bern.json --law cauchy").exit_code == 2);
  CHECK(cli::run("stats --spec does_not_exist.json").exit_code == 2);
  cli::write_file("cli_bad.json", R"({"kind": "bernoulli", "params": {"p": 2.0}, "n": 3})");
  CHECK(cli::run("stats --spec cli_bad.json").exit_code == 2);
  CHECK(cli::run("stats").exit_code == 2);
  CHECK(cli::run("frobnicate").exit_code == 2);
  CHECK(cli::run("stats --spec cli_bern.json", "LLT_MAX_SUPPORT=100").exit_code == 3);
  CHECK(cli::run("stats --spec cli_bern.json", "LLT_MAX_SUPPORT=abc").exit_code == 2);
}

TEST_CASE("sweep writes one row per n") {
  cli::write_file("cli_bern.json", kBernSpec);
  const auto res = cli::run("sweep --spec cli_bern.json --n 256,1024,4096 --out cli_bern.csv "
                            "--plot cli_bern.svg --mod 2");
  REQUIRE(res.exit_code == 0);
  const auto rows = read_csv(cli::read_file("cli_bern.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"n", "a", "b", "eps", "v", "window_diff", "shift_diff",
                                            "llt_err", "b_window_diff", "b_llt_err", "mod_dev_2"});
  CHECK(rows[1][0] == "256");
  CHECK(rows[3][0] == "4096");
  const double e256 = std::stod(rows[1][9]);
  const double e1024 = std::stod(rows[2][9]);
  const double e4096 = std::stod(rows[3][9]);
  CHECK(e256 > e1024);
  CHECK(e1024 > e4096);
  // Cells reproduce the library values exactly.
  const auto lib = llt::full_report(llt::sum_law(llt::bernoulli(0.5, 1024)),
                                    *llt::standard_normal(), {2}, 1024);
  CHECK(rows[2] == read_csv(llt::sweep_csv_row(lib, {2}))[0]);
  CHECK(cli::read_file("cli_bern.svg").find("<polyline") != std::string::npos);
}

TEST_CASE("sweep on the span-2 family") {
  cli::write_file("cli_span2.json", kSpan2Spec);
  REQUIRE(cli::run("sweep --spec cli_span2.json --n 256,1024,4096 --out cli_span2.csv --mod 2")
              .exit_code == 0);
  const auto rows = read_csv(cli::read_file("cli_span2.csv"));
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double scaled = std::stod(rows[i][9]);
    CHECK(scaled >= 0.35);
    CHECK(scaled <= 0.45);
    CHECK(std::stod(rows[i][10]) == 0.5);
  }
}

TEST_CASE("sweep argument errors") {
  cli::write_file("cli_bern.json", kBernSpec);
  CHECK(cli::run("sweep --spec cli_bern.json --n , --out x.csv").exit_code == 2);
  CHECK(cli::run("sweep --spec cli_bern.json --n 1024,256 --out x.csv").exit_code == 2);
  CHECK(cli::run("sweep --spec cli_bern.json --n 12a --out x.csv").exit_code == 2);
  CHECK(cli::run("sweep --spec cli_bern.json --n 16 --out /nonexistent/dir/x.csv").exit_code == 2);
}

TEST_CASE("decompose") {
  cli::write_file("cli_bern.json", kBernSpec);
  auto res = cli::run("decompose --spec cli_bern.json --m 2040 --v 1");
  REQUIRE(res.exit_code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("term_II").get<double>() == 0.0);
  CHECK(j.at("identity_residual").get<double>() <= 1e-12);

  const auto stats = nlohmann::json::parse(cli::run("stats --spec cli_bern.json --json").out);
  const auto v = stats.at("v").get<std::int64_t>();
  const double b = stats.at("b").get<double>();
  const double eps = stats.at("eps").get<double>();
  const double bound = static_cast<double>(v - 1) / b *
                           llt::modulus_of_continuity(*llt::standard_normal(),
                                                      static_cast<double>(v) / b) +
                       2.0 * eps;
  res = cli::run("decompose --spec cli_bern.json --m 2030 --v " + std::to_string(v));
  REQUIRE(res.exit_code == 0);
  j = nlohmann::json::parse(res.out);
  CHECK(j.at("v") == v);
  CHECK(j.at("identity_residual").get<double>() <= 1e-12);
  CHECK(std::fabs(j.at("term_I").get<double>() - j.at("gaussian_I_approx").get<double>()) <= bound);

  CHECK(cli::run("decompose --spec cli_bern.json --m 0 --v 0").exit_code == 2);
}
