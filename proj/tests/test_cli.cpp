#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "jcd/analysis.hpp"
#include "jcd/commands.hpp"
#include "jcd/io.hpp"

using namespace jcd;
using namespace jcd::cli;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("jcd_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           const std::string& expected_header) {
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line == expected_header);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("g17 round-trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, 2.718281828459045e-7, -0.0, 12345.6789}) {
    CHECK(std::stod(g17(v)) == v);
  }
}

TEST_CASE("key=value files parse with comments and spacing") {
  TempDir dir;
  const std::string path = dir.file("a.config");
  REQUIRE(write_text_file(path,
                          "# comment\n n = 4 \nlambda0=0.25\n\n"
                          "tau-max = 12.5 # trailing\n"));
  const auto kv = read_key_value_file(path);
  CHECK(kv.at("n") == "4");
  CHECK(kv.at("lambda0") == "0.25");
  CHECK(kv.at("tau-max") == "12.5");

  REQUIRE(write_text_file(path, "not a pair\n"));
  CHECK_THROWS(read_key_value_file(path));
  CHECK_THROWS(read_key_value_file(dir.file("missing.config")));
}

TEST_CASE("config files map onto run configs") {
  TempDir dir;
  const std::string path = dir.file("run.config");
  REQUIRE(write_text_file(path,
                          "n=5\nlambda0=0.4\ntau-max=9\ntau-steps=33\n"
                          "theta-steps=11\nphi-steps=7\ntheta=0.3\n"
                          "out=zzz.csv\nseed=99\n"));
  RunConfig config;
  apply_config_file(config, path);
  CHECK(config.n == 5);
  CHECK(config.n_set);
  CHECK(config.lambda0.value() == 0.4);
  CHECK(config.tau_max == 9.0);
  CHECK(config.tau_steps == 33);
  CHECK(config.theta_steps == 11);
  CHECK(config.phi_steps == 7);
  CHECK(config.theta == 0.3);
  CHECK(config.output_path == "zzz.csv");
  CHECK(config.seed == 99);

  REQUIRE(write_text_file(path, "bogus-key=1\n"));
  RunConfig other;
  CHECK_THROWS(apply_config_file(other, path));
}

TEST_CASE("weights resolution honors the exactly-one rule") {
  RunConfig config;
  CHECK(resolve_weights(config).lambda0 == 0.5);  // default
  config.lambda0 = 0.7;
  CHECK(resolve_weights(config).lambda0 == 0.7);
  config.temp_ratio = 1.0;
  CHECK_THROWS_AS(resolve_weights(config), std::invalid_argument);
  config.lambda0.reset();
  CHECK(resolve_weights(config).lambda0 ==
        doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
}

TEST_CASE("surface command writes the full grid") {
  TempDir dir;
  RunConfig config;
  config.n = 1;
  config.lambda0 = 0.5;
  config.tau_max = 3.0;
  config.tau_steps = 12;
  config.theta_steps = 9;
  config.output_path = dir.file("surface.csv");
  REQUIRE(cmd_surface(config) == kOk);

  const auto rows = parse_csv(slurp(config.output_path), "tau,theta,discord");
  REQUIRE(rows.size() == 12 * 9);
  for (const auto& row : rows)
    for (double v : row) CHECK(std::isfinite(v));
  // tau = 0 rows are discord-free.
  for (int j = 0; j < 9; ++j) {
    CHECK(rows[j][0] == 0.0);
    CHECK(std::abs(rows[j][2]) < 1e-10);
  }
  // theta = 0 and theta = pi/2 (grid ends) agree at every tau: pi/2 period.
  for (int i = 0; i < 12; ++i)
    CHECK(std::abs(rows[i * 9][2] - rows[i * 9 + 8][2]) < 1e-12);
  // row-major over the (tau, theta) grid
  CHECK(rows[9][0] > 0.0);
  CHECK(rows[9][1] == 0.0);
}

TEST_CASE("dynamics command output and determinism") {
  TempDir dir;
  RunConfig config;
  config.n = 2;
  config.lambda0 = 0.5;
  config.tau_max = 6.0;
  config.tau_steps = 60;
  config.output_path = dir.file("a.csv");
  REQUIRE(cmd_dynamics(config) == kOk);
  const std::string first = slurp(config.output_path);

  const auto rows = parse_csv(first, "tau,delta,theta_star,inversion");
  REQUIRE(rows.size() == 60);
  const double sum = std::sqrt(3.0) + std::sqrt(2.0);
  const double diff = std::sqrt(3.0) - std::sqrt(2.0);
  for (const auto& row : rows) {
    for (double v : row) CHECK(std::isfinite(v));
    CHECK(row[1] >= 0.0);  // delta nonnegative
    CHECK(row[2] >= 0.0);  // theta_star within the searched quadrant
    CHECK(row[2] <= std::asin(1.0) + 1e-12);
    CHECK(std::abs(row[3] - std::sin(row[0] * sum) * std::sin(row[0] * diff)) <
          1e-12);
  }

  config.output_path = dir.file("b.csv");
  REQUIRE(cmd_dynamics(config) == kOk);
  CHECK(first == slurp(config.output_path));  // byte-identical

  // Serial execution produces the same bytes as well.
  config.output_path = dir.file("c.csv");
  config.exec = Exec::serial;
  REQUIRE(cmd_dynamics(config) == kOk);
  CHECK(first == slurp(config.output_path));
}

TEST_CASE("unwritable output paths exit with the I/O code") {
  RunConfig config;
  config.n = 1;
  config.tau_steps = 4;
  config.tau_max = 1.0;
  config.theta_steps = 3;
  config.output_path = "/nonexistent_dir/x.csv";
  CHECK(cmd_surface(config) == kIoError);
  CHECK(cmd_dynamics(config) == kIoError);
  CHECK(cmd_slice(config) == kIoError);
}

TEST_CASE("slice command reproduces fixed-theta discord") {
  TempDir dir;
  RunConfig config;
  config.n = 8;
  config.lambda0 = 0.5;
  config.tau_max = 19.0;
  config.tau_steps = 1200;
  config.output_path = dir.file("half_pi.csv");
  config.theta = std::asin(1.0);  // pi/2
  REQUIRE(cmd_slice(config) == kOk);
  const auto half_pi_rows = parse_csv(slurp(config.output_path), "tau,discord");
  REQUIRE(half_pi_rows.size() == 1200);
  CHECK(std::abs(half_pi_rows[0][1]) < 1e-10);  // tau = 0

  config.theta = std::asin(1.0) / 2.0;  // pi/4
  config.output_path = dir.file("quarter_pi.csv");
  REQUIRE(cmd_slice(config) == kOk);
  const auto quarter_rows = parse_csv(slurp(config.output_path), "tau,discord");

  // The two slices genuinely differ over a beat.
  double max_diff = 0.0;
  for (std::size_t i = 0; i < half_pi_rows.size(); ++i)
    max_diff = std::max(max_diff,
                        std::abs(half_pi_rows[i][1] - quarter_rows[i][1]));
  CHECK(max_diff > 0.01);
}

TEST_CASE("beats command reports and rejects short spans") {
  TempDir dir;
  RunConfig config;
  config.n = 1;
  config.lambda0 = 0.5;
  config.tau_max = 3.25 * analysis::predicted_beats(1).beat_period;
  config.output_path = dir.file("beats.csv");
  CHECK(cmd_beats(config) == kOk);
  const auto rows = parse_csv(slurp(config.output_path), "tau,delta,inversion");
  CHECK(rows.size() > 100);

  RunConfig short_config = config;
  short_config.tau_max = 0.5 * analysis::predicted_beats(1).beat_period;
  CHECK(cmd_beats(short_config) == kBadParameters);

  RunConfig zero = config;
  zero.n = 0;
  zero.n_set = true;
  CHECK(cmd_beats(zero) == kBadParameters);
}

TEST_CASE("validate command exit codes") {
  TempDir dir;
  RunConfig config;
  config.n = 1;
  config.n_set = true;
  config.lambda0 = 0.5;
  config.tau_max = 10.0;
  config.tau_steps = 12;
  config.theta_steps = 7;
  config.phi_steps = 4;
  config.output_path = dir.file("report.kv");
  CHECK(cmd_validate(config) == kOk);
  const std::string kv = slurp(config.output_path);
  CHECK(kv.find("pass=1") != std::string::npos);

  // Degenerate photon number runs through the same gate.
  RunConfig vacuum = config;
  vacuum.n = 0;
  vacuum.output_path.clear();
  CHECK(cmd_validate(vacuum) == kOk);

  // Negative control: a corrupted closed form must fail with exit 1.
  oracle::ValidationOptions corrupted;
  corrupted.theta_points = 7;
  corrupted.minimize_phi_points = 4;
  corrupted.check_delta = false;
  corrupted.closed_form_bias = 1e-6;
  RunConfig no_out = config;
  no_out.output_path.clear();
  CHECK(cmd_validate(no_out, &corrupted) == kValidationFailed);
}

TEST_CASE("predict command validates its argument") {
  CHECK(cmd_predict(15) == kOk);
  CHECK(cmd_predict(0) == kBadParameters);
}

TEST_CASE("plots are written when requested") {
  TempDir dir;
  RunConfig config;
  config.n = 1;
  config.lambda0 = 0.5;
  config.tau_max = 4.0;
  config.tau_steps = 24;
  config.theta_steps = 9;
  config.output_path = dir.file("surface.csv");
  config.plot_path = dir.file("surface.svg");
  REQUIRE(cmd_surface(config) == kOk);
  CHECK(std::filesystem::exists(config.plot_path));
  CHECK(slurp(config.plot_path).find("<svg") != std::string::npos);

  config.output_path = dir.file("dynamics.csv");
  config.plot_path = dir.file("dynamics.svg");
  REQUIRE(cmd_dynamics(config) == kOk);
  CHECK(std::filesystem::exists(config.plot_path));
}
