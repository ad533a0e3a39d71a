#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "ghzst/curves.hpp"
#include "ghzst/errors.hpp"
#include "ghzst/report_io.hpp"
#include "ghzst/svg_plot.hpp"
#include "gtest/gtest.h"

using namespace ghzst;

namespace fs = std::filesystem;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GHZST_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ghzst_io_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(curves, eps_grid_values) {
  const auto v = EpsGrid{0.0, 0.14, 0.01}.values();
  ASSERT_EQ(v.size(), 15u);
  EXPECT_EQ(v[3], 0.03);
  EXPECT_EQ(v.back(), 0.14);
  EXPECT_EQ(EpsGrid({0.0, 0.004, 0.0001}).values().size(), 41u);
  EXPECT_EQ(EpsGrid({0.05, 0.05, 0.01}).values().size(), 1u);
  EXPECT_THROW(EpsGrid({0.0, 0.3, 0.01}).values(), ContractError);
  EXPECT_THROW(EpsGrid({0.1, 0.0, 0.01}).values(), ContractError);
  EXPECT_THROW(EpsGrid({0.0, 0.1, 0.0}).values(), ContractError);
}

TEST(curves, first_downward_crossing) {
  const std::vector<double> xs = {0.0, 1.0, 2.0, 3.0};
  EXPECT_NEAR(*first_downward_crossing(xs, std::vector<double>{1.0, 0.8, 0.2, 0.9}, 0.5), 1.5, 1e-15);
  EXPECT_FALSE(first_downward_crossing(xs, std::vector<double>{1.0, 0.9, 0.8, 0.7}, 0.5));
  EXPECT_EQ(*first_downward_crossing(xs, std::vector<double>{1.0, 0.5, 0.4, 0.3}, 0.5), 1.0);
  EXPECT_THROW(first_downward_crossing(xs, std::vector<double>{1.0}, 0.5), ShapeError);
}

TEST(curves, format_number_round_trips) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(0.14), "0.14");
  EXPECT_EQ(format_number(-2.5), "-2.5");
  for (double v : {1.0 / 3.0, 0.9999993517, 1e-9, 123456.789})
    EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(svg, single_polyline_and_reference) {
  const LineChart chart{"G", "eps", "G", {0.0, 0.1, 0.2}, {1.0, 0.6, 0.3}, 0.5};
  const std::string svg = render_svg(chart);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(svg, "<polyline"), 1u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(svg, render_svg(chart));
  EXPECT_THROW(render_svg(LineChart{"", "", "", {}, {}, std::nullopt}), ContractError);
  EXPECT_THROW(render_svg(LineChart{"", "", "", {0.0}, {}, std::nullopt}), ShapeError);
}

TEST(report, schema_and_file_round_trip) {
  const Json j = make_report("test");
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["kind"], "test");
  const auto dir = scratch("report");
  write_text_file(dir / "nested" / "r.json", j.dump());
  EXPECT_EQ(Json::parse(read_text_file(dir / "nested" / "r.json")), j);
  EXPECT_THROW(read_text_file(dir / "missing.json"), std::runtime_error);
  fs::remove_all(dir);
}

TEST(cli, exit_codes) {
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("no-such-command"), 2);
  EXPECT_EQ(run_cli("verify-ideal --theta 1.2"), 2);
  EXPECT_EQ(run_cli("verify-ideal --n 1"), 2);
  EXPECT_EQ(run_cli("fidelity-bound --eps 0:0.5:0.1"), 2);
  const auto dir = scratch("cli");
  EXPECT_EQ(run_cli("verify-ideal --n 3 --output " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "verify_ideal.json"));
  const auto report = Json::parse(read_text_file(dir / "verify_ideal.json"));
  EXPECT_EQ(report["schema"], 1);
  fs::remove_all(dir);
}

TEST(cli, config_file_and_flag_precedence) {
  const auto dir = scratch("config");
  write_text_file(dir / "cfg.json", R"({"n": 7, "theta": 0.5})");
  EXPECT_EQ(run_cli("verify-ideal --config " + (dir / "cfg.json").string() + " --n 3 --output " + dir.string()), 0);
  write_text_file(dir / "bad.json", "{not json");
  EXPECT_EQ(run_cli("verify-ideal --config " + (dir / "bad.json").string()), 2);
  fs::remove_all(dir);
}
