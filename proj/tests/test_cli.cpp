#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scatter/error.hpp"
#include "scatter/exact_reference.hpp"
#include "scatter_cli/cli.hpp"

namespace cli = scatter::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Parse, Grid) {
  const auto lin = cli::parse_grid("0:1:5");
  ASSERT_EQ(lin.size(), 5u);
  EXPECT_EQ(lin.front(), 0.0);
  EXPECT_EQ(lin.back(), 1.0);
  EXPECT_NEAR(lin[1], 0.25, 1e-15);
  const auto lg = cli::parse_grid("0.01:100:5:log");
  ASSERT_EQ(lg.size(), 5u);
  EXPECT_NEAR(lg[1], 0.1, 1e-15);
  EXPECT_NEAR(lg.back(), 100.0, 1e-12);
  for (const char* bad : {"1:2", "1:2:0", "a:2:3", "0:1:3:log", "1:2:3:cubic"}) {
    try {
      cli::parse_grid(bad);
      FAIL() << bad;
    } catch (const scatter::Error& e) {
      EXPECT_EQ(e.code(), scatter::ErrorCode::Usage) << bad;
    }
  }
}

TEST(Parse, SchemesAndPotentials) {
  EXPECT_EQ(cli::parse_schemes("qma, exact"), (std::vector<std::string>{"qma", "exact"}));
  EXPECT_THROW(cli::parse_schemes("qma,bogus"), scatter::Error);
  const auto sq = cli::parse_potential("square", 3.0, 2.0, std::nullopt);
  EXPECT_EQ(sq.value(1.0), 3.0);
  EXPECT_EQ(sq.value(2.5), 0.0);
  const auto js = cli::parse_potential(R"({"family":"singular","G":2,"N":3})", std::nullopt, std::nullopt,
                                       std::nullopt);
  EXPECT_NEAR(js.value(2.0), 2.0 / 64.0, 1e-15);
  EXPECT_THROW(cli::parse_potential("gaussian", 1.0, std::nullopt, std::nullopt), scatter::Error);
  const auto back = cli::potential_json(sq);
  EXPECT_EQ(back.at("family"), "square");
  EXPECT_EQ(back.at("G"), 3.0);
}

TEST(Output, CsvAndJson) {
  cli::Table t;
  t.columns = {"G", "a_exact"};
  t.rows.push_back({{1.0, {}}, {0.238405844044, {}}});
  cli::Cell bad;
  bad.error = cli::ErrorInfo{"no_sign_change", "nothing"};
  t.rows.push_back({{2.0, {}}, bad});
  EXPECT_EQ(t.error_count(), 1u);
  std::ostringstream os;
  cli::write_csv(t, os);
  EXPECT_EQ(os.str(), "G,a_exact,error\n1,0.238405844044,\n2,nan,a_exact:no_sign_change\n");
  const json j = cli::table_json(t, json{{"x", 1}});
  EXPECT_EQ(j.at("columns").size(), 2u);
  EXPECT_TRUE(j.at("rows")[1].at("a_exact").is_null());
  EXPECT_EQ(j.at("rows")[1].at("errors").at("a_exact").at("code"), "no_sign_change");
  EXPECT_EQ(cli::format_number(1.0 / 3.0), "0.333333333333");
}

TEST(Tables, LengthSweep) {
  cli::LengthRequest req;
  req.base = scatter::Potential::square(1.0);
  req.grid = {1.0, 4.0};
  req.schemes = {"exact", "qma", "born"};
  const auto t = cli::length_table(req);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"G", "a_exact", "a_qma", "a_born"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_NEAR(t.rows[1][1].value, scatter::exact::square_scattering_length(4.0), 1e-14);
  EXPECT_NEAR(t.rows[0][3].value, 1.0 / 3.0, 1e-12);
  req.schemes = {"eikonal"};
  EXPECT_THROW(cli::length_table(req), scatter::Error);
}

TEST(Tables, XsecRowErrors) {
  cli::XsecRequest req;
  req.pot = scatter::Potential::square(5.0);
  req.k = {0.0, 1.0};
  req.schemes = {"eikonal", "exact"};
  const auto t = cli::xsec_table(req);
  ASSERT_EQ(t.rows.size(), 2u);
  ASSERT_TRUE(t.rows[0][1].error.has_value());
  EXPECT_EQ(t.rows[0][1].error->code, "domain_error");
  EXPECT_TRUE(std::isfinite(t.rows[1][1].value));
  EXPECT_TRUE(std::isfinite(t.rows[1][2].value));
}

TEST(Tables, AmplitudeForward) {
  cli::AmpRequest req;
  req.pot = scatter::Potential::yukawa(1.0);
  req.k = 2.0;
  req.theta = {0.0, 0.5};
  req.schemes = {"eikonal", "unitary"};
  const auto t = cli::amp_table(req);
  EXPECT_EQ(t.columns.size(), 5u);
  EXPECT_GT(t.rows[0][2].value, 0.0);  // Im f forward
  EXPECT_TRUE(std::isfinite(t.rows[0][3].value));
  ASSERT_TRUE(t.rows[1][3].error.has_value());
  EXPECT_EQ(t.rows[1][3].error->code, "unsupported_potential");
}

TEST(Run, LengthCsv) {
  const auto r = run({"length", "--potential", "square", "--grid", "1:2:2", "--scheme", "exact"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "G,a_exact,error\n1,0.238405844044,\n2,0.371816545095,\n");
}

TEST(Run, JsonFormat) {
  const auto r = run({"length", "--potential", "yukawa", "--grid", "1:1:1", "--scheme", "born", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j.at("rows")[0].at("a_born").get<double>(), 2.0, 1e-10);
  EXPECT_EQ(j.at("config").at("potential").at("family"), "yukawa");
}

TEST(Run, Errors) {
  auto r = run({"figure", "9"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.err).at("error").at("code"), "usage_error");
  r = run({"length", "--grid", "1:2:0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.err).at("error").at("code"), "usage_error");
  r = run({"nonsense"});
  EXPECT_EQ(r.code, 1);
  r = run({"calibrate", "--potential", "square", "--G", "15", "--variant", "sigma"});
  EXPECT_EQ(r.code, 1);
  const auto e = json::parse(r.err).at("error");
  EXPECT_EQ(e.at("code"), "calibration_failure");
  EXPECT_FALSE(e.at("scan").empty());
  r = run({"xsec", "--potential", "square", "--G", "2", "--grid", "0:1:2", "--scheme", "eikonal"});
  EXPECT_EQ(r.code, 2);
}

TEST(Run, Calibrate) {
  const auto r = run({"calibrate", "--potential", "yukawa", "--G", "5", "--variant", "unitary"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_LE(std::abs(j.at("residual").get<double>()), 1e-10);
  EXPECT_GT(j.at("scattering_length").get<double>(), 0.0);
}

TEST(Run, FigureFile) {
  const auto dir = std::filesystem::temp_directory_path() / "scatter_cli_test";
  std::filesystem::create_directories(dir);
  const auto r = run({"figure", "3", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("rows"), 39);
  std::ifstream in(dir / "figure3.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "N,f_qma,f_exact,error");
  std::filesystem::remove_all(dir);
}

TEST(Specfun, ReportWithinTolerance) {
  EXPECT_LT(cli::specfun_report().at("max_rel_error").get<double>(), 1e-12);
}
