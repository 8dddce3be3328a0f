#include <gtest/gtest.h>

#include <cmath>
#include <regex>
#include <sstream>

#include "gaussgcd/gcd_statistics.hpp"
#include "gaussgcd/output.hpp"

using namespace gaussgcd;

namespace {

std::vector<std::pair<double, double>> polyline_points(const std::string& svg, const std::string& id) {
  const std::regex re("<polyline id=\"" + id + "\"[^>]*points=\"([^\"]*)\"");
  std::smatch m;
  if (!std::regex_search(svg, m, re)) return {};
  std::vector<std::pair<double, double>> out;
  std::istringstream in(m[1].str());
  std::string token;
  while (in >> token) {
    const auto comma = token.find(',');
    out.emplace_back(std::stod(token.substr(0, comma)), std::stod(token.substr(comma + 1)));
  }
  return out;
}

std::string csv(const output::Table& t) {
  std::ostringstream os;
  output::write_csv(t, os);
  return os.str();
}

}  // namespace

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(output::format_number(0.76), "0.76");
  EXPECT_EQ(output::format_number(1.0), "1");
  EXPECT_EQ(output::format_number(0.1 + 0.2), "0.30000000000000004");
}

TEST(EmitCsv, DistributionRows) {
  EXPECT_EQ(csv(output::distribution_table(distribution_bruteforce(2))), "x,k,count\n2,1,3\n2,2,1\n");
}

TEST(EmitCsv, EmptySeriesIsHeaderOnly) {
  EXPECT_EQ(csv(output::moments_table({})), "x,n,moment\n");
  const MomentSeries empty{3, {}};
  EXPECT_EQ(csv(output::moments_table(std::span(&empty, 1))), "x,n,moment\n");
}

TEST(EmitCsv, FitRowCarriesConjecturedConstant) {
  const output::FitRow row{2, FitResult{1, {0.63951, 1.8}, 7.9}};
  const auto t = output::fits_table(std::span(&row, 1));
  EXPECT_EQ(t.header, (std::vector<std::string>{"n", "coeff_deg0", "coeff_deg1", "residual", "conjectured", "rel_err"}));
  const std::string text = csv(t);
  EXPECT_NE(text.find("\n2,1.8,0.63951,7.9,0.6736"), std::string::npos) << text;
  char digits[16];
  std::snprintf(digits, sizeof digits, "%.5f", std::get<double>(t.rows[0][4]));
  EXPECT_STREQ(digits, "0.67364");
}

TEST(EmitCsv, MixedDegreesLeaveHigherColumnsEmpty) {
  const std::vector<output::FitRow> rows{{2, FitResult{1, {0.6, 1.0}, 0.0}}, {3, FitResult{2, {0.37, 0.5, 2.0}, 0.0}}};
  const std::string text = csv(output::fits_table(rows));
  EXPECT_NE(text.find("\n2,1,0.6,,0,"), std::string::npos) << text;
  EXPECT_NE(text.find("\n3,2,0.5,0.37,0,"), std::string::npos) << text;
}

TEST(EmitCsv, FileErrorsCarryPath) {
  try {
    output::emit_csv(output::moments_table({}), "/nonexistent_dir_for_test/out.csv");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), "/nonexistent_dir_for_test/out.csv");
  }
}

TEST(EmitJson, MirrorsCsvRecords) {
  std::ostringstream os;
  output::write_json(output::distribution_table(distribution_bruteforce(2)), os);
  const auto j = nlohmann::json::parse(os.str());
  ASSERT_EQ(j.size(), 2U);
  EXPECT_EQ(j[0]["x"], 2);
  EXPECT_EQ(j[0]["k"], 1);
  EXPECT_EQ(j[0]["count"], 3);
  EXPECT_EQ(j[1]["count"], 1);
}

TEST(EmitSvg, CaptionNamesLeadingCoefficient) {
  const auto t = build_tables(50'000);
  std::vector<std::uint64_t> grid = GridSpec{100, 50'000, 60}.values();
  const int orders[] = {2};
  const auto series = moment_series(orders, grid, t);
  const auto fit = fit_polynomial(series.front(), 1);
  const std::string svg = output::render_svg(series.front(), fit);
  char lead[32];
  std::snprintf(lead, sizeof lead, "%.5fx", fit.leading());
  EXPECT_NE(svg.find(lead), std::string::npos);
  EXPECT_EQ(svg.rfind("<svg", 0), 0U);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(EmitSvg, RejectsDegenerateSeries) {
  const FitResult fit{1, {1.0, 0.0}, 0.0};
  EXPECT_THROW(output::render_svg(MomentSeries{2, {}}, fit), DomainError);
  EXPECT_THROW(output::render_svg(MomentSeries{2, {{10.0, 3.0}}}, fit), DomainError);
}

TEST(EmitSvg, ExactFitOverlaysData) {
  MomentSeries s{1, {}};
  for (int i = 1; i <= 50; ++i) s.samples.push_back({10.0 * i, 20.0 * i});
  const auto fit = fit_polynomial(s, 1);
  const std::string svg = output::render_svg(s, fit);
  const auto data = polyline_points(svg, "data");
  const auto curve = polyline_points(svg, "fit");
  ASSERT_EQ(data.size(), 50U);
  ASSERT_EQ(curve.size(), 50U);
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_LE(std::hypot(data[i].first - curve[i].first, data[i].second - curve[i].second), 1.0);
  }
}

TEST(FormatPolynomial, CaptionStyle) {
  EXPECT_EQ(output::format_polynomial(FitResult{1, {0.63952, 0.5753}, 0.0}), "0.63952x + 0.5753");
  EXPECT_EQ(output::format_polynomial(FitResult{2, {0.37018, 0.69337, -584.8498}, 0.0}),
            "0.37018x^2 + 0.6934x - 584.8498");
}
