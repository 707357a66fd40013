#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <random>

#include "aamr/report.hpp"
#include "aamr/svg.hpp"

namespace aamr {
namespace {

namespace fs = std::filesystem;

SweepRecord rec(std::size_t id, std::size_t n, double beta, Variant v, std::size_t it, bool conv, double err) {
  return SweepRecord{id, n, beta, v, it, conv, err};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("aamr_report_" + name);
  fs::remove_all(p);
  return p;
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(0.995), "0.995");
  EXPECT_EQ(format_double(1e-7), "1e-07");
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(eng) * std::pow(10.0, static_cast<int>(eng() % 40) - 20);
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
}

TEST(Summarize, EmptyInputRejected) {
  try {
    summarize({});
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "no records");
  }
}

TEST(Summarize, SingleRecordIsItsOwnSummary) {
  const auto rows = summarize({rec(0, 4, 0.7, Variant::Alternative, 123, true, 5e-7)});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].constraint_count, 4u);
  EXPECT_EQ(rows[0].beta, 0.7);
  EXPECT_EQ(rows[0].variant, Variant::Alternative);
  EXPECT_EQ(rows[0].runs, 1u);
  EXPECT_EQ(rows[0].converged_runs, 1u);
  EXPECT_EQ(rows[0].mean_iterations, 123.0);
  EXPECT_FALSE(rows[0].ratio);
}

TEST(Summarize, RatioIsOriginalOverAlternative) {
  const std::vector<SweepRecord> records{
      rec(0, 2, 0.5, Variant::Original, 100, true, 0.0), rec(0, 2, 0.5, Variant::Alternative, 40, true, 0.0),
      rec(1, 2, 0.5, Variant::Original, 200, true, 0.0), rec(1, 2, 0.5, Variant::Alternative, 60, true, 0.0),
      rec(0, 2, 0.9, Variant::Original, 30, true, 0.0),  rec(0, 2, 0.9, Variant::Alternative, 90, false, 1.0),
  };
  const auto rows = summarize(records);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].variant, Variant::Original);
  EXPECT_EQ(rows[0].mean_iterations, 150.0);
  EXPECT_EQ(rows[1].mean_iterations, 50.0);
  EXPECT_EQ(rows[0].ratio, 3.0);
  EXPECT_EQ(rows[3].converged_runs, 0u);
  EXPECT_FALSE(rows[3].mean_iterations);
  EXPECT_FALSE(rows[2].ratio);
}

TEST(ResultsCsv, HeaderAndRoundTrip) {
  std::mt19937_64 eng(9);
  std::vector<SweepRecord> records;
  for (std::size_t k = 0; k < 200; ++k) {
    records.push_back(rec(k % 7, 2 + k % 5, std::uniform_real_distribution<double>(0.01, 0.99)(eng),
                          k % 2 ? Variant::Alternative : Variant::Original, eng() % 200000, k % 3 != 0,
                          std::uniform_real_distribution<double>(0.0, 1e-6)(eng)));
  }
  const std::string csv = results_csv(records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kResultsHeader);
  EXPECT_EQ(parse_results_csv(csv), records);
  EXPECT_THROW(parse_results_csv("bogus\n"), std::invalid_argument);
  EXPECT_THROW(parse_results_csv(std::string(kResultsHeader) + "\n1,2,0.5,Original,3,maybe,0\n"),
               std::invalid_argument);
}

TEST(SummaryCsv, Header) {
  const std::string csv = summary_csv(summarize({rec(0, 2, 0.5, Variant::Original, 10, true, 0.0)}));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSummaryHeader);
}

TEST(AnalyzeShape, InteriorMinimumAndCrossing) {
  std::vector<SweepRecord> records;
  const std::vector<double> betas{0.5, 0.6, 0.7, 0.8};
  const std::vector<std::size_t> orig{50, 30, 20, 40};
  const std::vector<std::size_t> alt{40, 25, 25, 60};
  for (std::size_t i = 0; i < betas.size(); ++i) {
    records.push_back(rec(0, 3, betas[i], Variant::Original, orig[i], true, 0.0));
    records.push_back(rec(0, 3, betas[i], Variant::Alternative, alt[i], true, 0.0));
  }
  const ShapeReport s = analyze_shape(summarize(records));
  ASSERT_EQ(s.curves.size(), 2u);
  for (const auto& c : s.curves) EXPECT_TRUE(c.interior_minimum);
  ASSERT_EQ(s.ratios.size(), 1u);
  EXPECT_TRUE(s.ratios[0].above_one);
  EXPECT_TRUE(s.ratios[0].below_one);
  EXPECT_EQ(s.ratios[0].crossing_beta, 0.7);
}

TEST(EmitReport, WritesCsvAndPlots) {
  const fs::path dir = fresh_dir("emit");
  const auto paths = emit_report({rec(0, 2, 0.5, Variant::Original, 10, true, 0.0),
                                  rec(0, 2, 0.5, Variant::Alternative, 5, true, 0.0)},
                                 dir);
  EXPECT_EQ(paths.size(), 4u);
  for (const auto& p : paths) EXPECT_TRUE(fs::exists(p)) << p;
  EXPECT_NE(read_text_file(dir / "plots" / "ratio.svg").find("<svg"), std::string::npos);
  EXPECT_THROW(emit_report({}, dir), std::invalid_argument);
  EXPECT_THROW(read_text_file(dir / "missing.csv"), std::runtime_error);
}

TEST(Svg, RendersSeriesAndEscapesText) {
  SvgPlot plot("a < b & c", "x", "y");
  plot.add_series({"s", {0.0, 1.0, 2.0}, {1.0, 3.0, 2.0}, SvgPlot::palette(0), false, true});
  const std::string svg = plot.render(400, 300);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_EQ(svg.find("a < b"), std::string::npos);
}

TEST(Verify, AcceptsFreshRunAndDetectsTampering) {
  ExperimentConfig c;
  c.dim = 3;
  c.constraint_counts = {2};
  c.instances_per_count = 2;
  c.beta_grid = {0.6, 0.8};
  const fs::path dir = fresh_dir("verify");
  fs::create_directories(dir);
  write_text_file(dir / "config.json", config_to_json(c));
  emit_report(run_sweep(c), dir);
  const VerifyReport ok = verify_results(dir, 3);
  EXPECT_TRUE(ok.ok);

  std::string csv = read_text_file(dir / "results.csv");
  const std::size_t line2 = csv.find('\n', csv.find('\n') + 1) + 1;
  const std::size_t comma = csv.find(",Alternative,", line2);
  ASSERT_NE(comma, std::string::npos);
  const std::size_t it_start = comma + 13;
  csv.replace(it_start, csv.find(',', it_start) - it_start, "1");
  write_text_file(dir / "results.csv", csv);
  EXPECT_FALSE(verify_results(dir, 4).ok);
}

}  // namespace
}  // namespace aamr
