#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aamr/experiment.hpp"

namespace aamr {

/// Shortest decimal text that parses back to exactly `v` ('.' separator).
std::string format_double(double v);

inline constexpr const char* kResultsHeader = "instance_id,N,beta,variant,iterations,converged,final_error";
inline constexpr const char* kSummaryHeader = "N,beta,variant,runs,converged_runs,mean_iterations,ratio";

struct SummaryRow {
  std::size_t constraint_count = 0;
  double beta = 0.0;
  Variant variant = Variant::Original;
  std::size_t runs = 0;
  std::size_t converged_runs = 0;
  /// Mean iterations over converged runs; empty when none converged.
  std::optional<double> mean_iterations;
  /// mean(Original) / mean(Alternative) for the same (N, beta); empty when
  /// either side is missing.
  std::optional<double> ratio;
};

/// One row per (N, beta, variant), sorted by N, beta, then Original before
/// Alternative. Throws std::invalid_argument("no records") on empty input.
std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records);

std::string results_csv(const std::vector<SweepRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::vector<SweepRecord> parse_results_csv(const std::string& text);

/// Qualitative shape of the sweep for one constraint count.
struct CurveShape {
  std::size_t constraint_count = 0;
  Variant variant = Variant::Original;
  double best_beta = 0.0;
  double best_mean = 0.0;
  /// The minimiser is neither the first nor the last grid point.
  bool interior_minimum = false;
};

struct RatioShape {
  std::size_t constraint_count = 0;
  bool above_one = false;
  bool below_one = false;
  /// Smallest beta at which the ratio drops below 1 after being above it.
  std::optional<double> crossing_beta;
};

struct ShapeReport {
  std::vector<CurveShape> curves;
  std::vector<RatioShape> ratios;
};

ShapeReport analyze_shape(const std::vector<SummaryRow>& rows);

/// Writes results.csv, summary.csv, plots/iterations.svg and plots/ratio.svg
/// under out_dir (created if needed) and returns the written paths.
std::vector<std::filesystem::path> emit_report(const std::vector<SweepRecord>& records,
                                               const std::filesystem::path& out_dir);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> messages;
};

/// Re-validates a results directory written by `bench run`: schema and record
/// count against config.json, stop-rule consistency of every record, summary.csv
/// recomputed byte-for-byte, and `rerun` evenly spaced records recomputed from
/// scratch.
VerifyReport verify_results(const std::filesystem::path& out_dir, std::size_t rerun = 5);

/// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string read_text_file(const std::filesystem::path& path);
/// Writes a whole file; throws std::runtime_error naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace aamr
