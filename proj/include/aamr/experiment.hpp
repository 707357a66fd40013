#pragma once

// Ball-intersection benchmark: closest point to the origin in the
// intersection of N random balls, solved by both block schemes over a grid of
// beta values.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "aamr/oracle.hpp"
#include "aamr/parallel.hpp"
#include "aamr/sets.hpp"

namespace aamr {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ExperimentConfig {
  std::size_t dim = 10;
  std::vector<std::size_t> constraint_counts{2, 4, 6, 8, 10};
  std::size_t instances_per_count = 100;
  std::vector<double> beta_grid = make_beta_grid(0.5, 0.995, 0.005);
  double lambda = 0.9;
  double tol = 1e-6;
  std::size_t max_iter = 200000;
  std::uint64_t seed = 1;
  Interval coord_range{-5.0, 5.0};
  Interval radius_pad{0.05, 0.1};

  /// {lo, lo + step, ...} up to hi (with 1e-9 slack), closed with hi itself
  /// when the steps do not land on it. Values are rounded to 12 decimals so
  /// the grid prints cleanly.
  static std::vector<double> make_beta_grid(double lo, double hi, double step);

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Strict JSON loading: every key must be an ExperimentConfig field; missing
/// keys keep their defaults. beta_grid is either an array or
/// {"min": .., "max": .., "step": ..}; intervals are two-element arrays.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& config);

struct ProblemInstance {
  std::size_t instance_id = 0;
  std::size_t constraint_count = 0;
  std::uint64_t seed = 0;
  /// Common interior point of all balls.
  Vector interior_point;
  std::vector<Ball> balls;
  Vector query;
  /// Starting point drawn from the instance's own stream.
  Block x0;
  ReferenceSolution reference;
  /// Geometry draws needed (>1 when an oracle rejection forced a redraw).
  std::size_t attempts = 1;

  std::vector<MonotoneOperator> normal_cones() const;
  std::vector<ConvexSet> sets() const;
};

/// Draws instance `instance_id` with N balls: z uniform in coord_range^d, then
/// for every ball b_i uniform in coord_range^d, center z + b_i and radius
/// |b_i| + alpha_i with alpha_i uniform in radius_pad. q = 0. The reference is
/// P_{n B_i}(0) from dykstra_project. Fully determined by (seed, N, instance_id).
ProblemInstance generate_instance(const ExperimentConfig& config, std::size_t constraint_count,
                                  std::size_t instance_id);

/// Starting point for (instance, beta index), shared by both variants.
Block starting_point(const ExperimentConfig& config, std::size_t constraint_count, std::size_t instance_id,
                     std::size_t beta_index);

struct SweepRecord {
  std::size_t instance_id = 0;
  std::size_t constraint_count = 0;
  double beta = 0.0;
  Variant variant = Variant::Original;
  std::size_t iterations = 0;
  bool converged = false;
  double final_error = 0.0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Runs one sweep cell against the instance's reference (TrueError stopping).
SweepRecord run_cell(const ExperimentConfig& config, const ProblemInstance& instance, std::size_t beta_index,
                     Variant variant);

struct SweepOptions {
  /// Worker threads; 0 keeps the OpenMP default.
  int jobs = 0;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Every (N, instance, beta, variant) cell, ordered exactly that way
/// regardless of how many workers ran.
std::vector<SweepRecord> run_sweep(const ExperimentConfig& config, const SweepOptions& options = {});

}  // namespace aamr
