#include "aamr/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <mutex>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aamr/rng.hpp"

namespace aamr {

namespace {

// Stream tags for CounterRng.
constexpr std::uint64_t kGeometryStream = 1;
constexpr std::uint64_t kStartStream = 2;
constexpr std::size_t kMaxAttempts = 32;

Vector draw_point(CounterRng& rng, std::size_t dim, Interval range) {
  Vector v(dim);
  for (std::size_t k = 0; k < dim; ++k) v[k] = rng.uniform(range.lo, range.hi);
  return v;
}

// Exceptions must not escape an OpenMP region; keep the first and rethrow after it.
class ExceptionGuard {
 public:
  template <class Fn>
  void run(Fn&& fn) noexcept {
    try {
      fn();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!first_) first_ = std::current_exception();
    }
  }
  void rethrow() {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr first_;
};

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(std::string("ExperimentConfig: ") + message);
}

}  // namespace

std::vector<double> ExperimentConfig::make_beta_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("beta grid: need step > 0 and max >= min");
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double v = lo + static_cast<double>(k) * step;
    if (v > hi + 1e-9) break;
    grid.push_back(std::round(v * 1e12) / 1e12);
  }
  if (grid.back() < hi - 1e-9) grid.push_back(std::round(hi * 1e12) / 1e12);
  return grid;
}

void ExperimentConfig::validate() const {
  require(dim > 0, "dim must be positive");
  require(!constraint_counts.empty(), "constraint_counts must be nonempty");
  for (std::size_t n : constraint_counts) require(n > 0, "constraint counts must be positive");
  require(instances_per_count > 0, "instances_per_count must be positive");
  require(!beta_grid.empty(), "beta_grid must be nonempty");
  for (double b : beta_grid) require(b > 0.0 && b < 1.0, "beta_grid values must lie in (0, 1)");
  require(lambda > 0.0 && lambda < 1.0, "lambda must lie in (0, 1)");
  require(tol > 0.0, "tol must be positive");
  require(max_iter > 0, "max_iter must be positive");
  require(coord_range.lo < coord_range.hi, "coord_range must be an ordered interval");
  require(radius_pad.lo <= radius_pad.hi, "radius_pad must be an ordered interval");
  require(radius_pad.lo > 0.0, "radius_pad must be positive");
}

std::vector<MonotoneOperator> ProblemInstance::normal_cones() const {
  std::vector<MonotoneOperator> ops;
  ops.reserve(balls.size());
  for (const Ball& b : balls) ops.push_back(make_normal_cone(b));
  return ops;
}

std::vector<ConvexSet> ProblemInstance::sets() const { return {balls.begin(), balls.end()}; }

ProblemInstance generate_instance(const ExperimentConfig& config, std::size_t constraint_count,
                                  std::size_t instance_id) {
  config.validate();
  if (constraint_count == 0) throw std::invalid_argument("generate_instance: need at least one ball");

  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    CounterRng rng(config.seed, {kGeometryStream, constraint_count, instance_id, attempt});
    ProblemInstance inst;
    inst.instance_id = instance_id;
    inst.constraint_count = constraint_count;
    inst.seed = config.seed;
    inst.attempts = attempt + 1;
    inst.interior_point = draw_point(rng, config.dim, config.coord_range);
    for (std::size_t i = 0; i < constraint_count; ++i) {
      const Vector offset = draw_point(rng, config.dim, config.coord_range);
      const double pad = rng.uniform(config.radius_pad.lo, config.radius_pad.hi);
      inst.balls.emplace_back(inst.interior_point + offset, norm(offset) + pad);
    }
    inst.query = Vector::zeros(config.dim);
    inst.x0 = Block(constraint_count, config.dim);
    for (double& v : inst.x0.flat()) v = rng.uniform(config.coord_range.lo, config.coord_range.hi);

    try {
      inst.reference = dykstra_project(inst.sets(), inst.query, 1e-12, 2000000);
      return inst;
    } catch (const std::runtime_error& e) {
      std::cerr << "generate_instance: N=" << constraint_count << " id=" << instance_id << " attempt " << attempt
                << " rejected (" << e.what() << "); redrawing\n";
    }
  }
  throw std::runtime_error("generate_instance: oracle rejected every redraw");
}

Block starting_point(const ExperimentConfig& config, std::size_t constraint_count, std::size_t instance_id,
                     std::size_t beta_index) {
  CounterRng rng(config.seed, {kStartStream, constraint_count, instance_id, beta_index});
  Block x0(constraint_count, config.dim);
  for (double& v : x0.flat()) v = rng.uniform(config.coord_range.lo, config.coord_range.hi);
  return x0;
}

SweepRecord run_cell(const ExperimentConfig& config, const ProblemInstance& instance, std::size_t beta_index,
                     Variant variant) {
  const double beta = config.beta_grid.at(beta_index);
  SolveOptions options;
  options.lambda = constant_relaxation(config.lambda);
  options.tol = config.tol;
  options.max_iter = config.max_iter;
  options.stop_rule = TrueError{instance.reference.point};
  options.record_iterates = false;

  const Block x0 = starting_point(config, instance.constraint_count, instance.instance_id, beta_index);
  const ParallelResult res = parallel_resolvent_of_sum(instance.normal_cones(), instance.query, variant, beta,
                                                       options, x0, Execution::Serial);

  SweepRecord rec;
  rec.instance_id = instance.instance_id;
  rec.constraint_count = instance.constraint_count;
  rec.beta = beta;
  rec.variant = variant;
  rec.iterations = res.trace.iterations_used;
  rec.converged = res.trace.converged;
  rec.final_error = distance(res.shadow_limit, instance.reference.point);

  if (rec.converged && !(rec.final_error < 2.0 * config.tol)) {
    throw std::logic_error("run_cell: converged run does not re-validate against its reference");
  }
  return rec;
}

std::vector<SweepRecord> run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
  config.validate();

  struct InstanceKey {
    std::size_t count;
    std::size_t id;
  };
  std::vector<InstanceKey> keys;
  for (std::size_t n : config.constraint_counts) {
    for (std::size_t id = 0; id < config.instances_per_count; ++id) keys.push_back({n, id});
  }

#ifdef _OPENMP
  const int threads = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#endif

  ExceptionGuard guard;
  std::vector<ProblemInstance> instances(keys.size());
  const auto n_keys = static_cast<std::ptrdiff_t>(keys.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t k = 0; k < n_keys; ++k) {
    guard.run([&] { instances[k] = generate_instance(config, keys[k].count, keys[k].id); });
  }
  guard.rethrow();

  const std::size_t n_beta = config.beta_grid.size();
  const std::size_t per_instance = n_beta * 2;
  const std::size_t total = instances.size() * per_instance;
  std::vector<SweepRecord> records(total);
  std::atomic<std::size_t> done{0};

  const auto n_cells = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t c = 0; c < n_cells; ++c) {
    const auto cell = static_cast<std::size_t>(c);
    const std::size_t inst = cell / per_instance;
    const std::size_t beta_index = (cell % per_instance) / 2;
    const Variant variant = cell % 2 == 0 ? Variant::Original : Variant::Alternative;
    guard.run([&] { records[cell] = run_cell(config, instances[inst], beta_index, variant); });
    const std::size_t finished = ++done;
    if (options.progress) {
#pragma omp critical(aamr_sweep_progress)
      options.progress(finished, total);
    }
  }
  guard.rethrow();
  return records;
}

}  // namespace aamr
