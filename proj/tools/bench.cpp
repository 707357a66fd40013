// bench: ball-intersection experiment driver for the parallel AAMR schemes.
//
//   bench run --config cfg.json --out results/ [--seed U64] [--counts 2,4,6]
//             [--beta-min B --beta-max B --beta-step S] [--jobs K]
//   bench demo --n 3 --dim 2 [--out demo/]
//   bench verify --out results/ [--rerun K]

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aamr/experiment.hpp"
#include "aamr/report.hpp"
#include "aamr/svg.hpp"

namespace fs = std::filesystem;
using namespace aamr;

namespace {

struct RunArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> counts;
  std::optional<double> beta_min, beta_max, beta_step;
  int jobs = 0;
  bool quiet = false;
};

struct DemoArgs {
  std::size_t n = 3;
  std::size_t dim = 2;
  std::uint64_t seed = 1;
  double beta = 0.7;
  double lambda = 0.4;
  std::size_t max_iter = 2000;
  std::string out = "demo";
};

struct VerifyArgs {
  std::string out;
  std::size_t rerun = 5;
};

void print_shape(const std::vector<SummaryRow>& rows) {
  const ShapeReport shape = analyze_shape(rows);
  for (const auto& c : shape.curves) {
    std::cout << "N=" << c.constraint_count << " " << to_string(c.variant) << ": best beta " << c.best_beta
              << " (mean " << c.best_mean << " iterations)" << (c.interior_minimum ? "" : " [minimum at grid edge]")
              << "\n";
  }
  for (const auto& r : shape.ratios) {
    std::cout << "N=" << r.constraint_count << " ratio original/alternative: ";
    if (r.crossing_beta) {
      std::cout << "crosses 1 near beta " << *r.crossing_beta << "\n";
    } else {
      std::cout << (r.above_one ? "above 1 " : "") << (r.below_one ? "below 1 " : "") << "(no crossing)\n";
    }
  }
}

int cmd_run(const RunArgs& a) {
  ExperimentConfig config = a.config.empty() ? ExperimentConfig{} : load_config(a.config);
  if (a.seed) config.seed = *a.seed;
  if (!a.counts.empty()) config.constraint_counts = a.counts;
  if (a.beta_min || a.beta_max || a.beta_step) {
    const double lo = a.beta_min.value_or(config.beta_grid.front());
    const double hi = a.beta_max.value_or(config.beta_grid.back());
    const double step = a.beta_step.value_or(config.beta_grid.size() > 1 ? config.beta_grid[1] - config.beta_grid[0]
                                                                          : 0.005);
    config.beta_grid = ExperimentConfig::make_beta_grid(lo, hi, step);
  }
  config.validate();

  const fs::path out(a.out);
  fs::create_directories(out);
  write_text_file(out / "config.json", config_to_json(config));

  SweepOptions opts;
  opts.jobs = a.jobs;
  if (!a.quiet) {
    opts.progress = [](std::size_t done, std::size_t total) {
      if (done % 500 == 0 || done == total) std::cerr << "\r" << done << "/" << total << " runs" << std::flush;
    };
  }
  const std::vector<SweepRecord> records = run_sweep(config, opts);
  if (!a.quiet) std::cerr << "\n";

  for (const auto& p : emit_report(records, out)) std::cout << "wrote " << p.string() << "\n";
  std::size_t censored = 0;
  for (const auto& r : records) censored += r.converged ? 0 : 1;
  std::cout << records.size() << " runs, " << censored << " censored at max_iter " << config.max_iter << "\n";
  print_shape(summarize(records));
  return 0;
}

void write_demo_trace(std::string& csv, const char* variant, const ParallelResult& res, const Block& x0,
                      const Vector& q, double beta, Variant v) {
  auto row = [&](std::size_t n, const std::string& kind, std::size_t index, const Vector& p) {
    csv += std::string(variant) + ',' + std::to_string(n) + ',' + kind + ',' + std::to_string(index);
    for (std::size_t k = 0; k < p.dim(); ++k) csv += ',' + format_double(p[k]);
    csv += '\n';
  };
  auto emit_state = [&](std::size_t n, const std::vector<Vector>& blocks, const Vector& shadow) {
    for (std::size_t i = 0; i < blocks.size(); ++i) row(n, "block", i + 1, blocks[i]);
    row(n, "p", 0, diagonal_project(Block(blocks)));
    row(n, "shadow", 0, shadow);
  };
  const Vector p0 = diagonal_project(x0);
  emit_state(0, x0.blocks(), v == Variant::Original ? q + p0 : q + p0 / beta);
  for (const auto& rec : res.trace.iterates) emit_state(rec.n + 1, rec.governing, rec.shadow);
}

int cmd_demo(const DemoArgs& a) {
  ExperimentConfig config;
  config.dim = a.dim;
  config.seed = a.seed;
  const ProblemInstance inst = generate_instance(config, a.n, 0);

  const fs::path out(a.out);
  fs::create_directories(out);

  std::string balls = "index,radius";
  for (std::size_t k = 0; k < a.dim; ++k) balls += ",c" + std::to_string(k + 1);
  balls += '\n';
  for (std::size_t i = 0; i < inst.balls.size(); ++i) {
    balls += std::to_string(i + 1) + ',' + format_double(inst.balls[i].radius());
    for (std::size_t k = 0; k < a.dim; ++k) balls += ',' + format_double(inst.balls[i].center()[k]);
    balls += '\n';
  }
  write_text_file(out / "balls.csv", balls);

  SolveOptions options;
  options.lambda = constant_relaxation(a.lambda);
  options.tol = 1e-6;
  options.max_iter = a.max_iter;
  options.stop_rule = TrueError{inst.reference.point};

  std::string csv = "variant,n,kind,index";
  for (std::size_t k = 0; k < a.dim; ++k) csv += ",x" + std::to_string(k + 1);
  csv += '\n';
  for (Variant v : {Variant::Original, Variant::Alternative}) {
    const ParallelResult res = parallel_resolvent_of_sum(inst.normal_cones(), inst.query, v, a.beta, options, inst.x0);
    write_demo_trace(csv, to_string(v), res, inst.x0, inst.query, a.beta, v);
    std::cout << to_string(v) << ": " << res.trace.iterations_used << " iterations, error "
              << distance(res.shadow_limit, inst.reference.point) << (res.trace.converged ? "" : " (censored)")
              << "\n";

    if (a.dim == 2) {
      SvgPlot plot(std::string(to_string(v)) + " scheme, beta=" + format_double(a.beta), "x1", "x2");
      plot.set_equal_aspect(true);
      for (std::size_t i = 0; i < inst.balls.size(); ++i) {
        const auto& b = inst.balls[i];
        plot.add_circle(b.center()[0], b.center()[1], b.radius(), SvgPlot::palette(i + 2));
      }
      SvgPlot::Series shadow{"shadow", {}, {}, "#000000", false, true};
      SvgPlot::Series mean{"p_n", {}, {}, "#d62728", true, true};
      const Vector p0 = diagonal_project(inst.x0);
      mean.xs.push_back(p0[0]);
      mean.ys.push_back(p0[1]);
      for (const auto& rec : res.trace.iterates) {
        shadow.xs.push_back(rec.shadow[0]);
        shadow.ys.push_back(rec.shadow[1]);
        const Vector p = diagonal_project(Block(rec.governing));
        mean.xs.push_back(p[0]);
        mean.ys.push_back(p[1]);
      }
      plot.add_series(std::move(shadow));
      plot.add_series(std::move(mean));
      SvgPlot::Series target{"P(0)", {inst.reference.point[0]}, {inst.reference.point[1]}, "#2ca02c", false, true};
      plot.add_series(std::move(target));
      write_text_file(out / (std::string("demo_") + (v == Variant::Original ? "original" : "alternative") + ".svg"),
                      plot.render(700, 600));
    }
  }
  write_text_file(out / "iterates.csv", csv);
  std::cout << "wrote " << (out / "iterates.csv").string() << " and " << (out / "balls.csv").string() << "\n";
  return 0;
}

int cmd_verify(const VerifyArgs& a) {
  const VerifyReport rep = verify_results(a.out, a.rerun);
  for (const auto& m : rep.messages) std::cout << m << "\n";
  return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel AAMR splitting: ball-intersection experiment"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a beta sweep and write CSV results and SVG plots");
  run_cmd->add_option("--config", run.config, "JSON experiment config")->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->add_option("--seed", run.seed, "Override the config seed");
  run_cmd->add_option("--counts", run.counts, "Constraint counts, e.g. 2,4,6")->delimiter(',');
  run_cmd->add_option("--beta-min", run.beta_min, "First beta of the grid");
  run_cmd->add_option("--beta-max", run.beta_max, "Last beta of the grid");
  run_cmd->add_option("--beta-step", run.beta_step, "Beta grid step");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads (0 = OpenMP default)");
  run_cmd->add_flag("--quiet", run.quiet, "No progress output");

  DemoArgs demo;
  auto* demo_cmd = app.add_subcommand("demo", "Trajectories of both schemes on one small instance");
  demo_cmd->add_option("--n", demo.n, "Number of balls");
  demo_cmd->add_option("--dim", demo.dim, "Dimension");
  demo_cmd->add_option("--seed", demo.seed, "Seed");
  demo_cmd->add_option("--beta", demo.beta, "beta");
  demo_cmd->add_option("--lambda", demo.lambda, "Relaxation parameter");
  demo_cmd->add_option("--max-iter", demo.max_iter, "Iteration cap");
  demo_cmd->add_option("--out", demo.out, "Output directory");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Re-validate a results directory");
  verify_cmd->add_option("--out", verify.out, "Results directory")->required();
  verify_cmd->add_option("--rerun", verify.rerun, "Records to recompute from scratch");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*demo_cmd) return cmd_demo(demo);
    if (*verify_cmd) return cmd_verify(verify);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
