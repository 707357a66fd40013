#include "aamr/report.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "aamr/svg.hpp"

namespace aamr {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::size_t parse_size(const std::string& s) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

Variant parse_variant(const std::string& s) {
  if (s == "Original") return Variant::Original;
  if (s == "Alternative") return Variant::Alternative;
  throw std::invalid_argument("bad variant '" + s + "'");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

using CellKey = std::tuple<std::size_t, double, int>;

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records");
  struct Acc {
    std::size_t runs = 0;
    std::size_t converged = 0;
    double iterations = 0.0;
  };
  std::map<CellKey, Acc> cells;
  for (const auto& r : records) {
    Acc& a = cells[{r.constraint_count, r.beta, static_cast<int>(r.variant)}];
    ++a.runs;
    if (r.converged) {
      ++a.converged;
      a.iterations += static_cast<double>(r.iterations);
    }
  }

  std::vector<SummaryRow> rows;
  for (const auto& [key, acc] : cells) {
    SummaryRow row;
    row.constraint_count = std::get<0>(key);
    row.beta = std::get<1>(key);
    row.variant = static_cast<Variant>(std::get<2>(key));
    row.runs = acc.runs;
    row.converged_runs = acc.converged;
    if (acc.converged > 0) row.mean_iterations = acc.iterations / static_cast<double>(acc.converged);
    rows.push_back(row);
  }
  for (auto& row : rows) {
    std::optional<double> orig, alt;
    for (const auto& other : rows) {
      if (other.constraint_count != row.constraint_count || other.beta != row.beta) continue;
      (other.variant == Variant::Original ? orig : alt) = other.mean_iterations;
    }
    if (orig && alt && *alt > 0.0) row.ratio = *orig / *alt;
  }
  return rows;
}

std::string results_csv(const std::vector<SweepRecord>& records) {
  std::string out = std::string(kResultsHeader) + "\n";
  for (const auto& r : records) {
    out += std::to_string(r.instance_id) + ',' + std::to_string(r.constraint_count) + ',' + format_double(r.beta) +
           ',' + to_string(r.variant) + ',' + std::to_string(r.iterations) + ',' + (r.converged ? "true" : "false") +
           ',' + format_double(r.final_error) + '\n';
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = std::string(kSummaryHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.constraint_count) + ',' + format_double(r.beta) + ',' + to_string(r.variant) + ',' +
           std::to_string(r.runs) + ',' + std::to_string(r.converged_runs) + ',' + optional_field(r.mean_iterations) +
           ',' + optional_field(r.ratio) + '\n';
  }
  return out;
}

std::vector<SweepRecord> parse_results_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) throw std::invalid_argument("results.csv: bad header");
  std::vector<SweepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    try {
      if (f.size() != 7) throw std::invalid_argument("expected 7 fields");
      SweepRecord r;
      r.instance_id = parse_size(f[0]);
      r.constraint_count = parse_size(f[1]);
      r.beta = parse_double(f[2]);
      r.variant = parse_variant(f[3]);
      r.iterations = parse_size(f[4]);
      if (f[5] != "true" && f[5] != "false") throw std::invalid_argument("bad converged flag");
      r.converged = f[5] == "true";
      r.final_error = parse_double(f[6]);
      records.push_back(r);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("results.csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

ShapeReport analyze_shape(const std::vector<SummaryRow>& rows) {
  ShapeReport report;
  std::map<std::pair<std::size_t, int>, std::vector<const SummaryRow*>> curves;
  std::map<std::size_t, std::vector<const SummaryRow*>> ratios;
  for (const auto& r : rows) {
    curves[{r.constraint_count, static_cast<int>(r.variant)}].push_back(&r);
    if (r.variant == Variant::Original) ratios[r.constraint_count].push_back(&r);
  }
  for (const auto& [key, pts] : curves) {
    CurveShape shape;
    shape.constraint_count = key.first;
    shape.variant = static_cast<Variant>(key.second);
    std::size_t best = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i]->mean_iterations) continue;
      if (best == pts.size() || *pts[i]->mean_iterations < *pts[best]->mean_iterations) best = i;
    }
    if (best < pts.size()) {
      shape.best_beta = pts[best]->beta;
      shape.best_mean = *pts[best]->mean_iterations;
      shape.interior_minimum = best > 0 && best + 1 < pts.size();
    }
    report.curves.push_back(shape);
  }
  for (const auto& [n, pts] : ratios) {
    RatioShape shape;
    shape.constraint_count = n;
    for (const auto* p : pts) {
      if (!p->ratio) continue;
      if (*p->ratio > 1.0) shape.above_one = true;
      if (*p->ratio < 1.0) {
        shape.below_one = true;
        if (shape.above_one && !shape.crossing_beta) shape.crossing_beta = p->beta;
      }
    }
    report.ratios.push_back(shape);
  }
  return report;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<fs::path> emit_report(const std::vector<SweepRecord>& records, const fs::path& out_dir) {
  const std::vector<SummaryRow> rows = summarize(records);

  std::error_code ec;
  fs::create_directories(out_dir / "plots", ec);
  if (ec) throw std::runtime_error("cannot create " + (out_dir / "plots").string() + ": " + ec.message());

  std::vector<fs::path> written;
  write_text_file(out_dir / "results.csv", results_csv(records));
  written.push_back(out_dir / "results.csv");
  write_text_file(out_dir / "summary.csv", summary_csv(rows));
  written.push_back(out_dir / "summary.csv");

  std::map<std::size_t, std::size_t> color_of;
  for (const auto& r : rows) color_of.emplace(r.constraint_count, color_of.size());

  SvgPlot iters("Mean iterations vs beta", "beta", "mean iterations (converged runs)");
  SvgPlot ratio("Original / Alternative mean iterations", "beta", "ratio");
  ratio.add_reference_line(1.0);
  for (const auto& [n, color] : color_of) {
    for (Variant v : {Variant::Original, Variant::Alternative}) {
      SvgPlot::Series s{"N=" + std::to_string(n) + (v == Variant::Original ? " original" : " alternative"),
                        {}, {}, SvgPlot::palette(color), v == Variant::Alternative, false};
      for (const auto& r : rows) {
        if (r.constraint_count == n && r.variant == v && r.mean_iterations) {
          s.xs.push_back(r.beta);
          s.ys.push_back(*r.mean_iterations);
        }
      }
      iters.add_series(std::move(s));
    }
    SvgPlot::Series s{"N=" + std::to_string(n), {}, {}, SvgPlot::palette(color), false, false};
    for (const auto& r : rows) {
      if (r.constraint_count == n && r.variant == Variant::Original && r.ratio) {
        s.xs.push_back(r.beta);
        s.ys.push_back(*r.ratio);
      }
    }
    ratio.add_series(std::move(s));
  }
  write_text_file(out_dir / "plots" / "iterations.svg", iters.render());
  written.push_back(out_dir / "plots" / "iterations.svg");
  write_text_file(out_dir / "plots" / "ratio.svg", ratio.render());
  written.push_back(out_dir / "plots" / "ratio.svg");
  return written;
}

VerifyReport verify_results(const fs::path& out_dir, std::size_t rerun) {
  VerifyReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.messages.push_back("FAIL: " + msg);
  };

  ExperimentConfig config;
  std::vector<SweepRecord> records;
  try {
    config = parse_config(read_text_file(out_dir / "config.json"));
    records = parse_results_csv(read_text_file(out_dir / "results.csv"));
  } catch (const std::exception& e) {
    fail(e.what());
    return rep;
  }

  std::vector<SweepRecord> expected_keys;
  for (std::size_t n : config.constraint_counts) {
    for (std::size_t id = 0; id < config.instances_per_count; ++id) {
      for (double beta : config.beta_grid) {
        for (Variant v : {Variant::Original, Variant::Alternative}) {
          SweepRecord k;
          k.instance_id = id;
          k.constraint_count = n;
          k.beta = beta;
          k.variant = v;
          expected_keys.push_back(k);
        }
      }
    }
  }
  if (records.size() != expected_keys.size()) {
    fail("expected " + std::to_string(expected_keys.size()) + " records, found " + std::to_string(records.size()));
    return rep;
  }

  std::size_t bad = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto& k = expected_keys[i];
    std::string problem;
    if (r.instance_id != k.instance_id || r.constraint_count != k.constraint_count || r.beta != k.beta ||
        r.variant != k.variant) {
      problem = "out of order";
    } else if (r.iterations > config.max_iter) {
      problem = "iterations exceed max_iter";
    } else if (!(r.final_error >= 0.0)) {
      problem = "negative final_error";
    } else if (r.converged && !(r.final_error < config.tol)) {
      problem = "converged but final_error >= tol";
    } else if (!r.converged && r.iterations != config.max_iter) {
      problem = "censored run stopped before max_iter";
    }
    if (!problem.empty() && bad++ < 10) fail("record " + std::to_string(i) + ": " + problem);
  }
  if (bad > 0) rep.messages.push_back(std::to_string(bad) + " inconsistent records");

  try {
    const std::string summary = read_text_file(out_dir / "summary.csv");
    if (summary != summary_csv(summarize(records))) fail("summary.csv does not match recomputed summary");
  } catch (const std::exception& e) {
    fail(e.what());
  }

  for (std::size_t k = 0; k < rerun && k < records.size(); ++k) {
    const std::size_t i = k * records.size() / rerun;
    const SweepRecord& r = records[i];
    std::size_t beta_index = 0;
    while (config.beta_grid[beta_index] != r.beta) ++beta_index;
    const ProblemInstance inst = generate_instance(config, r.constraint_count, r.instance_id);
    const SweepRecord again = run_cell(config, inst, beta_index, r.variant);
    if (!(again == r)) {
      fail("record " + std::to_string(i) + " did not reproduce (iterations " + std::to_string(again.iterations) +
           " vs " + std::to_string(r.iterations) + ")");
    }
  }
  if (rep.ok) {
    rep.messages.push_back("OK: " + std::to_string(records.size()) + " records, " + std::to_string(rerun) +
                           " re-run and reproduced");
  }
  return rep;
}

}  // namespace aamr
