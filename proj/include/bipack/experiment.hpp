#pragma once

// Monte Carlo trial runner.  Trial i of every grid point is seeded with
// seed_base + i, so results do not depend on scheduling.  Wall-clock data
// is kept out of the CSV payloads and written to a separate metadata file.

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bipack/embedder.hpp"
#include "bipack/generators.hpp"
#include "bipack/io.hpp"

namespace bipack {

enum class HostGenerator { Random, Condition1 };

inline const char* to_string(HostGenerator g) { return g == HostGenerator::Random ? "random" : "condition1"; }

struct ExperimentSpec {
  std::int64_t trials = 100;
  std::vector<int> n_values{64};
  std::vector<double> p_values{0.75};
  std::vector<int> delta_h_values{4};
  std::vector<Rational> eps_values{Rational(1, 10)};
  HostGenerator generator = HostGenerator::Random;
  EmbedMode mode = EmbedMode::Relaxed;
  std::optional<Rational> cap_override;
  std::optional<std::int64_t> small_class_limit;
  int retries = 5;
  double leaf_fraction = 0.75;       // sum of target S-degrees = floor(leaf_fraction * n)
  double min_degree_fraction = 0.0;  // random hosts are resampled until min degree >= this * n
  int max_resamples = 1000;
  std::uint64_t seed_base = 1;
  std::string output_path;           // directory; empty writes nothing
  int jobs = 1;

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
    if (n_values.empty() || eps_values.empty()) throw std::invalid_argument("parameter grid is empty");
    if (generator == HostGenerator::Random && (p_values.empty() || delta_h_values.empty()))
      throw std::invalid_argument("parameter grid is empty");
    if (!(leaf_fraction >= 0.0 && leaf_fraction <= 1.0)) throw std::invalid_argument("leaf fraction must lie in [0, 1]");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
    for (const auto& e : eps_values) detail::require_eps(e);
    for (int n : n_values)
      if (n < 2) throw std::invalid_argument("n must be at least 2");
  }
};

struct GridPoint {
  int n = 0;
  double p = 0;
  int delta_h = 0;
  Rational eps;
};

struct TrialRecord {
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  GridPoint point;
  EmbedMode mode = EmbedMode::Relaxed;
  HostGenerator generator = HostGenerator::Random;
  bool success = false;
  std::string phase;  // "ok" or the failing phase
  int attempts = 0;
  int host_resamples = 0;
  double wall_millis = 0;
};

struct GridSummary {
  GridPoint point;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double mean_millis = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<GridSummary> summary;
};

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::vector<GridPoint> expand_grid(const ExperimentSpec& spec) {
  std::vector<GridPoint> grid;
  const std::vector<double> ps = spec.generator == HostGenerator::Random ? spec.p_values : std::vector<double>{0.0};
  const std::vector<int> dhs = spec.generator == HostGenerator::Random ? spec.delta_h_values : std::vector<int>{1};
  for (int n : spec.n_values)
    for (double p : ps)
      for (int dh : dhs)
        for (const auto& eps : spec.eps_values) grid.push_back({n, p, dh, eps});
  return grid;
}

inline TrialRecord run_trial(const ExperimentSpec& spec, const GridPoint& point, std::int64_t trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = spec.seed_base + static_cast<std::uint64_t>(trial);
  rec.point = point;
  rec.mode = spec.mode;
  rec.generator = spec.generator;

  Rng rng(rec.seed);
  BipartiteGraph host, target;
  const int n = point.n;
  if (spec.generator == HostGenerator::Condition1) {
    host = gen_condition1_counterexample(n);
    target = gen_star_forest(n, std::vector<int>(n, 1));
  } else {
    const auto min_degree = static_cast<int>(std::ceil(spec.min_degree_fraction * n));
    host = gen_random_bipartite(n, point.p, rng);
    while (host.min_degree() < min_degree && rec.host_resamples < spec.max_resamples) {
      ++rec.host_resamples;
      host = gen_random_bipartite(n, point.p, rng);
    }
    target = gen_uniform_star_forest(n, point.delta_h, static_cast<int>(std::floor(spec.leaf_fraction * n)));
  }

  if (host.min_degree() < static_cast<int>(std::ceil(spec.min_degree_fraction * n))) {
    rec.phase = "host";
  } else {
    EmbedConfig cfg;
    cfg.eps = point.eps;
    cfg.mode = spec.mode;
    cfg.cap_override = spec.cap_override;
    cfg.small_class_limit = spec.small_class_limit;
    cfg.retries = spec.retries;
    cfg.seed = rng.next();
    const auto outcome = embed(host, target, cfg);
    rec.success = outcome.ok() && verify_embedding(host, target, *outcome.embedding);
    rec.phase = outcome.ok() ? "ok" : outcome.failure->phase;
    rec.attempts = outcome.attempts;
  }
  rec.wall_millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace detail

inline std::string trials_csv(const ExperimentResult& r) {
  std::ostringstream out;
  out << "trial,seed,n,p,deltaH,eps,mode,generator,success,phase,attempts,hostResamples\n";
  for (const auto& t : r.records)
    out << t.trial << ',' << t.seed << ',' << t.point.n << ',' << detail::fmt_double(t.point.p) << ','
        << t.point.delta_h << ',' << detail::fmt_double(t.point.eps.to_double()) << ',' << to_string(t.mode) << ','
        << to_string(t.generator) << ',' << (t.success ? 1 : 0) << ',' << t.phase << ',' << t.attempts << ','
        << t.host_resamples << '\n';
  return out.str();
}

inline std::string summary_csv(const ExperimentResult& r, const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "n,p,deltaH,eps,mode,trials,successes\n";
  for (const auto& s : r.summary)
    out << s.point.n << ',' << detail::fmt_double(s.point.p) << ',' << s.point.delta_h << ','
        << detail::fmt_double(s.point.eps.to_double()) << ',' << to_string(spec.mode) << ',' << s.trials << ','
        << s.successes << '\n';
  return out.str();
}

inline Json metadata_json(const ExperimentResult& r) {
  Json timing = Json::array();
  for (const auto& s : r.summary)
    timing.push_back({{"n", s.point.n},
                      {"p", s.point.p},
                      {"deltaH", s.point.delta_h},
                      {"eps", s.point.eps.to_double()},
                      {"meanMillis", s.mean_millis}});
  return Json{{"finishedAt", static_cast<std::int64_t>(std::time(nullptr))}, {"timing", timing}};
}

inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto grid = detail::expand_grid(spec);
  const auto per_point = static_cast<std::size_t>(spec.trials);
  const std::size_t jobs_total = grid.size() * per_point;

  ExperimentResult result;
  result.records.resize(jobs_total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs_total; j = next++)
      result.records[j] = detail::run_trial(spec, grid[j / per_point], static_cast<std::int64_t>(j % per_point));
  };
  if (spec.jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < spec.jobs; ++t) pool.emplace_back(worker);
  }

  for (std::size_t g = 0; g < grid.size(); ++g) {
    GridSummary s;
    s.point = grid[g];
    double millis = 0;
    for (std::size_t i = 0; i < per_point; ++i) {
      const auto& rec = result.records[g * per_point + i];
      ++s.trials;
      s.successes += rec.success ? 1 : 0;
      millis += rec.wall_millis;
    }
    s.mean_millis = millis / static_cast<double>(per_point);
    result.summary.push_back(s);
  }

  if (!spec.output_path.empty()) {
    const std::filesystem::path dir(spec.output_path);
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
      std::ofstream out(dir / name, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
      out << text;
    };
    write("trials.csv", trials_csv(result));
    write("summary.csv", summary_csv(result, spec));
    write("meta.json", metadata_json(result).dump(2) + "\n");
  }
  return result;
}

}  // namespace bipack
