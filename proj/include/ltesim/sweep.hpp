#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ltesim/config.hpp"
#include "ltesim/engine.hpp"
#include "ltesim/metrics.hpp"

namespace ltesim {

struct SweepSpec {
  SimConfig base;
  std::vector<SchedulerKind> schedulers;
  std::vector<int> user_counts;
  int seeds_per_point = 1;
  std::uint64_t base_seed = 1;
  int jobs = 1;
  bool append_means = false;
};

struct SweepRow {
  SummaryRow summary;
  std::string error;  // empty on success
};

// Expands the grid in a fixed order: scheduler, then user count, then seed.
// Rows land at their grid position no matter how many workers run, so the
// output is byte-identical for any job count.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.schedulers.empty())
    throw std::invalid_argument("sweep: scheduler list is empty");
  if (spec.user_counts.empty())
    throw std::invalid_argument("sweep: user count list is empty");
  if (spec.seeds_per_point < 1)
    throw std::invalid_argument("sweep: seeds_per_point must be at least 1");
  if (spec.jobs < 1) throw std::invalid_argument("sweep: jobs must be at least 1");

  struct Point {
    SchedulerKind kind;
    int users;
    std::uint64_t seed;
  };
  std::vector<Point> points;
  for (SchedulerKind k : spec.schedulers)
    for (int nu : spec.user_counts)
      for (int s = 0; s < spec.seeds_per_point; ++s)
        points.push_back({k, nu, spec.base_seed + static_cast<std::uint64_t>(s)});

  std::vector<SweepRow> rows(points.size());
  auto run_point = [&](std::size_t i) {
    SimConfig cfg = spec.base;
    cfg.scheduler_kind = points[i].kind;
    cfg.n_users = points[i].users;
    cfg.rng_seed = points[i].seed;
    SweepRow& row = rows[i];
    row.summary.scheduler = to_string(points[i].kind);
    row.summary.n_users = points[i].users;
    row.summary.seed = points[i].seed;
    row.summary.sim_ttis = cfg.sim_ttis;
    try {
      row.summary = run(cfg);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const int jobs = std::min<int>(spec.jobs, static_cast<int>(points.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < points.size();
             i = next.fetch_add(1))
          run_point(i);
      });
    for (auto& th : workers) th.join();
  }
  return rows;
}

// CSV with one row per grid point, plus optional per-(scheduler, users) mean
// rows (seed column reads "mean", failed seeds excluded and counted).
inline std::string sweep_to_csv(const SweepSpec& spec,
                                const std::vector<SweepRow>& rows) {
  std::string out = summary_csv_header();
  out += "\n";
  for (const auto& r : rows) {
    out += to_csv_line(r.summary, r.error);
    out += "\n";
  }
  if (spec.append_means) {
    std::size_t i = 0;
    for (SchedulerKind k : spec.schedulers) {
      for (int nu : spec.user_counts) {
        double tput = 0.0, plr = 0.0;
        int ok = 0, failed = 0;
        long long ttis = 0;
        for (int s = 0; s < spec.seeds_per_point; ++s, ++i) {
          if (!rows[i].error.empty()) {
            ++failed;
            continue;
          }
          tput += rows[i].summary.throughput_bps;
          plr += rows[i].summary.plr_ratio;
          ttis = rows[i].summary.sim_ttis;
          ++ok;
        }
        SummaryRow mean;
        mean.scheduler = to_string(k);
        mean.n_users = nu;
        mean.sim_ttis = ttis;
        if (ok > 0) {
          mean.throughput_bps = tput / ok;
          mean.plr_ratio = plr / ok;
          mean.plr_percent = 100.0 * mean.plr_ratio;
        }
        std::string err =
            failed > 0 ? std::to_string(failed) + " seed(s) failed" : "";
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%d,mean,%.12g,%.12g,%.12g,%lld,%s\n",
                      mean.scheduler.c_str(), mean.n_users, mean.throughput_bps,
                      mean.plr_ratio, mean.plr_percent, mean.sim_ttis,
                      err.c_str());
        out += buf;
      }
    }
  }
  return out;
}

}  // namespace ltesim
