#include <catch2/catch_amalgamated.hpp>

#include "ltesim/sweep.hpp"

using ltesim::SchedulerKind;
using ltesim::SweepSpec;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.base.fading_enabled = true;
  spec.base.sim_ttis = 200;
  spec.base.interference_dbm = -65.0;
  spec.schedulers = {SchedulerKind::fd_pf, SchedulerKind::td_grouping};
  spec.user_counts = {2, 4};
  spec.seeds_per_point = 2;
  spec.base_seed = 10;
  return spec;
}

}  // namespace

TEST_CASE("sweep expands the grid in scheduler-users-seed order") {
  const SweepSpec spec = small_spec();
  const auto rows = ltesim::run_sweep(spec);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].summary.scheduler == "fd_pf");
  CHECK(rows[0].summary.n_users == 2);
  CHECK(rows[0].summary.seed == 10);
  CHECK(rows[1].summary.seed == 11);
  CHECK(rows[2].summary.n_users == 4);
  CHECK(rows[4].summary.scheduler == "td_grouping");
  for (const auto& r : rows) CHECK(r.error.empty());
}

TEST_CASE("a single-point sweep equals a direct run") {
  SweepSpec spec = small_spec();
  spec.schedulers = {SchedulerKind::fd_pf};
  spec.user_counts = {3};
  spec.seeds_per_point = 1;
  const auto rows = ltesim::run_sweep(spec);
  REQUIRE(rows.size() == 1);

  ltesim::SimConfig cfg = spec.base;
  cfg.scheduler_kind = SchedulerKind::fd_pf;
  cfg.n_users = 3;
  cfg.rng_seed = 10;
  const auto direct = ltesim::run(cfg);
  CHECK(ltesim::to_csv_line(rows[0].summary) == ltesim::to_csv_line(direct));
}

TEST_CASE("worker count never changes the output bytes") {
  SweepSpec spec = small_spec();
  spec.jobs = 1;
  const auto csv1 = ltesim::sweep_to_csv(spec, ltesim::run_sweep(spec));
  spec.jobs = 4;
  const auto csv4 = ltesim::sweep_to_csv(spec, ltesim::run_sweep(spec));
  CHECK(csv1 == csv4);
  CHECK(csv1.find(ltesim::summary_csv_header()) == 0);
}

TEST_CASE("a failing point is reported in its row, the sweep continues") {
  SweepSpec spec = small_spec();
  spec.user_counts = {2, -3};
  const auto rows = ltesim::run_sweep(spec);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].error.empty());
  CHECK_FALSE(rows[2].error.empty());
  CHECK(rows[2].error.find("n_users") != std::string::npos);
  CHECK(rows[2].summary.scheduler == "fd_pf");  // the point is still labeled

  const auto csv = ltesim::sweep_to_csv(spec, rows);
  CHECK(csv.find("n_users") != std::string::npos);
}

TEST_CASE("mean rows average the seeds per grid point") {
  SweepSpec spec = small_spec();
  spec.schedulers = {SchedulerKind::fd_pf};
  spec.user_counts = {2};
  spec.seeds_per_point = 3;
  spec.append_means = true;
  const auto rows = ltesim::run_sweep(spec);
  const auto csv = ltesim::sweep_to_csv(spec, rows);

  double want_tput = 0.0;
  for (const auto& r : rows) want_tput += r.summary.throughput_bps;
  want_tput /= 3.0;

  std::istringstream in(csv);
  std::string line, mean_line;
  while (std::getline(in, line))
    if (line.find(",mean,") != std::string::npos) mean_line = line;
  REQUIRE_FALSE(mean_line.empty());
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.12g", want_tput);
  CHECK(mean_line.find(buf) != std::string::npos);
}

TEST_CASE("degenerate sweep specs are rejected") {
  SweepSpec spec = small_spec();
  spec.schedulers.clear();
  CHECK_THROWS_AS(ltesim::run_sweep(spec), std::invalid_argument);
  spec = small_spec();
  spec.seeds_per_point = 0;
  CHECK_THROWS_AS(ltesim::run_sweep(spec), std::invalid_argument);
  spec = small_spec();
  spec.user_counts.clear();
  CHECK_THROWS_AS(ltesim::run_sweep(spec), std::invalid_argument);
}
