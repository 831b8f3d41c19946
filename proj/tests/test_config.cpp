#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "ltesim/config.hpp"

using ltesim::ConfigError;
using ltesim::SimConfig;

TEST_CASE("default config is valid and matches the reference deployment") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.bandwidth_hz == 5e6);
  CHECK(cfg.n_prb == 25);
  CHECK(cfg.prb_bandwidth_hz() == Catch::Approx(180e3));
  CHECK(cfg.re_per_prb == 168);
  CHECK(cfg.enb_power_dbm == Catch::Approx(43.01));
  CHECK(cfg.carrier_hz == 2e9);
  CHECK(cfg.cell_radius_m == 100.0);
  CHECK(cfg.cqi_delay_ttis == 3);
  CHECK(cfg.cqi_blank_period_ttis == 10);
  CHECK(cfg.cqi_efficiency.front() == Catch::Approx(0.1523));
  CHECK(cfg.cqi_efficiency.back() == Catch::Approx(5.5547));
}

TEST_CASE("parse handles comments, blanks and whitespace") {
  std::istringstream in(
      "# scenario\n"
      "\n"
      "n_users = 30   # forty is too many\n"
      "  scheduler_kind=fd_mlwdf\n"
      "traffic_packet_bits = 1600\n");
  const SimConfig cfg = ltesim::parse_config(in, "test");
  CHECK(cfg.n_users == 30);
  CHECK(cfg.scheduler_kind == ltesim::SchedulerKind::fd_mlwdf);
  CHECK(cfg.traffic_packet_bits == 1600);
}

TEST_CASE("parse errors carry file and line") {
  SECTION("unknown key") {
    std::istringstream in("n_users = 4\nbogus_key = 1\n");
    CHECK_THROWS_WITH(ltesim::parse_config(in, "f.cfg"),
                      Catch::Matchers::ContainsSubstring("f.cfg:2") &&
                          Catch::Matchers::ContainsSubstring("bogus_key"));
  }
  SECTION("missing equals") {
    std::istringstream in("n_users 4\n");
    CHECK_THROWS_AS(ltesim::parse_config(in, "f.cfg"), ConfigError);
  }
  SECTION("bad number names the key") {
    std::istringstream in("cell_radius_m = wide\n");
    CHECK_THROWS_WITH(ltesim::parse_config(in, "f.cfg"),
                      Catch::Matchers::ContainsSubstring("cell_radius_m"));
  }
  SECTION("bad list length") {
    std::istringstream in("kalman_q_diag = 1, 2\n");
    CHECK_THROWS_WITH(ltesim::parse_config(in, "f.cfg"),
                      Catch::Matchers::ContainsSubstring("kalman_q_diag"));
  }
}

TEST_CASE("every field round-trips through its config key") {
  SimConfig cfg;
  cfg.n_users = 17;
  cfg.scheduler_kind = ltesim::SchedulerKind::fd_pf;
  cfg.use_predictor = ltesim::PredictorMode::on;
  cfg.interference_dbm = -63.25;
  cfg.cqi_efficiency[4] = 0.9;
  cfg.kalman_r_diag = {0.1, 0.2, 0.3};
  cfg.rng_seed = 987654321;
  const std::string dumped = ltesim::dump_config(cfg);
  std::istringstream in(dumped);
  const SimConfig back = ltesim::parse_config(in, "dump");
  CHECK(ltesim::dump_config(back) == dumped);
  CHECK(back.n_users == 17);
  CHECK(back.use_predictor == ltesim::PredictorMode::on);
  CHECK(back.interference_dbm == -63.25);
  CHECK(back.cqi_efficiency[4] == 0.9);
  CHECK(back.rng_seed == 987654321);
  // one key per public field, spot-checked against the documented count
  CHECK(ltesim::config_keys().size() == 36);
}

TEST_CASE("overrides apply on top of parsed values") {
  SimConfig cfg;
  ltesim::apply_override(cfg, "n_users=30");
  CHECK(cfg.n_users == 30);
  ltesim::apply_override(cfg, " n_users = 12 ");
  CHECK(cfg.n_users == 12);
  CHECK_THROWS_AS(ltesim::apply_override(cfg, "nope=1"), ConfigError);
  CHECK_THROWS_AS(ltesim::apply_override(cfg, "n_users"), ConfigError);
}

TEST_CASE("validation names the offending field") {
  SimConfig cfg;
  SECTION("PRBs must fit the bandwidth") {
    cfg.n_prb = 100;
    CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("n_prb"));
  }
  SECTION("delta strictly inside (0,1)") {
    cfg.delta_i = 1.0;
    CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("delta_i"));
  }
  SECTION("efficiency table must be non-decreasing") {
    cfg.cqi_efficiency[3] = 0.01;
    CHECK_THROWS_WITH(cfg.validate(),
                      Catch::Matchers::ContainsSubstring("cqi_efficiency"));
  }
  SECTION("data REs bounded by the PRB size") {
    cfg.re_data = 169;
    CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("re_data"));
  }
  SECTION("negative delay rejected") {
    cfg.cqi_delay_ttis = -1;
    CHECK_THROWS_WITH(cfg.validate(),
                      Catch::Matchers::ContainsSubstring("cqi_delay_ttis"));
  }
}

TEST_CASE("predictor mode resolves per scheduler") {
  SimConfig cfg;
  cfg.scheduler_kind = ltesim::SchedulerKind::td_grouping;
  cfg.use_predictor = ltesim::PredictorMode::autosel;
  CHECK(cfg.predictor_active());
  cfg.scheduler_kind = ltesim::SchedulerKind::fd_pf;
  CHECK_FALSE(cfg.predictor_active());
  cfg.use_predictor = ltesim::PredictorMode::on;
  CHECK(cfg.predictor_active());
  cfg.scheduler_kind = ltesim::SchedulerKind::td_grouping;
  cfg.use_predictor = ltesim::PredictorMode::off;
  CHECK_FALSE(cfg.predictor_active());
}
