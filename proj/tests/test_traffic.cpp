#include <catch2/catch_amalgamated.hpp>

#include "ltesim/rng.hpp"
#include "ltesim/traffic.hpp"

using ltesim::Packet;
using ltesim::SimConfig;
using ltesim::UserBuffer;

TEST_CASE("arrivals are periodic with a per-user phase") {
  SimConfig cfg;  // 800 bits every 10 TTIs
  CHECK(ltesim::generate_arrivals(0, 0, cfg).size() == 1);
  CHECK(ltesim::generate_arrivals(0, 5, cfg).empty());
  CHECK(ltesim::generate_arrivals(0, 10, cfg).size() == 1);
  CHECK(ltesim::generate_arrivals(3, 0, cfg).empty());
  CHECK(ltesim::generate_arrivals(3, 3, cfg).size() == 1);
  CHECK(ltesim::generate_arrivals(3, 13, cfg).size() == 1);
  CHECK(ltesim::generate_arrivals(13, 3, cfg).size() == 1);  // phase wraps

  const auto p = ltesim::generate_arrivals(0, 20, cfg);
  REQUIRE(p.size() == 1);
  CHECK(p[0].size_bits == 800);
  CHECK(p[0].arrival_tti == 20);
  CHECK(p[0].remaining_bits == 800);

  // offered load: 100 packets of 800 bits over one simulated second
  long long arrived = 0;
  for (long long t = 0; t < 1000; ++t)
    for (const auto& pk : ltesim::generate_arrivals(0, t, cfg))
      arrived += pk.size_bits;
  CHECK(arrived == 80000);
}

TEST_CASE("drain serves FIFO and splits the last packet") {
  UserBuffer buf;
  buf.push({1000, 0, 1000});
  CHECK(buf.backlogged());
  CHECK(buf.queued_bits() == 1000);

  CHECK(buf.drain(600) == 600);
  CHECK(buf.queued_bits() == 400);
  CHECK(buf.backlogged());
  CHECK(buf.delivered_bits() == 600);

  CHECK(buf.drain(600) == 400);
  CHECK_FALSE(buf.backlogged());
  CHECK(buf.drain(600) == 0);
  CHECK(buf.arrived_bits() == 1000);
  CHECK(buf.delivered_bits() == 1000);
}

TEST_CASE("drain spans packet boundaries") {
  UserBuffer buf;
  buf.push({300, 0, 300});
  buf.push({300, 1, 300});
  buf.push({300, 2, 300});
  CHECK(buf.drain(700) == 700);
  CHECK(buf.packet_count() == 1);
  CHECK(buf.queued_bits() == 200);
}

TEST_CASE("head-of-line delay tracks the oldest packet") {
  UserBuffer buf;
  CHECK(buf.hol_delay(100, 1e-3) == 0.0);
  buf.push({500, 10, 500});
  buf.push({500, 30, 500});
  CHECK(buf.hol_delay(40, 1e-3) == Catch::Approx(0.030));
  // partial service leaves the head's arrival time unchanged
  buf.drain(200);
  CHECK(buf.hol_delay(40, 1e-3) == Catch::Approx(0.030));
  buf.drain(300);
  CHECK(buf.hol_delay(40, 1e-3) == Catch::Approx(0.010));
}

TEST_CASE("packets expire strictly after the delay budget") {
  UserBuffer buf;
  buf.push({800, 0, 800});
  // age exactly T_i stays
  CHECK(buf.expire(100, 0.1, 1e-3) == 0);
  CHECK(buf.backlogged());
  // one TTI later it is dropped
  CHECK(buf.expire(101, 0.1, 1e-3) == 800);
  CHECK_FALSE(buf.backlogged());
  CHECK(buf.discarded_bits() == 800);
}

TEST_CASE("expiry after partial service discards the unserved remainder") {
  UserBuffer buf;
  buf.push({1000, 0, 1000});
  buf.drain(600);
  CHECK(buf.expire(101, 0.1, 1e-3) == 400);
  CHECK(buf.arrived_bits() ==
        buf.delivered_bits() + buf.discarded_bits() + buf.queued_bits());
  CHECK(buf.delivered_bits() == 600);
  CHECK(buf.discarded_bits() == 400);
}

TEST_CASE("several overdue packets drop in one sweep") {
  UserBuffer buf;
  buf.push({100, 0, 100});
  buf.push({100, 1, 100});
  buf.push({100, 60, 100});
  CHECK(buf.expire(102, 0.1, 1e-3) == 200);
  CHECK(buf.packet_count() == 1);
  CHECK(buf.hol_delay(102, 1e-3) == Catch::Approx(0.042));
}

TEST_CASE("conservation holds under random traffic operations") {
  ltesim::Rng rng(77);
  UserBuffer buf;
  long long now = 0;
  for (int op = 0; op < 5000; ++op) {
    const double pick = rng.uniform01();
    if (pick < 0.4) {
      const long long bits = 1 + static_cast<long long>(rng.uniform01() * 2000);
      buf.push({bits, now, bits});
    } else if (pick < 0.8) {
      buf.drain(static_cast<long long>(rng.uniform01() * 1500));
    } else {
      buf.expire(now, 0.02, 1e-3);
    }
    ++now;
    REQUIRE(buf.arrived_bits() ==
            buf.delivered_bits() + buf.discarded_bits() + buf.queued_bits());
  }
  CHECK(buf.arrived_bits() > 0);
}
