#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltesim {

// Raw bit counters, kept per user; the two report-card numbers are ratios of
// their sums.
struct MetricsAccumulator {
  std::vector<long long> prx_bits;       // delivered to each user
  std::vector<long long> pdiscard_bits;  // dropped on deadline expiry
  std::vector<long long> psize_bits;     // offered (arrived) traffic
  double sim_time_seconds = 0.0;

  explicit MetricsAccumulator(int n_users = 0)
      : prx_bits(static_cast<std::size_t>(n_users), 0),
        pdiscard_bits(static_cast<std::size_t>(n_users), 0),
        psize_bits(static_cast<std::size_t>(n_users), 0) {}

  void add(int user, long long delivered, long long discarded, long long arrived) {
    prx_bits[static_cast<std::size_t>(user)] += delivered;
    pdiscard_bits[static_cast<std::size_t>(user)] += discarded;
    psize_bits[static_cast<std::size_t>(user)] += arrived;
  }

  long long total_prx() const { return sum(prx_bits); }
  long long total_pdiscard() const { return sum(pdiscard_bits); }
  long long total_psize() const { return sum(psize_bits); }

 private:
  static long long sum(const std::vector<long long>& v) {
    long long t = 0;
    for (long long x : v) t += x;
    return t;
  }
};

// Total delivered bits over wall-clock simulated time, bits/s.
inline double system_throughput(const MetricsAccumulator& m) {
  if (m.sim_time_seconds <= 0.0)
    throw std::runtime_error("system_throughput: no simulated time accumulated");
  return static_cast<double>(m.total_prx()) / m.sim_time_seconds;
}

// Discarded over offered bits; zero offered traffic counts as zero loss.
inline double packet_loss_ratio(const MetricsAccumulator& m) {
  const long long offered = m.total_psize();
  if (offered == 0) return 0.0;
  return static_cast<double>(m.total_pdiscard()) / static_cast<double>(offered);
}

struct SummaryRow {
  std::string scheduler;
  int n_users = 0;
  std::uint64_t seed = 0;
  double throughput_bps = 0.0;
  double plr_ratio = 0.0;
  double plr_percent = 0.0;
  long long sim_ttis = 0;
};

inline std::string summary_csv_header() {
  return "scheduler,n_users,seed,throughput_bps,plr_ratio,plr_percent,sim_ttis,error";
}

inline std::string to_csv_line(const SummaryRow& r, const std::string& error = "") {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%d,%llu,%.12g,%.12g,%.12g,%lld,%s",
                r.scheduler.c_str(), r.n_users,
                static_cast<unsigned long long>(r.seed), r.throughput_bps,
                r.plr_ratio, r.plr_percent, r.sim_ttis, error.c_str());
  return buf;
}

}  // namespace ltesim
