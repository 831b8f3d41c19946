#pragma once

#include <cmath>
#include <vector>

namespace ltesim {

enum class Policy { pf, mlwdf };

// Average throughput below this floor is clamped so priority ratios stay
// finite for users that have never been served.
constexpr double kMinAvgThroughputBps = 1.0;

struct UserSchedState {
  double avg_throughput_bps = kMinAvgThroughputBps;
  double alpha = 0.0;          // delay weight for M-LWDF
  double hol_delay_s = 0.0;    // head-of-line delay entering this TTI
};

// Proportional fair: instantaneous rate over long-run average.
inline double pf_priority(double rate_bps, double avg_throughput_bps) {
  return rate_bps / std::max(avg_throughput_bps, kMinAvgThroughputBps);
}

// QoS weight alpha_i = -ln(delta_i) / T_i.
inline double alpha_of(double delta_i, double t_i_seconds) {
  return -std::log(delta_i) / t_i_seconds;
}

// M-LWDF: PF ratio scaled by the weighted head-of-line delay.
inline double mlwdf_priority(double alpha, double hol_delay_s, double rate_bps,
                             double avg_throughput_bps) {
  return alpha * hol_delay_s * pf_priority(rate_bps, avg_throughput_bps);
}

// Exponential moving average over t_c TTIs of the rate allocated this TTI.
inline double update_avg_throughput(double avg_bps, double served_bits,
                                    double t_c_ttis, double tti_seconds) {
  const double rate_bps = served_bits / tti_seconds;
  const double next = (1.0 - 1.0 / t_c_ttis) * avg_bps + rate_bps / t_c_ttis;
  return std::max(next, kMinAvgThroughputBps);
}

// Time-domain grouping: PF on even TTIs, M-LWDF on odd TTIs.
inline Policy select_algorithm(long long tti) {
  return (tti % 2 == 0) ? Policy::pf : Policy::mlwdf;
}

struct Allocation {
  std::vector<int> prb_to_user;  // -1 = unassigned
};

// Per-PRB argmax of the policy metric over backlogged users.  Ties keep the
// lowest user id.  When every metric is zero (e.g. all head-of-line delays
// are zero under M-LWDF) the PRB falls back to the highest-rate backlogged
// user so capacity is not wasted.
inline Allocation allocate(Policy policy, int n_users, int n_prb,
                           const std::vector<double>& rates_bps,
                           const std::vector<UserSchedState>& sched,
                           const std::vector<char>& backlogged) {
  Allocation out;
  out.prb_to_user.assign(static_cast<std::size_t>(n_prb), -1);
  for (int j = 0; j < n_prb; ++j) {
    double best_metric = 0.0;
    int best_user = -1;
    double best_rate = 0.0;
    int best_rate_user = -1;
    for (int u = 0; u < n_users; ++u) {
      if (!backlogged[static_cast<std::size_t>(u)]) continue;
      const double r = rates_bps[static_cast<std::size_t>(u) *
                                     static_cast<std::size_t>(n_prb) +
                                 static_cast<std::size_t>(j)];
      if (r <= 0.0) continue;
      const UserSchedState& st = sched[static_cast<std::size_t>(u)];
      const double metric =
          (policy == Policy::pf)
              ? pf_priority(r, st.avg_throughput_bps)
              : mlwdf_priority(st.alpha, st.hol_delay_s, r, st.avg_throughput_bps);
      if (metric > best_metric) {
        best_metric = metric;
        best_user = u;
      }
      if (r > best_rate) {
        best_rate = r;
        best_rate_user = u;
      }
    }
    out.prb_to_user[static_cast<std::size_t>(j)] =
        (best_user >= 0) ? best_user : best_rate_user;
  }
  return out;
}

}  // namespace ltesim
