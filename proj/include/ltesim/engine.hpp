#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ltesim/channel.hpp"
#include "ltesim/config.hpp"
#include "ltesim/cqi.hpp"
#include "ltesim/kalman.hpp"
#include "ltesim/metrics.hpp"
#include "ltesim/rng.hpp"
#include "ltesim/scheduler.hpp"
#include "ltesim/trace.hpp"
#include "ltesim/traffic.hpp"
#include "ltesim/world.hpp"

namespace ltesim {

// One downlink cell, stepped TTI by TTI.  Each step runs the same fixed
// phase sequence; all per-user loops go in ascending id order so a run is a
// pure function of (config, seed).
class SimRun {
 public:
  explicit SimRun(const SimConfig& cfg, TraceWriter* trace = nullptr)
      : cfg_(validated(cfg)),
        quant_(CqiQuantizer::from_config(cfg_)),
        eff_(EfficiencyTable::from_config(cfg_)),
        feedback_(cfg_.n_users, cfg_.n_prb, cfg_.cqi_delay_ttis,
                  cfg_.cqi_blank_period_ttis),
        metrics_(cfg_.n_users),
        trace_(trace) {
    Rng world_rng(stream_seed(cfg_.rng_seed, stream::world));
    users_ = init_users(cfg_, world_rng);
    fading_ = make_fading(cfg_, cfg_.rng_seed);
    const std::size_t n = static_cast<std::size_t>(cfg_.n_users);
    buffers_.resize(n);
    sched_.assign(n, UserSchedState{});
    const double alpha = alpha_of(cfg_.delta_i, cfg_.t_i_seconds);
    for (auto& s : sched_) s.alpha = alpha;
    if (cfg_.predictor_active())
      bank_.emplace(KalmanParams::from_config(cfg_), cfg_.n_users, cfg_.n_prb,
                    cfg_.cqi_delay_ttis);
    rates_.assign(n * static_cast<std::size_t>(cfg_.n_prb), 0.0);
    alloc_bits_.assign(n, 0.0);
    backlogged_.assign(n, 0);
    report_.values.resize(static_cast<std::size_t>(cfg_.n_prb));
  }

  void step() {
    const int n = cfg_.n_users;
    const int p = cfg_.n_prb;
    const long long t = tti_;
    const double tti_s = cfg_.tti_seconds;
    const bool tracing = trace_ && trace_->enabled();

    // Motion and channel evolution.
    for (auto& u : users_) u = step_mobility(u, tti_s, cfg_);
    evolve_fading(fading_);
    if (tracing)
      for (const auto& u : users_)
        trace_->row(t, "mobility", u.id, -1, u.x, u.y, u.heading);

    // Ground-truth link quality.
    compute_sinr(users_, fading_, cfg_, link_);
    if (tracing)
      for (int u = 0; u < n; ++u)
        for (int j = 0; j < p; ++j)
          trace_->row(t, "sinr", u, j, link_.sinr_db[idx(u, j)], 0, 0);

    // Every user measures and submits a CQI report.
    for (int u = 0; u < n; ++u) {
      report_.user_id = u;
      report_.tti_measured = t;
      for (int j = 0; j < p; ++j)
        report_.values[static_cast<std::size_t>(j)] =
            static_cast<std::uint8_t>(quant_.quantize(link_.sinr_db[idx(u, j)]));
      feedback_.submit(report_);
      if (tracing) trace_->row(t, "report", u, -1, static_cast<double>(t), 0, 0);
    }

    // Matured feedback -> channel-quality inputs -> achievable rates.
    const bool predicting = bank_.has_value();
    for (int u = 0; u < n; ++u) {
      const auto rep = feedback_.fetch(u, t);
      if (tracing)
        trace_->row(t, "fetch", u, -1,
                    rep ? static_cast<double>(rep->tti_measured) : -1.0,
                    rep && feedback_.blanked_at(t) ? 1.0 : 0.0, 0);
      for (int j = 0; j < p; ++j) {
        std::optional<double> obs;
        if (rep) {
          const int c = rep->values[static_cast<std::size_t>(j)];
          if (c > 0) obs = quant_.dequantize(c);
        }
        std::optional<double> est;
        if (predicting) {
          est = bank_->estimate(u, j, obs);
        } else {
          est = obs;
        }
        const double rate =
            est ? rate_from_efficiency(eff_.at(quant_.quantize(*est)), cfg_)
                : 0.0;
        rates_[idx(u, j)] = rate;
        if (tracing)
          trace_->row(t, "predict", u, j, link_.sinr_db[idx(u, j)],
                      obs ? *obs : std::nan(""), est ? *est : std::nan(""));
      }
      if (tracing) {
        double sum = 0;
        for (int j = 0; j < p; ++j) sum += rates_[idx(u, j)];
        trace_->row(t, "rate", u, -1, sum, 0, 0);
      }
    }

    // Scheduling policy for this TTI.
    Policy policy;
    switch (cfg_.scheduler_kind) {
      case SchedulerKind::fd_pf: policy = Policy::pf; break;
      case SchedulerKind::fd_mlwdf: policy = Policy::mlwdf; break;
      default: policy = select_algorithm(t); break;
    }
    if (tracing)
      trace_->row(t, "select", -1, -1, policy == Policy::mlwdf ? 1.0 : 0.0, 0, 0);

    // PRB allocation against the buffers as they stood entering this TTI.
    for (int u = 0; u < n; ++u) {
      sched_[static_cast<std::size_t>(u)].hol_delay_s =
          buffers_[static_cast<std::size_t>(u)].hol_delay(t, tti_s);
      backlogged_[static_cast<std::size_t>(u)] =
          buffers_[static_cast<std::size_t>(u)].backlogged() ? 1 : 0;
    }
    const Allocation alloc = allocate(policy, n, p, rates_, sched_, backlogged_);
    for (int u = 0; u < n; ++u) alloc_bits_[static_cast<std::size_t>(u)] = 0.0;
    for (int j = 0; j < p; ++j) {
      const int u = alloc.prb_to_user[static_cast<std::size_t>(j)];
      if (u >= 0) alloc_bits_[static_cast<std::size_t>(u)] += rates_[idx(u, j)] * tti_s;
      if (tracing)
        trace_->row(t, "allocate", u, j, u >= 0 ? rates_[idx(u, j)] : 0.0, 0, 0);
    }

    // Serve, expire, then admit this TTI's arrivals.
    const bool counted = t >= cfg_.metrics_warmup_ttis;
    for (int u = 0; u < n; ++u) {
      UserBuffer& buf = buffers_[static_cast<std::size_t>(u)];
      const long long cap = static_cast<long long>(
          std::floor(alloc_bits_[static_cast<std::size_t>(u)] + 1e-9));
      const long long delivered = buf.drain(cap);
      const long long expired = buf.expire(t, cfg_.t_i_seconds, tti_s);
      long long arrived = 0;
      for (const Packet& pk : generate_arrivals(u, t, cfg_)) {
        buf.push(pk);
        arrived += pk.size_bits;
      }
      if (tracing)
        trace_->row(t, "serve", u, -1, static_cast<double>(delivered),
                    static_cast<double>(expired),
                    static_cast<double>(buf.queued_bits()));
      if (counted) metrics_.add(u, delivered, expired, arrived);
    }
    if (counted) metrics_.sim_time_seconds += tti_s;

    // Past-average throughput update from the allocated capacity.
    for (int u = 0; u < n; ++u) {
      auto& s = sched_[static_cast<std::size_t>(u)];
      s.avg_throughput_bps = update_avg_throughput(
          s.avg_throughput_bps, alloc_bits_[static_cast<std::size_t>(u)],
          cfg_.t_c_ttis, tti_s);
      if (tracing)
        trace_->row(t, "update", u, -1, s.avg_throughput_bps, s.hol_delay_s, 0);
    }

    ++tti_;
  }

  SummaryRow run_all() {
    while (tti_ < cfg_.sim_ttis) step();
    SummaryRow r;
    r.scheduler = to_string(cfg_.scheduler_kind);
    r.n_users = cfg_.n_users;
    r.seed = cfg_.rng_seed;
    r.sim_ttis = cfg_.sim_ttis;
    r.throughput_bps =
        metrics_.sim_time_seconds > 0.0 ? system_throughput(metrics_) : 0.0;
    r.plr_ratio = packet_loss_ratio(metrics_);
    r.plr_percent = 100.0 * r.plr_ratio;
    return r;
  }

  const SimConfig& config() const { return cfg_; }
  long long tti() const { return tti_; }
  const std::vector<UserState>& users() const { return users_; }
  const std::vector<UserBuffer>& buffers() const { return buffers_; }
  const MetricsAccumulator& metrics() const { return metrics_; }
  const std::vector<UserSchedState>& sched_states() const { return sched_; }
  const std::vector<double>& last_rates() const { return rates_; }

 private:
  static const SimConfig& validated(const SimConfig& cfg) {
    cfg.validate();
    return cfg;
  }

  std::size_t idx(int u, int j) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(cfg_.n_prb) +
           static_cast<std::size_t>(j);
  }

  SimConfig cfg_;
  CqiQuantizer quant_;
  EfficiencyTable eff_;
  FeedbackChannel feedback_;
  MetricsAccumulator metrics_;
  TraceWriter* trace_ = nullptr;

  std::vector<UserState> users_;
  FadingState fading_;
  LinkQuality link_;
  std::optional<PredictorBank> bank_;
  std::vector<UserBuffer> buffers_;
  std::vector<UserSchedState> sched_;
  std::vector<double> rates_;       // [user * n_prb + prb], bits/s
  std::vector<double> alloc_bits_;  // capacity granted this TTI, per user
  std::vector<char> backlogged_;
  CqiReport report_;
  long long tti_ = 0;
};

inline SummaryRow run(const SimConfig& cfg, TraceWriter* trace = nullptr) {
  SimRun sim(cfg, trace);
  return sim.run_all();
}

}  // namespace ltesim
