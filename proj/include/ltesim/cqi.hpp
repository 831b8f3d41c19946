#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ltesim/config.hpp"

namespace ltesim {

// Uniform SINR-to-CQI grid.  Index 0 means "below range / no transmission".
struct CqiQuantizer {
  double floor_db = -6.0;
  double step_db = 2.0;

  int quantize(double sinr_db) const {
    const int idx =
        static_cast<int>(std::floor((sinr_db - floor_db) / step_db)) + 1;
    return std::clamp(idx, 0, 15);
  }

  // Mid-bin SINR for a delivered index; index 0 maps below the usable range
  // so that re-quantizing it yields 0 again.
  double dequantize(int cqi) const {
    if (cqi <= 0) return floor_db - step_db;
    return floor_db + (static_cast<double>(cqi) - 0.5) * step_db;
  }

  static CqiQuantizer from_config(const SimConfig& cfg) {
    return {cfg.cqi_sinr_floor_db, cfg.cqi_sinr_step_db};
  }
};

// Spectral efficiency in bits per resource element, indexed by CQI.
struct EfficiencyTable {
  std::array<double, 16> bits_per_re{};

  double at(int cqi) const {
    if (cqi < 0 || cqi > 15)
      throw std::out_of_range("EfficiencyTable: CQI index out of range");
    return bits_per_re[static_cast<std::size_t>(cqi)];
  }

  static EfficiencyTable from_config(const SimConfig& cfg) {
    EfficiencyTable t;
    t.bits_per_re[0] = 0.0;
    for (std::size_t i = 0; i < cfg.cqi_efficiency.size(); ++i)
      t.bits_per_re[i + 1] = cfg.cqi_efficiency[i];
    return t;
  }
};

// Achievable rate on one PRB for one TTI, in bits/s.
inline double rate_from_efficiency(double bits_per_re, const SimConfig& cfg) {
  return bits_per_re * static_cast<double>(cfg.re_data) / cfg.tti_seconds;
}

struct CqiReport {
  int user_id = 0;
  long long tti_measured = 0;
  std::vector<std::uint8_t> values;  // one CQI per PRB
};

// Fixed-delay feedback path.  A report measured at TTI t becomes visible at
// t + delay, exactly once.  At blanked TTIs the delivered report carries
// all-zero values (feedback outage), independent of what was measured.
class FeedbackChannel {
 public:
  FeedbackChannel(int n_users, int n_prb, int delay_ttis, int blank_period_ttis)
      : n_users_(n_users),
        n_prb_(n_prb),
        delay_(delay_ttis),
        blank_period_(blank_period_ttis),
        slots_(delay_ttis + 1),
        measured_tti_(static_cast<std::size_t>(slots_) *
                          static_cast<std::size_t>(n_users),
                      -1),
        values_(static_cast<std::size_t>(slots_) *
                    static_cast<std::size_t>(n_users) *
                    static_cast<std::size_t>(n_prb),
                0) {}

  int delay_ttis() const { return delay_; }

  void submit(const CqiReport& r) {
    if (r.user_id < 0 || r.user_id >= n_users_)
      throw std::out_of_range("FeedbackChannel: user_id out of range");
    if (static_cast<int>(r.values.size()) != n_prb_)
      throw std::invalid_argument("FeedbackChannel: report has wrong PRB count");
    const std::size_t cell = slot_of(r.tti_measured) * static_cast<std::size_t>(n_users_) +
                             static_cast<std::size_t>(r.user_id);
    if (measured_tti_[cell] == r.tti_measured)
      throw std::logic_error("FeedbackChannel: duplicate report for this TTI");
    measured_tti_[cell] = r.tti_measured;
    std::copy(r.values.begin(), r.values.end(),
              values_.begin() + static_cast<std::ptrdiff_t>(cell * static_cast<std::size_t>(n_prb_)));
  }

  // Report that matures at current_tti, if any.
  std::optional<CqiReport> fetch(int user_id, long long current_tti) const {
    if (user_id < 0 || user_id >= n_users_)
      throw std::out_of_range("FeedbackChannel: user_id out of range");
    const long long measured = current_tti - delay_;
    if (measured < 0) return std::nullopt;
    const std::size_t cell = slot_of(measured) * static_cast<std::size_t>(n_users_) +
                             static_cast<std::size_t>(user_id);
    if (measured_tti_[cell] != measured) return std::nullopt;
    CqiReport out;
    out.user_id = user_id;
    out.tti_measured = measured;
    if (blank_period_ > 0 && current_tti % blank_period_ == 0) {
      out.values.assign(static_cast<std::size_t>(n_prb_), 0);
    } else {
      const auto begin =
          values_.begin() + static_cast<std::ptrdiff_t>(cell * static_cast<std::size_t>(n_prb_));
      out.values.assign(begin, begin + n_prb_);
    }
    return out;
  }

  bool blanked_at(long long current_tti) const {
    return blank_period_ > 0 && current_tti % blank_period_ == 0;
  }

 private:
  std::size_t slot_of(long long tti) const {
    return static_cast<std::size_t>(tti % slots_);
  }

  int n_users_;
  int n_prb_;
  int delay_;
  int blank_period_;
  int slots_;
  std::vector<long long> measured_tti_;  // [slot * n_users + user], -1 = empty
  std::vector<std::uint8_t> values_;     // [(slot * n_users + user) * n_prb + j]
};

}  // namespace ltesim
