#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "ltesim/config.hpp"

namespace ltesim {

struct Packet {
  long long size_bits = 0;
  long long arrival_tti = 0;
  long long remaining_bits = 0;
};

// Constant bit rate source: one fixed-size packet every interarrival period,
// phase-offset by user id so arrivals do not all land on the same TTI.
inline std::vector<Packet> generate_arrivals(int user_id, long long tti,
                                             const SimConfig& cfg) {
  std::vector<Packet> out;
  const int period = cfg.traffic_interarrival_ttis;
  if (tti % period == user_id % period)
    out.push_back({cfg.traffic_packet_bits, tti, cfg.traffic_packet_bits});
  return out;
}

// FIFO queue with byte-exact accounting.  arrived = delivered + discarded +
// queued holds after every operation.
class UserBuffer {
 public:
  void push(const Packet& p) {
    q_.push_back(p);
    arrived_bits_ += p.size_bits;
  }

  bool backlogged() const { return !q_.empty(); }
  std::size_t packet_count() const { return q_.size(); }

  // Delay of the head-of-line packet, in seconds, at the given TTI.
  double hol_delay(long long now_tti, double tti_seconds) const {
    if (q_.empty()) return 0.0;
    return static_cast<double>(now_tti - q_.front().arrival_tti) * tti_seconds;
  }

  // Drops every packet whose age strictly exceeds the delay budget.  Returns
  // the bits discarded by this call (the unserved remainder of each dropped
  // packet, so conservation stays exact).
  long long expire(long long now_tti, double t_i_seconds, double tti_seconds) {
    long long dropped = 0;
    while (!q_.empty()) {
      const double age =
          static_cast<double>(now_tti - q_.front().arrival_tti) * tti_seconds;
      if (age <= t_i_seconds) break;
      dropped += q_.front().remaining_bits;
      q_.pop_front();
    }
    discarded_bits_ += dropped;
    return dropped;
  }

  // Serves up to capacity_bits in FIFO order, splitting the last packet if
  // needed.  Returns the bits actually delivered.
  long long drain(long long capacity_bits) {
    long long delivered = 0;
    while (capacity_bits > 0 && !q_.empty()) {
      Packet& head = q_.front();
      const long long take = std::min(capacity_bits, head.remaining_bits);
      head.remaining_bits -= take;
      delivered += take;
      capacity_bits -= take;
      if (head.remaining_bits == 0) q_.pop_front();
    }
    delivered_bits_ += delivered;
    return delivered;
  }

  long long queued_bits() const {
    long long total = 0;
    for (const Packet& p : q_) total += p.remaining_bits;
    return total;
  }

  long long arrived_bits() const { return arrived_bits_; }
  long long delivered_bits() const { return delivered_bits_; }
  long long discarded_bits() const { return discarded_bits_; }

 private:
  std::deque<Packet> q_;
  long long arrived_bits_ = 0;
  long long delivered_bits_ = 0;
  long long discarded_bits_ = 0;
};

}  // namespace ltesim
