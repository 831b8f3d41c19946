#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "ltesim/config.hpp"
#include "ltesim/mat3.hpp"

namespace ltesim {

// Per-(user, PRB) channel-quality tracker.  State x = (gamma, v, b): SINR in
// dB, its per-TTI velocity, and its per-TTI acceleration, propagated by a
// constant-acceleration transition.  Observations are built from delivered
// reports by finite differencing, and the delayed estimate is compensated by
// extrapolating the corrected state over the feedback delay.
struct KalmanParams {
  Mat3 phi;             // state transition over one step
  Mat3 h;               // observation matrix
  Mat3 q;               // process noise covariance
  Mat3 r;               // observation noise covariance
  Vec3 p0_default{100.0, 1.0, 1.0};
  double p0_floor = 1e-2;
  double step_ttis = 1.0;
  bool h_is_identity = true;

  static Mat3 transition(double t) {
    Mat3 a = Mat3::identity();
    a(0, 1) = t;
    a(0, 2) = 0.5 * t * t;
    a(1, 2) = t;
    return a;
  }

  static KalmanParams from_config(const SimConfig& cfg) {
    KalmanParams kp;
    kp.step_ttis = 1.0;
    kp.phi = transition(kp.step_ttis);
    kp.h = Mat3::identity();
    kp.q = Mat3::diag({cfg.kalman_q_diag[0], cfg.kalman_q_diag[1],
                       cfg.kalman_q_diag[2]});
    kp.r = Mat3::diag({cfg.kalman_r_diag[0], cfg.kalman_r_diag[1],
                       cfg.kalman_r_diag[2]});
    kp.p0_default = {cfg.kalman_p0_default_diag[0], cfg.kalman_p0_default_diag[1],
                     cfg.kalman_p0_default_diag[2]};
    kp.p0_floor = cfg.kalman_p0_floor;
    kp.h_is_identity = true;
    return kp;
  }
};

struct KalmanState {
  Vec3 x{0.0, 0.0, 0.0};
  Mat3 p{};
  // Last two observed gamma values, for finite-difference observations.
  int n_obs = 0;
  double prev_obs1 = 0.0;  // gamma' at the previous report
  double prev_obs2 = 0.0;  // gamma' two reports back
};

// P0 is diagonal, sized from the first observation when one is available;
// a floor keeps zero entries strictly positive so the gain can move.
inline KalmanState init_filter(const KalmanParams& kp,
                               const std::optional<Vec3>& first_obs) {
  KalmanState s;
  Vec3 d;
  if (first_obs) {
    const Vec3& z = *first_obs;
    d = {z[0] * z[0], z[1] * z[1], z[2] * z[2]};
  } else {
    d = kp.p0_default;
  }
  for (double& v : d) v = std::max(v, kp.p0_floor);
  s.p = Mat3::diag(d);
  return s;
}

inline void predict(KalmanState& s, const KalmanParams& kp) {
  s.x = kp.phi * s.x;
  s.p = kp.phi * s.p * transpose(kp.phi) + kp.q;
}

inline void symmetrize(Mat3& p) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double v = 0.5 * (p(i, j) + p(j, i));
      p(i, j) = v;
      p(j, i) = v;
    }
}

inline void correct(KalmanState& s, const Vec3& z, const KalmanParams& kp) {
  if (kp.h_is_identity) {
    const Mat3 gain = s.p * inverse(s.p + kp.r);
    s.x = s.x + gain * (z - s.x);
    s.p = s.p - gain * s.p;
  } else {
    const Mat3 ht = transpose(kp.h);
    const Mat3 innov_cov = kp.h * s.p * ht + kp.r;
    const Mat3 gain = s.p * ht * inverse(innov_cov);
    s.x = s.x + gain * (z - kp.h * s.x);
    s.p = (Mat3::identity() - gain * kp.h) * s.p;
  }
  symmetrize(s.p);
}

// Observation vector from the delivered report: gamma' directly, velocity and
// acceleration by finite differences over the report history.  Components
// without enough history are zero.  Advances the history.
inline Vec3 build_observation(double report_db, KalmanState& s) {
  Vec3 z{report_db, 0.0, 0.0};
  if (s.n_obs >= 1) z[1] = report_db - s.prev_obs1;
  if (s.n_obs >= 2) z[2] = report_db - 2.0 * s.prev_obs1 + s.prev_obs2;
  s.prev_obs2 = s.prev_obs1;
  s.prev_obs1 = report_db;
  ++s.n_obs;
  return z;
}

// One filter step for the current TTI.  A missing report (blanked feedback or
// nothing matured yet) runs the time update only.  The returned value is the
// current-channel estimate: the corrected state extrapolated over the
// feedback delay.
inline double estimate_sinr(KalmanState& s, const std::optional<double>& report_db,
                            int delay_ttis, const KalmanParams& kp) {
  predict(s, kp);
  if (report_db) {
    const Vec3 z = build_observation(*report_db, s);
    correct(s, z, kp);
  }
  if (delay_ttis <= 0) return s.x[0];
  const Vec3 ahead =
      KalmanParams::transition(kp.step_ttis * static_cast<double>(delay_ttis)) * s.x;
  return ahead[0];
}

// One lazily-initialized filter per (user, PRB).  A filter comes alive on the
// first usable report and free-runs through gaps afterwards.
class PredictorBank {
 public:
  PredictorBank(const KalmanParams& kp, int n_users, int n_prb, int delay_ttis)
      : kp_(kp),
        n_prb_(n_prb),
        delay_(delay_ttis),
        states_(static_cast<std::size_t>(n_users) * static_cast<std::size_t>(n_prb)),
        live_(states_.size(), 0),
        extrapolate_(KalmanParams::transition(kp.step_ttis *
                                              static_cast<double>(delay_ttis))) {}

  // Estimate for the current TTI, or nothing while the filter has never seen
  // a usable report.
  std::optional<double> estimate(int user, int prb, std::optional<double> obs_db) {
    const std::size_t k = index(user, prb);
    KalmanState& s = states_[k];
    if (!live_[k]) {
      if (!obs_db) return std::nullopt;
      s = init_filter(kp_, Vec3{*obs_db, 0.0, 0.0});
      live_[k] = 1;
    }
    predict(s, kp_);
    if (obs_db) {
      const Vec3 z = build_observation(*obs_db, s);
      correct(s, z, kp_);
    }
    if (delay_ <= 0) return s.x[0];
    const Vec3 ahead = extrapolate_ * s.x;
    return ahead[0];
  }

  bool live(int user, int prb) const { return live_[index(user, prb)] != 0; }
  const KalmanState& state(int user, int prb) const { return states_[index(user, prb)]; }

 private:
  std::size_t index(int user, int prb) const {
    return static_cast<std::size_t>(user) * static_cast<std::size_t>(n_prb_) +
           static_cast<std::size_t>(prb);
  }

  KalmanParams kp_;
  int n_prb_;
  int delay_;
  std::vector<KalmanState> states_;
  std::vector<char> live_;
  Mat3 extrapolate_;
};

}  // namespace ltesim
