#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "ltesim/config.hpp"
#include "ltesim/rng.hpp"
#include "ltesim/world.hpp"

namespace ltesim {

// COST-231 urban macro path loss; distances below 1 m are clamped.
inline double path_loss_db(double distance_m) {
  const double d_km = std::max(distance_m, 1.0) / 1000.0;
  return 128.1 + 37.6 * std::log10(d_km);
}

inline double doppler_hz(double speed_mps, double carrier_hz) {
  return speed_mps * carrier_hz / 2.99792458e8;
}

// First-order Gauss-Markov coefficient for Rayleigh fading sampled per TTI.
inline double fading_correlation(double doppler, double tti_seconds) {
  return std::cyl_bessel_j(0.0, 2.0 * 3.141592653589793 * doppler * tti_seconds);
}

// Per-(user, PRB) complex fading taps.  Each tap owns its RNG stream so the
// evolution is independent of iteration order and of the rest of the run.
struct FadingState {
  int n_users = 0;
  int n_prb = 0;
  bool enabled = true;
  double rho = 1.0;
  double innov_scale = 0.0;  // sqrt(1 - rho^2)
  std::vector<std::complex<double>> h;  // [user * n_prb + prb]
  std::vector<double> shadowing_db;     // per user, drawn once
  std::vector<Rng> streams;             // one per (user, prb)
};

inline FadingState make_fading(const SimConfig& cfg, std::uint64_t master_seed) {
  FadingState st;
  st.n_users = cfg.n_users;
  st.n_prb = cfg.n_prb;
  st.enabled = cfg.fading_enabled;
  const double fd = doppler_hz(cfg.user_speed_mps, cfg.carrier_hz);
  st.rho = st.enabled ? fading_correlation(fd, cfg.tti_seconds) : 1.0;
  st.innov_scale = std::sqrt(std::max(1.0 - st.rho * st.rho, 0.0));

  const std::size_t pairs =
      static_cast<std::size_t>(cfg.n_users) * static_cast<std::size_t>(cfg.n_prb);
  st.h.resize(pairs, {1.0, 0.0});
  st.shadowing_db.assign(static_cast<std::size_t>(cfg.n_users), 0.0);

  for (int u = 0; u < cfg.n_users; ++u) {
    Rng sh(stream_seed(master_seed, stream::shadowing + static_cast<std::uint64_t>(u)));
    st.shadowing_db[static_cast<std::size_t>(u)] =
        cfg.shadowing_sigma_db * sh.normal_pair().first;
  }
  if (st.enabled) {
    st.streams.reserve(pairs);
    constexpr double inv_sqrt2 = 0.7071067811865476;
    for (std::size_t k = 0; k < pairs; ++k) {
      st.streams.emplace_back(stream_seed(master_seed, stream::fading + k));
      // Stationary start: h(0) ~ CN(0, 1).
      const auto [g1, g2] = st.streams.back().normal_pair();
      st.h[k] = {g1 * inv_sqrt2, g2 * inv_sqrt2};
    }
  }
  return st;
}

// h(t) = rho * h(t-1) + sqrt(1 - rho^2) * w,  w ~ CN(0, 1).
inline void evolve_fading(FadingState& st) {
  if (!st.enabled || st.innov_scale == 0.0) return;
  constexpr double inv_sqrt2 = 0.7071067811865476;
  const double s = st.innov_scale * inv_sqrt2;
  for (std::size_t k = 0; k < st.h.size(); ++k) {
    const auto [g1, g2] = st.streams[k].normal_pair();
    st.h[k] = {st.rho * st.h[k].real() + s * g1,
               st.rho * st.h[k].imag() + s * g2};
  }
}

struct LinkQuality {
  int n_users = 0;
  int n_prb = 0;
  std::vector<double> sinr_db;  // [user * n_prb + prb]
};

// Thermal noise plus constant other-cell interference over one PRB, combined
// in the linear domain.
inline double combined_noise_interference_dbm(const SimConfig& cfg) {
  const double noise_dbm =
      -174.0 + 10.0 * std::log10(cfg.prb_bandwidth_hz()) + cfg.noise_figure_db;
  const double noise_mw = std::pow(10.0, noise_dbm / 10.0);
  const double intf_mw = std::pow(10.0, cfg.interference_dbm / 10.0);
  return 10.0 * std::log10(noise_mw + intf_mw);
}

// Per-user large-scale term of the link budget: everything except fading.
inline double mean_rx_snr_db(const UserState& u, double shadowing_db,
                             double noise_intf_dbm, const SimConfig& cfg) {
  const double tx_per_prb_dbm =
      cfg.enb_power_dbm - 10.0 * std::log10(static_cast<double>(cfg.n_prb));
  return tx_per_prb_dbm - path_loss_db(distance_from_center(u)) - shadowing_db -
         noise_intf_dbm;
}

inline void compute_sinr(const std::vector<UserState>& users,
                         const FadingState& fad, const SimConfig& cfg,
                         LinkQuality& out) {
  out.n_users = cfg.n_users;
  out.n_prb = cfg.n_prb;
  out.sinr_db.resize(static_cast<std::size_t>(cfg.n_users) *
                     static_cast<std::size_t>(cfg.n_prb));
  const double ni_dbm = combined_noise_interference_dbm(cfg);
  for (int u = 0; u < cfg.n_users; ++u) {
    const double base =
        mean_rx_snr_db(users[static_cast<std::size_t>(u)],
                       fad.shadowing_db[static_cast<std::size_t>(u)], ni_dbm, cfg);
    for (int j = 0; j < cfg.n_prb; ++j) {
      const std::size_t k = static_cast<std::size_t>(u) *
                                static_cast<std::size_t>(cfg.n_prb) +
                            static_cast<std::size_t>(j);
      const double gain = std::max(std::norm(fad.h[k]), 1e-300);
      out.sinr_db[k] = base + 10.0 * std::log10(gain);
    }
  }
}

}  // namespace ltesim
