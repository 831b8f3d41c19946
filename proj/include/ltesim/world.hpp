#pragma once

#include <cmath>
#include <vector>

#include "ltesim/config.hpp"
#include "ltesim/rng.hpp"

namespace ltesim {

struct UserState {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // radians
  double speed = 0.0;    // m/s
};

inline double distance_from_center(const UserState& u) {
  return std::hypot(u.x, u.y);
}

// Uniform positions over the cell disc, uniform headings, common speed.
inline std::vector<UserState> init_users(const SimConfig& cfg, Rng& rng) {
  constexpr double two_pi = 6.283185307179586;
  std::vector<UserState> users;
  users.reserve(static_cast<std::size_t>(cfg.n_users));
  for (int i = 0; i < cfg.n_users; ++i) {
    const double r = cfg.cell_radius_m * std::sqrt(rng.uniform01());
    const double ang = two_pi * rng.uniform01();
    const double heading = two_pi * rng.uniform01();
    users.push_back({i, r * std::cos(ang), r * std::sin(ang), heading,
                     cfg.user_speed_mps});
  }
  return users;
}

// Constant-heading motion.  A user crossing the boundary re-enters at the
// diametrically opposite point and continues on the same heading with the
// remaining distance.
inline UserState step_mobility(const UserState& u, double dt_seconds,
                               const SimConfig& cfg) {
  const double radius = cfg.cell_radius_m;
  const double dx = std::cos(u.heading);
  const double dy = std::sin(u.heading);
  double px = u.x;
  double py = u.y;
  double rem = u.speed * dt_seconds;
  for (int guard = 0; guard < 64 && rem > 0.0; ++guard) {
    const double nx = px + rem * dx;
    const double ny = py + rem * dy;
    if (nx * nx + ny * ny <= radius * radius) {
      px = nx;
      py = ny;
      rem = 0.0;
      break;
    }
    // Distance along the heading to the boundary circle.
    const double b = px * dx + py * dy;
    const double c = px * px + py * py - radius * radius;
    const double disc = std::max(b * b - c, 0.0);
    const double t = std::max(-b + std::sqrt(disc), 0.0);
    px = -(px + t * dx);
    py = -(py + t * dy);
    rem -= t;
    if (t == 0.0) break;  // tangent graze; stop rather than loop
  }
  const double n = std::hypot(px, py);
  if (n > radius) {  // floating-point dust from the boundary hit
    px *= radius / n;
    py *= radius / n;
  }
  return {u.id, px, py, u.heading, u.speed};
}

}  // namespace ltesim
