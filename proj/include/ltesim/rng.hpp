#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace ltesim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for an independent substream.  Mixing both arguments keeps streams
// decorrelated regardless of how ids are laid out, and makes every draw
// independent of scheduling order.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream_id) {
  return splitmix64(master ^ splitmix64(stream_id + 0x5851F42D4C957F2Dull));
}

// Stream id tags, spaced so per-entity indices never collide across uses.
namespace stream {
constexpr std::uint64_t world = 1ull << 40;
constexpr std::uint64_t shadowing = 2ull << 40;
constexpr std::uint64_t fading = 3ull << 40;
}  // namespace stream

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Pair of independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));  // 1-u1 in (0,1]
    const double t = 6.283185307179586 * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ltesim
