#include <catch2/catch_amalgamated.hpp>

#include "ltesim/mat3.hpp"
#include "oracle_kalman.hpp"

using ltesim::Mat3;
using ltesim::Vec3;

namespace {

Mat3 from_array(const oracle::M& a) {
  Mat3 m;
  for (int i = 0; i < 9; ++i) m.m[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
  return m;
}

}  // namespace

TEST_CASE("mat3 basic algebra") {
  const Mat3 a = from_array({1, 2, 3, 4, 5, 6, 7, 8, 10});
  const Mat3 b = from_array({2, 0, 1, 0, 3, 0, 1, 0, 2});

  SECTION("identity is neutral") {
    const Mat3 i = Mat3::identity();
    CHECK(ltesim::max_abs_diff(a * i, a) == 0.0);
    CHECK(ltesim::max_abs_diff(i * a, a) == 0.0);
  }

  SECTION("product matches the reference loop") {
    const oracle::M want = oracle::mul({1, 2, 3, 4, 5, 6, 7, 8, 10},
                                       {2, 0, 1, 0, 3, 0, 1, 0, 2});
    CHECK(ltesim::max_abs_diff(a * b, from_array(want)) < 1e-15);
  }

  SECTION("matrix-vector product") {
    const Vec3 v = a * Vec3{1.0, 0.0, -1.0};
    CHECK(v[0] == Catch::Approx(-2.0));
    CHECK(v[1] == Catch::Approx(-2.0));
    CHECK(v[2] == Catch::Approx(-3.0));
  }

  SECTION("transpose and trace") {
    CHECK(ltesim::transpose(a)(0, 1) == 4.0);
    CHECK(ltesim::transpose(a)(2, 0) == 3.0);
    CHECK(ltesim::trace(a) == 16.0);
  }
}

TEST_CASE("mat3 inverse agrees with the adjugate route") {
  const oracle::M samples[] = {
      {4, 1, 0, 1, 3, -1, 0, -1, 2},
      {1, 2, 3, 4, 5, 6, 7, 8, 10},
      {2.5, 0, 0, 0, 1e-3, 0, 0, 0, 7.0},
      {1, 0.99, 0, 0.99, 1, 0, 0, 0, 1},
  };
  for (const auto& s : samples) {
    const Mat3 a = from_array(s);
    const Mat3 inv = ltesim::inverse(a);
    const Mat3 ref = from_array(oracle::adj_inverse(s));
    CHECK(ltesim::max_abs_diff(inv, ref) < 1e-9 * std::max(1.0, ltesim::max_abs(ref)));
    CHECK(ltesim::max_abs_diff(a * inv, Mat3::identity()) < 1e-9);
  }
}

TEST_CASE("mat3 inverse rejects singular input") {
  Mat3 sing;
  sing(0, 0) = 1.0;
  sing(0, 1) = 2.0;
  sing(1, 0) = 2.0;
  sing(1, 1) = 4.0;  // rank deficient
  CHECK_THROWS_AS(ltesim::inverse(sing), std::runtime_error);
  CHECK_THROWS_AS(ltesim::inverse(Mat3{}), std::runtime_error);
}
