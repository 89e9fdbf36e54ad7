#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <utility>

#include "ope/geometry.hpp"

using ope::GridSpec;

TEST_CASE("cell centers partition [-1,1] evenly") {
  CHECK(ope::cell_center(0, 1) == 0.0);
  CHECK(ope::cell_center(0, 2) == -0.5);
  CHECK(ope::cell_center(1, 2) == 0.5);
  CHECK(ope::cell_center(0, 4) == -0.75);
  CHECK(ope::cell_center(3, 4) == 0.75);
  CHECK_THROWS_AS(ope::cell_center(-1, 4), std::out_of_range);
  CHECK_THROWS_AS(ope::cell_center(4, 4), std::out_of_range);
}

TEST_CASE("virtual centers extrapolate past the border with the same spacing") {
  CHECK(ope::virtual_center(-1, 2) == -1.5);
  CHECK(ope::virtual_center(2, 2) == 1.5);
  CHECK(ope::virtual_center(-1, 4) == -1.25);
  // spacing between consecutive centers is 2/m everywhere
  for (int k = -2; k < 6; ++k) {
    CHECK(ope::virtual_center(k + 1, 4) - ope::virtual_center(k, 4) ==
          doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("relative coordinates, extended and base conventions") {
  const GridSpec g22{2, 2};
  const Eigen::Vector2d c{-0.5, -0.5};
  const Eigen::Vector2d at_center = ope::relative_coords_ext(c, c, g22);
  CHECK(at_center.x() == 0.0);
  CHECK(at_center.y() == 0.0);

  const Eigen::Vector2d q{0.0, 0.0};
  const Eigen::Vector2d ext = ope::relative_coords_ext(q, c, g22);
  CHECK(ext.x() == 0.5);
  CHECK(ext.y() == 0.5);
  const Eigen::Vector2d base = ope::relative_coords_base(q, c, g22);
  CHECK(base.x() == 1.0);
  CHECK(base.y() == 1.0);

  const GridSpec g44{4, 4};
  const Eigen::Vector2d q2{0.25, -0.25};
  const Eigen::Vector2d c2{0.25, 0.25};
  const Eigen::Vector2d ext2 = ope::relative_coords_ext(q2, c2, g44);
  CHECK(ext2.x() == 0.0);
  CHECK(ext2.y() == -1.0);

  // the base convention is exactly twice the extended one
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 16; ++trial) {
    const Eigen::Vector2d qq{dist(rng), dist(rng)};
    const Eigen::Vector2d cc{dist(rng), dist(rng)};
    const Eigen::Vector2d e = ope::relative_coords_ext(qq, cc, g44);
    const Eigen::Vector2d b = ope::relative_coords_base(qq, cc, g44);
    CHECK(b.x() == 2.0 * e.x());
    CHECK(b.y() == 2.0 * e.y());
  }
}

TEST_CASE("query on a real center takes that member's full weight") {
  const GridSpec g{4, 4};
  const Eigen::Vector2d q{ope::cell_center(1, 4), ope::cell_center(2, 4)};
  const auto nb = ope::neighborhood(q, g);
  int full = -1;
  for (int t = 0; t < 4; ++t) {
    if (nb.weights[t] == 1.0) full = t;
  }
  REQUIRE(full >= 0);
  CHECK(nb.indices[full] == Eigen::Vector2i(1, 2));
  CHECK(nb.rel_coords[full].x() == 0.0);
  CHECK(nb.rel_coords[full].y() == 0.0);
  for (int t = 0; t < 4; ++t) {
    if (t != full) CHECK(nb.weights[t] == 0.0);
  }
}

TEST_CASE("query midway between four centers weights them equally") {
  const GridSpec g{2, 2};
  const auto nb = ope::neighborhood({0.0, 0.0}, g);
  for (int t = 0; t < 4; ++t) CHECK(nb.weights[t] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(nb.indices[0] == Eigen::Vector2i(0, 0));
  CHECK(nb.indices[1] == Eigen::Vector2i(0, 1));
  CHECK(nb.indices[2] == Eigen::Vector2i(1, 0));
  CHECK(nb.indices[3] == Eigen::Vector2i(1, 1));
}

TEST_CASE("corner query on a 2x2 grid: clamped members, hand-computed weights") {
  // q = (-0.9,-0.9). Surrounding virtual centers per axis sit at -1.5 and
  // -0.5, so three members are virtual and every fetch index clamps to (0,0).
  // Diagonal-area weights: 0.4^2, 0.4*0.6, 0.6*0.4, 0.6^2 over a unit total.
  const GridSpec g{2, 2};
  const auto nb = ope::neighborhood({-0.9, -0.9}, g);
  for (int t = 0; t < 4; ++t) CHECK(nb.indices[t] == Eigen::Vector2i(0, 0));
  CHECK(nb.virtual_centers[0] == Eigen::Vector2d(-1.5, -1.5));
  CHECK(nb.virtual_centers[3] == Eigen::Vector2d(-0.5, -0.5));
  CHECK(nb.weights[0] == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(nb.weights[1] == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(nb.weights[2] == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(nb.weights[3] == doctest::Approx(0.36).epsilon(1e-12));
}

TEST_CASE("weights form a partition of unity; member coords stay in [-1,1]^2") {
  const GridSpec g{5, 3};
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Vector2d q{dist(rng), dist(rng)};
    const auto nb = ope::neighborhood(q, g);
    CHECK(nb.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (int t = 0; t < 4; ++t) {
      CHECK(nb.weights[t] >= 0.0);
      CHECK(std::abs(nb.rel_coords[t].x()) <= 1.0 + 1e-12);
      CHECK(std::abs(nb.rel_coords[t].y()) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("per-index blend weights are continuous where the member set switches") {
  // The bracketing pair changes when q crosses a center line (x = 0.25 on a
  // 4-cell axis). The member sets before and after differ, but the aggregated
  // weight attached to each fetched index must not jump.
  const GridSpec g{4, 4};
  const auto aggregate = [&](const Eigen::Vector2d& q) {
    std::map<std::pair<int, int>, double> w;
    const auto nb = ope::neighborhood(q, g);
    for (int t = 0; t < 4; ++t) w[{nb.indices[t].x(), nb.indices[t].y()}] += nb.weights[t];
    return w;
  };
  const double y = 0.137;
  const auto before = aggregate({0.25 - 1e-12, y});
  const auto after = aggregate({0.25 + 1e-12, y});
  for (const auto& [idx, w] : before) {
    const auto it = after.find(idx);
    const double other = it == after.end() ? 0.0 : it->second;
    CHECK(std::abs(w - other) < 1e-9);
  }
  for (const auto& [idx, w] : after) {
    if (before.find(idx) == before.end()) CHECK(w < 1e-9);
  }
}

TEST_CASE("mirrored query mirrors indices and permutes weights") {
  const GridSpec g{4, 4};
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> dist(-0.999, 0.999);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Vector2d q{dist(rng), dist(rng)};
    const auto nb = ope::neighborhood(q, g);
    const auto mb = ope::neighborhood({-q.x(), q.y()}, g);
    // member (a,b) of q corresponds to member (1-a,b) of the mirror
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const int t = 2 * a + b;
        const int mt = 2 * (1 - a) + b;
        CHECK(mb.weights[mt] == doctest::Approx(nb.weights[t]).epsilon(1e-12));
        CHECK(mb.indices[mt].x() == g.rows - 1 - nb.indices[t].x());
        CHECK(mb.indices[mt].y() == nb.indices[t].y());
      }
    }
  }
}

TEST_CASE("nearest cell index") {
  const GridSpec g{4, 4};
  CHECK(ope::nearest_index({-1.0, -1.0}, g) == Eigen::Vector2i(0, 0));
  CHECK(ope::nearest_index({1.0, 1.0}, g) == Eigen::Vector2i(3, 3));
  CHECK(ope::nearest_index({-0.75, 0.75}, g) == Eigen::Vector2i(0, 3));
  CHECK(ope::nearest_index({0.1, -0.1}, g) == Eigen::Vector2i(2, 1));
}

TEST_CASE("queries outside the domain are rejected") {
  const GridSpec g{2, 2};
  CHECK_THROWS_AS(ope::neighborhood({1.5, 0.0}, g), std::domain_error);
  CHECK_THROWS_AS(ope::neighborhood({0.0, -1.0001}, g), std::domain_error);
  CHECK_THROWS_AS(ope::nearest_index({2.0, 0.0}, g), std::domain_error);
  CHECK_THROWS_AS(ope::neighborhood({0.0, 0.0}, GridSpec{0, 2}), std::invalid_argument);
}

TEST_CASE("low cell index brackets the query between two centers") {
  // center hits: q exactly on center k gives lo = k (centers at lo, lo+1
  // bracket q on the closed left side)
  CHECK(ope::low_cell_index(-0.75, 4) == 0);
  CHECK(ope::low_cell_index(0.0, 4) == 1);
  CHECK(ope::low_cell_index(-1.0, 4) == -1);
  CHECK(ope::low_cell_index(1.0, 4) == 3);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = dist(rng);
    const int m = 1 + int(rng() % 7);
    const int lo = ope::low_cell_index(t, m);
    CHECK(lo >= -1);
    CHECK(lo <= m - 1);
    CHECK(ope::virtual_center(lo, m) <= t + 1e-15);
    CHECK(ope::virtual_center(lo + 1, m) >= t - 1e-15);
  }
}
