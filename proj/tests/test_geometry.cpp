// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "symcover/geometry.hpp"

#include <random>

using namespace symcover;

namespace {

Box unit_square() { return Box(rat(0), rat(0), rat(1), rat(1)); }

// Dense-sample distance oracle: grid-sample both boxes and take the minimal
// pairwise squared distance.  Always an upper bound for the exact value, and
// tight when the nearest features are corners/edges on the sample grid.
Rat sample_distance_sq(const Box& a, const Box& b, int steps) {
  Rat best(-1);
  auto points = [&](const Box& bx) {
    std::vector<Point> pts;
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; j <= steps; ++j) {
        Rat x = bx.lo[0] + (bx.hi[0] - bx.lo[0]) * rat(i, steps);
        Rat y = bx.lo[1] + (bx.hi[1] - bx.lo[1]) * rat(j, steps);
        pts.emplace_back(x, y);
      }
    return pts;
  };
  for (const Point& p : points(a))
    for (const Point& q : points(b)) {
      Rat d2 = 0;
      for (std::size_t i = 0; i < 2; ++i) d2 += (p[i] - q[i]) * (p[i] - q[i]);
      if (best < 0 || d2 < best) best = d2;
    }
  return best;
}

}  // namespace

TEST_CASE("box_distance_sq on the worked examples") {
  CHECK(box_distance_sq(unit_square(), unit_square()) == rat(0));

  Box b2(rat(3, 2), rat(0), rat(5, 2), rat(1));
  CHECK(box_distance_sq(unit_square(), b2) == rat(1, 4));
  CHECK(sample_distance_sq(unit_square(), b2, 8) == rat(1, 4));

  Box b3(rat(2), rat(2), rat(3), rat(3));
  CHECK(box_distance_sq(unit_square(), b3) == rat(2));
  CHECK(sample_distance_sq(unit_square(), b3, 8) == rat(2));

  Box fourd(Point(std::vector<Rat>{rat(0), rat(0), rat(0), rat(0)}),
            Point(std::vector<Rat>{rat(1), rat(1), rat(1), rat(1)}));
  CHECK_THROWS_AS(box_distance_sq(unit_square(), fourd), std::invalid_argument);
}

TEST_CASE("box_distance_sq is symmetric and vanishes exactly on intersection") {
  std::mt19937_64 rng(7);
  auto rnd = [&](int lo, int hi) { return rat(lo + static_cast<long long>(rng() % (hi - lo + 1))); };
  for (int trial = 0; trial < 300; ++trial) {
    Rat x0 = rnd(-8, 8) / 2, y0 = rnd(-8, 8) / 2;
    Rat x1 = x0 + rnd(1, 6) / 2, y1 = y0 + rnd(1, 6) / 2;
    Rat u0 = rnd(-8, 8) / 2, v0 = rnd(-8, 8) / 2;
    Rat u1 = u0 + rnd(1, 6) / 2, v1 = v0 + rnd(1, 6) / 2;
    Box a(x0, y0, x1, y1), b(u0, v0, u1, v1);
    Rat dab = box_distance_sq(a, b);
    CHECK(dab == box_distance_sq(b, a));
    CHECK((dab == 0) == boxes_intersect(a, b));
  }
}

TEST_CASE("neighborhood fattens by nu per side") {
  CHECK(neighborhood(unit_square(), rat(0)) == unit_square());
  CHECK(neighborhood(unit_square(), rat(1, 4)) == Box(rat(-1, 4), rat(-1, 4), rat(5, 4), rat(5, 4)));
  Box two(rat(0), rat(0), rat(2), rat(2));
  CHECK(neighborhood(two, rat(1, 2)) == Box(rat(-1, 2), rat(-1, 2), rat(5, 2), rat(5, 2)));
  CHECK_THROWS_AS(neighborhood(unit_square(), rat(-1)), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Rat w = rat(1 + static_cast<long long>(rng() % 5), 1 + static_cast<long long>(rng() % 3));
    Rat nu = rat(static_cast<long long>(rng() % 7), 4);
    Box b(rat(0), rat(0), w, w + 1);
    Box nb = neighborhood(b, nu);
    CHECK(nb.width(0) == b.width(0) + 2 * nu);
    CHECK(nb.width(1) == b.width(1) + 2 * nu);
  }
}

TEST_CASE("degenerate boxes are rejected") {
  CHECK_THROWS_AS(Box(rat(0), rat(0), rat(0), rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(Box(rat(0), rat(0), rat(1), rat(0)), std::invalid_argument);
}

TEST_CASE("region boolean operations and areas") {
  Region uni = Region::from_box(Box(rat(0), rat(0), rat(4), rat(4)));
  Region hole = uni.subtract(Box(rat(1), rat(1), rat(3), rat(3)));
  CHECK(hole.area() == rat(12));
  CHECK_FALSE(hole.contains_box(Box(rat(1), rat(1), rat(2), rat(2))));
  CHECK(hole.contains_box(Box(rat(0), rat(0), rat(1), rat(4))));
  Region back = hole.unite(Region::from_box(Box(rat(1), rat(1), rat(3), rat(3))));
  CHECK(back.area() == rat(16));
  CHECK(back.contains_box(Box(rat(0), rat(0), rat(4), rat(4))));
}

TEST_CASE("complement components: the worked examples") {
  Box universe(rat(0), rat(0), rat(6), rat(6));

  SUBCASE("empty region -> one unbounded-touching component") {
    auto comps = complement_components(Region(), universe);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].touches_universe_boundary);
    CHECK(comps[0].region.area() == rat(36));
  }

  SUBCASE("hollow annulus of cells -> inner bounded, outer unbounded-touching") {
    // ring made of four 1-wide slabs around [2,4]^2
    Region ring;
    ring = ring.unite(Region::from_box(Box(rat(1), rat(1), rat(5), rat(2))));
    ring = ring.unite(Region::from_box(Box(rat(1), rat(4), rat(5), rat(5))));
    ring = ring.unite(Region::from_box(Box(rat(1), rat(2), rat(2), rat(4))));
    ring = ring.unite(Region::from_box(Box(rat(4), rat(2), rat(5), rat(4))));
    auto comps = complement_components(ring, universe);
    REQUIRE(comps.size() == 2);
    int bounded = 0, unbounded = 0;
    for (auto& c : comps) {
      if (c.touches_universe_boundary) {
        ++unbounded;
      } else {
        ++bounded;
        CHECK(c.region.area() == rat(4));  // the enclosed [2,4]^2
      }
    }
    CHECK(bounded == 1);
    CHECK(unbounded == 1);
    // partition property: areas add up exactly
    Rat total = ring.area();
    for (auto& c : comps) total += c.region.area();
    CHECK(total == rat(36));
  }

  SUBCASE("full universe -> empty list") {
    auto comps = complement_components(Region::from_box(universe), universe);
    CHECK(comps.empty());
  }
}

TEST_CASE("complement components agree with a flood-fill oracle") {
  // Rasterize random cell unions on an 8x8 integer grid and compare component
  // count and bounded tags with a pixel flood fill.
  std::mt19937_64 rng(23);
  Box universe(rat(0), rat(0), rat(8), rat(8));
  for (int trial = 0; trial < 60; ++trial) {
    bool occ[8][8] = {};
    Region region;
    int cells = 6 + static_cast<int>(rng() % 20);
    for (int c = 0; c < cells; ++c) {
      int x = static_cast<int>(rng() % 8), y = static_cast<int>(rng() % 8);
      if (occ[x][y]) continue;
      occ[x][y] = true;
      region = region.unite(Region::from_box(Box(rat(x), rat(y), rat(x + 1), rat(y + 1))));
    }
    // flood fill complement
    int comp[8][8];
    for (auto& row : comp) for (int& v : row) v = -1;
    int ncomp = 0;
    std::vector<bool> touches;
    for (int x = 0; x < 8; ++x)
      for (int y = 0; y < 8; ++y) {
        if (occ[x][y] || comp[x][y] != -1) continue;
        std::vector<std::pair<int, int>> stack{{x, y}};
        comp[x][y] = ncomp;
        bool touch = false;
        while (!stack.empty()) {
          auto [cx, cy] = stack.back();
          stack.pop_back();
          if (cx == 0 || cy == 0 || cx == 7 || cy == 7) touch = true;
          const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
          for (int k = 0; k < 4; ++k) {
            int nx = cx + dx[k], ny = cy + dy[k];
            if (nx < 0 || ny < 0 || nx >= 8 || ny >= 8) continue;
            if (occ[nx][ny] || comp[nx][ny] != -1) continue;
            comp[nx][ny] = ncomp;
            stack.emplace_back(nx, ny);
          }
        }
        touches.push_back(touch);
        ++ncomp;
      }
    auto got = complement_components(region, universe);
    CHECK(got.size() == static_cast<std::size_t>(ncomp));
    std::size_t got_bounded = 0, want_bounded = 0;
    for (auto& c : got)
      if (!c.touches_universe_boundary) ++got_bounded;
    for (bool t : touches)
      if (!t) ++want_bounded;
    CHECK(got_bounded == want_bounded);
  }
}

TEST_CASE("boundary segments and exact box-to-boundary distance") {
  Region square = Region::from_box(Box(rat(0), rat(0), rat(10), rat(10)));
  Box inner(rat(2), rat(3), rat(4), rat(5));
  auto d2 = box_to_region_boundary_distance_sq(inner, square);
  REQUIRE(d2.has_value());
  CHECK(*d2 == rat(4));  // distance 2 to the x=0 wall

  // L-shaped region: distance to the inner corner is diagonal.
  Region ell = Region::from_box(Box(rat(0), rat(0), rat(10), rat(4)))
                   .unite(Region::from_box(Box(rat(0), rat(4), rat(4), rat(10))));
  Box probe(rat(6), rat(6), rat(7), rat(7));
  auto dd = box_to_region_boundary_distance_sq(probe, ell);
  REQUIRE(dd.has_value());
  CHECK(*dd == rat(4));  // nearest boundary pieces are the reflex-corner walls
}

TEST_CASE("disc membership tests are exact") {
  Disc d{Point(rat(0), rat(0)), rat(5)};
  CHECK(d.strictly_contains_box(Box(rat(-3), rat(-3), rat(3), rat(3))));
  // corner exactly on the circle: 3-4-5 triangle
  CHECK_FALSE(d.strictly_contains_box(Box(rat(0), rat(0), rat(3), rat(4))));
  CHECK(d.disjoint_from_closed(Box(rat(4), rat(4), rat(6), rat(6))));
  CHECK_FALSE(d.disjoint_from_closed(Box(rat(3), rat(4), rat(6), rat(6))));

  Region square = Region::from_box(Box(rat(-6), rat(-6), rat(6), rat(6)));
  CHECK(disc_inside_region(d, square));
  Region small = Region::from_box(Box(rat(-5), rat(-5), rat(5), rat(5)));
  CHECK(disc_inside_region(d, small));
  Region tight = Region::from_box(Box(rat(-4), rat(-6), rat(6), rat(6)));
  CHECK_FALSE(disc_inside_region(d, tight));
}
