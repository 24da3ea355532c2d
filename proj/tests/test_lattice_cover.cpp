// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "symcover/lattice_cover.hpp"

using namespace symcover;

namespace {

Box window2(long long x0, long long y0, long long x1, long long y1) {
  return Box(rat(x0), rat(y0), rat(x1), rat(y1));
}

Box window4(long long lo, long long hi) {
  std::vector<Rat> l(4, rat(lo)), h(4, rat(hi));
  return Box(Point(l), Point(h));
}

// Plain quadratic brute force, kept deliberately independent of the bucketed
// implementation in verify_gap.
Rat brute_min_gap_sq(const DimensionCover& cover, unsigned color, const Box& window, const Rat& scale) {
  auto cubes = enumerate_cubes(cover, color, window, scale);
  std::vector<Box> inside;
  for (auto& c : cubes)
    if (box_contains_box(window, c.box)) inside.push_back(c.box);
  REQUIRE(inside.size() >= 2);
  Rat best(-1);
  for (std::size_t i = 0; i < inside.size(); ++i)
    for (std::size_t j = i + 1; j < inside.size(); ++j) {
      Rat d2 = box_distance_sq(inside[i], inside[j]);
      if (best < 0 || d2 < best) best = d2;
    }
  return best;
}

}  // namespace

TEST_CASE("build_cover reproduces the displayed matrices") {
  auto c3 = build_cover(1, 3);
  CHECK(c3.matrix.entry(0, 0) == rat(3));
  CHECK(c3.matrix.entry(0, 1) == rat(3, 2));
  CHECK(c3.matrix.entry(1, 0) == rat(0));
  CHECK(c3.matrix.entry(1, 1) == rat(1));
  CHECK(c3.delta == rat(1, 2));
  CHECK(c3.periods == std::vector<unsigned>{3, 2});

  auto c4 = build_cover(1, 4);
  CHECK(c4.matrix.entry(0, 0) == rat(4));
  CHECK(c4.matrix.entry(0, 1) == rat(2));
  CHECK(c4.delta == rat(1));

  auto c45 = build_cover(2, 5);
  CHECK(c45.matrix.entry(0, 0) == rat(5));
  CHECK(c45.matrix.entry(0, 1) == rat(5, 4));
  CHECK(c45.matrix.entry(1, 1) == rat(1));
  CHECK(c45.matrix.entry(1, 2) == rat(4, 3));
  CHECK(c45.matrix.entry(2, 2) == rat(1));
  CHECK(c45.matrix.entry(2, 3) == rat(3, 2));
  CHECK(c45.matrix.entry(3, 3) == rat(1));
  CHECK(c45.matrix.entry(0, 2) == rat(0));
  CHECK(c45.matrix.entry(2, 0) == rat(0));
  CHECK(c45.delta == rat(1, 4));
  CHECK(c45.periods == std::vector<unsigned>{5, 4, 3, 2});

  CHECK_THROWS_AS(build_cover(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_cover(2, 4), std::invalid_argument);
}

TEST_CASE("enumerate_cubes anchors") {
  auto cover = build_cover(1, 3);

  auto j1 = enumerate_cubes(cover, 1, window2(0, 0, 1, 1), rat(1));
  bool found_origin = false;
  for (auto& c : j1)
    if (c.index == std::vector<long long>{0, 0}) {
      found_origin = true;
      CHECK(c.box.lo[0] == rat(0));
      CHECK(c.box.lo[1] == rat(0));
    }
  CHECK(found_origin);

  auto j2 = enumerate_cubes(cover, 2, window2(1, 0, 2, 1), rat(1));
  bool found_shift = false;
  for (auto& c : j2)
    if (c.index == std::vector<long long>{0, 0}) {
      found_shift = true;
      CHECK(c.box.lo[0] == rat(1));
      CHECK(c.box.lo[1] == rat(0));
    }
  CHECK(found_shift);

  auto j3 = enumerate_cubes(cover, 1, window2(4, 0, 6, 2), rat(1));
  bool found_11 = false;
  for (auto& c : j3)
    if (c.index == std::vector<long long>{1, 1}) {
      found_11 = true;
      CHECK(c.box.lo[0] == rat(9, 2));  // M(2,3)*(1,1) = (9/2, 1)
      CHECK(c.box.lo[1] == rat(1));
    }
  CHECK(found_11);
}

TEST_CASE("enumerate_cubes is translation-consistent") {
  auto cover = build_cover(1, 3);
  Box w = window2(0, 0, 5, 5);
  auto base = enumerate_cubes(cover, 1, w, rat(1));
  // shift window by M*w0 with w0 = (2,1): M(2,3)*(2,1) = (15/2, 1)
  Point shift(rat(15, 2), rat(1));
  Box w2(w.lo + shift, w.hi + shift);
  auto shifted = enumerate_cubes(cover, 1, w2, rat(1));
  REQUIRE(base.size() == shifted.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(shifted[i].index[0] == base[i].index[0] + 2);
    CHECK(shifted[i].index[1] == base[i].index[1] + 1);
  }
}

TEST_CASE("enumerate_cubes is scale-equivariant") {
  auto cover = build_cover(1, 4);
  Rat d = rat(1, 3);
  Box w = window2(0, 0, 4, 4);
  Box wd(Point(w.lo[0] * d, w.lo[1] * d), Point(w.hi[0] * d, w.hi[1] * d));
  auto unit = enumerate_cubes(cover, 2, w, rat(1));
  auto scaled = enumerate_cubes(cover, 2, wd, d);
  REQUIRE(unit.size() == scaled.size());
  for (std::size_t i = 0; i < unit.size(); ++i) {
    CHECK(unit[i].index == scaled[i].index);
    CHECK(scaled[i].box.lo[0] == unit[i].box.lo[0] * d);
    CHECK(scaled[i].box.hi[1] == unit[i].box.hi[1] * d);
  }
}

TEST_CASE("verify_gap equals delta exactly on the worked windows") {
  SUBCASE("(1,3) window [0,12]^2") {
    auto cover = build_cover(1, 3);
    auto rep = verify_gap(cover, 1, window2(0, 0, 12, 12));
    CHECK(rep.pass);
    REQUIRE(rep.min_gap.has_value());
    CHECK(*rep.min_gap == rat(1, 2));
    CHECK(rep.min_gap_sq == brute_min_gap_sq(cover, 1, window2(0, 0, 12, 12), rat(1)));
  }
  SUBCASE("(1,4) colour 2 window [0,16]^2") {
    auto cover = build_cover(1, 4);
    auto rep = verify_gap(cover, 2, window2(0, 0, 16, 16));
    CHECK(rep.pass);
    REQUIRE(rep.min_gap.has_value());
    CHECK(*rep.min_gap == rat(1));
    CHECK(rep.min_gap_sq == brute_min_gap_sq(cover, 2, window2(0, 0, 16, 16), rat(1)));
  }
  SUBCASE("(2,5) window [0,10]^4") {
    auto cover = build_cover(2, 5);
    auto rep = verify_gap(cover, 1, window4(0, 10));
    CHECK(rep.pass);
    REQUIRE(rep.min_gap.has_value());
    CHECK(*rep.min_gap == rat(1, 4));
  }
  SUBCASE("window too small errors") {
    auto cover = build_cover(1, 3);
    CHECK_THROWS_AS(verify_gap(cover, 1, window2(0, 0, 2, 2)), std::invalid_argument);
  }
}

TEST_CASE("verify_covering_and_disjointness on the worked windows") {
  SUBCASE("(1,3) [0,9]^2") {
    auto cover = build_cover(1, 3);
    auto rep = verify_covering_and_disjointness(cover, window2(0, 0, 9, 9));
    CHECK(rep.covered);
    CHECK(rep.uncovered_area == rat(0));
    CHECK(rep.interior_overlap_pairs == 0);
  }
  SUBCASE("(1,4) [-4,4]^2") {
    auto cover = build_cover(1, 4);
    auto rep = verify_covering_and_disjointness(cover, window2(-4, -4, 4, 4));
    CHECK(rep.covered);
    CHECK(rep.interior_overlap_pairs == 0);
  }
  SUBCASE("(2,5) [0,6]^4") {
    auto cover = build_cover(2, 5);
    auto rep = verify_covering_and_disjointness(cover, window4(0, 6));
    CHECK(rep.covered);
    CHECK(rep.interior_overlap_pairs == 0);
  }
}

TEST_CASE("cylinder law periods") {
  SUBCASE("(1,3) axis 2: period 2") {
    auto cover = build_cover(1, 3);
    LatticeCube c;
    c.color = 1;
    c.index = {0, 0};
    c.scale = rat(1);
    c.box = lattice_cube_box(cover, 1, c.index, c.scale);
    auto rep = verify_cylinder_law(cover, 1, c, 2, window2(-1, -8, 2, 8));
    CHECK(rep.pass);
    CHECK(rep.found >= 3);  // several periods inside the window
  }
  SUBCASE("(1,3) axis 1: period 3") {
    auto cover = build_cover(1, 3);
    LatticeCube c;
    c.color = 1;
    c.index = {0, 0};
    c.scale = rat(1);
    c.box = lattice_cube_box(cover, 1, c.index, c.scale);
    auto rep = verify_cylinder_law(cover, 1, c, 1, window2(-10, -1, 10, 2));
    CHECK(rep.pass);
    CHECK(rep.found >= 5);
  }
  SUBCASE("(2,5) axis 3: period 3") {
    auto cover = build_cover(2, 5);
    LatticeCube c;
    c.color = 1;
    c.index = {0, 0, 0, 0};
    c.scale = rat(1);
    c.box = lattice_cube_box(cover, 2, c.index, c.scale);
    c.color = 1;
    c.box = lattice_cube_box(cover, 1, c.index, c.scale);
    std::vector<Rat> lo{rat(-3), rat(-3), rat(-7), rat(-3)};
    std::vector<Rat> hi{rat(4), rat(4), rat(8), rat(4)};
    auto rep = verify_cylinder_law(cover, 1, c, 3, Box(Point(lo), Point(hi)));
    CHECK(rep.pass);
    CHECK(rep.found >= 3);
  }
  SUBCASE("axis out of range") {
    auto cover = build_cover(1, 3);
    LatticeCube c;
    c.color = 1;
    c.index = {0, 0};
    c.scale = rat(1);
    c.box = lattice_cube_box(cover, 1, c.index, c.scale);
    CHECK_THROWS_AS(verify_cylinder_law(cover, 1, c, 3, window2(0, 0, 5, 5)), std::out_of_range);
  }
}
