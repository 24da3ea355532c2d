// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact rational planar / 2n-dimensional primitives: points, closed
// axis-aligned boxes with positive widths, and rectilinear regions (finite
// unions of boxes with pairwise disjoint interiors).  Everything here is
// immutable after construction and safe for concurrent use.
#pragma once

#include "symcover/rational.hpp"

#include <cstddef>
#include <vector>

namespace symcover {

// A point of R^{2n}; coords.size() is even and >= 2.
struct Point {
  std::vector<Rat> coords;

  Point() = default;
  explicit Point(std::vector<Rat> c) : coords(std::move(c)) {}
  Point(Rat x, Rat y) : coords{std::move(x), std::move(y)} {}

  std::size_t dim() const { return coords.size(); }
  const Rat& operator[](std::size_t i) const { return coords[i]; }
  Rat& operator[](std::size_t i) { return coords[i]; }
  bool operator==(const Point& o) const { return coords == o.coords; }
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);

// Closed axis-aligned box [lo_1,hi_1] x ... x [lo_d,hi_d].  Degenerate boxes
// (zero width on some axis) are rejected at construction: every cube in this
// project has positive width.
struct Box {
  Point lo, hi;

  Box() = default;
  Box(Point l, Point h);
  // 2D convenience.
  Box(Rat x0, Rat y0, Rat x1, Rat y1) : Box(Point(std::move(x0), std::move(y0)), Point(std::move(x1), std::move(y1))) {}

  std::size_t dim() const { return lo.dim(); }
  Rat width(std::size_t axis) const { return hi[axis] - lo[axis]; }
  Rat volume() const;
  Point center() const;
  Box translated(const Point& q) const;
  bool operator==(const Box& o) const { return lo == o.lo && hi == o.hi; }
};

// Lexicographic order on (lo, hi); used wherever a deterministic ordering of
// cubes or cells is required.
bool box_less(const Box& a, const Box& b);

bool boxes_intersect(const Box& a, const Box& b);          // closed intersection
bool box_interiors_intersect(const Box& a, const Box& b);  // positive-volume overlap
// Closed intersection has positive measure in dimension >= d-1, i.e. the
// boxes overlap or share a facet piece; corner contact does not count.
bool boxes_edge_adjacent(const Box& a, const Box& b);
bool box_contains_box(const Box& outer, const Box& inner);
bool box_contains_point(const Box& b, const Point& p);

// Squared Euclidean distance between two closed boxes; 0 iff they intersect.
Rat box_distance_sq(const Box& a, const Box& b);
// Squared Euclidean distance from a point to a closed box.
Rat point_box_distance_sq(const Point& p, const Box& b);

// Box fattened by nu >= 0 on every side: the smallest closed cube containing
// the Euclidean nu-neighbourhood of b (width grows by 2*nu per axis).
Box neighborhood(const Box& b, const Rat& nu);

// Convex hull of two boxes (used for swept regions of axis-parallel moves).
Box box_hull(const Box& a, const Box& b);

// Finite union of boxes with pairwise disjoint interiors on a common
// rational grid.  Connectivity is edge-adjacency (shared facet of positive
// measure), never corner-adjacency.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Box> cells);
  static Region from_box(const Box& b) { return Region(std::vector<Box>{b}); }
  // caller guarantees pairwise disjoint interiors; skips the quadratic check
  static Region from_disjoint_cells(std::vector<Box> cells);

  const std::vector<Box>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }
  std::size_t dim() const { return cells_.empty() ? 0 : cells_[0].dim(); }
  Rat area() const;
  Box bounding_box() const;

  bool contains_box(const Box& b) const;
  bool contains_point(const Point& p) const;
  bool intersects_box_interior(const Box& b) const;

  Region subtract(const Box& b) const;
  Region subtract(const Region& r) const;
  Region intersect(const Box& b) const;
  Region intersect(const Region& r) const;
  Region unite(const Region& r) const;

  // Connected components under edge-adjacency, deterministic order
  // (lexicographically smallest member box first).
  std::vector<Region> components() const;

  // Merge axis-aligned mergeable cells; keeps the region small after long
  // chains of subtractions.
  Region normalized() const;

 private:
  std::vector<Box> cells_;
};

struct ComplementComponent {
  Region region;
  bool touches_universe_boundary = false;
};

// Connected components of universe \ region; a component is tagged
// unbounded-touching iff it meets the boundary of the universe box.
// Requires region inside universe.
std::vector<ComplementComponent> complement_components(const Region& region, const Box& universe);

// Axis-parallel boundary segments of a 2D region (maximal is not required;
// segments are per-cell faces minus shared parts).  Each segment is a
// degenerate interval on exactly one axis, returned as a (point, point) pair.
struct Segment2D {
  Point a, b;  // a <= b lexicographically; axis-parallel
};
std::vector<Segment2D> boundary_segments_2d(const Region& region);

// Squared Euclidean distance from a closed box to an axis-parallel segment.
Rat box_segment_distance_sq(const Box& box, const Segment2D& seg);

// Exact squared Euclidean distance from a box to the boundary of a 2D
// region; infinity (nullopt) when the region has no boundary cells.
std::optional<Rat> box_to_region_boundary_distance_sq(const Box& box, const Region& region);

// Open round disc with rational center/radius; membership tests are exact
// (squared-distance comparisons).
struct Disc {
  Point center;
  Rat radius;

  Rat radius_sq() const { return radius * radius; }
  // Closed box strictly inside the open disc (all corners strictly within).
  bool strictly_contains_box(const Box& b) const;
  // Closed box disjoint from the closed disc.
  bool disjoint_from_closed(const Box& b) const;
  bool contains_point(const Point& p) const { return point_dist_sq(p) < radius_sq(); }
  Rat point_dist_sq(const Point& p) const;
};

// Farthest / nearest squared distance from a point to a closed box.
Rat box_max_distance_sq(const Point& p, const Box& b);

// disc (open) inside a closed region: every complement cell of the region's
// bounding universe is at distance >= radius from the center.
bool disc_inside_region(const Disc& d, const Region& r);

}  // namespace symcover
