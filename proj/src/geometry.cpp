// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
#include "symcover/geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace symcover {

Point operator+(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("point dimension mismatch");
  Point r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("point dimension mismatch");
  Point r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
  return r;
}

Box::Box(Point l, Point h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo.dim() != hi.dim()) throw std::invalid_argument("box corner dimension mismatch");
  if (lo.dim() < 2 || lo.dim() % 2 != 0) throw std::invalid_argument("box dimension must be even and >= 2");
  for (std::size_t i = 0; i < lo.dim(); ++i)
    if (!(lo[i] < hi[i])) throw std::invalid_argument("degenerate box (needs positive width on every axis)");
}

Rat Box::volume() const {
  Rat v = 1;
  for (std::size_t i = 0; i < dim(); ++i) v *= width(i);
  return v;
}

Point Box::center() const {
  Point c = lo;
  for (std::size_t i = 0; i < dim(); ++i) c[i] = (lo[i] + hi[i]) / 2;
  return c;
}

Box Box::translated(const Point& q) const { return Box(lo + q, hi + q); }

bool box_less(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.lo[i] != b.lo[i]) return a.lo[i] < b.lo[i];
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.hi[i] != b.hi[i]) return a.hi[i] < b.hi[i];
  }
  return false;
}

static void check_same_dim(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("box dimension mismatch");
}

bool boxes_intersect(const Box& a, const Box& b) {
  check_same_dim(a, b);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false;
  return true;
}

bool box_interiors_intersect(const Box& a, const Box& b) {
  check_same_dim(a, b);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!(a.hi[i] > b.lo[i] && b.hi[i] > a.lo[i])) return false;
  return true;
}

bool boxes_edge_adjacent(const Box& a, const Box& b) {
  check_same_dim(a, b);
  int degenerate_axes = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Rat lo = rat_max(a.lo[i], b.lo[i]);
    Rat hi = rat_min(a.hi[i], b.hi[i]);
    if (lo > hi) return false;
    if (lo == hi) ++degenerate_axes;
  }
  return degenerate_axes <= 1;
}

bool box_contains_box(const Box& outer, const Box& inner) {
  check_same_dim(outer, inner);
  for (std::size_t i = 0; i < outer.dim(); ++i)
    if (inner.lo[i] < outer.lo[i] || inner.hi[i] > outer.hi[i]) return false;
  return true;
}

bool box_contains_point(const Box& b, const Point& p) {
  if (b.dim() != p.dim()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < b.dim(); ++i)
    if (p[i] < b.lo[i] || p[i] > b.hi[i]) return false;
  return true;
}

Rat box_distance_sq(const Box& a, const Box& b) {
  check_same_dim(a, b);
  Rat d2 = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Rat gap = 0;
    if (b.lo[i] > a.hi[i]) gap = b.lo[i] - a.hi[i];
    else if (a.lo[i] > b.hi[i]) gap = a.lo[i] - b.hi[i];
    d2 += gap * gap;
  }
  return d2;
}

Rat point_box_distance_sq(const Point& p, const Box& b) {
  if (p.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Rat d2 = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    Rat gap = 0;
    if (b.lo[i] > p[i]) gap = b.lo[i] - p[i];
    else if (p[i] > b.hi[i]) gap = p[i] - b.hi[i];
    d2 += gap * gap;
  }
  return d2;
}

Box neighborhood(const Box& b, const Rat& nu) {
  if (nu < 0) throw std::invalid_argument("negative neighbourhood width");
  if (nu == 0) return b;
  Point lo = b.lo, hi = b.hi;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    lo[i] -= nu;
    hi[i] += nu;
  }
  return Box(std::move(lo), std::move(hi));
}

Box box_hull(const Box& a, const Box& b) {
  check_same_dim(a, b);
  Point lo = a.lo, hi = a.hi;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    lo[i] = rat_min(lo[i], b.lo[i]);
    hi[i] = rat_max(hi[i], b.hi[i]);
  }
  return Box(std::move(lo), std::move(hi));
}

Region::Region(std::vector<Box> cells) : cells_(std::move(cells)) {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    for (std::size_t j = i + 1; j < cells_.size(); ++j)
      if (box_interiors_intersect(cells_[i], cells_[j]))
        throw std::invalid_argument("region cells must have disjoint interiors");
}

Region Region::from_disjoint_cells(std::vector<Box> cells) {
  Region r;
  r.cells_ = std::move(cells);
  return r;
}

Rat Region::area() const {
  Rat a = 0;
  for (const Box& b : cells_) a += b.volume();
  return a;
}

Box Region::bounding_box() const {
  if (cells_.empty()) throw std::logic_error("bounding box of empty region");
  Box bb = cells_[0];
  for (std::size_t i = 1; i < cells_.size(); ++i) bb = box_hull(bb, cells_[i]);
  return bb;
}

namespace {

// b \ cutter as 0..2d disjoint boxes (empty when cutter covers b).
void subtract_box(const Box& b, const Box& cutter, std::vector<Box>& out) {
  if (!box_interiors_intersect(b, cutter)) {
    out.push_back(b);
    return;
  }
  Box rest = b;
  for (std::size_t axis = 0; axis < b.dim(); ++axis) {
    if (cutter.lo[axis] > rest.lo[axis]) {
      Box piece = rest;
      piece.hi[axis] = cutter.lo[axis];
      out.push_back(Box(piece.lo, piece.hi));
      rest.lo[axis] = cutter.lo[axis];
    }
    if (cutter.hi[axis] < rest.hi[axis]) {
      Box piece = rest;
      piece.lo[axis] = cutter.hi[axis];
      out.push_back(Box(piece.lo, piece.hi));
      rest.hi[axis] = cutter.hi[axis];
    }
  }
  // rest is now inside the cutter and is dropped.
}

}  // namespace

Region Region::subtract(const Box& b) const {
  Region r;
  r.cells_.reserve(cells_.size());
  for (const Box& c : cells_) subtract_box(c, b, r.cells_);
  return r;
}

Region Region::subtract(const Region& other) const {
  Region r = *this;
  for (const Box& b : other.cells_) r = r.subtract(b);
  return r;
}

Region Region::intersect(const Box& b) const {
  Region r;
  for (const Box& c : cells_) {
    if (!box_interiors_intersect(c, b)) continue;
    Point lo = c.lo, hi = c.hi;
    for (std::size_t i = 0; i < c.dim(); ++i) {
      lo[i] = rat_max(lo[i], b.lo[i]);
      hi[i] = rat_min(hi[i], b.hi[i]);
    }
    r.cells_.push_back(Box(std::move(lo), std::move(hi)));
  }
  return r;
}

Region Region::intersect(const Region& other) const {
  Region r;
  for (const Box& b : other.cells_) {
    Region piece = intersect(b);
    for (Box& c : piece.cells_) r.cells_.push_back(std::move(c));
  }
  return r;
}

Region Region::unite(const Region& other) const {
  Region extra = other.subtract(*this);
  Region r = *this;
  for (const Box& b : extra.cells_) r.cells_.push_back(b);
  return r;
}

bool Region::contains_box(const Box& b) const {
  Region rem = Region::from_box(b);
  for (const Box& c : cells_) {
    rem = rem.subtract(c);
    if (rem.empty()) return true;
  }
  return rem.empty();
}

bool Region::contains_point(const Point& p) const {
  for (const Box& c : cells_)
    if (box_contains_point(c, p)) return true;
  return false;
}

bool Region::intersects_box_interior(const Box& b) const {
  for (const Box& c : cells_)
    if (box_interiors_intersect(c, b)) return true;
  return false;
}

std::vector<Region> Region::components() const {
  std::size_t n = cells_.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (boxes_edge_adjacent(cells_[i], cells_[j])) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<Box>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(cells_[i]);
  std::vector<Region> out;
  for (auto& [root, boxes] : groups) {
    std::sort(boxes.begin(), boxes.end(), box_less);
    Region r;
    r.cells_ = std::move(boxes);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const Region& a, const Region& b) { return box_less(a.cells()[0], b.cells()[0]); });
  return out;
}

Region Region::normalized() const {
  std::vector<Box> cells = cells_;
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < cells.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < cells.size() && !merged; ++j) {
        // Mergeable when equal on all axes but one, and abutting on that one.
        const Box &a = cells[i], &b = cells[j];
        std::size_t diff_axis = a.dim();
        bool ok = true;
        for (std::size_t ax = 0; ax < a.dim(); ++ax) {
          if (a.lo[ax] == b.lo[ax] && a.hi[ax] == b.hi[ax]) continue;
          if (diff_axis != a.dim()) { ok = false; break; }
          diff_axis = ax;
        }
        if (!ok || diff_axis == a.dim()) continue;
        if (a.hi[diff_axis] == b.lo[diff_axis] || b.hi[diff_axis] == a.lo[diff_axis]) {
          Box h = box_hull(a, b);
          cells.erase(cells.begin() + j);
          cells[i] = h;
          merged = true;
        }
      }
    }
  }
  std::sort(cells.begin(), cells.end(), box_less);
  Region r;
  r.cells_ = std::move(cells);
  return r;
}

std::vector<ComplementComponent> complement_components(const Region& region, const Box& universe) {
  Region uni = Region::from_box(universe);
  if (!region.empty() && !uni.contains_box(region.bounding_box())) {
    // precise check: every cell must be inside the universe
    for (const Box& c : region.cells())
      if (!box_contains_box(universe, c)) throw std::invalid_argument("region not inside universe");
  }
  Region comp = uni.subtract(region);
  std::vector<ComplementComponent> out;
  for (Region& part : comp.components()) {
    ComplementComponent cc;
    bool touches = false;
    for (const Box& c : part.cells()) {
      for (std::size_t ax = 0; ax < c.dim() && !touches; ++ax)
        if (c.lo[ax] == universe.lo[ax] || c.hi[ax] == universe.hi[ax]) touches = true;
      if (touches) break;
    }
    cc.touches_universe_boundary = touches;
    cc.region = std::move(part);
    out.push_back(std::move(cc));
  }
  return out;
}

std::vector<Segment2D> boundary_segments_2d(const Region& region) {
  if (region.empty()) return {};
  if (region.dim() != 2) throw std::invalid_argument("boundary segments require a planar region");
  // For each cell face, subtract the overlapping faces of neighbouring cells;
  // what remains is boundary.
  std::vector<Segment2D> out;
  const auto& cells = region.cells();
  auto emit_face = [&](const Box& cell, std::size_t axis, bool high) {
    Rat coord = high ? cell.hi[axis] : cell.lo[axis];
    std::size_t other = 1 - axis;
    // 1D cover of [cell.lo[other], cell.hi[other]] by neighbour faces.
    std::vector<std::pair<Rat, Rat>> covered;
    for (const Box& nb : cells) {
      if (&nb == &cell) continue;
      Rat nb_coord = high ? nb.lo[axis] : nb.hi[axis];
      if (nb_coord != coord) continue;
      Rat lo = rat_max(cell.lo[other], nb.lo[other]);
      Rat hi = rat_min(cell.hi[other], nb.hi[other]);
      if (lo < hi) covered.emplace_back(lo, hi);
    }
    std::sort(covered.begin(), covered.end());
    Rat cur = cell.lo[other];
    auto push = [&](const Rat& a, const Rat& b) {
      if (a >= b) return;
      Segment2D s;
      Point pa(Rat(0), Rat(0)), pb(Rat(0), Rat(0));
      pa[axis] = coord;
      pb[axis] = coord;
      pa[other] = a;
      pb[other] = b;
      s.a = pa;
      s.b = pb;
      out.push_back(std::move(s));
    };
    for (auto& [lo, hi] : covered) {
      push(cur, lo);
      cur = rat_max(cur, hi);
    }
    push(cur, cell.hi[other]);
  };
  for (const Box& cell : cells) {
    for (std::size_t axis = 0; axis < 2; ++axis) {
      emit_face(cell, axis, false);
      emit_face(cell, axis, true);
    }
  }
  return out;
}

Rat box_segment_distance_sq(const Box& box, const Segment2D& seg) {
  // Treat the segment as a (possibly degenerate) box and reuse per-axis gaps.
  Rat d2 = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    Rat slo = rat_min(seg.a[i], seg.b[i]);
    Rat shi = rat_max(seg.a[i], seg.b[i]);
    Rat gap = 0;
    if (slo > box.hi[i]) gap = slo - box.hi[i];
    else if (box.lo[i] > shi) gap = box.lo[i] - shi;
    d2 += gap * gap;
  }
  return d2;
}

std::optional<Rat> box_to_region_boundary_distance_sq(const Box& box, const Region& region) {
  auto segs = boundary_segments_2d(region);
  if (segs.empty()) return std::nullopt;
  Rat best = box_segment_distance_sq(box, segs[0]);
  for (std::size_t i = 1; i < segs.size(); ++i) best = rat_min(best, box_segment_distance_sq(box, segs[i]));
  return best;
}

Rat Disc::point_dist_sq(const Point& p) const {
  Rat d2 = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    Rat d = p[i] - center[i];
    d2 += d * d;
  }
  return d2;
}

Rat box_max_distance_sq(const Point& p, const Box& b) {
  Rat d2 = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    Rat d = rat_max(rat_abs(p[i] - b.lo[i]), rat_abs(p[i] - b.hi[i]));
    d2 += d * d;
  }
  return d2;
}

bool Disc::strictly_contains_box(const Box& b) const {
  return box_max_distance_sq(center, b) < radius_sq();
}

bool Disc::disjoint_from_closed(const Box& b) const {
  return point_box_distance_sq(center, b) > radius_sq();
}

bool disc_inside_region(const Disc& d, const Region& r) {
  if (r.empty()) return false;
  Box bb = r.bounding_box();
  // The disc must at least be inside the bounding box.
  for (std::size_t i = 0; i < bb.dim(); ++i)
    if (d.center[i] - d.radius < bb.lo[i] || d.center[i] + d.radius > bb.hi[i]) return false;
  Region comp = Region::from_box(bb).subtract(r);
  for (const Box& c : comp.cells())
    if (point_box_distance_sq(d.center, c) < d.radius_sq()) return false;
  return true;
}

}  // namespace symcover
