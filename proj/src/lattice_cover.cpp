// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
#include "symcover/lattice_cover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace symcover {

Rat CoverMatrix::entry(std::size_t row, std::size_t col) const {
  if (row >= dim() || col >= dim()) throw std::out_of_range("matrix entry");
  if (row == col) return diag[row];
  if (col == row + 1) return upper[row];
  return Rat(0);
}

Point CoverMatrix::apply(const std::vector<long long>& v) const {
  if (v.size() != dim()) throw std::invalid_argument("index vector dimension mismatch");
  std::vector<Rat> y(dim());
  for (std::size_t m = 0; m < dim(); ++m) {
    Rat acc = diag[m] * v[m];
    if (m + 1 < dim()) acc += upper[m] * v[m + 1];
    y[m] = acc;
  }
  return Point(std::move(y));
}

DimensionCover build_cover(unsigned n, unsigned k) {
  if (n == 0) throw std::invalid_argument("half-dimension must be positive");
  const unsigned d = 2 * n;
  if (k <= d) throw std::invalid_argument("no positive gap: k must be at least 2n+1");
  CoverMatrix m;
  m.n = n;
  m.k = k;
  m.diag.assign(d, Rat(1));
  m.diag[0] = Rat(k);
  m.upper.resize(d - 1);
  m.upper[0] = Rat(k, d);
  for (std::size_t i = 1; i + 1 < d; ++i) m.upper[i] = Rat(d - i + 1, d - i);
  DimensionCover cover;
  cover.matrix = std::move(m);
  cover.delta = rat_min(Rat(k - d, d), Rat(1, d - 1));
  cover.periods.resize(d);
  cover.periods[0] = k;
  // 1-based axis m has period 2n-m+2; index i is m-1.
  for (std::size_t i = 1; i < d; ++i) cover.periods[i] = d - static_cast<unsigned>(i) + 1;
  return cover;
}

Box lattice_cube_box(const DimensionCover& cover, unsigned color,
                     const std::vector<long long>& v, const Rat& scale) {
  if (color < 1 || color > cover.matrix.k) throw std::invalid_argument("colour out of range");
  Point anchor = cover.matrix.apply(v);
  anchor[0] += color - 1;
  Point lo(std::vector<Rat>(cover.matrix.dim()));
  Point hi(std::vector<Rat>(cover.matrix.dim()));
  for (std::size_t i = 0; i < cover.matrix.dim(); ++i) {
    lo[i] = scale * anchor[i];
    hi[i] = lo[i] + scale;
  }
  return Box(std::move(lo), std::move(hi));
}

namespace {

// Recursively enumerate index vectors whose cube box intersects the window.
// The matrix is upper bidiagonal, so axis m of the anchor depends only on
// v_m and v_{m+1}; working from the last axis upward gives exact per-axis
// integer ranges.
void enumerate_rec(const DimensionCover& cover, unsigned color, const Box& window,
                   const Rat& scale, std::size_t axis, std::vector<long long>& v,
                   std::vector<LatticeCube>& out) {
  const auto& M = cover.matrix;
  const std::size_t d = M.dim();
  const std::size_t m = d - 1 - axis;  // actual axis index, descending
  // anchor_m = scale*(diag_m * v_m + upper_m * v_{m+1} + (m==0 ? color-1 : 0))
  Rat known = (m + 1 < d) ? M.upper[m] * v[m + 1] : Rat(0);
  if (m == 0) known += color - 1;
  // need: window.lo_m - scale <= scale*(diag_m*v_m + known) <= window.hi_m
  Rat lo_bound = window.lo[m] / scale - 1 - known;
  Rat hi_bound = window.hi[m] / scale - known;
  BigInt v_lo = rat_ceil(lo_bound / M.diag[m]);
  BigInt v_hi = rat_floor(hi_bound / M.diag[m]);
  for (BigInt vi = v_lo; vi <= v_hi; ++vi) {
    v[m] = static_cast<long long>(vi);
    if (m == 0) {
      LatticeCube c;
      c.color = color;
      c.index = v;
      c.scale = scale;
      c.box = lattice_cube_box(cover, color, v, scale);
      if (boxes_intersect(c.box, window)) out.push_back(std::move(c));
    } else {
      enumerate_rec(cover, color, window, scale, axis + 1, v, out);
    }
  }
}

}  // namespace

std::vector<LatticeCube> enumerate_cubes(const DimensionCover& cover, unsigned color,
                                         const Box& window, const Rat& scale) {
  if (scale <= 0) throw std::invalid_argument("scale must be positive");
  if (window.dim() != cover.matrix.dim()) throw std::invalid_argument("window dimension mismatch");
  std::vector<long long> v(cover.matrix.dim(), 0);
  std::vector<LatticeCube> out;
  enumerate_rec(cover, color, window, scale, 0, v, out);
  std::sort(out.begin(), out.end(),
            [](const LatticeCube& a, const LatticeCube& b) { return a.index < b.index; });
  return out;
}

GapReport verify_gap(const DimensionCover& cover, unsigned color, const Box& window,
                     const Rat& scale) {
  std::vector<LatticeCube> all = enumerate_cubes(cover, color, window, scale);
  std::vector<const LatticeCube*> inside;
  for (const auto& c : all)
    if (box_contains_box(window, c.box)) inside.push_back(&c);
  if (inside.size() < 2) throw std::invalid_argument("window too small: fewer than two cubes of the colour");

  GapReport rep;
  rep.cubes = inside.size();

  // Bucket cubes on a coarse integer grid so only nearby pairs are compared.
  // Pairs farther apart than `cut` cannot realize the minimum once any pair
  // within `cut` has been seen; the cut is doubled until a pair is found,
  // which keeps the result exact.
  Rat cut = scale;  // delta*scale <= scale always
  bool found = false;
  Rat best;
  std::size_t checked = 0;
  while (!found) {
    std::vector<std::vector<long long>> coords(inside.size());
    for (std::size_t i = 0; i < inside.size(); ++i) {
      coords[i].resize(window.dim());
      for (std::size_t ax = 0; ax < window.dim(); ++ax)
        coords[i][ax] = static_cast<long long>(rat_floor(inside[i]->box.lo[ax] / cut));
    }
    // Bucket by grid cell; compare cubes whose cells are within Chebyshev
    // distance 2 (covers all pairs with distance <= cut).
    std::map<std::vector<long long>, std::vector<std::size_t>> grid;
    for (std::size_t i = 0; i < inside.size(); ++i) grid[coords[i]].push_back(i);
    Rat cut_sq = cut * cut;
    for (const auto& [cell, members] : grid) {
      // neighbouring cells (lexicographically >= to avoid double counting)
      std::vector<long long> nb = cell;
      std::function<void(std::size_t)> visit = [&](std::size_t ax) {
        if (ax == cell.size()) {
          if (nb < cell) return;
          auto it = grid.find(nb);
          if (it == grid.end()) return;
          const auto& other = it->second;
          for (std::size_t i : members) {
            for (std::size_t j : other) {
              if (nb == cell && j <= i) continue;
              Rat d2 = box_distance_sq(inside[i]->box, inside[j]->box);
              ++checked;
              if (d2 <= cut_sq) {
                if (!found || d2 < best) {
                  best = d2;
                  found = true;
                }
              }
            }
          }
          return;
        }
        for (long long dlt = -2; dlt <= 2; ++dlt) {
          nb[ax] = cell[ax] + dlt;
          visit(ax + 1);
        }
        nb[ax] = cell[ax];
      };
      visit(0);
    }
    if (!found) cut *= 2;
  }
  rep.pairs_checked = checked;
  rep.min_gap_sq = best;
  rep.min_gap = rat_sqrt_exact(best);
  Rat want = cover.delta * scale;
  rep.pass = (best == want * want);
  return rep;
}

CoveringReport verify_covering_and_disjointness(const DimensionCover& cover, const Box& window,
                                                const Rat& scale) {
  const std::size_t d = cover.matrix.dim();
  if (window.dim() != d) throw std::invalid_argument("window dimension mismatch");

  // Common refinement grid: along axis m all cube corners lie on
  // scale/L_m * Z where L_m is the lcm of the denominators of row m of the
  // matrix.  The subtraction of every cube box from the window is carried
  // out cell by cell on that grid, which is exact.
  std::vector<BigInt> L(d, 1);
  for (std::size_t m = 0; m < d; ++m) {
    BigInt l = den(cover.matrix.diag[m]);
    if (m + 1 < d) l = boost::multiprecision::lcm(l, den(cover.matrix.upper[m]));
    L[m] = l;
  }
  // Window corners must lie on the grid as well; refine by their denominators.
  for (std::size_t m = 0; m < d; ++m) {
    Rat lo = window.lo[m] / scale, hi = window.hi[m] / scale;
    L[m] = boost::multiprecision::lcm(L[m], den(lo));
    L[m] = boost::multiprecision::lcm(L[m], den(hi));
  }
  std::vector<long long> base(d), count(d);
  std::size_t total = 1;
  for (std::size_t m = 0; m < d; ++m) {
    Rat lo = window.lo[m] / scale * L[m];
    Rat hi = window.hi[m] / scale * L[m];
    base[m] = static_cast<long long>(num(lo));  // integral by construction
    count[m] = static_cast<long long>(num(hi)) - base[m];
    if (count[m] <= 0) throw std::invalid_argument("empty window");
    total *= static_cast<std::size_t>(count[m]);
  }
  std::vector<std::int32_t> owner(total, -1);
  std::vector<std::uint8_t> marks(total, 0);

  CoveringReport rep;
  rep.uncovered_area = Rat(0);
  std::set<std::pair<std::int32_t, std::int32_t>> overlap_pairs;

  std::int32_t cube_id = 0;
  for (unsigned color = 1; color <= cover.matrix.k; ++color) {
    auto cubes = enumerate_cubes(cover, color, window, scale);
    rep.cubes += cubes.size();
    for (const auto& c : cubes) {
      // integer cell range of box ∩ window on the refined grid
      std::vector<long long> lo(d), hi(d);
      bool empty = false;
      for (std::size_t m = 0; m < d; ++m) {
        Rat bl = c.box.lo[m] / scale * L[m], bh = c.box.hi[m] / scale * L[m];
        long long cl = std::max<long long>(static_cast<long long>(num(bl)) - base[m], 0);
        long long ch = std::min<long long>(static_cast<long long>(num(bh)) - base[m], count[m]);
        if (cl >= ch) { empty = true; break; }
        lo[m] = cl;
        hi[m] = ch;
      }
      if (empty) { ++cube_id; continue; }
      // walk the integer sub-box
      std::vector<long long> idx = lo;
      while (true) {
        std::size_t flat = 0;
        for (std::size_t m = 0; m < d; ++m) flat = flat * static_cast<std::size_t>(count[m]) + static_cast<std::size_t>(idx[m]);
        if (marks[flat]++) overlap_pairs.insert({owner[flat], cube_id});
        else owner[flat] = cube_id;
        std::size_t m = d;
        while (m > 0) {
          --m;
          if (++idx[m] < hi[m]) break;
          if (m == 0) { m = d + 1; break; }
          idx[m] = lo[m];
        }
        if (m == d + 1) break;
      }
      ++cube_id;
    }
  }
  std::size_t uncovered = 0;
  for (std::size_t i = 0; i < total; ++i)
    if (!marks[i]) ++uncovered;
  Rat cell_volume = 1;
  for (std::size_t m = 0; m < d; ++m) cell_volume *= scale / Rat(L[m]);
  rep.uncovered_area = cell_volume * Rat(BigInt(uncovered));
  rep.covered = (uncovered == 0);
  rep.interior_overlap_pairs = overlap_pairs.size();
  return rep;
}

CylinderReport verify_cylinder_law(const DimensionCover& cover, unsigned color,
                                   const LatticeCube& cube, unsigned axis, const Box& window) {
  const std::size_t d = cover.matrix.dim();
  if (axis < 1 || axis > d) throw std::out_of_range("axis out of range");
  if (cube.color != color) throw std::invalid_argument("cube colour mismatch");
  const std::size_t m = axis - 1;
  const Rat scale = cube.scale;
  const Rat margin = (axis == 1) ? Rat(0) : cover.delta * scale;

  CylinderReport rep;

  // Cube-level reading of the cylinder law.  A same-colour cube belongs to
  // the axis-m column of C when its projection to the complementary axes
  // overlaps the projection of C with positive measure; the delta-margin
  // clause additionally flags any cube whose projection comes strictly
  // within delta of C without overlapping it, which must never happen.
  // (Zero-measure face contact is possible for 2n >= 4 and does not count:
  // such cubes are the blockers handled by detour moves, not column mates.)
  auto positive_projected_overlap = [&](const Box& b) {
    for (std::size_t i = 0; i < d; ++i) {
      if (i == m) continue;
      if (!(b.hi[i] > cube.box.lo[i] && b.lo[i] < cube.box.hi[i])) return false;
    }
    return true;
  };
  auto projected_distance_sq = [&](const Box& b) {
    Rat d2 = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == m) continue;
      Rat gap = 0;
      if (b.lo[i] > cube.box.hi[i]) gap = b.lo[i] - cube.box.hi[i];
      else if (cube.box.lo[i] > b.hi[i]) gap = cube.box.lo[i] - b.hi[i];
      d2 += gap * gap;
    }
    return d2;
  };
  auto meets_cylinder = [&](const Box& b) {
    if (positive_projected_overlap(b)) return true;
    if (axis == 1) return false;
    Rat d2 = projected_distance_sq(b);
    return d2 > 0 && d2 < margin * margin;
  };

  auto all = enumerate_cubes(cover, color, window, scale);
  std::set<std::vector<long long>> found_set;
  for (const auto& c : all)
    if (box_contains_box(window, c.box) && meets_cylinder(c.box)) found_set.insert(c.index);

  // Expected: integer-index translates of the cube along the period.
  // M dv = lambda_m * l * e_m has the integral solution obtained by back
  // substitution; build it once for l = 1 and scale by l.
  std::vector<Rat> dv(d, Rat(0));
  dv[m] = Rat(cover.periods[m]) / cover.matrix.diag[m];
  for (std::size_t row = m; row-- > 0;) {
    Rat rhs = -cover.matrix.upper[row] * dv[row + 1];
    dv[row] = rhs / cover.matrix.diag[row];
  }
  std::vector<long long> step(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (den(dv[i]) != 1) throw std::logic_error("cylinder translate is not an integer lattice step");
    step[i] = static_cast<long long>(num(dv[i]));
  }
  std::set<std::vector<long long>> expected_set;
  for (long long l = -1024; l <= 1024; ++l) {
    std::vector<long long> v = cube.index;
    for (std::size_t i = 0; i < d; ++i) v[i] += l * step[i];
    Box b = lattice_cube_box(cover, color, v, scale);
    if (box_contains_box(window, b)) expected_set.insert(v);
  }
  rep.expected = expected_set.size();
  rep.found = found_set.size();
  rep.pass = (expected_set == found_set);
  if (!rep.pass) rep.detail = "cylinder translate sets differ";
  return rep;
}

}  // namespace symcover
