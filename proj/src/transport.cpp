// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// World validation, scaled colour covers, component decomposition with
// saturations, capacity budgets and the covering residual.
#include "symcover/transport.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace symcover {

void Scenario::validate() const {
  if (k < 2) throw std::invalid_argument("need at least two colours");
  if (charts.empty()) throw std::invalid_argument("need at least one chart");
  if (eps < 0) throw std::invalid_argument("negative slack");
  const std::size_t l = charts.size();
  if (scales.size() != l || nus.size() != l)
    throw std::invalid_argument("scales/nus must list one entry per chart");
  if (cell_slack.size() != l) throw std::invalid_argument("cell_slack must list one entry per height");
  for (std::size_t i = 0; i < l; ++i) {
    if (scales[i] <= 0) throw std::invalid_argument("scales must be positive");
    if (charts[i].area.empty()) throw std::invalid_argument("empty chart");
    if (charts[i].core.empty()) throw std::invalid_argument("empty core");
    for (const Box& c : charts[i].core.cells())
      if (!charts[i].area.contains_box(c)) throw std::invalid_argument("core escapes its chart");
    if (i == 0) {
      if (charts[i].gate) throw std::invalid_argument("root chart cannot have a gate");
    } else {
      if (!charts[i].gate) throw std::invalid_argument("non-root chart needs a gate");
      const GateSpec& g = *charts[i].gate;
      if (g.parent >= i) throw std::invalid_argument("gate parent must precede the chart");
      if (!charts[i].area.contains_box(g.box) || !charts[g.parent].area.contains_box(g.box))
        throw std::invalid_argument("gate must lie in both charts");
      if (nus[i] <= 0) throw std::invalid_argument("fattening nu must be positive for charts >= 1");
    }
  }
  if (!charts[0].area.contains_point(ball_center))
    throw std::invalid_argument("ball center must lie in the root chart");
  for (auto [g, h] : core_disjoint_pairs) {
    if (g >= h || h >= l) throw std::invalid_argument("bad core-disjoint pair");
    if (!charts[g].core.intersect(charts[h].area).empty())
      throw std::invalid_argument("declared core/chart disjointness violated");
  }
  if (!radii.empty()) {
    if (radii.size() != l) throw std::invalid_argument("radii must list one entry per height");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
      if (!(radii[i] < radii[i + 1])) throw std::invalid_argument("radii must increase");
  }
}

namespace {

// Euclidean distance from the cube to the chart boundary, compared exactly
// against the scale.
bool margin_condition(const Box& cube, const Region& chart,
                      const std::vector<Segment2D>& boundary, const Rat& d) {
  if (!chart.contains_box(cube)) return false;
  Rat d2 = d * d;
  for (const auto& seg : boundary)
    if (box_segment_distance_sq(cube, seg) < d2) return false;
  return true;
}

}  // namespace

ColoredCubeSet build_colored_cover(const Scenario& world, const DimensionCover& cover) {
  world.validate();
  if (cover.matrix.k != world.k) throw std::invalid_argument("cover colour count mismatch");
  if (cover.matrix.dim() != 2) throw std::invalid_argument("the transport world is planar");

  const std::size_t l = world.chart_count();
  ColoredCubeSet out;
  out.k = world.k;
  out.cover = cover;
  out.by_color.assign(world.k, {});
  out.color_area_by_chart.assign(world.k, std::vector<Rat>(l, Rat(0)));

  for (std::size_t i = 0; i < l; ++i) {
    const Region& chart = world.charts[i].area;
    const Rat& d = world.scales[i];
    auto boundary = boundary_segments_2d(chart);
    Box bb = chart.bounding_box();
    for (unsigned j = 1; j <= world.k; ++j) {
      auto cubes = enumerate_cubes(cover, j, bb, d);
      for (auto& c : cubes) {
        if (!margin_condition(c.box, chart, boundary, d)) continue;
        ChartCube cc;
        cc.chart = static_cast<unsigned>(i);
        cc.color = j;
        cc.index = c.index;
        cc.box = c.box;
        out.color_area_by_chart[j - 1][i] += c.box.volume();
        out.by_color[j - 1].push_back(std::move(cc));
      }
    }
  }

  // budget per chart and colour: |C_i^j(d_i)| and its nu-fattened version
  // must stay below (1/k)(|V_i| + (k-1)/(l+1) eps)
  for (std::size_t i = 0; i < l; ++i) {
    Rat budget = (world.charts[i].area.area() + Rat(world.k - 1) * world.eps / Rat(l)) / world.k;
    Rat fat = 1 + 2 * world.nus[i];
    for (unsigned j = 1; j <= world.k; ++j) {
      Rat area = out.color_area_by_chart[j - 1][i];
      Rat fat_area = (i == 0) ? area : fat * fat * area;
      if (!(fat_area < budget))
        throw std::invalid_argument(
            "scale too large: colour " + std::to_string(j) + " in chart " + std::to_string(i) +
            " carries area ratio " + rat_to_string(fat_area / budget) + " of its budget");
    }
  }
  return out;
}

namespace {

// spatial hash for adjacency candidate pairs
std::vector<std::pair<std::size_t, std::size_t>> adjacency_pairs(const std::vector<ChartCube>& cubes) {
  if (cubes.empty()) return {};
  Rat cell = cubes[0].box.width(0);
  for (const auto& c : cubes) cell = rat_max(cell, c.box.width(0));
  std::map<std::pair<long long, long long>, std::vector<std::size_t>> grid;
  auto key = [&](const Rat& x, const Rat& y) {
    return std::make_pair(static_cast<long long>(rat_floor(x / cell)),
                          static_cast<long long>(rat_floor(y / cell)));
  };
  for (std::size_t i = 0; i < cubes.size(); ++i) grid[key(cubes[i].box.lo[0], cubes[i].box.lo[1])].push_back(i);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [cell_key, members] : grid) {
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({cell_key.first + dx, cell_key.second + dy});
        if (it == grid.end()) continue;
        for (std::size_t a : members)
          for (std::size_t b : it->second) {
            if (a >= b) continue;
            if (seen.insert({a, b}).second && boxes_edge_adjacent(cubes[a].box, cubes[b].box))
              out.push_back({a, b});
          }
      }
  }
  return out;
}

}  // namespace

ColorDecomposition decompose_colors(const Scenario& world, const ColoredCubeSet& cubes,
                                    unsigned color) {
  if (color < 1 || color > cubes.k) throw std::invalid_argument("colour out of range");
  const auto& list = cubes.by_color[color - 1];
  const std::size_t n = list.size();
  ColorDecomposition out;
  out.color = color;
  out.saturation_by_height.assign(world.chart_count(), Region());

  // union-find over edge-adjacent cubes
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : adjacency_pairs(list)) parent[find(a)] = find(b);

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  for (auto& [root, ids] : groups) {
    ColorComponent comp;
    comp.cube_ids = ids;
    int h = 0;
    for (std::size_t id : ids) h = std::max(h, static_cast<int>(list[id].chart));
    comp.height = h;
    if (h >= 1) {
      std::vector<std::size_t> h_cubes;
      for (std::size_t id : ids)
        if (static_cast<int>(list[id].chart) == h) h_cubes.push_back(id);
      if (h_cubes.size() != 1)
        throw PlanError(PlanError::Kind::RatiosTooLarge,
                        "ratios too large: a height-" + std::to_string(h) + " component holds " +
                            std::to_string(h_cubes.size()) + " top cubes");
      comp.h_cube = h_cubes[0];
      comp.fattened = neighborhood(list[comp.h_cube].box, world.nus[h] * world.scales[h]);
      for (std::size_t id : ids)
        if (!box_contains_box(comp.fattened, list[id].box))
          throw PlanError(PlanError::Kind::RatiosTooLarge,
                          "ratios too large: a component escapes its fattened cube");
    } else {
      comp.h_cube = ids[0];
      comp.fattened = list[ids[0]].box;
    }
    out.components.push_back(std::move(comp));
  }

  // saturations, top height down; a lower component enclosed by a higher
  // saturation is carried by it and loses its free standing
  std::sort(out.components.begin(), out.components.end(),
            [&](const ColorComponent& a, const ColorComponent& b) {
              if (a.height != b.height) return a.height > b.height;
              return box_less(list[a.cube_ids[0]].box, list[b.cube_ids[0]].box);
            });
  for (std::size_t ci = 0; ci < out.components.size(); ++ci) {
    ColorComponent& comp = out.components[ci];
    std::vector<Box> boxes;
    for (std::size_t id : comp.cube_ids) boxes.push_back(list[id].box);
    // cross-chart members overlap, so the body is built as a union
    Region body;
    for (const Box& bx : boxes) body = body.unite(Region::from_box(bx));
    // enclosed by an already-saturated higher component?
    comp.free_standing = true;
    for (std::size_t cj = 0; cj < ci; ++cj) {
      if (!out.components[cj].free_standing) continue;
      if (out.components[cj].height <= comp.height) continue;
      if (out.components[cj].saturation.contains_box(boxes[0])) {
        comp.free_standing = false;
        out.components[cj].carried.push_back(ci);
        break;
      }
    }
    if (!comp.free_standing) {
      comp.saturation = body;
      continue;
    }
    if (boxes.size() == 1) {
      comp.saturation = body;
    } else {
      Box uni = neighborhood(body.bounding_box(), world.scales[comp.height]);
      Region filled = body;
      for (const auto& cc : complement_components(body, uni))
        if (!cc.touches_universe_boundary) filled = filled.unite(cc.region);
      comp.saturation = filled.normalized();
    }
    // validated inclusion: the saturation must stay inside the height chart
    for (const Box& c : comp.saturation.cells())
      if (!world.charts[comp.height].area.contains_box(c))
        throw PlanError(PlanError::Kind::RatiosTooLarge,
                        "ratios too large: a saturation escapes its chart");
  }

  // assemble the per-height saturated families; distinct free components of
  // one height are disjoint (asserted below with a spatial hash), so the
  // union is a plain cell concatenation
  {
    std::vector<std::vector<Box>> cells_by_height(world.chart_count());
    for (const auto& comp : out.components) {
      if (!comp.free_standing) continue;
      for (const Box& c : comp.saturation.cells())
        cells_by_height[static_cast<std::size_t>(comp.height)].push_back(c);
    }
    for (std::size_t h = 0; h < cells_by_height.size(); ++h) {
      auto& cells = cells_by_height[h];
      if (!cells.empty()) {
        Rat w = cells[0].width(0);
        for (const Box& c : cells) w = rat_max(w, rat_max(c.width(0), c.width(1)));
        std::map<std::pair<long long, long long>, std::vector<std::size_t>> grid;
        for (std::size_t i = 0; i < cells.size(); ++i)
          grid[{static_cast<long long>(rat_floor(cells[i].lo[0] / w)),
                static_cast<long long>(rat_floor(cells[i].lo[1] / w))}]
              .push_back(i);
        for (const auto& [key, members] : grid)
          for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
              auto it = grid.find({key.first + dx, key.second + dy});
              if (it == grid.end()) continue;
              for (std::size_t a : members)
                for (std::size_t b : it->second)
                  if (a < b && box_interiors_intersect(cells[a], cells[b]))
                    throw PlanError(PlanError::Kind::RatiosTooLarge,
                                    "ratios too large: saturations overlap within a height");
            }
      }
      out.saturation_by_height[h] = Region::from_disjoint_cells(std::move(cells));
    }
  }

  // the saturated families of distinct heights must be pairwise disjoint
  for (std::size_t a = 0; a < out.saturation_by_height.size(); ++a)
    for (std::size_t b = a + 1; b < out.saturation_by_height.size(); ++b)
      if (!out.saturation_by_height[a].intersect(out.saturation_by_height[b]).empty())
        throw PlanError(PlanError::Kind::RatiosTooLarge,
                        "ratios too large: saturated families of heights " + std::to_string(a) +
                            " and " + std::to_string(b) + " overlap");
  return out;
}

CapacityBudget compute_budget(const Scenario& world, const ColoredCubeSet& cubes) {
  const std::size_t l = world.chart_count();
  CapacityBudget b;
  b.k = world.k;
  b.eps = world.eps;
  for (std::size_t i = 0; i < l; ++i) {
    b.chart_areas.push_back(world.charts[i].area.area());
    b.region_areas.push_back((b.chart_areas[i] + Rat(world.k - 1) * world.eps / Rat(l)) / world.k);
  }
  if (world.target_region_override) {
    // region-target mode: radii unused
    b.radii.assign(l, Rat(0));
    b.r_tilde = b.r_hat = Rat(0);
    Rat total;
    for (unsigned j = 1; j <= world.k; ++j) {
      Rat area;
      for (std::size_t i = 0; i < l; ++i) area += cubes.color_area_by_chart[j - 1][i];
      if (!(area < world.target_region_override->area()))
        throw PlanError(PlanError::Kind::Capacity,
                        "capacity: colour area exceeds the target region");
    }
    return b;
  }

  // radii: either supplied or grown from the prescribed areas using the
  // rational lower bound on pi (true disc areas then dominate the budget)
  if (!world.radii.empty()) {
    b.radii = world.radii;
  } else {
    Rat acc;
    for (std::size_t h = 0; h < l; ++h) {
      acc += b.region_areas[h];
      // coarse denominators keep the planner's common integer grid small
      Rat r = rat_sqrt_upper(acc / pi_lower(), BigInt(1) << 12);
      b.radii.push_back(r);
    }
  }
  for (std::size_t h = 0; h < l; ++h) {
    Rat need;
    for (std::size_t g = 0; g <= h; ++g) need += b.region_areas[g];
    if (!(pi_lower() * b.radii[h] * b.radii[h] >= need))
      throw PlanError(PlanError::Kind::Capacity,
                      "capacity: radius " + std::to_string(h) + " too small for its area budget");
  }
  // the whole target must fit in the root chart
  Disc outer{world.ball_center, b.radii[l - 1]};
  if (!disc_inside_region(outer, world.charts[0].area))
    throw PlanError(PlanError::Kind::Capacity, "capacity: target disc escapes the root chart");

  // staging radii (interior compression zone and annulus corridor), with the
  // classification shrink 2*d_0 + pitch_0 so that compression sweeps stay
  // clear of exterior cubes
  Rat r0 = b.radii[0];
  Rat dist2 = Rat(0);
  {
    // largest disc about the center inside the root chart
    Box bb = world.charts[0].area.bounding_box();
    Region comp = Region::from_box(neighborhood(bb, Rat(1))).subtract(world.charts[0].area);
    dist2 = point_box_distance_sq(world.ball_center, comp.cells()[0]);
    for (const Box& c : comp.cells()) dist2 = rat_min(dist2, point_box_distance_sq(world.ball_center, c));
  }
  Rat cap = rat_sqrt_lower(dist2, BigInt(1) << 12);
  Rat tilde = rat_min(Rat(2 * world.k, 5) * r0, (r0 + cap) / 2);
  // Interiors are classified against tilde shrunk by one sweep excursion
  // (2 d_0 + pitch_0), so compression sweeps stay strictly inside tilde and
  // clear of every exterior cube.
  Rat d0 = world.scales[0];
  Rat pitch0 = d0 + world.cell_slack[0];
  Rat tilde_class = tilde - (2 * d0 + pitch0);
  if (!(tilde_class > r0))
    throw PlanError(PlanError::Kind::Capacity, "capacity: no room for the interior staging zone");
  b.r_tilde = tilde;
  b.r_hat = (r0 + tilde_class) / 2;
  // cube diagonal below half the staging gap
  if (!(2 * d0 * d0 < (tilde_class - r0) * (tilde_class - r0) / 4))
    throw PlanError(PlanError::Kind::Capacity, "capacity: cube diameter too large for the staging gap");
  return b;
}

Rat cover_residual(const Scenario& world, const ColoredCubeSet& cubes) {
  // exact bitmap on the common refinement grid of all cube corners, chart
  // cells and scales
  std::set<BigInt> dens;
  auto add_rat = [&](const Rat& r) { dens.insert(den(r)); };
  for (const auto& ch : world.charts)
    for (const Box& c : ch.area.cells()) {
      add_rat(c.lo[0]); add_rat(c.lo[1]); add_rat(c.hi[0]); add_rat(c.hi[1]);
    }
  for (const auto& jlist : cubes.by_color)
    for (const auto& c : jlist) {
      add_rat(c.box.lo[0]); add_rat(c.box.lo[1]); add_rat(c.box.hi[0]); add_rat(c.box.hi[1]);
    }
  BigInt L = 1;
  for (const auto& d : dens) L = boost::multiprecision::lcm(L, d);
  if (L > (BigInt(1) << 24))
    throw std::invalid_argument("refinement grid too fine for the residual bitmap");
  const long long Lll = static_cast<long long>(L);

  // world bounding box in grid units
  Region world_region;
  for (const auto& ch : world.charts) world_region = world_region.unite(ch.area);
  Box bb = world_region.bounding_box();
  auto to_grid = [&](const Rat& x) { return static_cast<long long>(num(x * Lll)); };
  long long x0 = to_grid(bb.lo[0]), y0 = to_grid(bb.lo[1]);
  long long w = to_grid(bb.hi[0]) - x0, h = to_grid(bb.hi[1]) - y0;
  if (w * h > 64ll * 1024 * 1024) throw std::invalid_argument("residual bitmap too large");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(w * h), 0);
  auto paint = [&](const Box& box, std::uint8_t bit) {
    long long cx0 = std::max(0ll, to_grid(box.lo[0]) - x0), cy0 = std::max(0ll, to_grid(box.lo[1]) - y0);
    long long cx1 = std::min(w, to_grid(box.hi[0]) - x0), cy1 = std::min(h, to_grid(box.hi[1]) - y0);
    for (long long x = cx0; x < cx1; ++x)
      for (long long y = cy0; y < cy1; ++y) mask[static_cast<std::size_t>(x * h + y)] |= bit;
  };
  for (const auto& ch : world.charts)
    for (const Box& c : ch.area.cells()) paint(c, 1);
  for (const auto& jlist : cubes.by_color)
    for (const auto& c : jlist) paint(c.box, 2);
  long long uncovered = 0;
  for (auto m : mask)
    if (m == 1) ++uncovered;
  return Rat(uncovered) / (Rat(Lll) * Rat(Lll));
}

}  // namespace symcover
