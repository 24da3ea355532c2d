// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "symcover/transport.hpp"

using namespace symcover;

namespace {

Scenario single_chart(long long dden, const Rat& eps) {
  Scenario s;
  s.k = 3;
  s.eps = eps;
  ChartSpec ch;
  ch.area = Region::from_box(Box(rat(0), rat(0), rat(1), rat(1)));
  ch.core = Region::from_box(Box(rat(1, 100), rat(1, 100), rat(99, 100), rat(99, 100)));
  s.charts.push_back(std::move(ch));
  s.ball_center = Point(rat(1, 2), rat(1, 2));
  s.scales = {rat(1, dden)};
  s.nus = {rat(0)};
  s.cell_slack = {rat(1, 8 * dden)};
  s.retry_bound = 2;
  return s;
}

// Two charts: a dense root square and a small side pocket reachable through
// a gate.  Chart-1 cubes in the overlap strip pick up chart-0 overlappers,
// giving mixed height-1 components.
Scenario two_chart_fixture() {
  Scenario s;
  s.k = 4;
  s.eps = rat(1, 5);
  ChartSpec c0;
  c0.area = Region::from_box(Box(rat(0), rat(0), rat(3, 5), rat(3, 5)));
  c0.core = Region::from_box(Box(rat(1, 200), rat(1, 200), rat(119, 200), rat(119, 200)));
  s.charts.push_back(std::move(c0));
  ChartSpec c1;
  c1.area = Region::from_box(Box(rat(1, 2), rat(13, 50), rat(3, 4), rat(17, 50)));
  c1.core = Region::from_box(Box(rat(51, 100), rat(27, 100), rat(74, 100), rat(33, 100)));
  c1.gate = GateSpec{Box(rat(1, 2), rat(13, 50), rat(3, 5), rat(17, 50)), 0};
  s.charts.push_back(std::move(c1));
  s.ball_center = Point(rat(3, 10), rat(3, 10));
  s.scales = {rat(1, 250), rat(1, 50)};
  s.nus = {rat(0), rat(1, 5)};
  s.cell_slack = {rat(1, 2000), rat(1, 500)};
  s.retry_bound = 1;
  return s;
}

}  // namespace

TEST_CASE("scenario validation") {
  Scenario s = single_chart(64, rat(1, 4));
  CHECK_NOTHROW(s.validate());
  Scenario bad = s;
  bad.scales = {rat(0)};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  Scenario bad2 = s;
  bad2.charts[0].core = Region::from_box(Box(rat(0), rat(0), rat(2), rat(2)));
  CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_CASE("colored cover obeys the margin condition and budgets") {
  Scenario s = single_chart(40, rat(1, 4));
  auto cover = build_cover(1, 3);
  auto cubes = build_colored_cover(s, cover);
  // every cube inside [d, 1-d]^2 and budget strict
  Rat d = s.scales[0];
  for (unsigned j = 1; j <= 3; ++j) {
    Rat area;
    for (const auto& c : cubes.by_color[j - 1]) {
      CHECK(c.box.lo[0] >= d);
      CHECK(c.box.lo[1] >= d);
      CHECK(c.box.hi[0] <= 1 - d);
      CHECK(c.box.hi[1] <= 1 - d);
      area += c.box.volume();
    }
    CHECK(area < (Rat(1) + 2 * s.eps) / 3);
    CHECK(area > Rat(1, 5));  // sanity: the cover is actually dense
  }
  // a scale beyond the chart width leaves the cover empty and trips the
  // budget check only when nonempty; emptiness is reported as zero cubes
  Scenario tiny = single_chart(40, rat(1, 4));
  tiny.scales = {rat(2)};
  tiny.cell_slack = {rat(1, 4)};
  auto empty_cubes = build_colored_cover(tiny, cover);
  for (unsigned j = 1; j <= 3; ++j) CHECK(empty_cubes.by_color[j - 1].empty());
}

TEST_CASE("single-chart decomposition is trivial") {
  Scenario s = single_chart(40, rat(1, 4));
  auto cover = build_cover(1, 3);
  auto cubes = build_colored_cover(s, cover);
  auto decomp = decompose_colors(s, cubes, 1);
  for (const auto& comp : decomp.components) {
    CHECK(comp.height == 0);
    CHECK(comp.cube_ids.size() == 1);
    CHECK(comp.free_standing);
    CHECK(comp.saturation.cells().size() == 1);
  }
  CHECK(decomp.components.size() == cubes.by_color[0].size());
}

TEST_CASE("constructed two-cube overlap forms one height-1 component") {
  // hand fixture: one chart-1 cube overlapped by two chart-0 cubes
  Scenario s = two_chart_fixture();
  auto cover = build_cover(1, 4);
  auto cubes = build_colored_cover(s, cover);
  for (unsigned j = 1; j <= 4; ++j) {
    auto decomp = decompose_colors(s, cubes, j);
    bool mixed_seen = false;
    for (const auto& comp : decomp.components) {
      if (comp.height == 1) {
        // exactly one chart-1 cube per component
        std::size_t chart1 = 0;
        for (std::size_t id : comp.cube_ids)
          if (cubes.by_color[j - 1][id].chart == 1) ++chart1;
        CHECK(chart1 == 1);
        if (comp.cube_ids.size() > 1) mixed_seen = true;
        // the fattened box contains every member
        for (std::size_t id : comp.cube_ids)
          CHECK(box_contains_box(comp.fattened, cubes.by_color[j - 1][id].box));
      }
    }
    CHECK(mixed_seen);
    // saturated families pairwise disjoint
    for (std::size_t a = 0; a < decomp.saturation_by_height.size(); ++a)
      for (std::size_t b = a + 1; b < decomp.saturation_by_height.size(); ++b)
        CHECK(decomp.saturation_by_height[a].intersect(decomp.saturation_by_height[b]).empty());
  }
}

TEST_CASE("nested ring saturation includes the enclosed pocket") {
  // synthetic check of the saturation machinery through the geometry layer:
  // a ring of cells has its hole filled
  Region ring;
  ring = ring.unite(Region::from_box(Box(rat(0), rat(0), rat(3), rat(1))));
  ring = ring.unite(Region::from_box(Box(rat(0), rat(2), rat(3), rat(3))));
  ring = ring.unite(Region::from_box(Box(rat(0), rat(1), rat(1), rat(2))));
  ring = ring.unite(Region::from_box(Box(rat(2), rat(1), rat(3), rat(2))));
  auto comps = complement_components(ring, Box(rat(-1), rat(-1), rat(4), rat(4)));
  Rat hole_area;
  for (const auto& c : comps)
    if (!c.touches_universe_boundary) hole_area += c.region.area();
  CHECK(hole_area == rat(1));
}

TEST_CASE("single-chart transport: plan, simulate, residual") {
  Scenario s = single_chart(128, rat(1, 5));
  TransportRun run = run_transport(s, {1, 2, 3});
  CHECK(run.retries == 0);
  for (const auto& cr : run.colors) {
    CHECK(cr.sim.valid);
    CHECK(cr.sim.final_containment);
    CHECK(cr.sim.area_preserved);
    if (!cr.sim.valid)
      for (auto& v : cr.sim.violations) MESSAGE(v);
  }
  // exact residual, derived by hand: the all-colour union tiles the plane,
  // rows sit at y in d*Z, even rows carry anchors on d*Z and cover
  // [d, 1-d], odd rows are offset by d/2 and lose one extra half-cube bite
  // of d/2 * d at each end; with d = 1/128 there are 63 odd rows
  Rat d = s.scales[0];
  CHECK(run.residual == 1 - (1 - 2 * d) * (1 - 2 * d) + 63 * d * d);
  CHECK(run.residual < rat(1, 20));
  // plan JSON round-trip re-validates
  const TransportPlan& p = run.colors[0].plan;
  TransportPlan p2 = plan_from_json_text(plan_to_json_text(p));
  auto sim2 = simulate_plan(run.world, run.cubes, p2);
  CHECK(sim2.valid);
  CHECK(sim2.final_containment);
}

TEST_CASE("plan moves respect the tree order") {
  Scenario s = single_chart(128, rat(1, 5));
  TransportRun run = run_transport(s, {2});
  const TransportPlan& p = run.colors[0].plan;
  // every unit with a tree parent starts its tree legs after the parent is
  // fully packed; verified here directly on the move list
  std::map<std::size_t, std::size_t> last_move_of;
  for (std::size_t mi = 0; mi < p.moves.size(); ++mi) last_move_of[p.moves[mi].unit] = mi;
  for (std::size_t mi = 0; mi < p.moves.size(); ++mi) {
    const Move& m = p.moves[mi];
    if (m.phase != MovePhase::RouteTreeLeg) continue;
    long long par = p.units[m.unit].tree_parent;
    if (par >= 0) CHECK(last_move_of[static_cast<std::size_t>(par)] < mi);
    break;  // the first tree leg of the plan suffices here; full check in sim
  }
  CHECK(run.colors[0].sim.valid);
}

TEST_CASE("two-chart transport with gate routing") {
  Scenario s = two_chart_fixture();
  auto cover = build_cover(1, 4);
  auto cubes = build_colored_cover(s, cover);
  auto budget = compute_budget(s, cubes);
  auto decomp = decompose_colors(s, cubes, 1);
  auto plan = plan_color(s, cubes, decomp, budget, 1);
  auto sim = simulate_plan(s, cubes, plan);
  for (auto& v : sim.violations) MESSAGE(v);
  CHECK(sim.valid);
  CHECK(sim.final_containment);
  CHECK(sim.area_preserved);
  // at least one gate hop and one height-1 unit packed into the annulus
  bool hop = false;
  for (const auto& m : plan.moves)
    if (m.phase == MovePhase::GateHop) hop = true;
  CHECK(hop);
  Rat packed;
  std::size_t h1_units = 0;
  for (const auto& u : plan.units)
    if (u.height == 1) {
      ++h1_units;
      packed += u.bound.volume();
    }
  CHECK(h1_units >= 1);
  // strict annulus budget: fattened area below the prescribed annulus area
  CHECK(packed < budget.region_areas[1]);
}

TEST_CASE("undersized ball reports capacity") {
  Scenario s = single_chart(128, rat(1, 5));
  s.radii = {rat(1, 10)};  // far below the prescribed area
  auto cover = build_cover(1, 3);
  auto cubes = build_colored_cover(s, cover);
  CHECK_THROWS_AS(compute_budget(s, cubes), PlanError);
  try {
    compute_budget(s, cubes);
  } catch (const PlanError& e) {
    CHECK(e.kind == PlanError::Kind::Capacity);
    CHECK(std::string(e.what()).find("capacity") != std::string::npos);
  }
}

TEST_CASE("scenario JSON round trip") {
  Scenario s = two_chart_fixture();
  Scenario s2 = scenario_from_json_text(scenario_to_json_text(s));
  CHECK(s2.k == s.k);
  CHECK(s2.charts.size() == s.charts.size());
  CHECK(s2.scales == s.scales);
  CHECK(s2.charts[1].gate->parent == 0);
  CHECK(scenario_to_json_text(s2) == scenario_to_json_text(s));  // byte-identical
}
