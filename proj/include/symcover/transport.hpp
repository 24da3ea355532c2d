// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// Desk-scale cube transport in a flat multi-chart world: scaled colour
// covers inside rectilinear charts, connected-component heights and
// saturations, and a validated plan of axis-parallel translations packing
// each colour class into a round target disc and its annuli (or into an
// arbitrary rectilinear target region).
//
// Chart transitions are the identity by construction: the charts are
// subregions of one plane and the gates are boxes shared with the parent
// chart.  Planning one colour never touches another colour's cubes, so the
// colours may be planned concurrently; a single plan is simulated strictly
// sequentially.
#pragma once

#include "symcover/geometry.hpp"
#include "symcover/lattice_cover.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symcover {

struct GateSpec {
  Box box;          // shared with the parent chart; the identity zone
  unsigned parent;  // parent chart index, strictly smaller
};

struct ChartSpec {
  Region area;                    // V_i
  Region core;                    // U_i' inside V_i
  std::optional<GateSpec> gate;   // required for every chart i >= 1
};

// A scenario: world, budgets and scale knobs.  Radii may be left empty and
// are then derived from the prescribed area budgets.
struct Scenario {
  unsigned k = 3;
  Rat eps;                         // global area slack
  std::vector<ChartSpec> charts;   // index 0 is the root chart
  Point ball_center;
  std::vector<Rat> scales;         // d_i per chart
  std::vector<Rat> nus;            // nu_i per chart (index 0 unused, keep 0)
  std::vector<Rat> cell_slack;     // eps_h per height (cell pitch slack)
  std::vector<Rat> radii;          // r_0 < ... < r_l; derived when empty
  std::vector<std::pair<unsigned, unsigned>> core_disjoint_pairs;  // declared U_g' ∩ V_h = ∅
  unsigned retry_bound = 4;
  std::optional<Region> target_region_override;  // replaces the disc (displaceable-cover mode)

  std::size_t chart_count() const { return charts.size(); }
  void validate() const;
};

// One scaled lattice cube living in a chart.
struct ChartCube {
  unsigned chart = 0;
  unsigned color = 1;
  std::vector<long long> index;
  Box box;
};

struct ColoredCubeSet {
  unsigned k = 1;
  DimensionCover cover;                          // the unscaled pattern
  std::vector<std::vector<ChartCube>> by_color;  // [color-1] -> all charts
  std::vector<std::vector<Rat>> color_area_by_chart;  // [color-1][chart]
};

// The margin condition: cubes inside the chart with Euclidean distance
// at least d_i to its boundary; per-colour areas are checked against the
// (1/k)(|V_i| + (k-1)/(l+1) eps) budget, both bare and nu-fattened.
// Throws "scale too large" (invalid_argument) when a budget fails.
ColoredCubeSet build_colored_cover(const Scenario& world, const DimensionCover& cover);

struct ColorComponent {
  int height = 0;                       // max chart index contributing a cube
  std::vector<std::size_t> cube_ids;    // indices into the colour's cube list
  std::size_t h_cube = 0;               // cube id of the single height cube (h >= 1)
  Box fattened;                         // C^{nu_h} box (h >= 1); the cube box for h == 0
  Region saturation;                    // member boxes plus filled holes
  bool free_standing = true;            // not enclosed by a higher saturation
  std::vector<std::size_t> carried;     // enclosed components riding along
};

struct ColorDecomposition {
  unsigned color = 1;
  std::vector<ColorComponent> components;
  std::vector<Region> saturation_by_height;  // union of free saturations per height
};

// Components under edge-adjacency across charts, their heights, and the
// top-down saturation recursion.  Verifies per instance that every
// height-h component holds exactly one h-cube and fits inside its fattened
// box; throws "ratios too large" otherwise.
ColorDecomposition decompose_colors(const Scenario& world, const ColoredCubeSet& cubes,
                                    unsigned color);

struct CapacityBudget {
  unsigned k = 1;
  Rat eps;
  std::vector<Rat> chart_areas;   // |V_i|
  std::vector<Rat> region_areas;  // prescribed A_0..A_l
  std::vector<Rat> radii;         // r_0..r_l (true disc areas >= prescription)
  Rat r_tilde;                    // interior staging radius
  Rat r_hat;                      // annulus staging radius, r_0 < r_hat < r_tilde
};

// Prescribes the target areas, derives/validates radii, checks the staging
// geometry (cube diameter below half the staging gap).
CapacityBudget compute_budget(const Scenario& world, const ColoredCubeSet& cubes);

enum class MovePhase {
  CompressInterior,
  RouteTreeLeg,
  DetourDisplace,
  DetourRestore,
  GateHop,
  PackIntoCell,
};

std::string move_phase_name(MovePhase p);
MovePhase move_phase_from_name(const std::string& s);

struct Move {
  std::size_t unit = 0;
  MovePhase phase = MovePhase::PackIntoCell;
  Point delta;          // axis-parallel or zero
  Box from, to;         // unit bounding box before/after
  long long detour_partner = -1;  // index of the matching displace/restore
};

struct PlanUnit {
  unsigned chart = 0;
  int height = 0;
  std::vector<Box> member_boxes;  // at start position (cubes + carried cubes)
  Box bound;                      // moving footprint (cube box / fattened box)
  long long target_cell = -1;     // index into cells
  long long tree_parent = -1;     // previous real unit on the routing tree
};

struct TransportPlan {
  unsigned color = 1;
  std::vector<PlanUnit> units;
  std::vector<Box> cells;         // chosen target cells
  std::vector<Move> moves;
  // context needed to re-validate the plan standalone
  std::vector<Rat> radii;
  Rat r_tilde, r_hat;
  std::vector<Rat> detour_caps;   // per chart: delta * d_i / 2
};

// Typed planner failure; `what` carries the offending quantity.
struct PlanError : std::runtime_error {
  enum class Kind { Capacity, DisconnectedGraph, GateTooSmall, RatiosTooLarge, RoutingBlocked };
  Kind kind;
  PlanError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

TransportPlan plan_color(const Scenario& world, const ColoredCubeSet& cubes,
                         const ColorDecomposition& decomp, const CapacityBudget& budget,
                         unsigned color);

struct SimulationReport {
  bool valid = false;
  std::vector<std::string> violations;
  bool final_containment = false;
  bool area_preserved = false;
  std::size_t moves_replayed = 0;
};

// Independent replay of a plan against the world: interior disjointness at
// every move, per-phase region discipline, detour bookkeeping and caps,
// tree-order correctness, final containment per height, rigid areas.
SimulationReport simulate_plan(const Scenario& world, const ColoredCubeSet& cubes,
                               const TransportPlan& plan);

// Exact area of the world not covered by any cube of any colour.
Rat cover_residual(const Scenario& world, const ColoredCubeSet& cubes);

// Driver: build cover, decompose, budget, plan every colour, halving the
// offending scale on planner errors up to world.retry_bound times.
struct ColorRun {
  TransportPlan plan;
  SimulationReport sim;
};
struct TransportRun {
  Scenario world;  // possibly with shrunk scales
  ColoredCubeSet cubes;
  CapacityBudget budget;
  std::vector<ColorRun> colors;
  Rat residual;
  unsigned retries = 0;
};
TransportRun run_transport(const Scenario& world, const std::vector<unsigned>& colors_to_plan = {});

// --- scenario / plan serialization (scenario_io.cpp) ---
Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);
std::string plan_to_json_text(const TransportPlan& p);
TransportPlan plan_from_json_text(const std::string& text);
std::string simulation_report_to_json_text(const SimulationReport& r);

// SVG snapshot of the world with current cube positions (svg.cpp).
std::string render_scenario_svg(const Scenario& world, const ColoredCubeSet& cubes,
                                const TransportPlan* plan = nullptr,
                                std::size_t moves_applied = 0);

}  // namespace symcover
