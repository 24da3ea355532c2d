// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// Static SVG snapshots: charts, cores, gates, the target disc family and
// the cubes either at their start positions or after a prefix of the plan.
#include "symcover/transport.hpp"

#include <sstream>

namespace symcover {

namespace {

const char* kColorFill[] = {"#e66101", "#5e3c99", "#1b9e77", "#d95f02", "#7570b3", "#66a61e"};

double dd(const Rat& r) { return rat_to_double(r); }

void rect(std::ostringstream& o, const Box& b, const std::string& style, double scale) {
  o << "<rect x='" << dd(b.lo[0]) * scale << "' y='" << dd(b.lo[1]) * scale << "' width='"
    << dd(b.width(0)) * scale << "' height='" << dd(b.width(1)) * scale << "' " << style << "/>\n";
}

}  // namespace

std::string render_scenario_svg(const Scenario& world, const ColoredCubeSet& cubes,
                                const TransportPlan* plan, std::size_t moves_applied) {
  const double scale = 640.0;
  Region all;
  for (const auto& ch : world.charts) all = all.unite(ch.area);
  Box bb = all.bounding_box();
  std::ostringstream o;
  o << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='" << dd(bb.lo[0]) * scale - 8 << " "
    << dd(bb.lo[1]) * scale - 8 << " " << (dd(bb.width(0))) * scale + 16 << " "
    << (dd(bb.width(1))) * scale + 16 << "'>\n";
  o << "<g transform='scale(1,1)'>\n";
  for (const auto& ch : world.charts) {
    for (const Box& c : ch.area.cells()) rect(o, c, "fill='#f4f4f4' stroke='#999' stroke-width='0.8'", scale);
    for (const Box& c : ch.core.cells()) rect(o, c, "fill='none' stroke='#bbb' stroke-dasharray='3,3'", scale);
    if (ch.gate) rect(o, ch.gate->box, "fill='#fff3c4' stroke='#c8a200'", scale);
  }
  if (plan) {
    double cx = dd(world.ball_center[0]) * scale, cy = dd(world.ball_center[1]) * scale;
    for (const Rat& r : plan->radii)
      o << "<circle cx='" << cx << "' cy='" << cy << "' r='" << dd(r) * scale
        << "' fill='none' stroke='#3366cc' stroke-width='1'/>\n";
  }
  // cube positions: start, shifted by the prefix of plan moves
  if (plan) {
    std::vector<Point> offset(plan->units.size(), Point(Rat(0), Rat(0)));
    for (std::size_t mi = 0; mi < std::min(moves_applied, plan->moves.size()); ++mi) {
      const Move& m = plan->moves[mi];
      offset[m.unit] = offset[m.unit] + m.delta;
    }
    for (std::size_t u = 0; u < plan->units.size(); ++u) {
      for (const Box& b : plan->units[u].member_boxes) {
        std::string style = std::string("fill='") + kColorFill[(plan->color - 1) % 6] +
                            "' fill-opacity='0.7' stroke='#222' stroke-width='0.3'";
        rect(o, b.translated(offset[u]), style, scale);
      }
    }
  } else {
    for (unsigned j = 1; j <= cubes.k; ++j)
      for (const auto& c : cubes.by_color[j - 1]) {
        std::string style = std::string("fill='") + kColorFill[(j - 1) % 6] +
                            "' fill-opacity='0.6' stroke='#222' stroke-width='0.2'";
        rect(o, c.box, style, scale);
      }
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace symcover
