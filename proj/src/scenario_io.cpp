// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON wire formats.  Rationals serialize as "p/q" strings, never floats,
// so exactness survives the round trip.
#include "symcover/transport.hpp"

#include <json.hpp>

namespace symcover {

using json = nlohmann::ordered_json;

namespace {

json rat_j(const Rat& r) { return rat_to_string(r); }
Rat rat_p(const json& j) { return rat_from_string(j.get<std::string>()); }

json box_j(const Box& b) {
  return json::array({rat_j(b.lo[0]), rat_j(b.lo[1]), rat_j(b.hi[0]), rat_j(b.hi[1])});
}
Box box_p(const json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("box wants [x0,y0,x1,y1]");
  return Box(rat_p(j[0]), rat_p(j[1]), rat_p(j[2]), rat_p(j[3]));
}

json region_j(const Region& r) {
  json out = json::array();
  for (const Box& c : r.cells()) out.push_back(box_j(c));
  return out;
}
Region region_p(const json& j) {
  std::vector<Box> cells;
  for (const auto& e : j) cells.push_back(box_p(e));
  return Region(std::move(cells));
}

json point_j(const Point& p) { return json::array({rat_j(p[0]), rat_j(p[1])}); }
Point point_p(const json& j) { return Point(rat_p(j[0]), rat_p(j[1])); }

}  // namespace

std::string scenario_to_json_text(const Scenario& s) {
  json j;
  j["k"] = s.k;
  j["epsilon"] = rat_j(s.eps);
  j["ball_center"] = point_j(s.ball_center);
  j["charts"] = json::array();
  for (const auto& ch : s.charts) {
    json c;
    c["cells"] = region_j(ch.area);
    c["core"] = region_j(ch.core);
    if (ch.gate) {
      c["gate"] = json{{"box", box_j(ch.gate->box)}, {"parent", ch.gate->parent}};
    }
    j["charts"].push_back(std::move(c));
  }
  auto rats = [&](const std::vector<Rat>& v) {
    json arr = json::array();
    for (const Rat& r : v) arr.push_back(rat_j(r));
    return arr;
  };
  j["scales"] = rats(s.scales);
  j["nus"] = rats(s.nus);
  j["cell_slack"] = rats(s.cell_slack);
  if (!s.radii.empty()) j["radii"] = rats(s.radii);
  if (!s.core_disjoint_pairs.empty()) {
    json arr = json::array();
    for (auto [a, b] : s.core_disjoint_pairs) arr.push_back(json::array({a, b}));
    j["core_disjoint_pairs"] = std::move(arr);
  }
  j["retry_bound"] = s.retry_bound;
  if (s.target_region_override) j["target_region"] = region_j(*s.target_region_override);
  return j.dump(2);
}

Scenario scenario_from_json_text(const std::string& text) {
  json j = json::parse(text);
  Scenario s;
  s.k = j.at("k").get<unsigned>();
  s.eps = rat_p(j.at("epsilon"));
  s.ball_center = point_p(j.at("ball_center"));
  for (const auto& c : j.at("charts")) {
    ChartSpec ch;
    ch.area = region_p(c.at("cells"));
    ch.core = region_p(c.at("core"));
    if (c.contains("gate"))
      ch.gate = GateSpec{box_p(c.at("gate").at("box")), c.at("gate").at("parent").get<unsigned>()};
    s.charts.push_back(std::move(ch));
  }
  auto rats = [&](const json& arr) {
    std::vector<Rat> v;
    for (const auto& e : arr) v.push_back(rat_p(e));
    return v;
  };
  s.scales = rats(j.at("scales"));
  s.nus = rats(j.at("nus"));
  s.cell_slack = rats(j.at("cell_slack"));
  if (j.contains("radii")) s.radii = rats(j.at("radii"));
  if (j.contains("core_disjoint_pairs"))
    for (const auto& e : j.at("core_disjoint_pairs"))
      s.core_disjoint_pairs.push_back({e[0].get<unsigned>(), e[1].get<unsigned>()});
  if (j.contains("retry_bound")) s.retry_bound = j.at("retry_bound").get<unsigned>();
  if (j.contains("target_region")) s.target_region_override = region_p(j.at("target_region"));
  s.validate();
  return s;
}

std::string plan_to_json_text(const TransportPlan& p) {
  json j;
  j["color"] = p.color;
  auto rats = [&](const std::vector<Rat>& v) {
    json arr = json::array();
    for (const Rat& r : v) arr.push_back(rat_j(r));
    return arr;
  };
  j["radii"] = rats(p.radii);
  j["r_tilde"] = rat_j(p.r_tilde);
  j["r_hat"] = rat_j(p.r_hat);
  j["detour_caps"] = rats(p.detour_caps);
  j["cells"] = json::array();
  for (const Box& c : p.cells) j["cells"].push_back(box_j(c));
  j["units"] = json::array();
  for (const auto& u : p.units) {
    json ju;
    ju["chart"] = u.chart;
    ju["height"] = u.height;
    ju["bound"] = box_j(u.bound);
    ju["members"] = json::array();
    for (const Box& b : u.member_boxes) ju["members"].push_back(box_j(b));
    ju["target_cell"] = u.target_cell;
    ju["tree_parent"] = u.tree_parent;
    j["units"].push_back(std::move(ju));
  }
  j["moves"] = json::array();
  for (const auto& m : p.moves) {
    json jm;
    jm["unit"] = m.unit;
    jm["phase"] = move_phase_name(m.phase);
    jm["delta"] = point_j(m.delta);
    jm["from"] = box_j(m.from);
    jm["to"] = box_j(m.to);
    if (m.detour_partner >= 0) jm["partner"] = m.detour_partner;
    j["moves"].push_back(std::move(jm));
  }
  return j.dump();
}

TransportPlan plan_from_json_text(const std::string& text) {
  json j = json::parse(text);
  TransportPlan p;
  p.color = j.at("color").get<unsigned>();
  auto rats = [&](const json& arr) {
    std::vector<Rat> v;
    for (const auto& e : arr) v.push_back(rat_p(e));
    return v;
  };
  p.radii = rats(j.at("radii"));
  p.r_tilde = rat_p(j.at("r_tilde"));
  p.r_hat = rat_p(j.at("r_hat"));
  p.detour_caps = rats(j.at("detour_caps"));
  for (const auto& c : j.at("cells")) p.cells.push_back(box_p(c));
  for (const auto& ju : j.at("units")) {
    PlanUnit u;
    u.chart = ju.at("chart").get<unsigned>();
    u.height = ju.at("height").get<int>();
    u.bound = box_p(ju.at("bound"));
    for (const auto& b : ju.at("members")) u.member_boxes.push_back(box_p(b));
    u.target_cell = ju.at("target_cell").get<long long>();
    u.tree_parent = ju.at("tree_parent").get<long long>();
    p.units.push_back(std::move(u));
  }
  for (const auto& jm : j.at("moves")) {
    Move m;
    m.unit = jm.at("unit").get<std::size_t>();
    m.phase = move_phase_from_name(jm.at("phase").get<std::string>());
    m.delta = point_p(jm.at("delta"));
    m.from = box_p(jm.at("from"));
    m.to = box_p(jm.at("to"));
    if (jm.contains("partner")) m.detour_partner = jm.at("partner").get<long long>();
    p.moves.push_back(std::move(m));
  }
  return p;
}

std::string simulation_report_to_json_text(const SimulationReport& r) {
  json j;
  j["valid"] = r.valid;
  j["final_containment"] = r.final_containment;
  j["area_preserved"] = r.area_preserved;
  j["moves_replayed"] = r.moves_replayed;
  j["violations"] = r.violations;
  return j.dump(2);
}

}  // namespace symcover
