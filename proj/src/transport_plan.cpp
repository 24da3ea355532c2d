// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// The transport planner and its independent simulator.  All planning runs
// on integer-scaled coordinates (every rational in the scenario is a
// multiple of 1/L for a common L), so collision and containment tests are
// exact int64 comparisons.  The planner validates every move it emits; the
// simulator re-validates a finished plan from scratch.
#include "symcover/transport.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace symcover {

std::string move_phase_name(MovePhase p) {
  switch (p) {
    case MovePhase::CompressInterior: return "compress-interior";
    case MovePhase::RouteTreeLeg: return "route-tree-leg";
    case MovePhase::DetourDisplace: return "detour-displace";
    case MovePhase::DetourRestore: return "detour-restore";
    case MovePhase::GateHop: return "gate-hop";
    case MovePhase::PackIntoCell: return "pack-into-cell";
  }
  throw std::logic_error("unreachable");
}

MovePhase move_phase_from_name(const std::string& s) {
  if (s == "compress-interior") return MovePhase::CompressInterior;
  if (s == "route-tree-leg") return MovePhase::RouteTreeLeg;
  if (s == "detour-displace") return MovePhase::DetourDisplace;
  if (s == "detour-restore") return MovePhase::DetourRestore;
  if (s == "gate-hop") return MovePhase::GateHop;
  if (s == "pack-into-cell") return MovePhase::PackIntoCell;
  throw std::invalid_argument("unknown move phase: " + s);
}

namespace {

using ll = long long;

struct SBox {
  ll x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool operator==(const SBox& o) const { return x0 == o.x0 && y0 == o.y0 && x1 == o.x1 && y1 == o.y1; }
  bool operator<(const SBox& o) const {
    return std::tie(x0, y0, x1, y1) < std::tie(o.x0, o.y0, o.x1, o.y1);
  }
  SBox shifted(ll dx, ll dy) const { return SBox{x0 + dx, y0 + dy, x1 + dx, y1 + dy}; }
};

inline bool interiors_overlap(const SBox& a, const SBox& b) {
  return a.x1 > b.x0 && b.x1 > a.x0 && a.y1 > b.y0 && b.y1 > a.y0;
}
inline bool touch_or_overlap(const SBox& a, const SBox& b) {
  return a.x1 >= b.x0 && b.x1 >= a.x0 && a.y1 >= b.y0 && b.y1 >= a.y0;
}
inline SBox hull_of(const SBox& a, const SBox& b) {
  return SBox{std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1), std::max(a.y1, b.y1)};
}

// squared distance helpers against a disc of squared radius r2 about (cx,cy)
inline long long sq(ll v) { return v * v; }
inline ll box_min_dist_sq(const SBox& b, ll cx, ll cy) {
  ll dx = 0, dy = 0;
  if (b.x0 > cx) dx = b.x0 - cx;
  else if (cx > b.x1) dx = cx - b.x1;
  if (b.y0 > cy) dy = b.y0 - cy;
  else if (cy > b.y1) dy = cy - b.y1;
  return sq(dx) + sq(dy);
}
inline ll box_max_dist_sq(const SBox& b, ll cx, ll cy) {
  ll dx = std::max(std::abs(b.x0 - cx), std::abs(b.x1 - cx));
  ll dy = std::max(std::abs(b.y0 - cy), std::abs(b.y1 - cy));
  return sq(dx) + sq(dy);
}

struct SRegion {
  std::vector<SBox> cells;

  bool contains(const SBox& b) const {
    std::vector<SBox> rest{b};
    for (const SBox& c : cells) {
      std::vector<SBox> next;
      for (const SBox& r : rest) {
        if (!interiors_overlap(r, c)) {
          next.push_back(r);
          continue;
        }
        SBox cur = r;
        if (c.x0 > cur.x0) { next.push_back(SBox{cur.x0, cur.y0, c.x0, cur.y1}); cur.x0 = c.x0; }
        if (c.x1 < cur.x1) { next.push_back(SBox{c.x1, cur.y0, cur.x1, cur.y1}); cur.x1 = c.x1; }
        if (c.y0 > cur.y0) { next.push_back(SBox{cur.x0, cur.y0, cur.x1, c.y0}); cur.y0 = c.y0; }
        if (c.y1 < cur.y1) { next.push_back(SBox{cur.x0, c.y1, cur.x1, cur.y1}); cur.y1 = c.y1; }
      }
      rest = std::move(next);
      if (rest.empty()) return true;
    }
    return rest.empty();
  }
  bool intersects_interior(const SBox& b) const {
    for (const SBox& c : cells)
      if (interiors_overlap(c, b)) return true;
    return false;
  }
};

// exact scaling context: every scenario rational times L is an integer
struct Scaled {
  BigInt L;

  ll operator()(const Rat& r) const {
    Rat v = r * Rat(L);
    if (den(v) != 1) throw std::logic_error("coordinate escapes the common grid");
    BigInt n = num(v);
    if (n > BigInt(1) << 60 || n < -(BigInt(1) << 60)) throw std::logic_error("scaled coordinate overflow");
    return static_cast<ll>(n);
  }
  SBox box(const Box& b) const { return SBox{(*this)(b.lo[0]), (*this)(b.lo[1]), (*this)(b.hi[0]), (*this)(b.hi[1])}; }
  SRegion region(const Region& r) const {
    SRegion out;
    for (const Box& c : r.cells()) out.cells.push_back(box(c));
    return out;
  }
  Rat back(ll v) const { return Rat(v) / Rat(L); }
  Box back_box(const SBox& b) const { return Box(back(b.x0), back(b.y0), back(b.x1), back(b.y1)); }
  Point back_point(ll x, ll y) const { return Point(back(x), back(y)); }
};

Scaled make_scale(const Scenario& world, const ColoredCubeSet& cubes, const CapacityBudget& budget) {
  std::set<BigInt> dens;
  auto add = [&](const Rat& r) { dens.insert(den(r)); };
  for (const auto& ch : world.charts) {
    for (const Box& c : ch.area.cells()) { add(c.lo[0]); add(c.lo[1]); add(c.hi[0]); add(c.hi[1]); }
    for (const Box& c : ch.core.cells()) { add(c.lo[0]); add(c.lo[1]); add(c.hi[0]); add(c.hi[1]); }
    if (ch.gate) { add(ch.gate->box.lo[0]); add(ch.gate->box.lo[1]); add(ch.gate->box.hi[0]); add(ch.gate->box.hi[1]); }
  }
  add(world.ball_center[0]);
  add(world.ball_center[1]);
  for (std::size_t i = 0; i < world.chart_count(); ++i) {
    add(world.scales[i]);
    add(world.scales[i] / 2);
    add(world.scales[i] / 4);
    add(world.scales[i] * world.nus[i]);
    add(world.cell_slack[i]);
    add(world.scales[i] * (1 + 2 * world.nus[i]) + world.cell_slack[i]);
    add(cubes.cover.delta * world.scales[i] / 2);
    // lattice anchors live on scale/den(matrix entries)
    for (const Rat& u : cubes.cover.matrix.upper) add(world.scales[i] / Rat(den(u)));
  }
  for (const Rat& r : budget.radii) add(r);
  add(budget.r_tilde);
  add(budget.r_hat);
  if (world.target_region_override)
    for (const Box& c : world.target_region_override->cells()) {
      add(c.lo[0]); add(c.lo[1]); add(c.hi[0]); add(c.hi[1]);
    }
  BigInt L = 1;
  for (const auto& d : dens) L = boost::multiprecision::lcm(L, d);
  if (L > (BigInt(1) << 40)) throw std::logic_error("scenario denominators too fine for integer planning");
  return Scaled{L};
}

// spatial hash over unit bounds for collision queries
struct UnitIndex {
  ll cell = 1;
  std::unordered_map<ll, std::vector<std::size_t>> buckets;
  std::vector<SBox> bounds;
  std::vector<bool> active;

  static ll key(ll cx, ll cy) { return cx * 2000003ll + cy; }
  void init(std::vector<SBox> b, ll cell_size) {
    cell = std::max<ll>(1, cell_size);
    bounds = std::move(b);
    active.assign(bounds.size(), true);
    buckets.clear();
    for (std::size_t i = 0; i < bounds.size(); ++i) insert(i);
  }
  void for_cells(const SBox& b, const std::function<void(ll)>& f) const {
    for (ll cx = b.x0 / cell - 1; cx <= b.x1 / cell + 1; ++cx)
      for (ll cy = b.y0 / cell - 1; cy <= b.y1 / cell + 1; ++cy) f(key(cx, cy));
  }
  void insert(std::size_t i) {
    for_cells(bounds[i], [&](ll k) { buckets[k].push_back(i); });
  }
  void remove(std::size_t i) {
    for_cells(bounds[i], [&](ll k) {
      auto& v = buckets[k];
      v.erase(std::remove(v.begin(), v.end(), i), v.end());
    });
  }
  void move_to(std::size_t i, const SBox& b) {
    remove(i);
    bounds[i] = b;
    insert(i);
  }
  // first active unit (!= skip) whose interior meets b; SIZE_MAX when none
  std::size_t hit(const SBox& b, std::size_t skip = SIZE_MAX) const {
    std::size_t found = SIZE_MAX;
    for (ll cx = b.x0 / cell - 1; cx <= b.x1 / cell + 1 && found == SIZE_MAX; ++cx)
      for (ll cy = b.y0 / cell - 1; cy <= b.y1 / cell + 1 && found == SIZE_MAX; ++cy) {
        auto it = buckets.find(key(cx, cy));
        if (it == buckets.end()) continue;
        for (std::size_t i : it->second)
          if (i != skip && active[i] && interiors_overlap(bounds[i], b)) {
            found = i;
            break;
          }
      }
    return found;
  }
  // all active units (!= skip) touching-or-overlapping b
  std::vector<std::size_t> contacts(const SBox& b, std::size_t skip = SIZE_MAX) const {
    std::set<std::size_t> out;
    for (ll cx = b.x0 / cell - 1; cx <= b.x1 / cell + 1; ++cx)
      for (ll cy = b.y0 / cell - 1; cy <= b.y1 / cell + 1; ++cy) {
        auto it = buckets.find(key(cx, cy));
        if (it == buckets.end()) continue;
        for (std::size_t i : it->second)
          if (i != skip && active[i] && touch_or_overlap(bounds[i], b)) out.insert(i);
      }
    return std::vector<std::size_t>(out.begin(), out.end());
  }
};

// pitch grid anchored at a point; cell (a,b) spans [ax+a*p, ax+(a+1)*p] x ...
struct GridSpec {
  ll ax = 0, ay = 0, pitch = 1;
  SBox cell(ll a, ll b) const { return SBox{ax + a * pitch, ay + b * pitch, ax + (a + 1) * pitch, ay + (b + 1) * pitch}; }
  std::pair<ll, ll> nearest_cell(ll x, ll y) const {
    auto fdiv = [](ll a, ll b) { ll q = a / b; if ((a % b) != 0 && ((a < 0) != (b < 0))) --q; return q; };
    return {fdiv(x - ax, pitch), fdiv(y - ay, pitch)};
  }
};

struct PlannerState {
  const Scenario* world = nullptr;
  const ColoredCubeSet* cubes = nullptr;
  const ColorDecomposition* decomp = nullptr;
  const CapacityBudget* budget = nullptr;
  Scaled S;
  unsigned color = 1;

  TransportPlan plan;
  UnitIndex idx;                       // current unit bounds
  std::vector<SBox> start_bounds;
  std::vector<int> unit_height;
  std::vector<unsigned> unit_chart;
  std::vector<bool> parked;

  // scaled world data
  std::vector<SRegion> chart_area, chart_core;
  std::vector<SBox> gate_box;          // per chart >= 1
  ll cx = 0, cy = 0;                   // ball center
  std::vector<ll> radius;              // scaled radii
  ll r_tilde = 0, r_hat = 0;
  std::vector<ll> detour_cap;          // per chart

  void emit(std::size_t unit, MovePhase phase, ll dx, ll dy, unsigned chart, ll partner = -1) {
    Move m;
    m.unit = unit;
    m.phase = phase;
    m.delta = S.back_point(dx, dy);
    m.from = S.back_box(idx.bounds[unit]);
    SBox to = idx.bounds[unit].shifted(dx, dy);
    m.to = S.back_box(to);
    m.detour_partner = partner;
    plan.moves.push_back(std::move(m));
    plan.moves.back().delta = S.back_point(dx, dy);
    idx.move_to(unit, to);
  }
  std::size_t last_move() const { return plan.moves.size() - 1; }
};

// ---------------------------------------------------------------------------
// shared: an axis leg with touching-cube detours
// ---------------------------------------------------------------------------

// Moves `unit` by (dx,dy) (one axis), lifting touching peers perpendicular
// by up to the detour cap and restoring them afterwards.  Region discipline
// is the caller's responsibility; this validates collisions only.
void leg_with_detours(PlannerState& st, std::size_t unit, ll dx, ll dy, unsigned chart,
                      MovePhase phase, const SRegion& allowed, bool forbid_r0_disc) {
  SBox cur = st.idx.bounds[unit];
  SBox to = cur.shifted(dx, dy);
  SBox sweep = hull_of(cur, to);
  if (!allowed.contains(sweep))
    throw PlanError(PlanError::Kind::RoutingBlocked, "leg sweep escapes the admissible region");
  if (forbid_r0_disc && box_min_dist_sq(sweep, st.cx, st.cy) <= sq(st.radius[0]))
    throw PlanError(PlanError::Kind::RoutingBlocked, "leg sweep enters the target disc");

  // hard blockers (interior overlap) are a planner failure; touchers get a
  // perpendicular detour
  std::vector<std::pair<std::size_t, std::pair<ll, ll>>> detoured;
  for (std::size_t other : st.idx.contacts(sweep, unit)) {
    if (interiors_overlap(st.idx.bounds[other], sweep)) {
      // needs a lift: move it perpendicular until clear, if the cap allows
      const SBox& ob = st.idx.bounds[other];
      ll lift_dx = 0, lift_dy = 0;
      if (dy == 0) {  // horizontal leg: lift vertically
        ll up = sweep.y1 - ob.y0;    // shift up by this to clear
        ll down = ob.y1 - sweep.y0;  // shift down
        if (up <= down) lift_dy = up; else lift_dy = -down;
      } else {
        ll right = sweep.x1 - ob.x0;
        ll left = ob.x1 - sweep.x0;
        if (right <= left) lift_dx = right; else lift_dx = -left;
      }
      ll cap = st.detour_cap[st.unit_chart[other]];
      if (std::abs(lift_dx) + std::abs(lift_dy) > cap)
        throw PlanError(PlanError::Kind::RoutingBlocked, "blocking cube needs a lift beyond the detour cap");
      SBox lifted = ob.shifted(lift_dx, lift_dy);
      if (!allowed.contains(lifted) || st.idx.hit(lifted, other) != SIZE_MAX ||
          interiors_overlap(lifted, sweep))
        throw PlanError(PlanError::Kind::RoutingBlocked, "no room to lift a blocking cube");
      if (forbid_r0_disc && box_min_dist_sq(lifted, st.cx, st.cy) <= sq(st.radius[0]))
        throw PlanError(PlanError::Kind::RoutingBlocked, "lift would enter the target disc");
      st.emit(other, MovePhase::DetourDisplace, lift_dx, lift_dy, chart);
      detoured.push_back({other, {lift_dx, lift_dy}});
    }
  }
  if (st.idx.hit(sweep, unit) != SIZE_MAX)
    throw PlanError(PlanError::Kind::RoutingBlocked, "leg sweep still blocked after detours");
  st.emit(unit, phase, dx, dy, chart);
  // restore in reverse order, wiring partner indices
  for (auto it = detoured.rbegin(); it != detoured.rend(); ++it) {
    std::size_t displaced_move = SIZE_MAX;
    for (std::size_t mi = st.plan.moves.size(); mi-- > 0;) {
      const Move& m = st.plan.moves[mi];
      if (m.unit == it->first && m.phase == MovePhase::DetourDisplace && m.detour_partner == -1) {
        displaced_move = mi;
        break;
      }
    }
    st.emit(it->first, MovePhase::DetourRestore, -it->second.first, -it->second.second, chart,
            static_cast<ll>(displaced_move));
    st.plan.moves[displaced_move].detour_partner = static_cast<ll>(st.last_move());
  }
}

// ---------------------------------------------------------------------------
// lattice graph on scaled positions
// ---------------------------------------------------------------------------

struct LatticeGraph {
  // vertices are anchor positions (scaled lo corners of the *bound* box)
  std::map<std::pair<ll, ll>, std::size_t> by_pos;
  std::vector<std::pair<ll, ll>> pos;
  std::vector<std::vector<std::size_t>> adj;
  std::vector<long long> parent;  // BFS tree parent (-1 root / unvisited)
  std::vector<std::size_t> bfs_order;

  std::size_t id_of(ll x, ll y) const {
    auto it = by_pos.find({x, y});
    return it == by_pos.end() ? SIZE_MAX : it->second;
  }
};

// Builds the m-neighbour graph over all lattice positions of the colour in
// the admissible region and BFS-roots it at `root`.
LatticeGraph build_lattice_graph(PlannerState& st, unsigned chart, const SRegion& allowed,
                                 const SBox& proto /* bound box at some vertex */,
                                 const std::vector<std::pair<ll, ll>>& steps,
                                 std::pair<ll, ll> root_pos, bool forbid_r0_disc) {
  LatticeGraph g;
  // flood out from the root over the step lattice, keeping admissible boxes
  std::deque<std::pair<ll, ll>> queue{root_pos};
  auto box_at = [&](std::pair<ll, ll> p) {
    return SBox{p.first, p.second, p.first + (proto.x1 - proto.x0), p.second + (proto.y1 - proto.y0)};
  };
  auto admissible = [&](const SBox& b) {
    if (!allowed.contains(b)) return false;
    if (forbid_r0_disc && box_min_dist_sq(b, st.cx, st.cy) <= sq(st.radius[0])) return false;
    return true;
  };
  if (!admissible(box_at(root_pos))) return g;
  g.by_pos[root_pos] = 0;
  g.pos.push_back(root_pos);
  g.adj.emplace_back();
  g.parent.push_back(-1);
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    std::size_t pid = g.by_pos[p];
    g.bfs_order.push_back(pid);
    for (auto [sx, sy] : steps) {
      for (int sign : {1, -1}) {
        std::pair<ll, ll> q{p.first + sign * sx, p.second + sign * sy};
        SBox qb = box_at(q);
        if (!admissible(qb)) continue;
        SBox hull = hull_of(box_at(p), qb);
        if (!admissible(hull)) continue;
        auto it = g.by_pos.find(q);
        std::size_t qid;
        if (it == g.by_pos.end()) {
          qid = g.pos.size();
          g.by_pos[q] = qid;
          g.pos.push_back(q);
          g.adj.emplace_back();
          g.parent.push_back(static_cast<long long>(pid));
          queue.push_back(q);
        } else {
          qid = it->second;
        }
        g.adj[pid].push_back(qid);
      }
    }
  }
  return g;
}

// Half-period steps along each axis, in scaled units for a given chart.
// Full axis edges connect a cube only to its own column mates, so the graph
// on full edges splits into two parity classes; the classes meet at edge
// crossings, which sit exactly at the half-period positions.  Walking the
// half lattice therefore realizes the crossing vertices of the neighbour
// graph, and every half leg stays inside some full edge's hull.
std::vector<std::pair<ll, ll>> lattice_steps(const PlannerState& st, unsigned chart) {
  const auto& cover = st.cubes->cover;
  ll d = st.S(st.world->scales[chart]);
  ll half_x = static_cast<ll>(cover.periods[0]) * d / 2;
  ll half_y = static_cast<ll>(cover.periods[1]) * d / 2;
  if (static_cast<ll>(cover.periods[0]) * d % 2 != 0 || static_cast<ll>(cover.periods[1]) * d % 2 != 0)
    throw std::logic_error("half-period escapes the integer grid");
  return {{half_x, 0}, {0, half_y}};
}

// ---------------------------------------------------------------------------
// grid-cell router (annulus + disc, or free-form region)
// ---------------------------------------------------------------------------

// Dense cell-state raster over a bounded index window; all router queries
// are O(1) per cell.
struct CellRouter {
  GridSpec grid;
  ll a0 = 0, b0 = 0;  // window origin (inclusive)
  ll na = 0, nb = 0;  // window extent
  std::vector<std::int8_t> grid_state;  // 0 free, 1 parked, 2 blocked, 3 outside

  void init_window(ll a_lo, ll b_lo, ll a_hi, ll b_hi) {
    a0 = a_lo;
    b0 = b_lo;
    na = a_hi - a_lo + 1;
    nb = b_hi - b_lo + 1;
    grid_state.assign(static_cast<std::size_t>(na * nb), 3);
  }
  bool in_range(std::pair<ll, ll> c) const {
    return c.first >= a0 && c.first < a0 + na && c.second >= b0 && c.second < b0 + nb;
  }
  std::int8_t& at(std::pair<ll, ll> c) {
    return grid_state[static_cast<std::size_t>((c.first - a0) * nb + (c.second - b0))];
  }
  std::int8_t get(std::pair<ll, ll> c) const {
    if (!in_range(c)) return 3;
    return grid_state[static_cast<std::size_t>((c.first - a0) * nb + (c.second - b0))];
  }
  bool known(std::pair<ll, ll> c) const { return get(c) != 3; }
  bool free_cell(std::pair<ll, ll> c) const { return get(c) == 0; }
  // BFS from `from` to `to` through free cells; returns the path or empty
  std::vector<std::pair<ll, ll>> route(std::pair<ll, ll> from, std::pair<ll, ll> to) const {
    if (!free_cell(from) || !free_cell(to)) return {};
    const std::size_t n = static_cast<std::size_t>(na * nb);
    std::vector<std::int32_t> prev(n, -1);
    auto flat = [&](std::pair<ll, ll> c) {
      return static_cast<std::size_t>((c.first - a0) * nb + (c.second - b0));
    };
    std::deque<std::pair<ll, ll>> q{from};
    prev[flat(from)] = static_cast<std::int32_t>(flat(from));
    while (!q.empty()) {
      auto c = q.front();
      q.pop_front();
      if (c == to) break;
      const std::pair<ll, ll> nbs[4] = {{c.first + 1, c.second}, {c.first - 1, c.second},
                                        {c.first, c.second + 1}, {c.first, c.second - 1}};
      for (auto nbc : nbs) {
        if (!free_cell(nbc) || prev[flat(nbc)] != -1) continue;
        prev[flat(nbc)] = static_cast<std::int32_t>(flat(c));
        q.push_back(nbc);
      }
    }
    if (prev[flat(to)] == -1) return {};
    std::vector<std::pair<ll, ll>> path{to};
    while (path.back() != from) {
      std::size_t f = static_cast<std::size_t>(prev[flat(path.back())]);
      path.push_back({a0 + static_cast<ll>(f) / nb, b0 + static_cast<ll>(f) % nb});
    }
    std::reverse(path.begin(), path.end());
    return path;
  }
};

// emit the merged axis legs realizing a cell path (cube centered per cell)
void emit_cell_path(PlannerState& st, std::size_t unit, const CellRouter& router,
                    const std::vector<std::pair<ll, ll>>& path, unsigned chart,
                    const SRegion& allowed) {
  if (path.size() < 2) return;
  std::size_t i = 0;
  while (i + 1 < path.size()) {
    std::size_t jn = i + 1;
    ll dx = path[jn].first - path[i].first, dy = path[jn].second - path[i].second;
    while (jn + 1 < path.size() &&
           path[jn + 1].first - path[jn].first == dx && path[jn + 1].second - path[jn].second == dy)
      ++jn;
    ll cells_moved = static_cast<ll>(jn - i);
    ll ddx = dx * cells_moved * router.grid.pitch, ddy = dy * cells_moved * router.grid.pitch;
    SBox cur = st.idx.bounds[unit];
    SBox sweep = hull_of(cur, cur.shifted(ddx, ddy));
    if (!allowed.contains(sweep))
      throw PlanError(PlanError::Kind::RoutingBlocked, "cell path escapes the admissible region");
    if (st.idx.hit(sweep, unit) != SIZE_MAX)
      throw PlanError(PlanError::Kind::RoutingBlocked, "cell path blocked");
    st.emit(unit, MovePhase::PackIntoCell, ddx, ddy, chart);
    i = jn;
  }
}

// dock: center the unit inside the given cell with at most two axis legs
void dock_to_cell(PlannerState& st, std::size_t unit, const CellRouter& router,
                  std::pair<ll, ll> cell, unsigned chart, const SRegion& allowed) {
  SBox cb = router.grid.cell(cell.first, cell.second);
  SBox cur = st.idx.bounds[unit];
  ll w = cur.x1 - cur.x0, h = cur.y1 - cur.y0;
  ll tx = cb.x0 + (router.grid.pitch - w) / 2, ty = cb.y0 + (router.grid.pitch - h) / 2;
  ll dx = tx - cur.x0, dy = ty - cur.y0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    bool x_first = (attempt == 0);
    SBox a = x_first ? cur.shifted(dx, 0) : cur.shifted(0, dy);
    SBox s1 = hull_of(cur, a), s2 = hull_of(a, a.shifted(x_first ? 0 : dx, x_first ? dy : 0));
    if (allowed.contains(s1) && allowed.contains(s2) && st.idx.hit(s1, unit) == SIZE_MAX &&
        st.idx.hit(hull_of(a, x_first ? a.shifted(0, dy) : a.shifted(dx, 0)), unit) == SIZE_MAX) {
      if (x_first) {
        if (dx != 0) st.emit(unit, MovePhase::PackIntoCell, dx, 0, chart);
        if (dy != 0) st.emit(unit, MovePhase::PackIntoCell, 0, dy, chart);
      } else {
        if (dy != 0) st.emit(unit, MovePhase::PackIntoCell, 0, dy, chart);
        if (dx != 0) st.emit(unit, MovePhase::PackIntoCell, dx, 0, chart);
      }
      return;
    }
  }
  throw PlanError(PlanError::Kind::RoutingBlocked, "cannot dock into the staging cell");
}

}  // namespace

// ---------------------------------------------------------------------------
// plan_color
// ---------------------------------------------------------------------------

TransportPlan plan_color(const Scenario& world, const ColoredCubeSet& cubes,
                         const ColorDecomposition& decomp, const CapacityBudget& budget,
                         unsigned color) {
  if (color < 1 || color > cubes.k) throw std::invalid_argument("colour out of range");
  const auto& list = cubes.by_color[color - 1];
  const std::size_t nchart = world.chart_count();

  PlannerState st;
  st.world = &world;
  st.cubes = &cubes;
  st.decomp = &decomp;
  st.budget = &budget;
  st.color = color;
  st.S = make_scale(world, cubes, budget);
  st.plan.color = color;
  st.plan.radii = budget.radii;
  st.plan.r_tilde = budget.r_tilde;
  st.plan.r_hat = budget.r_hat;
  for (std::size_t i = 0; i < nchart; ++i)
    st.plan.detour_caps.push_back(cubes.cover.delta * world.scales[i] / 2);

  // scaled world
  for (std::size_t i = 0; i < nchart; ++i) {
    st.chart_area.push_back(st.S.region(world.charts[i].area));
    st.chart_core.push_back(st.S.region(world.charts[i].core));
    st.gate_box.push_back(world.charts[i].gate ? st.S.box(world.charts[i].gate->box) : SBox{});
    st.detour_cap.push_back(st.S(cubes.cover.delta * world.scales[i] / 2));
  }
  st.cx = st.S(world.ball_center[0]);
  st.cy = st.S(world.ball_center[1]);
  for (const Rat& r : budget.radii) st.radius.push_back(st.S(r));
  st.r_tilde = st.S(budget.r_tilde);
  st.r_hat = st.S(budget.r_hat);

  // units: free components, carried members folded in
  std::vector<SBox> bounds;
  for (std::size_t ci = 0; ci < decomp.components.size(); ++ci) {
    const ColorComponent& comp = decomp.components[ci];
    if (!comp.free_standing) continue;
    PlanUnit u;
    u.chart = static_cast<unsigned>(comp.height);
    u.height = comp.height;
    for (std::size_t id : comp.cube_ids) u.member_boxes.push_back(list[id].box);
    for (std::size_t sub : comp.carried)
      for (std::size_t id : decomp.components[sub].cube_ids)
        u.member_boxes.push_back(list[id].box);
    u.bound = comp.fattened;
    st.plan.units.push_back(std::move(u));
    bounds.push_back(st.S.box(comp.fattened));
    st.unit_height.push_back(comp.height);
    st.unit_chart.push_back(static_cast<unsigned>(comp.height));
  }
  ll max_side = 1;
  for (const SBox& b : bounds) max_side = std::max({max_side, b.x1 - b.x0, b.y1 - b.y0});
  st.idx.init(bounds, max_side * 2);
  st.start_bounds = st.idx.bounds;
  st.parked.assign(st.plan.units.size(), false);

  // admissible region per height: chart area minus all higher saturations
  auto admissible_for_height = [&](int h) {
    Region r = world.charts[h].area;
    for (std::size_t g = h + 1; g < nchart; ++g)
      r = r.subtract(decomp.saturation_by_height[g]);
    return st.S.region(r.normalized());
  };

  if (world.target_region_override) {
    // region-target mode: single chart, free-form grid routing
    if (nchart != 1) throw std::invalid_argument("region-target mode expects a single chart");
    const SRegion area = st.chart_area[0];
    SRegion target = st.S.region(*world.target_region_override);
    ll pitch = st.S(world.scales[0] + world.cell_slack[0]);
    Box bb = world.charts[0].area.bounding_box();
    CellRouter router;
    router.grid = GridSpec{st.S(bb.lo[0]), st.S(bb.lo[1]), pitch};
    std::vector<std::pair<ll, ll>> targets;
    {
      SBox sb = st.S.box(bb);
      router.init_window(-1, -1, (sb.x1 - sb.x0) / pitch + 1, (sb.y1 - sb.y0) / pitch + 1);
      for (ll a = 0; a * pitch < sb.x1 - sb.x0; ++a)
        for (ll b = 0; b * pitch < sb.y1 - sb.y0; ++b) {
          SBox cell = router.grid.cell(a, b);
          if (!area.contains(cell)) continue;
          router.at({a, b}) = 0;
          if (target.contains(cell)) targets.push_back({a, b});
        }
    }
    if (targets.size() < st.plan.units.size())
      throw PlanError(PlanError::Kind::Capacity, "capacity: not enough target cells in the region");
    // farthest-from-target first
    std::vector<std::size_t> order(st.plan.units.size());
    std::iota(order.begin(), order.end(), 0);
    auto dist_to_target = [&](std::size_t u) {
      ll best = -1;
      for (auto t : targets) {
        SBox cb = router.grid.cell(t.first, t.second);
        ll dx = std::max({cb.x0 - st.idx.bounds[u].x1, st.idx.bounds[u].x0 - cb.x1, 0ll});
        ll dy = std::max({cb.y0 - st.idx.bounds[u].y1, st.idx.bounds[u].y0 - cb.y1, 0ll});
        ll d2 = sq(dx) + sq(dy);
        if (best < 0 || d2 < best) best = d2;
      }
      return best;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      ll da = dist_to_target(a), db = dist_to_target(b);
      if (da != db) return da > db;
      return st.start_bounds[a] < st.start_bounds[b];
    });
    std::set<std::pair<ll, ll>> assigned;
    for (std::size_t u : order) {
      // refresh blocked cells: cells overlapping any other unit
      for (ll a = router.a0; a < router.a0 + router.na; ++a)
        for (ll b = router.b0; b < router.b0 + router.nb; ++b) {
          std::int8_t& sstate = router.at({a, b});
          if (sstate == 1 || sstate == 3) continue;
          SBox cb = router.grid.cell(a, b);
          sstate = (st.idx.hit(cb, u) != SIZE_MAX) ? 2 : 0;
        }
      auto [ca, cbv] = router.grid.nearest_cell(st.idx.bounds[u].x0, st.idx.bounds[u].y0);
      // find a dockable free cell near the unit
      std::vector<std::pair<ll, ll>> dock_candidates;
      for (ll da = -2; da <= 2; ++da)
        for (ll db = -2; db <= 2; ++db)
          if (router.free_cell({ca + da, cbv + db})) dock_candidates.push_back({ca + da, cbv + db});
      std::sort(dock_candidates.begin(), dock_candidates.end(), [&](auto a, auto b) {
        SBox ba = router.grid.cell(a.first, a.second), bbx = router.grid.cell(b.first, b.second);
        ll d2a = sq(ba.x0 - st.idx.bounds[u].x0) + sq(ba.y0 - st.idx.bounds[u].y0);
        ll d2b = sq(bbx.x0 - st.idx.bounds[u].x0) + sq(bbx.y0 - st.idx.bounds[u].y0);
        return d2a < d2b;
      });
      bool done = false;
      for (auto dock : dock_candidates) {
        // nearest reachable unassigned target cell by BFS
        std::vector<std::pair<ll, ll>> best_path;
        std::pair<ll, ll> best_target{0, 0};
        for (auto t : targets) {
          if (assigned.count(t)) continue;
          auto path = router.route(dock, t);
          if (path.empty()) continue;
          if (best_path.empty() || path.size() < best_path.size()) {
            best_path = path;
            best_target = t;
          }
        }
        if (best_path.empty()) continue;
        try {
          dock_to_cell(st, u, router, dock, 0, area);
          emit_cell_path(st, u, router, best_path, 0, area);
        } catch (const PlanError&) {
          continue;
        }
        assigned.insert(best_target);
        router.at(best_target) = 1;
        st.plan.units[u].target_cell = static_cast<long long>(st.plan.cells.size());
        st.plan.cells.push_back(st.S.back_box(router.grid.cell(best_target.first, best_target.second)));
        st.parked[u] = true;
        done = true;
        break;
      }
      if (!done)
        throw PlanError(PlanError::Kind::RoutingBlocked, "no reachable target cell for a cube");
    }
    return st.plan;
  }

  // ---------------- disc mode ----------------
  const SRegion vhat0 = admissible_for_height(0);

  // height-0 grid about the center
  ll pitch0 = st.S(world.scales[0] + world.cell_slack[0]);
  CellRouter router0;
  router0.grid = GridSpec{st.cx, st.cy, pitch0};
  std::vector<std::pair<ll, ll>> disc_cells;   // sorted by center distance below
  std::vector<std::pair<ll, ll>> staging_cells;  // free corridor outside the disc
  {
    ll span = st.r_hat / pitch0 + 2;
    router0.init_window(-span - 1, -span - 1, span + 1, span + 1);
    for (ll a = -span; a <= span; ++a)
      for (ll b = -span; b <= span; ++b) {
        SBox cell = router0.grid.cell(a, b);
        if (box_max_dist_sq(cell, st.cx, st.cy) >= sq(st.r_hat)) continue;
        if (!vhat0.contains(cell)) continue;
        router0.at({a, b}) = 0;
        if (box_max_dist_sq(cell, st.cx, st.cy) < sq(st.radius[0])) disc_cells.push_back({a, b});
        else if (box_min_dist_sq(cell, st.cx, st.cy) > sq(st.radius[0])) staging_cells.push_back({a, b});
      }
    std::sort(disc_cells.begin(), disc_cells.end(), [&](auto a2, auto b2) {
      SBox ba = router0.grid.cell(a2.first, a2.second), bb2 = router0.grid.cell(b2.first, b2.second);
      ll da = box_min_dist_sq(ba, st.cx, st.cy), db = box_min_dist_sq(bb2, st.cx, st.cy);
      if (da != db) return da < db;
      return a2 < b2;
    });
  }

  std::vector<std::size_t> h0_units;
  for (std::size_t u = 0; u < st.plan.units.size(); ++u)
    if (st.unit_height[u] == 0) h0_units.push_back(u);
  if (disc_cells.size() < h0_units.size())
    throw PlanError(PlanError::Kind::Capacity,
                    "capacity: " + std::to_string(disc_cells.size()) + " disc cells for " +
                        std::to_string(h0_units.size()) + " cubes");

  // Interior/exterior split against a shrunk classification radius, so
  // compression sweeps (which wander by at most one pitch plus a cube) stay
  // inside the staging disc and clear of every exterior cube; a blocked
  // sweep in the boundary band demotes its cubes to the exterior route by
  // shrinking the classification further and retrying.
  ll shrink = 2 * st.S(world.scales[0]) + pitch0;
  std::vector<std::size_t> interior, exterior;
  std::set<std::pair<ll, ll>> occupied;  // occupied disc cells (blob + packed)
  std::vector<std::int8_t> router0_pristine = router0.grid_state;

  // ---- interior compression: per-column y pass, then x pass ----
  auto run_compression = [&]() {
    std::map<ll, std::vector<std::size_t>> columns;  // by x anchor
    for (std::size_t u : interior) columns[st.idx.bounds[u].x0].push_back(u);
    std::vector<std::pair<ll, std::vector<std::size_t>>> stacks(columns.begin(), columns.end());
    // target grid columns, contiguous, centered
    ll m = static_cast<ll>(stacks.size());
    ll col0 = -(m - 1) / 2 - ((m - 1) % 2 ? 0 : 0);
    col0 = -((m - 1) / 2);
    // per-column disc cell row ranges
    auto col_rows = [&](ll col) {
      ll lo = 0, hi = -1;
      bool first = true;
      for (auto c : disc_cells)
        if (c.first == col) {
          if (first) { lo = hi = c.second; first = false; }
          else { lo = std::min(lo, c.second); hi = std::max(hi, c.second); }
        }
      return std::make_pair(lo, hi);
    };
    struct CubeTarget { std::size_t unit; ll col, row; };
    std::vector<CubeTarget> targets;
    for (ll s = 0; s < m; ++s) {
      auto& [x_anchor, members] = stacks[static_cast<std::size_t>(s)];
      std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        return st.idx.bounds[a].y0 < st.idx.bounds[b].y0;
      });
      ll col = col0 + s;
      auto [rlo, rhi] = col_rows(col);
      ll need = static_cast<ll>(members.size());
      if (rhi - rlo + 1 < need)
        throw PlanError(PlanError::Kind::Capacity, "capacity: a target column cannot hold its stack");
      ll row0 = -(need - 1) / 2;
      if (row0 < rlo) row0 = rlo;
      if (row0 + need - 1 > rhi) row0 = rhi - need + 1;
      for (ll r = 0; r < need; ++r)
        targets.push_back({members[static_cast<std::size_t>(r)], col, row0 + r});
    }
    // y pass: up-movers top-down, then down-movers bottom-up, per column
    auto cell_pos = [&](ll col, ll row, const SBox& b) {
      SBox cb = router0.grid.cell(col, row);
      ll w = b.x1 - b.x0, h = b.y1 - b.y0;
      return std::make_pair(cb.x0 + (pitch0 - w) / 2, cb.y0 + (pitch0 - h) / 2);
    };
    std::vector<CubeTarget> up, down;
    for (auto& t : targets) {
      ll ty = cell_pos(t.col, t.row, st.idx.bounds[t.unit]).second;
      if (ty > st.idx.bounds[t.unit].y0) up.push_back(t);
      else if (ty < st.idx.bounds[t.unit].y0) down.push_back(t);
    }
    std::sort(up.begin(), up.end(), [&](const CubeTarget& a, const CubeTarget& b) {
      return st.idx.bounds[a.unit].y0 > st.idx.bounds[b.unit].y0;
    });
    std::sort(down.begin(), down.end(), [&](const CubeTarget& a, const CubeTarget& b) {
      return st.idx.bounds[a.unit].y0 < st.idx.bounds[b.unit].y0;
    });
    auto compress_move = [&](std::size_t unit, ll dx, ll dy) {
      SBox cur = st.idx.bounds[unit];
      SBox sweep = hull_of(cur, cur.shifted(dx, dy));
      if (box_max_dist_sq(sweep, st.cx, st.cy) > sq(st.r_tilde))
        throw PlanError(PlanError::Kind::RoutingBlocked, "compression sweep leaves the staging disc");
      if (st.idx.hit(sweep, unit) != SIZE_MAX)
        throw PlanError(PlanError::Kind::RoutingBlocked, "compression sweep blocked");
      st.emit(unit, MovePhase::CompressInterior, dx, dy, 0);
    };
    for (auto& t : up) {
      ll ty = cell_pos(t.col, t.row, st.idx.bounds[t.unit]).second;
      compress_move(t.unit, 0, ty - st.idx.bounds[t.unit].y0);
    }
    for (auto& t : down) {
      ll ty = cell_pos(t.col, t.row, st.idx.bounds[t.unit]).second;
      compress_move(t.unit, 0, ty - st.idx.bounds[t.unit].y0);
    }
    // x pass: movers toward the center column; right-movers right-to-left,
    // left-movers left-to-right
    std::vector<CubeTarget> right, left;
    for (auto& t : targets) {
      ll tx = cell_pos(t.col, t.row, st.idx.bounds[t.unit]).first;
      if (tx > st.idx.bounds[t.unit].x0) right.push_back(t);
      else if (tx < st.idx.bounds[t.unit].x0) left.push_back(t);
    }
    std::sort(right.begin(), right.end(), [&](const CubeTarget& a, const CubeTarget& b) {
      return st.idx.bounds[a.unit].x0 > st.idx.bounds[b.unit].x0;
    });
    std::sort(left.begin(), left.end(), [&](const CubeTarget& a, const CubeTarget& b) {
      return st.idx.bounds[a.unit].x0 < st.idx.bounds[b.unit].x0;
    });
    for (auto& t : right) {
      ll tx = cell_pos(t.col, t.row, st.idx.bounds[t.unit]).first;
      compress_move(t.unit, tx - st.idx.bounds[t.unit].x0, 0);
    }
    for (auto& t : left) {
      ll tx = cell_pos(t.col, t.row, st.idx.bounds[t.unit]).first;
      compress_move(t.unit, tx - st.idx.bounds[t.unit].x0, 0);
    }
    for (auto& t : targets) {
      occupied.insert({t.col, t.row});
      router0.at({t.col, t.row}) = 1;
      st.plan.units[t.unit].target_cell = static_cast<long long>(st.plan.cells.size());
      st.plan.cells.push_back(st.S.back_box(router0.grid.cell(t.col, t.row)));
      st.parked[t.unit] = true;
    }
  };
  for (int attempt = 0;; ++attempt) {
    ll r_class = st.r_tilde - (1 + attempt) * shrink;
    if (r_class <= st.radius[0])
      throw PlanError(PlanError::Kind::Capacity, "capacity: interior staging zone exhausted");
    interior.clear();
    exterior.clear();
    for (std::size_t u : h0_units) {
      if (box_max_dist_sq(st.idx.bounds[u], st.cx, st.cy) <= sq(r_class)) interior.push_back(u);
      else exterior.push_back(u);
    }
    try {
      run_compression();
      break;
    } catch (const PlanError& e) {
      if (e.kind != PlanError::Kind::RoutingBlocked || attempt >= 3) throw;
      // compression is the first phase, so the rewind is a plain re-init
      st.plan.moves.clear();
      st.plan.cells.clear();
      for (auto& un : st.plan.units) un.target_cell = -1;
      st.idx.init(st.start_bounds, st.idx.cell);
      st.parked.assign(st.plan.units.size(), false);
      occupied.clear();
      router0.grid_state = router0_pristine;
    }
  }

  // ---- exterior routing along the lattice tree ----
  if (!exterior.empty()) {
    // root: exterior cube closest to the disc
    std::size_t root_unit = exterior[0];
    ll best = -1;
    for (std::size_t u : exterior) {
      ll d2 = box_min_dist_sq(st.idx.bounds[u], st.cx, st.cy);
      if (best < 0 || d2 < best || (d2 == best && st.idx.bounds[u] < st.idx.bounds[root_unit])) {
        best = d2;
        root_unit = u;
      }
    }
    std::pair<ll, ll> root_pos{st.idx.bounds[root_unit].x0, st.idx.bounds[root_unit].y0};
    LatticeGraph g = build_lattice_graph(st, 0, vhat0, st.idx.bounds[root_unit],
                                         lattice_steps(st, 0), root_pos, true);
    // map exterior units to graph vertices and order by BFS discovery
    std::map<std::pair<ll, ll>, std::size_t> unit_at;
    for (std::size_t u : exterior) unit_at[{st.idx.bounds[u].x0, st.idx.bounds[u].y0}] = u;
    std::vector<std::size_t> order;     // units in processing order
    std::map<std::size_t, long long> prev_real;  // graph vertex -> last real unit above it
    std::vector<long long> tree_real_parent(st.plan.units.size(), -1);
    for (std::size_t vid : g.bfs_order) {
      auto it = unit_at.find(g.pos[vid]);
      if (it == unit_at.end()) continue;
      order.push_back(it->second);
      // nearest real ancestor
      long long p = g.parent[vid];
      while (p != -1 && !unit_at.count(g.pos[static_cast<std::size_t>(p)]))
        p = g.parent[static_cast<std::size_t>(p)];
      tree_real_parent[it->second] =
          (p == -1) ? -1 : static_cast<long long>(unit_at[g.pos[static_cast<std::size_t>(p)]]);
    }
    if (order.size() != exterior.size())
      throw PlanError(PlanError::Kind::DisconnectedGraph,
                      "disconnected graph: an exterior cube is unreachable from the root");
    for (std::size_t u : order) st.plan.units[u].tree_parent = tree_real_parent[u];

    for (std::size_t u : order) {
      // tree legs to the root position (merged along axes)
      std::size_t vid = g.id_of(st.idx.bounds[u].x0, st.idx.bounds[u].y0);
      std::vector<std::pair<ll, ll>> path;  // positions here..root
      for (long long v = static_cast<long long>(vid); v != -1; v = g.parent[static_cast<std::size_t>(v)])
        path.push_back(g.pos[static_cast<std::size_t>(v)]);
      std::size_t i = 0;
      while (i + 1 < path.size()) {
        std::size_t jn = i + 1;
        ll sdx = path[jn].first - path[i].first, sdy = path[jn].second - path[i].second;
        while (jn + 1 < path.size()) {
          ll ndx = path[jn + 1].first - path[jn].first, ndy = path[jn + 1].second - path[jn].second;
          if ((sdx == 0) == (ndx == 0) && (sdx == 0 ? (ndy > 0) == (sdy > 0) : (ndx > 0) == (sdx > 0)))
            ++jn;
          else
            break;
        }
        ll dx = path[jn].first - path[i].first, dy = path[jn].second - path[i].second;
        leg_with_detours(st, u, dx, dy, 0, MovePhase::RouteTreeLeg, vhat0, true);
        i = jn;
      }
      // dock into the staging ring and route to the next cell
      auto [ca, cb] = router0.grid.nearest_cell(st.idx.bounds[u].x0, st.idx.bounds[u].y0);
      std::vector<std::pair<ll, ll>> docks;
      for (ll da = -3; da <= 3; ++da)
        for (ll db = -3; db <= 3; ++db) {
          std::pair<ll, ll> c{ca + da, cb + db};
          if (!router0.free_cell(c)) continue;
          SBox cell = router0.grid.cell(c.first, c.second);
          if (box_min_dist_sq(cell, st.cx, st.cy) <= sq(st.radius[0])) continue;  // stage outside
          docks.push_back(c);
        }
      std::sort(docks.begin(), docks.end(), [&](auto a, auto b) {
        SBox ba = router0.grid.cell(a.first, a.second), bb2 = router0.grid.cell(b.first, b.second);
        ll da = sq(ba.x0 - st.idx.bounds[u].x0) + sq(ba.y0 - st.idx.bounds[u].y0);
        ll db = sq(bb2.x0 - st.idx.bounds[u].x0) + sq(bb2.y0 - st.idx.bounds[u].y0);
        if (da != db) return da < db;
        return a < b;
      });
      // candidate target cells: free disc cells adjacent to the occupied
      // set, in center-distance order (disc_cells is pre-sorted)
      auto candidate_cells = [&]() {
        std::vector<std::pair<ll, ll>> cands;
        for (auto c : disc_cells) {
          if (router0.get(c) == 1) continue;
          bool adj = occupied.empty();
          const std::pair<ll, ll> nb[4] = {{c.first + 1, c.second}, {c.first - 1, c.second},
                                           {c.first, c.second + 1}, {c.first, c.second - 1}};
          for (auto n : nb)
            if (occupied.count(n)) adj = true;
          if (adj) cands.push_back(c);
          if (cands.size() >= 24) break;
        }
        return cands;
      };
      // hole-freeness: every free disc cell must reach a staging cell
      std::vector<std::int8_t> seen_buf(static_cast<std::size_t>(router0.na * router0.nb));
      auto keeps_access = [&](std::pair<ll, ll> cand) {
        std::fill(seen_buf.begin(), seen_buf.end(), 0);
        auto flat = [&](std::pair<ll, ll> c) {
          return static_cast<std::size_t>((c.first - router0.a0) * router0.nb + (c.second - router0.b0));
        };
        std::deque<std::pair<ll, ll>> q;
        for (auto c : staging_cells)
          if (router0.get(c) == 0) {
            q.push_back(c);
            seen_buf[flat(c)] = 1;
          }
        while (!q.empty()) {
          auto c = q.front();
          q.pop_front();
          const std::pair<ll, ll> nb[4] = {{c.first + 1, c.second}, {c.first - 1, c.second},
                                           {c.first, c.second + 1}, {c.first, c.second - 1}};
          for (auto n : nb) {
            if (router0.get(n) != 0 || n == cand) continue;
            if (seen_buf[flat(n)]) continue;
            seen_buf[flat(n)] = 1;
            q.push_back(n);
          }
        }
        for (auto c : disc_cells) {
          if (router0.get(c) != 0 || c == cand) continue;
          if (!seen_buf[flat(c)]) return false;
        }
        return true;
      };
      bool placed = false;
      for (auto dock : docks) {
        if (placed) break;
        for (auto cand : candidate_cells()) {
          if (!keeps_access(cand)) continue;
          auto path2 = router0.route(dock, cand);
          if (path2.empty()) continue;
          try {
            dock_to_cell(st, u, router0, dock, 0, st.chart_area[0]);
          } catch (const PlanError&) {
            break;  // try next dock
          }
          emit_cell_path(st, u, router0, path2, 0, st.chart_area[0]);
          occupied.insert(cand);
          router0.at(cand) = 1;
          st.plan.units[u].target_cell = static_cast<long long>(st.plan.cells.size());
          st.plan.cells.push_back(st.S.back_box(router0.grid.cell(cand.first, cand.second)));
          st.parked[u] = true;
          placed = true;
          break;
        }
      }
      if (!placed)
        throw PlanError(PlanError::Kind::RoutingBlocked, "no reachable disc cell for an exterior cube");
    }
  }

  // ---- heights >= 1, ascending ----
  for (unsigned h = 1; h < nchart; ++h) {
    std::vector<std::size_t> units_h;
    for (std::size_t u = 0; u < st.plan.units.size(); ++u)
      if (st.unit_height[u] == static_cast<int>(h)) units_h.push_back(u);
    if (units_h.empty()) continue;

    const GateSpec& gate = *world.charts[h].gate;
    SBox gate_s = st.gate_box[h];
    SRegion vhat_h = admissible_for_height(static_cast<int>(h));

    // pilot: half-lattice position whose fattened box fits in gate ∩ parent
    // core; the half lattice is anchored at any real cube of this height
    Region pilot_zone = Region::from_box(gate.box).intersect(world.charts[gate.parent].core);
    SRegion pilot_zone_s = st.S.region(pilot_zone);
    ll fat_w = st.idx.bounds[units_h[0]].x1 - st.idx.bounds[units_h[0]].x0;
    std::optional<std::pair<ll, ll>> pilot;
    {
      auto steps = lattice_steps(st, h);
      ll sx = steps[0].first, sy = steps[1].second;
      SBox ref = st.idx.bounds[units_h[0]];
      SBox gz = st.S.box(gate.box);
      ll best_d = -1;
      for (ll px = ref.x0 + ((gz.x0 - ref.x0) / sx - 2) * sx; px <= gz.x1; px += sx) {
        if (px < gz.x0 - fat_w) continue;
        for (ll py = ref.y0 + ((gz.y0 - ref.y0) / sy - 2) * sy; py <= gz.y1; py += sy) {
          if (py < gz.y0 - fat_w) continue;
          SBox fs{px, py, px + fat_w, py + fat_w};
          if (!pilot_zone_s.contains(fs)) continue;
          ll d2 = box_min_dist_sq(fs, st.cx, st.cy);
          if (best_d < 0 || d2 < best_d) {
            best_d = d2;
            pilot = {px, py};
          }
        }
      }
    }
    if (!pilot)
      throw PlanError(PlanError::Kind::GateTooSmall,
                      "gate too small: no pilot cube fits in gate " + std::to_string(h));

    LatticeGraph g = build_lattice_graph(st, h, vhat_h, st.idx.bounds[units_h[0]],
                                         lattice_steps(st, h), *pilot, false);
    std::map<std::pair<ll, ll>, std::size_t> unit_at;
    for (std::size_t u : units_h) unit_at[{st.idx.bounds[u].x0, st.idx.bounds[u].y0}] = u;
    std::vector<std::size_t> order;
    std::vector<long long> real_parent(st.plan.units.size(), -1);
    for (std::size_t vid : g.bfs_order) {
      auto it = unit_at.find(g.pos[vid]);
      if (it == unit_at.end()) continue;
      order.push_back(it->second);
      long long p = g.parent[vid];
      while (p != -1 && !unit_at.count(g.pos[static_cast<std::size_t>(p)]))
        p = g.parent[static_cast<std::size_t>(p)];
      real_parent[it->second] =
          (p == -1) ? -1 : static_cast<long long>(unit_at[g.pos[static_cast<std::size_t>(p)]]);
    }
    if (order.size() != units_h.size())
      throw PlanError(PlanError::Kind::DisconnectedGraph,
                      "disconnected graph: a fattened component cannot reach the gate pilot");
    for (std::size_t u : order) st.plan.units[u].tree_parent = real_parent[u];

    // annulus cells for this height
    ll pitch_h = st.S(world.scales[h] * (1 + 2 * world.nus[h]) + world.cell_slack[h]);
    CellRouter router_h;
    router_h.grid = GridSpec{st.cx, st.cy, pitch_h};
    std::vector<std::pair<ll, ll>> ann_cells;
    SRegion core0 = st.chart_core[0];
    {
      SBox bb = st.S.box(world.charts[0].core.bounding_box());
      ll alo = (bb.x0 - st.cx) / pitch_h - 2, ahi = (bb.x1 - st.cx) / pitch_h + 2;
      ll blo = (bb.y0 - st.cy) / pitch_h - 2, bhi = (bb.y1 - st.cy) / pitch_h + 2;
      router_h.init_window(alo, blo, ahi, bhi);
      for (ll a = alo; a <= ahi; ++a)
        for (ll b = blo; b <= bhi; ++b) {
          SBox cell = router_h.grid.cell(a, b);
          if (!core0.contains(cell)) continue;
          if (box_min_dist_sq(cell, st.cx, st.cy) <= sq(st.radius[h - 1])) continue;
          router_h.at({a, b}) = 0;
          if (box_max_dist_sq(cell, st.cx, st.cy) < sq(st.radius[h])) ann_cells.push_back({a, b});
        }
    }
    std::sort(ann_cells.begin(), ann_cells.end(), [&](auto a, auto b) {
      SBox ba = router_h.grid.cell(a.first, a.second), bb2 = router_h.grid.cell(b.first, b.second);
      ll da = box_min_dist_sq(ba, st.cx, st.cy), db = box_min_dist_sq(bb2, st.cx, st.cy);
      if (da != db) return da < db;
      return a < b;
    });
    if (ann_cells.size() < units_h.size())
      throw PlanError(PlanError::Kind::Capacity,
                      "capacity: " + std::to_string(ann_cells.size()) + " annulus cells for " +
                          std::to_string(units_h.size()) + " components at height " + std::to_string(h));

    std::size_t next_cell = 0;
    for (std::size_t u : order) {
      // legs to the pilot inside chart h
      std::size_t vid = g.id_of(st.idx.bounds[u].x0, st.idx.bounds[u].y0);
      std::vector<std::pair<ll, ll>> path;
      for (long long v = static_cast<long long>(vid); v != -1; v = g.parent[static_cast<std::size_t>(v)])
        path.push_back(g.pos[static_cast<std::size_t>(v)]);
      // path is here..pilot already
      std::size_t i = 0;
      while (i + 1 < path.size()) {
        std::size_t jn = i + 1;
        while (jn + 1 < path.size()) {
          ll adx = path[jn].first - path[i].first, ady = path[jn].second - path[i].second;
          ll ndx = path[jn + 1].first - path[jn].first, ndy = path[jn + 1].second - path[jn].second;
          if ((adx == 0) == (ndx == 0) && (adx == 0 ? (ndy > 0) == (ady > 0) : (ndx > 0) == (adx > 0)))
            ++jn;
          else
            break;
        }
        ll dx = path[jn].first - path[i].first, dy = path[jn].second - path[i].second;
        leg_with_detours(st, u, dx, dy, h, MovePhase::RouteTreeLeg, vhat_h, false);
        i = jn;
      }
      // gate hop into the parent chart: the unit must sit inside the gate box
      {
        const SBox& cur = st.idx.bounds[u];
        if (!(cur.x0 >= gate_s.x0 && cur.y0 >= gate_s.y0 && cur.x1 <= gate_s.x1 && cur.y1 <= gate_s.y1))
          throw PlanError(PlanError::Kind::RoutingBlocked, "gate hop attempted outside the gate");
        st.emit(u, MovePhase::GateHop, 0, 0, h);
      }
      // transit through parent cores down to chart 0 (identity transitions)
      unsigned gchart = gate.parent;
      while (gchart != 0) {
        const GateSpec& ngate = *world.charts[gchart].gate;
        Region zone = Region::from_box(ngate.box).intersect(world.charts[ngate.parent].core);
        SRegion zone_s = st.S.region(zone);
        // region: parent core plus both gate boxes, minus the outer disc
        Region corridor = world.charts[gchart].core.unite(Region::from_box(ngate.box))
                              .unite(Region::from_box(world.charts[gchart].gate ? world.charts[gchart].gate->box
                                                                                : ngate.box));
        SRegion corridor_s = st.S.region(corridor);
        // grid anchored at the current position
        CellRouter tr;
        tr.grid = GridSpec{st.idx.bounds[u].x0, st.idx.bounds[u].y0, pitch_h};
        SBox cbb = st.S.box(world.charts[gchart].core.bounding_box());
        ll alo = (cbb.x0 - tr.grid.ax) / pitch_h - 2, ahi = (cbb.x1 - tr.grid.ax) / pitch_h + 2;
        ll blo = (cbb.y0 - tr.grid.ay) / pitch_h - 2, bhi = (cbb.y1 - tr.grid.ay) / pitch_h + 2;
        tr.init_window(alo, blo, ahi, bhi);
        for (ll a = alo; a <= ahi; ++a)
          for (ll b = blo; b <= bhi; ++b) {
            SBox cell = tr.grid.cell(a, b);
            if (!corridor_s.contains(cell)) continue;
            if (box_min_dist_sq(cell, st.cx, st.cy) <= sq(st.radius.back())) continue;
            if (st.idx.hit(cell, u) != SIZE_MAX) continue;
            tr.at({a, b}) = 0;
          }
        // nearest cell to the next pilot zone
        std::pair<ll, ll> from = {0, 0};
        std::pair<ll, ll> best_cell{0, 0};
        ll best_d = -1;
        SBox zone_bb = zone_s.cells.empty() ? SBox{} : zone_s.cells[0];
        for (const SBox& z : zone_s.cells) zone_bb = hull_of(zone_bb, z);
        for (ll a = tr.a0; a < tr.a0 + tr.na; ++a)
          for (ll b = tr.b0; b < tr.b0 + tr.nb; ++b) {
            if (tr.get({a, b}) != 0) continue;
            SBox cell = tr.grid.cell(a, b);
            ll dx = std::max({zone_bb.x0 - cell.x1, cell.x0 - zone_bb.x1, 0ll});
            ll dy = std::max({zone_bb.y0 - cell.y1, cell.y0 - zone_bb.y1, 0ll});
            ll d2 = sq(dx) + sq(dy);
            if (best_d < 0 || d2 < best_d) {
              best_d = d2;
              best_cell = {a, b};
            }
          }
        auto pth = tr.route(from, best_cell);
        if (pth.empty())
          throw PlanError(PlanError::Kind::RoutingBlocked, "transit corridor blocked");
        emit_cell_path(st, u, tr, pth, gchart, corridor_s);
        // dock onto the next pilot position precisely
        // pilot position: lattice-free placement centered in the zone
        SBox cur = st.idx.bounds[u];
        ll w = cur.x1 - cur.x0, hgt = cur.y1 - cur.y0;
        ll px = (zone_bb.x0 + zone_bb.x1 - w) / 2, py = (zone_bb.y0 + zone_bb.y1 - hgt) / 2;
        leg_with_detours(st, u, px - cur.x0, 0, gchart, MovePhase::PackIntoCell, corridor_s, false);
        leg_with_detours(st, u, 0, py - st.idx.bounds[u].y0, gchart, MovePhase::PackIntoCell, corridor_s,
                         false);
        st.emit(u, MovePhase::GateHop, 0, 0, gchart);
        gchart = ngate.parent;
      }
      // chart 0: dock into the annulus grid and park closest-first
      for (ll a = router_h.a0; a < router_h.a0 + router_h.na; ++a)
        for (ll b = router_h.b0; b < router_h.b0 + router_h.nb; ++b) {
          std::int8_t& sst2 = router_h.at({a, b});
          if (sst2 == 1 || sst2 == 3) continue;
          SBox cell = router_h.grid.cell(a, b);
          sst2 = (st.idx.hit(cell, u) != SIZE_MAX) ? 2 : 0;
        }
      auto [ca, cb] = router_h.grid.nearest_cell(st.idx.bounds[u].x0, st.idx.bounds[u].y0);
      std::vector<std::pair<ll, ll>> docks;
      for (ll da = -3; da <= 3; ++da)
        for (ll db = -3; db <= 3; ++db)
          if (router_h.free_cell({ca + da, cb + db})) docks.push_back({ca + da, cb + db});
      std::sort(docks.begin(), docks.end(), [&](auto a, auto b) {
        SBox ba = router_h.grid.cell(a.first, a.second), bb2 = router_h.grid.cell(b.first, b.second);
        ll da = sq(ba.x0 - st.idx.bounds[u].x0) + sq(ba.y0 - st.idx.bounds[u].y0);
        ll db = sq(bb2.x0 - st.idx.bounds[u].x0) + sq(bb2.y0 - st.idx.bounds[u].y0);
        if (da != db) return da < db;
        return a < b;
      });
      bool placed = false;
      for (auto dock : docks) {
        if (placed) break;
        // closest-first free annulus cell reachable from the dock
        for (std::size_t ci2 = next_cell; ci2 < ann_cells.size(); ++ci2) {
          auto cand = ann_cells[ci2];
          if (router_h.get(cand) != 0) continue;
          auto pth = router_h.route(dock, cand);
          if (pth.empty()) continue;
          try {
            dock_to_cell(st, u, router_h, dock, 0, core0);
          } catch (const PlanError&) {
            break;
          }
          emit_cell_path(st, u, router_h, pth, 0, core0);
          router_h.at(cand) = 1;
          st.plan.units[u].target_cell = static_cast<long long>(st.plan.cells.size());
          st.plan.cells.push_back(st.S.back_box(router_h.grid.cell(cand.first, cand.second)));
          st.parked[u] = true;
          placed = true;
          break;
        }
      }
      if (!placed)
        throw PlanError(PlanError::Kind::RoutingBlocked, "no reachable annulus cell for a component");
    }
  }

  for (std::size_t u = 0; u < st.plan.units.size(); ++u)
    if (!st.parked[u]) throw PlanError(PlanError::Kind::RoutingBlocked, "a unit was never parked");
  return st.plan;
}

// ---------------------------------------------------------------------------
// simulate_plan
// ---------------------------------------------------------------------------

SimulationReport simulate_plan(const Scenario& world, const ColoredCubeSet& cubes,
                               const TransportPlan& plan) {
  SimulationReport rep;
  auto fail = [&](const std::string& msg) { rep.violations.push_back(msg); };

  CapacityBudget budget;
  budget.radii = plan.radii;
  budget.r_tilde = plan.r_tilde;
  budget.r_hat = plan.r_hat;
  Scaled S;
  try {
    S = make_scale(world, cubes, budget);
  } catch (const std::exception& e) {
    fail(std::string("scaling failed: ") + e.what());
    return rep;
  }

  const std::size_t nchart = world.chart_count();
  std::vector<SRegion> area(nchart), core(nchart);
  std::vector<SBox> gate(nchart);
  for (std::size_t i = 0; i < nchart; ++i) {
    area[i] = S.region(world.charts[i].area);
    core[i] = S.region(world.charts[i].core);
    if (world.charts[i].gate) gate[i] = S.box(world.charts[i].gate->box);
  }
  ll cx = S(world.ball_center[0]), cy = S(world.ball_center[1]);
  std::vector<ll> radius;
  for (const Rat& r : plan.radii) radius.push_back(S(r));
  ll r_tilde = S(plan.r_tilde);
  std::vector<ll> caps;
  for (const Rat& c : plan.detour_caps) caps.push_back(S(c));
  SRegion target_region = world.target_region_override ? S.region(*world.target_region_override) : SRegion{};
  const bool region_mode = world.target_region_override.has_value();

  // start state
  UnitIndex idx;
  std::vector<SBox> bounds;
  for (const auto& u : plan.units) bounds.push_back(S.box(u.bound));
  ll max_side = 1;
  for (const SBox& b : bounds) max_side = std::max({max_side, b.x1 - b.x0, b.y1 - b.y0});
  idx.init(bounds, max_side * 2);
  std::vector<SBox> start = idx.bounds;
  std::vector<std::vector<ll>> pending_detour(plan.units.size());

  auto parked_in_cell = [&](std::size_t u) {
    if (plan.units[u].target_cell < 0) return false;
    SBox cell = S.box(plan.cells[static_cast<std::size_t>(plan.units[u].target_cell)]);
    const SBox& b = idx.bounds[u];
    return b.x0 >= cell.x0 && b.y0 >= cell.y0 && b.x1 <= cell.x1 && b.y1 <= cell.y1;
  };
  std::vector<bool> saw_tree_leg(plan.units.size(), false);

  for (std::size_t mi = 0; mi < plan.moves.size(); ++mi) {
    const Move& m = plan.moves[mi];
    if (m.unit >= plan.units.size()) {
      fail("move references an unknown unit");
      break;
    }
    const SBox cur = idx.bounds[m.unit];
    ll dx = S(m.delta[0]), dy = S(m.delta[1]);
    if (dx != 0 && dy != 0) fail("move " + std::to_string(mi) + " is not axis-parallel");
    if (!(S.box(m.from) == cur)) fail("move " + std::to_string(mi) + " does not start at the unit position");
    SBox to = cur.shifted(dx, dy);
    if (!(S.box(m.to) == to)) fail("move " + std::to_string(mi) + " records a wrong endpoint");
    SBox sweep = hull_of(cur, to);
    if (idx.hit(sweep, m.unit) != SIZE_MAX)
      fail("sweep collision at move " + std::to_string(mi));

    const int h = plan.units[m.unit].height;
    const unsigned uchart = plan.units[m.unit].chart;
    switch (m.phase) {
      case MovePhase::CompressInterior:
        if (region_mode) fail("compress phase in region mode at move " + std::to_string(mi));
        else if (box_max_dist_sq(sweep, cx, cy) > sq(r_tilde))
          fail("compression sweep leaves the staging disc at move " + std::to_string(mi));
        break;
      case MovePhase::RouteTreeLeg: {
        if (!saw_tree_leg[m.unit]) {
          saw_tree_leg[m.unit] = true;
          for (long long p = plan.units[m.unit].tree_parent; p != -1;
               p = plan.units[static_cast<std::size_t>(p)].tree_parent)
            if (!parked_in_cell(static_cast<std::size_t>(p)))
              fail("tree-order violation at move " + std::to_string(mi));
        }
        if (!area[uchart].contains(sweep)) fail("tree leg escapes its chart at move " + std::to_string(mi));
        if (h == 0 && !region_mode && box_min_dist_sq(sweep, cx, cy) <= sq(radius[0]))
          fail("tree leg enters the target disc at move " + std::to_string(mi));
        break;
      }
      case MovePhase::DetourDisplace:
      case MovePhase::DetourRestore: {
        if (std::abs(dx) + std::abs(dy) > caps[uchart])
          fail("detour beyond the cap at move " + std::to_string(mi));
        if (!area[uchart].contains(sweep)) fail("detour escapes its chart at move " + std::to_string(mi));
        if (m.phase == MovePhase::DetourDisplace) {
          pending_detour[m.unit].push_back(static_cast<ll>(mi));
        } else {
          if (m.detour_partner < 0 || pending_detour[m.unit].empty() ||
              pending_detour[m.unit].back() != m.detour_partner)
            fail("detour restore without matching displace at move " + std::to_string(mi));
          else {
            const Move& d = plan.moves[static_cast<std::size_t>(m.detour_partner)];
            if (S(d.delta[0]) != -dx || S(d.delta[1]) != -dy)
              fail("detour restore does not invert its displace at move " + std::to_string(mi));
            pending_detour[m.unit].pop_back();
          }
        }
        break;
      }
      case MovePhase::GateHop: {
        if (dx != 0 || dy != 0) fail("gate hop must not translate at move " + std::to_string(mi));
        if (uchart == 0 || !world.charts[uchart].gate)
          fail("gate hop in a chart without a gate at move " + std::to_string(mi));
        else {
          // validated against any gate on the unit's branch
          bool inside = false;
          for (std::size_t g = 1; g < nchart; ++g) {
            const SBox& gb = gate[g];
            if (world.charts[g].gate && cur.x0 >= gb.x0 && cur.y0 >= gb.y0 && cur.x1 <= gb.x1 &&
                cur.y1 <= gb.y1)
              inside = true;
          }
          if (!inside) fail("gate hop outside every gate at move " + std::to_string(mi));
        }
        break;
      }
      case MovePhase::PackIntoCell: {
        if (h == 0 || region_mode) {
          if (!area[0].contains(sweep)) fail("packing sweep escapes the root chart at move " + std::to_string(mi));
        } else {
          // transit or final approach: inside some core plus gate zones, and
          // outside the already-packed inner disc
          bool ok = false;
          for (std::size_t g = 0; g < nchart; ++g) {
            SRegion zone = core[g];
            for (std::size_t g2 = 1; g2 < nchart; ++g2)
              if (world.charts[g2].gate) zone.cells.push_back(gate[g2]);
            if (zone.contains(sweep)) { ok = true; break; }
          }
          if (!ok) fail("packing sweep escapes every core at move " + std::to_string(mi));
          if (box_min_dist_sq(sweep, cx, cy) <= sq(radius[static_cast<std::size_t>(h) - 1]))
            fail("packing sweep enters the packed inner disc at move " + std::to_string(mi));
        }
        break;
      }
    }
    idx.move_to(m.unit, to);
    ++rep.moves_replayed;
    if (rep.violations.size() > 50) break;
  }
  for (std::size_t u = 0; u < plan.units.size(); ++u)
    if (!pending_detour[u].empty()) fail("unrestored detour for a unit");

  // final containment and rigid areas
  rep.final_containment = true;
  rep.area_preserved = true;
  std::set<SBox> used_cells;
  for (std::size_t u = 0; u < plan.units.size(); ++u) {
    const SBox& b = idx.bounds[u];
    if (b.x1 - b.x0 != start[u].x1 - start[u].x0 || b.y1 - b.y0 != start[u].y1 - start[u].y0)
      rep.area_preserved = false;
    if (plan.units[u].target_cell < 0) {
      rep.final_containment = false;
      continue;
    }
    SBox cell = S.box(plan.cells[static_cast<std::size_t>(plan.units[u].target_cell)]);
    if (!used_cells.insert(cell).second) {
      fail("cell collision: two units share a target cell");
      rep.final_containment = false;
    }
    if (!(b.x0 >= cell.x0 && b.y0 >= cell.y0 && b.x1 <= cell.x1 && b.y1 <= cell.y1))
      rep.final_containment = false;
    const int h = plan.units[u].height;
    if (region_mode) {
      if (!target_region.contains(cell)) rep.final_containment = false;
    } else if (h == 0) {
      if (box_max_dist_sq(cell, cx, cy) >= sq(radius[0])) rep.final_containment = false;
    } else {
      if (box_max_dist_sq(cell, cx, cy) >= sq(radius[static_cast<std::size_t>(h)]) ||
          box_min_dist_sq(cell, cx, cy) <= sq(radius[static_cast<std::size_t>(h) - 1]))
        rep.final_containment = false;
    }
  }
  rep.valid = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// driver with the shrink-and-retry loop
// ---------------------------------------------------------------------------

TransportRun run_transport(const Scenario& world_in, const std::vector<unsigned>& colors_to_plan) {
  TransportRun run;
  run.world = world_in;
  run.world.validate();
  std::vector<unsigned> colors = colors_to_plan;
  if (colors.empty())
    for (unsigned j = 1; j <= run.world.k; ++j) colors.push_back(j);

  for (unsigned attempt = 0;; ++attempt) {
    try {
      DimensionCover cover = build_cover(1, run.world.k);
      run.cubes = build_colored_cover(run.world, cover);
      run.budget = compute_budget(run.world, run.cubes);
      run.colors.clear();
      for (unsigned j : colors) {
        ColorDecomposition decomp = decompose_colors(run.world, run.cubes, j);
        ColorRun cr;
        cr.plan = plan_color(run.world, run.cubes, decomp, run.budget, j);
        cr.sim = simulate_plan(run.world, run.cubes, cr.plan);
        if (!cr.sim.valid)
          throw PlanError(PlanError::Kind::RoutingBlocked,
                          "simulation rejected the plan: " + cr.sim.violations.front());
        run.colors.push_back(std::move(cr));
      }
      run.residual = cover_residual(run.world, run.cubes);
      run.retries = attempt;
      return run;
    } catch (const PlanError& e) {
      if (attempt >= run.world.retry_bound) throw;
      // halve every scale and fattening and retry
      for (auto& d : run.world.scales) d /= 2;
      for (auto& nu : run.world.nus) nu /= 2;
      for (auto& s : run.world.cell_slack) s /= 2;
    }
  }
}

}  // namespace symcover
