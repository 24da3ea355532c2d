// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
#include "symcover/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace symcover {

double BumpProfile::value(double s) const {
  if (s <= inner) return 1.0;
  if (s >= outer) return 0.0;
  double t = (s - inner) / (outer - inner);
  return 1.0 - (3.0 * t * t - 2.0 * t * t * t);
}

double BumpProfile::derivative(double s) const {
  if (s <= inner || s >= outer) return 0.0;
  double t = (s - inner) / (outer - inner);
  return -6.0 * t * (1.0 - t) / (outer - inner);
}

TranslationField make_translation_field(const Box& k_set, const Point& q, const Rat& margin) {
  if (margin <= 0) throw std::invalid_argument("support margin must be positive");
  if (q.dim() != k_set.dim()) throw std::invalid_argument("dimension mismatch");
  TranslationField f;
  f.k_set = k_set;
  f.q = q;
  f.hull = box_hull(k_set, k_set.translated(q));
  f.support = neighborhood(f.hull, margin);
  f.margin = margin;
  return f;
}

namespace {

struct FieldEval {
  // per-axis plateau value and derivative at x
  static void axis_plateau(double x, double lo, double hi, double margin, double& g, double& dg) {
    // 1 on [lo,hi], 0 outside [lo-margin, hi+margin]
    BumpProfile p{0.0, margin};
    if (x < lo) {
      g = p.value(lo - x);
      dg = p.derivative(lo - x);  // d/dx of value(lo-x) = -p'(lo-x)*(-1)... careful below
      dg = -dg * -1.0;            // value(lo-x): d/dx = p'(lo-x) * (-1)
      dg = -p.derivative(lo - x);
    } else if (x > hi) {
      g = p.value(x - hi);
      dg = p.derivative(x - hi);
    } else {
      g = 1.0;
      dg = 0.0;
    }
  }

  // X_H(z) = f(z) q + <z,-Jq> J grad f
  static std::vector<double> field(const TranslationField& tf, const std::vector<double>& z,
                                   const std::vector<double>& q, const std::vector<double>& hlo,
                                   const std::vector<double>& hhi, double margin) {
    const std::size_t d = z.size();
    std::vector<double> g(d), dg(d);
    double f = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      axis_plateau(z[i], hlo[i], hhi[i], margin, g[i], dg[i]);
      f *= g[i];
    }
    // <z, -Jq> with J acting per symplectic pair: (-Jq)_{2i} = q_{2i+1},
    // (-Jq)_{2i+1} = -q_{2i}
    double h = 0.0;
    for (std::size_t i = 0; i + 1 < d; i += 2) h += z[i] * q[i + 1] - z[i + 1] * q[i];
    std::vector<double> grad(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      double prod = dg[i];
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) prod *= g[j];
      grad[i] = prod;  // df/dz_i
    }
    // grad H = f * (-Jq) + h * grad f;  X_H = J grad H
    std::vector<double> gh(d);
    for (std::size_t i = 0; i + 1 < d; i += 2) {
      gh[i] = f * q[i + 1] + h * grad[i];
      gh[i + 1] = f * (-q[i]) + h * grad[i + 1];
    }
    std::vector<double> out(d);
    for (std::size_t i = 0; i + 1 < d; i += 2) {
      // J(v)_{2i} = -v_{2i+1}, J(v)_{2i+1} = v_{2i}
      out[i] = -gh[i + 1];
      out[i + 1] = gh[i];
    }
    return out;
  }
};

}  // namespace

std::vector<double> translate_flow(const TranslationField& field, const std::vector<double>& z,
                                   unsigned steps) {
  if (steps < 1) throw std::invalid_argument("need at least one step");
  const std::size_t d = field.dim();
  if (z.size() != d) throw std::invalid_argument("point dimension mismatch");
  // exact short-circuit outside the support box
  bool outside = false;
  for (std::size_t i = 0; i < d; ++i)
    if (z[i] < rat_to_double(field.support.lo[i]) || z[i] > rat_to_double(field.support.hi[i]))
      outside = true;
  if (outside) return z;

  std::vector<double> q(d), hlo(d), hhi(d);
  for (std::size_t i = 0; i < d; ++i) {
    q[i] = rat_to_double(field.q[i]);
    hlo[i] = rat_to_double(field.hull.lo[i]);
    hhi[i] = rat_to_double(field.hull.hi[i]);
  }
  double margin = rat_to_double(field.margin);

  std::vector<double> y = z;
  const double dt = 1.0 / steps;
  std::vector<double> k1, k2, k3, k4, tmp(d);
  for (unsigned s = 0; s < steps; ++s) {
    k1 = FieldEval::field(field, y, q, hlo, hhi, margin);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    k2 = FieldEval::field(field, tmp, q, hlo, hhi, margin);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    k3 = FieldEval::field(field, tmp, q, hlo, hhi, margin);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + dt * k3[i];
    k4 = FieldEval::field(field, tmp, q, hlo, hhi, margin);
    for (std::size_t i = 0; i < d; ++i)
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

DistortionReport area_distortion_check(const TranslationField& field, const Box& probe,
                                       unsigned grid, unsigned steps) {
  if (grid < 2) throw std::invalid_argument("grid must be at least 2");
  const std::size_t d = field.dim();
  if (d != 2) throw std::invalid_argument("distortion probe is planar");
  DistortionReport rep;
  const double h = std::ldexp(1.0, -14);  // finite-difference step, power of two
  for (unsigned i = 0; i <= grid; ++i) {
    for (unsigned j = 0; j <= grid; ++j) {
      double x = rat_to_double(probe.lo[0]) +
                 (rat_to_double(probe.hi[0]) - rat_to_double(probe.lo[0])) * i / grid;
      double y = rat_to_double(probe.lo[1]) +
                 (rat_to_double(probe.hi[1]) - rat_to_double(probe.lo[1])) * j / grid;
      auto fxp = translate_flow(field, {x + h, y}, steps);
      auto fxm = translate_flow(field, {x - h, y}, steps);
      auto fyp = translate_flow(field, {x, y + h}, steps);
      auto fym = translate_flow(field, {x, y - h}, steps);
      double a = (fxp[0] - fxm[0]) / (2 * h), b = (fyp[0] - fym[0]) / (2 * h);
      double c = (fxp[1] - fxm[1]) / (2 * h), e = (fyp[1] - fym[1]) / (2 * h);
      double det = a * e - b * c;
      rep.max_abs_det_minus_one = std::max(rep.max_abs_det_minus_one, std::abs(det - 1.0));
      ++rep.samples;
    }
  }
  return rep;
}

namespace {

// Perpendicular thickening of an axis-parallel segment by nu (no end caps):
// under-approximates the Euclidean stadium, so subtracting it from the upper
// half OVER-approximates the eroded set.
Box perp_rect(const Segment2D& s, const Rat& nu) {
  Rat x0 = rat_min(s.a[0], s.b[0]), x1 = rat_max(s.a[0], s.b[0]);
  Rat y0 = rat_min(s.a[1], s.b[1]), y1 = rat_max(s.a[1], s.b[1]);
  if (x0 == x1) return Box(x0 - nu, y0, x1 + nu, y1);
  return Box(x0, y0 - nu, x1, y1 + nu);
}

// Full square thickening (with caps): over-approximates the stadium, so the
// subtraction UNDER-approximates the eroded set.
Box square_rect(const Segment2D& s, const Rat& nu) {
  Rat x0 = rat_min(s.a[0], s.b[0]), x1 = rat_max(s.a[0], s.b[0]);
  Rat y0 = rat_min(s.a[1], s.b[1]), y1 = rat_max(s.a[1], s.b[1]);
  return Box(x0 - nu, y0 - nu, x1 + nu, y1 + nu);
}

// x-breakpoints of a region's cells plus the ridge's own breakpoints.
std::vector<Rat> slab_breaks(const Region& r, const std::vector<RidgePiece>& ridge) {
  std::set<Rat> xs;
  for (const Box& c : r.cells()) {
    xs.insert(c.lo[0]);
    xs.insert(c.hi[0]);
  }
  for (const auto& p : ridge) {
    xs.insert(p.x_lo);
    xs.insert(p.x_hi);
  }
  return std::vector<Rat>(xs.begin(), xs.end());
}

std::optional<Rat> ridge_value_at(const std::vector<RidgePiece>& ridge, const Rat& x_lo, const Rat& x_hi) {
  for (const auto& p : ridge)
    if (p.x_lo <= x_lo && x_hi <= p.x_hi) return p.value;
  return std::nullopt;
}

}  // namespace

Region shear_image(const DisplacementGadget& g, const Region& r, const Rat& t) {
  if (r.empty()) return r;
  std::vector<Rat> xs = slab_breaks(r, g.ridge);
  std::vector<Box> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Region slab = r.intersect(Box(xs[i], r.bounding_box().lo[1] - 1, xs[i + 1],
                                  r.bounding_box().hi[1] + 1));
    if (slab.empty()) continue;
    auto v = ridge_value_at(g.ridge, xs[i], xs[i + 1]);
    if (!v) throw std::logic_error("ridge does not cover a populated slab");
    Point down(Rat(0), -t * *v);
    for (const Box& c : slab.cells()) out.push_back(c.translated(down));
  }
  return Region(std::move(out));
}

DisplacementResult build_displacement(unsigned k, const Rat& d, const Rat& delta, const Rat& nu,
                                      const Rat& target_fraction, const Rat& eps,
                                      const std::vector<RidgePiece>* ridge_override) {
  if (k < 1) throw std::invalid_argument("need at least one extra square");
  if (!(d > 0 && delta > 0 && nu > 0)) throw std::invalid_argument("parameters must be positive");
  if (!(nu < delta / 2)) throw std::invalid_argument("U disconnected risk: need nu < delta/2");
  if (!(delta < d / 2)) throw std::invalid_argument("need delta < d/2");

  DisplacementGadget g;
  g.k = k;
  g.d = d;
  g.delta = delta;
  g.nu = nu;

  // squares C_j at x in [2jd, (2j+1)d], y in [-d/2, d/2], j = 0..k; corridor
  // [0, (2k+1)d] x [-delta, delta]
  Region full;
  for (unsigned j = 0; j <= k; ++j)
    full = full.unite(Region::from_box(Box(Rat(2 * j) * d, -d / 2, Rat(2 * j + 1) * d, d / 2)));
  full = full.unite(Region::from_box(Box(Rat(0), -delta, Rat(2 * k + 1) * d, delta)));
  g.full_region = full.normalized();

  Region upper;
  for (unsigned j = 0; j <= k; ++j)
    upper = upper.unite(Region::from_box(Box(Rat(2 * j) * d, Rat(0), Rat(2 * j + 1) * d, d / 2)));
  upper = upper.unite(Region::from_box(Box(Rat(0), Rat(0), Rat(2 * k + 1) * d, delta)));
  g.upper_half = upper.normalized();

  auto segs = boundary_segments_2d(g.upper_half);
  Region over = g.upper_half, under = g.upper_half;
  for (const auto& s : segs) {
    over = over.subtract(perp_rect(s, nu));
    under = under.subtract(square_rect(s, nu));
  }
  g.u_over = over.normalized();
  g.u_under = under.normalized();

  // canonical ridge: tall plateau over square columns, low over gap columns
  if (ridge_override) {
    g.ridge = *ridge_override;
  } else {
    Rat tall = d / 2 - nu / 2;
    Rat low = delta - nu / 2;
    for (unsigned j = 0; j <= k; ++j) {
      g.ridge.push_back(RidgePiece{Rat(2 * j) * d, Rat(2 * j + 1) * d, tall});
      if (j < k) g.ridge.push_back(RidgePiece{Rat(2 * j + 1) * d, Rat(2 * j + 2) * d, low});
    }
  }

  DisplacementResult res;
  DisplacementReport& rep = res.report;
  rep.area_model = g.full_region.area();
  rep.area_upper = g.upper_half.area();
  if (rep.area_upper * 2 != rep.area_model)
    throw std::logic_error("upper half does not carry half the model area");
  rep.area_u = g.u_under.area();
  rep.area_u_over = g.u_over.area();

  // ridge admissibility: per slab of u_over, the ridge value lies strictly
  // inside the model column and at or above the top of the eroded set
  rep.ridge_ok = true;
  {
    std::vector<Rat> xs = slab_breaks(g.u_over, g.ridge);
    Box bb = g.u_over.empty() ? Box(Rat(0), Rat(0), Rat(1), Rat(1)) : g.u_over.bounding_box();
    for (std::size_t i = 0; i + 1 < xs.size() && rep.ridge_ok; ++i) {
      Region slab = g.u_over.intersect(Box(xs[i], bb.lo[1] - 1, xs[i + 1], bb.hi[1] + 1));
      if (slab.empty()) continue;
      auto v = ridge_value_at(g.ridge, xs[i], xs[i + 1]);
      if (!v) {
        rep.ridge_ok = false;
        break;
      }
      Rat top = slab.cells()[0].hi[1];
      for (const Box& c : slab.cells()) top = rat_max(top, c.hi[1]);
      // model column height over this slab
      Region mslab = g.full_region.intersect(Box(xs[i], bb.lo[1] - d, xs[i + 1], bb.hi[1] + d));
      Rat mtop = mslab.cells()[0].hi[1];
      for (const Box& c : mslab.cells()) mtop = rat_max(mtop, c.hi[1]);
      if (!(*v >= top && *v < mtop)) rep.ridge_ok = false;
    }
  }

  // shear containment at the dyadic times
  rep.shear_ok = true;
  for (int step = 0; step <= 8 && rep.shear_ok; ++step) {
    Rat t(step, 8);
    Region img = shear_image(g, g.u_over, t);
    for (const Box& c : img.cells())
      if (!g.full_region.contains_box(c)) {
        rep.shear_ok = false;
        break;
      }
  }

  // exact displacement and area preservation on the over-approximation
  Region img1 = shear_image(g, g.u_over, Rat(1));
  rep.displaced = img1.intersect(g.u_over).empty();
  rep.area_preserved = (img1.area() == g.u_over.area());

  rep.meets_target = (rep.area_u > target_fraction * rep.area_model - eps);

  res.gadget = std::move(g);
  return res;
}

}  // namespace symcover
