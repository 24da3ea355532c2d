// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// The two explicit Hamiltonian constructions.
//
//  * A compactly supported translation: H(z) = f(z) <z, -Jq> with a C^1
//    plateau profile f equal to 1 on the convex hull of K and q+K and 0
//    outside a box neighbourhood U.  Its vector field equals q on the hull,
//    so the time-1 flow translates K to q+K; integration is fixed-step RK4
//    in doubles (the only floating point in the project).
//
//  * A displaceable open set of almost half the model area: a chain of
//    squares joined by a thin corridor, its upper half eroded by nu, and a
//    vertical shear under a ridge function that pushes the upper half
//    strictly below itself.  All displacement statements are exact rational
//    region computations on rectilinear over/under approximations.
#pragma once

#include "symcover/geometry.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace symcover {

// Scalar C^1 plateau: 1 on [0, inner], 0 on [outer, inf), cubic smoothstep
// in between.
struct BumpProfile {
  double inner = 0;
  double outer = 1;

  double value(double s) const;
  double derivative(double s) const;
};

// Compactly supported field translating K by q.
struct TranslationField {
  Box k_set;        // the compact set K (a box here)
  Point q;          // translation vector
  Box hull;         // convex hull of K and q+K
  Box support;      // box neighbourhood U of the hull
  Rat margin;       // hull-to-support margin per axis

  std::size_t dim() const { return k_set.dim(); }
};

// margin > 0 widens the hull to the support box.
TranslationField make_translation_field(const Box& k_set, const Point& q, const Rat& margin);

// Time-1 point of the Hamiltonian flow from z via fixed-step RK4.  Points
// outside the support are returned unchanged (the field vanishes there).
std::vector<double> translate_flow(const TranslationField& field, const std::vector<double>& z,
                                   unsigned steps);

struct DistortionReport {
  double max_abs_det_minus_one = 0;
  std::size_t samples = 0;
};

// Finite-difference Jacobian determinant of the time-1 map over a grid of
// probe points; a numerical witness that the flow preserves area.
DistortionReport area_distortion_check(const TranslationField& field, const Box& probe,
                                       unsigned grid, unsigned steps = 1000);

// Piecewise-constant ridge over x-intervals; the exact-arithmetic surrogate
// for the smooth ridge (any smooth function inside the validated band works,
// and the band is checked to have positive slack).
struct RidgePiece {
  Rat x_lo, x_hi;
  Rat value;
};

struct DisplacementGadget {
  unsigned k = 1;
  Rat d, delta, nu;
  Region full_region;      // the chain-of-squares-with-corridor model
  Region upper_half;       // intersection with {y > 0} (closed cells)
  Region u_over;           // rectilinear over-approximation of the eroded set
  Region u_under;          // rectilinear under-approximation
  std::vector<RidgePiece> ridge;
};

struct DisplacementReport {
  Rat area_model;          // |N|
  Rat area_upper;          // |N+| (= |N|/2 by symmetry, asserted)
  Rat area_u;              // |U| lower bound (under-approximation)
  Rat area_u_over;         // |U| upper bound
  bool ridge_ok = false;   // graph inside the model, above the eroded set
  bool shear_ok = false;   // phi_t(U) stays inside the model for t in {0,1/8,..,1}
  bool displaced = false;  // phi_1(U) ∩ U empty, checked on the over-approximation
  bool area_preserved = false;  // |phi_1(U_over)| == |U_over| exactly
  bool meets_target = false;    // area_u > target_fraction*|N| - eps
};

struct DisplacementResult {
  DisplacementGadget gadget;
  DisplacementReport report;
};

// Requires nu < delta/2 < d/2 and k >= 1.  An explicit ridge override (for
// negative tests) replaces the canonical one.
DisplacementResult build_displacement(unsigned k, const Rat& d, const Rat& delta, const Rat& nu,
                                      const Rat& target_fraction, const Rat& eps = Rat(0),
                                      const std::vector<RidgePiece>* ridge_override = nullptr);

// Image of a rectilinear subregion of the gadget under the time-t shear
// (x, y) -> (x, y - t*f(x)); exact because the ridge is constant per slab.
Region shear_image(const DisplacementGadget& g, const Region& r, const Rat& t);

}  // namespace symcover
