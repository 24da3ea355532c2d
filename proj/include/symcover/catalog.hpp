// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// Manifold families as descriptor factories: surfaces, minimal ruled
// 4-manifolds (both S^2-bundles), products of higher-genus surfaces,
// complex projective spaces and complex Grassmannians.  Literature facts
// (width brackets, known Gamma values, explicit chart counts) are stored as
// cited constants; every S_B value is re-derived through the invariants
// pipeline, never hard-coded.
#pragma once

#include "symcover/invariants.hpp"

#include <string>
#include <variant>
#include <vector>

namespace symcover {

struct Surface {            // closed oriented surface of genus g, area a
  unsigned genus = 0;
  Rat area;
};
struct TrivialBundle {      // Sigma_g(a) x S^2(b)
  unsigned genus = 0;
  Rat a, b;
};
struct NontrivialBundle {   // twisted S^2-bundle over Sigma_g with form omega_{ab}
  unsigned genus = 0;
  Rat a, b;
};
struct ProductSurfaces {    // Sigma_g(a) x Sigma_h(b), g,h >= 1
  unsigned g = 1, h = 1;
  Rat a, b;
};
struct ProjectiveSpace {    // CP^n with the normalized Fubini-Study form
  unsigned n = 1;
};
struct Grassmannian {       // G_{k,n}, k-planes in C^n, normalized Kaehler form
  unsigned k = 1, n = 2;
};

using FamilySpec = std::variant<Surface, TrivialBundle, NontrivialBundle, ProductSurfaces,
                                ProjectiveSpace, Grassmannian>;

// Degree of the Pluecker embedding of G_{k,n}; exact integer, with an
// integrality assertion on the rational evaluation.
BigInt plucker_degree(unsigned k, unsigned n);

// Fully populated descriptor with per-field citations.  Normalizations:
// a >= b for products of two spheres, k <= floor(n/2) for Grassmannians.
ManifoldDescriptor describe(const FamilySpec& spec);

// S_B through the full pipeline (descriptor -> Gamma -> lambda -> case split
// -> chart-construction cap).
SBResult sb_of(const FamilySpec& spec);

struct FigureRow {
  Rat ratio;
  long long sb_min = 0;
  long long sb_max = 0;
  bool exact = false;
};

enum class FigureFamily { TrivialGenus0, TrivialGenusPos, NontrivialGenus0, NontrivialGenusPos };

// Step-function table of S_B over a grid of area ratios a/b (b fixed to 1).
std::vector<FigureRow> figure_table(FigureFamily family, const std::vector<Rat>& ratio_grid);
std::string figure_family_name(FigureFamily f);

struct ChartCoverReport {
  bool pass = false;
  unsigned charts = 0;
  std::size_t samples = 0;
};

// Random homogeneous coordinate vectors all admit a coordinate carrying at
// least 1/(n+1) of the squared norm, hence lie in one of the n+1 standard
// chart images; exact rational check, no square roots.
ChartCoverReport cpn_chart_cover_check(unsigned n, std::size_t samples, std::uint64_t seed = 1);

// Single-point version; rejects the zero vector.
bool projective_point_covered(unsigned n, const std::vector<Rat>& re, const std::vector<Rat>& im);

}  // namespace symcover
