// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// The lattice cube cover D(2n,k) of R^{2n}: k colour classes of translated
// unit cubes generated by an upper-bidiagonal matrix, with exact same-colour
// gap delta and integer periods along every axis.  The verifiers work on
// finite windows with exact rational arithmetic only.
#pragma once

#include "symcover/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace symcover {

// Upper-bidiagonal generator matrix: diagonal (k, 1, ..., 1), upper diagonal
// (k/2n, 2n/(2n-1), ..., 4/3, 3/2), zeroes elsewhere.
struct CoverMatrix {
  unsigned n = 0;  // half-dimension; matrix is 2n x 2n
  unsigned k = 0;
  std::vector<Rat> diag;   // size 2n
  std::vector<Rat> upper;  // size 2n-1

  std::size_t dim() const { return 2 * n; }
  Rat entry(std::size_t row, std::size_t col) const;
  // y = M v for an integer vector v.
  Point apply(const std::vector<long long>& v) const;
};

struct DimensionCover {
  CoverMatrix matrix;
  Rat delta;                        // min{(k-2n)/2n, 1/(2n-1)} > 0
  std::vector<unsigned> periods;    // lambda_1..lambda_2n: (k, 2n, 2n-1, ..., 2)
};

// Requires k >= 2n+1 (otherwise the same-colour gap would be <= 0).
DimensionCover build_cover(unsigned n, unsigned k);

// One cube of colour j at lattice index v, geometric box
// scale*(M v + (j-1)e_1) + [0,scale]^{2n}.
struct LatticeCube {
  unsigned color = 1;  // 1..k
  std::vector<long long> index;
  Rat scale;
  Box box;
};

Box lattice_cube_box(const DimensionCover& cover, unsigned color,
                     const std::vector<long long>& v, const Rat& scale);

// All cubes of the given colour whose closed box intersects the window,
// in lexicographic index order.
std::vector<LatticeCube> enumerate_cubes(const DimensionCover& cover, unsigned color,
                                         const Box& window, const Rat& scale);

struct GapReport {
  Rat min_gap_sq;
  std::optional<Rat> min_gap;  // exact square root when it exists
  bool pass = false;           // min gap == delta * scale, exactly
  std::size_t pairs_checked = 0;
  std::size_t cubes = 0;
};

// Exact minimum distance over all distinct same-colour cube pairs fully
// inside the window, compared against delta*scale.  Errors when the window
// holds fewer than two cubes of the colour.
GapReport verify_gap(const DimensionCover& cover, unsigned color, const Box& window,
                     const Rat& scale = Rat(1));

struct CoveringReport {
  bool covered = false;
  std::size_t interior_overlap_pairs = 0;
  Rat uncovered_area;  // exact remainder area (0 when covered)
  std::size_t cubes = 0;
};

// Exact covering / disjointness check on a window: the window is refined to
// the common rational grid of all cube corners and every cell mark is
// accounted for (a subtraction of each cube box from the window, cell by
// cell); no sampling anywhere.
CoveringReport verify_covering_and_disjointness(const DimensionCover& cover, const Box& window,
                                                const Rat& scale = Rat(1));

struct CylinderReport {
  bool pass = false;
  std::size_t expected = 0;
  std::size_t found = 0;
  std::string detail;
};

// Cylinder law along one axis (1-based axis index m):
//  m == 1: cubes of colour j meeting Z_1(Int C) are exactly the k*l*e_1
//          translates of C;
//  m >= 2: cubes meeting Z_m(N_delta(C)) are exactly the (2n-m+2)*l*e_m
//          translates.  Checked as a set equality over the window.
CylinderReport verify_cylinder_law(const DimensionCover& cover, unsigned color,
                                   const LatticeCube& cube, unsigned axis, const Box& window);

}  // namespace symcover
