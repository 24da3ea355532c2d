// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
//
// Covering-number calculus for closed symplectic manifolds: the volume
// invariant Gamma, the smooth lower bound B(M), lambda = max{B, Gamma},
// and the case split that pins the minimal Darboux-chart count S_B either
// exactly or to an integer range.  All arithmetic is exact; Gromov widths
// are intervals because several families only come with brackets.
#pragma once

#include "symcover/rational.hpp"

#include <string>
#include <vector>

namespace symcover {

struct IntInterval {
  long long lo = 0;
  long long hi = 0;

  IntInterval() = default;
  IntInterval(long long l, long long h) : lo(l), hi(h) {
    if (l > h) throw std::invalid_argument("empty integer interval");
  }
  static IntInterval exact(long long v) { return IntInterval(v, v); }
  bool is_exact() const { return lo == hi; }
  bool operator==(const IntInterval& o) const { return lo == o.lo && hi == o.hi; }
};

// Rational interval [lo, hi]; hi absent means unbounded above.
struct RatInterval {
  Rat lo;
  std::optional<Rat> hi;

  RatInterval() = default;
  RatInterval(Rat l, std::optional<Rat> h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi && *hi < lo) throw std::invalid_argument("empty rational interval");
  }
  static RatInterval exact(const Rat& v) { return RatInterval(v, v); }
  bool is_exact() const { return hi && *hi == lo; }
};

// Everything the calculus needs to know about one closed symplectic
// manifold.  Literature facts (a width bracket, an explicit chart count, a
// known Gamma) carry their own citation strings in the catalog layer.
struct ManifoldDescriptor {
  unsigned half_dim = 1;  // n; dim M = 2n
  Rat volume;
  RatInterval gromov_width;            // [lo, hi], lo > 0, hi may be unbounded
  IntInterval b_of_m;                  // smooth ball-cover number B(M)
  IntInterval cat;                     // Lusternik-Schnirelmann category
  IntInterval cup_length;
  bool simply_connected = false;
  bool omega_aspherical = false;       // the symplectic class vanishes on spheres
  std::optional<long long> ball_cover_upper;  // explicit chart construction
  std::optional<IntInterval> big_gamma_known;  // literature value overriding the width route
  std::vector<std::string> citations;

  void validate() const;
};

enum class SBKind { Exact, Range, Set };

struct SBResult {
  SBKind kind = SBKind::Range;
  long long lo = 0;
  long long hi = 0;
  std::vector<long long> values;  // explicit members, always populated
  std::vector<std::string> provenance;

  static SBResult exact(long long v, std::vector<std::string> notes = {});
  static SBResult range(long long lo, long long hi, std::vector<std::string> notes = {});
  bool is_exact() const { return kind == SBKind::Exact; }
  bool operator==(const SBResult& o) const { return lo == o.lo && hi == o.hi; }
};

// gamma = width^n / n!, the largest ball volume a width-w ball carries.
Rat gamma_capacity(const Rat& width, unsigned n);

// Gamma = floor(volume / gamma) + 1.
long long big_gamma(const Rat& volume, const Rat& width, unsigned n);

// Interval version with outward rounding only at the floor step:
// [floor(V/gamma(hi))+1, floor(V/gamma(lo))+1]; an unbounded width upper
// end yields lower end 1.
IntInterval big_gamma_interval(const Rat& volume, const RatInterval& width, unsigned n);

// lambda = max{B, Gamma}, elementwise on intervals.
IntInterval lambda_value(const IntInterval& b, const IntInterval& gamma);

// The main case split: lambda >= 2n+1 pins S_B = lambda; otherwise S_B lies
// in [lambda, 2n+1].  An explicit chart construction caps the result.
SBResult sb_bounds_from_lambda(const IntInterval& lambda, unsigned n,
                               std::optional<long long> ball_cover_upper = std::nullopt);

struct CategoryBallBounds {
  IntInterval cat;
  IntInterval b_of_m;
  // cat < B is only admissible as (cat, B) = (n+1, n+2); recorded so callers
  // can prune candidate pairs.
  bool strict_gap_forces_n_plus_2 = true;
};

// cat/B bounds from the two topological flags (simply connected forces both
// to n+1; an aspherical symplectic class forces both to 2n+1).
CategoryBallBounds category_ball_bounds(bool simply_connected, bool omega_aspherical, unsigned n);

// Singhof's bound for a closed p-connected M^m: with t = (m+p+4)/(2(p+1)),
// cat >= t gives B = cat, else B <= ceil(t).
IntInterval singhof_bound(unsigned m, unsigned p, long long cat);

// Annotation for the equal-ball variant: exact results coming from a large
// lambda transfer verbatim; anything else transfers as the same range,
// conditionally on path-connected embedding spaces.
std::string equal_ball_report(const SBResult& result, bool lambda_exact_and_large);

// Full pipeline on a descriptor: gamma/Gamma/lambda/S_B with provenance.
struct InvariantReport {
  RatInterval gamma;
  IntInterval big_gamma;
  IntInterval lambda;
  SBResult sb;
  std::string equal_ball_note;
};

InvariantReport evaluate_descriptor(const ManifoldDescriptor& d);

}  // namespace symcover
