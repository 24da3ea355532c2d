// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
#include "symcover/invariants.hpp"

#include <algorithm>

namespace symcover {

void ManifoldDescriptor::validate() const {
  if (half_dim == 0) throw std::invalid_argument("half dimension must be positive");
  if (volume <= 0) throw std::invalid_argument("volume must be positive");
  if (gromov_width.lo <= 0) throw std::invalid_argument("width lower bound must be positive");
  const long long n = half_dim;
  if (!(n + 1 <= cup_length.lo + 1 && cup_length.lo + 1 <= cat.lo))
    throw std::invalid_argument("cup-length / category chain violated");
  if (!(cat.hi <= b_of_m.hi && b_of_m.hi <= 2 * n + 1))
    throw std::invalid_argument("category / ball-cover chain violated");
  if (simply_connected && omega_aspherical && n >= 1)
    throw std::invalid_argument("simply connected together with an aspherical class is vacuous here");
}

SBResult SBResult::exact(long long v, std::vector<std::string> notes) {
  SBResult r;
  r.kind = SBKind::Exact;
  r.lo = r.hi = v;
  r.values = {v};
  r.provenance = std::move(notes);
  return r;
}

SBResult SBResult::range(long long lo, long long hi, std::vector<std::string> notes) {
  if (lo > hi) throw std::invalid_argument("empty S_B range");
  if (lo == hi) return exact(lo, std::move(notes));
  SBResult r;
  r.kind = SBKind::Range;
  r.lo = lo;
  r.hi = hi;
  for (long long v = lo; v <= hi; ++v) r.values.push_back(v);
  r.provenance = std::move(notes);
  return r;
}

Rat gamma_capacity(const Rat& width, unsigned n) {
  if (width <= 0) throw std::invalid_argument("width must be positive");
  Rat p = 1;
  for (unsigned i = 0; i < n; ++i) p *= width;
  return p / Rat(factorial(n));
}

long long big_gamma(const Rat& volume, const Rat& width, unsigned n) {
  if (volume <= 0) throw std::invalid_argument("volume must be positive");
  return static_cast<long long>(rat_floor(volume / gamma_capacity(width, n))) + 1;
}

IntInterval big_gamma_interval(const Rat& volume, const RatInterval& width, unsigned n) {
  long long hi = big_gamma(volume, width.lo, n);
  long long lo = width.hi ? big_gamma(volume, *width.hi, n) : 1;
  return IntInterval(lo, hi);
}

IntInterval lambda_value(const IntInterval& b, const IntInterval& gamma) {
  return IntInterval(std::max(b.lo, gamma.lo), std::max(b.hi, gamma.hi));
}

SBResult sb_bounds_from_lambda(const IntInterval& lambda, unsigned n,
                               std::optional<long long> ball_cover_upper) {
  const long long dim_plus_one = 2 * static_cast<long long>(n) + 1;
  if (lambda.lo < static_cast<long long>(n) + 1)
    throw std::invalid_argument("inconsistent descriptor: lambda below n+1");

  SBResult r;
  std::vector<std::string> notes;
  if (lambda.is_exact() && lambda.lo >= dim_plus_one) {
    notes.push_back("exact: lambda meets the dimension threshold, so the cover count equals lambda");
    r = SBResult::exact(lambda.lo, notes);
  } else if (lambda.hi < dim_plus_one) {
    notes.push_back("range: lambda below the dimension threshold, dimension cap 2n+1 applies");
    r = SBResult::range(lambda.lo, dim_plus_one, notes);
  } else {
    notes.push_back("range: lambda only bracketed; upper end capped by max(lambda_hi, 2n+1)");
    r = SBResult::range(lambda.lo, std::max(lambda.hi, dim_plus_one), notes);
  }
  if (ball_cover_upper) {
    if (*ball_cover_upper < r.lo)
      throw std::invalid_argument("chart-construction upper bound below the lower bound");
    if (*ball_cover_upper < r.hi) {
      auto notes2 = r.provenance;
      notes2.push_back("intersected with explicit chart-construction upper bound");
      r = SBResult::range(r.lo, *ball_cover_upper, notes2);
    }
  }
  // hard sanity: n+1 <= everything <= max(lambda_hi, 2n+1)
  if (r.lo < static_cast<long long>(n) + 1 || r.hi > std::max(lambda.hi, dim_plus_one))
    throw std::logic_error("S_B bounds escaped their envelope");
  return r;
}

CategoryBallBounds category_ball_bounds(bool simply_connected, bool omega_aspherical, unsigned n) {
  const long long np1 = static_cast<long long>(n) + 1;
  const long long top = 2 * static_cast<long long>(n) + 1;
  if (simply_connected && omega_aspherical && n >= 1)
    throw std::invalid_argument("inconsistent flags");
  CategoryBallBounds out{IntInterval(np1, top), IntInterval(np1, top), true};
  if (simply_connected) {
    out.cat = IntInterval::exact(np1);
    out.b_of_m = IntInterval::exact(np1);
  } else if (omega_aspherical) {
    out.cat = IntInterval::exact(top);
    out.b_of_m = IntInterval::exact(top);
  }
  return out;
}

IntInterval singhof_bound(unsigned m, unsigned p, long long cat) {
  if (m % 2 != 0 || m < 2) throw std::invalid_argument("even dimension expected");
  if (cat < 2) throw std::invalid_argument("category at least 2 expected");
  Rat threshold(m + p + 4, 2 * (p + 1));
  if (Rat(cat) >= threshold) return IntInterval::exact(cat);
  return IntInterval(cat, static_cast<long long>(rat_ceil(threshold)));
}

std::string equal_ball_report(const SBResult& result, bool lambda_exact_and_large) {
  if (lambda_exact_and_large && result.is_exact())
    return "equal-ball count = " + std::to_string(result.lo) +
           " (the construction already uses equal balls)";
  if (!result.is_exact())
    return "equal-ball count in [" + std::to_string(result.lo) + ", " + std::to_string(result.hi) +
           "]; equality with the mixed-ball count holds if the ball-embedding spaces are "
           "path-connected for every capacity (not computed here)";
  return "equal-ball bound not implied by this rule";
}

InvariantReport evaluate_descriptor(const ManifoldDescriptor& d) {
  d.validate();
  InvariantReport rep;
  rep.gamma = RatInterval(gamma_capacity(d.gromov_width.lo, d.half_dim),
                          d.gromov_width.hi
                              ? std::optional<Rat>(gamma_capacity(*d.gromov_width.hi, d.half_dim))
                              : std::nullopt);
  rep.big_gamma = d.big_gamma_known ? *d.big_gamma_known
                                    : big_gamma_interval(d.volume, d.gromov_width, d.half_dim);
  rep.lambda = lambda_value(d.b_of_m, rep.big_gamma);
  rep.sb = sb_bounds_from_lambda(rep.lambda, d.half_dim, d.ball_cover_upper);
  bool large = rep.lambda.is_exact() && rep.lambda.lo >= 2 * static_cast<long long>(d.half_dim) + 1;
  rep.equal_ball_note = equal_ball_report(rep.sb, large);
  return rep;
}

}  // namespace symcover
