// Copyright (c) 2026 The symcover authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "symcover/hamiltonian.hpp"

#include <cmath>

using namespace symcover;

namespace {

TranslationField demo_field() {
  // K = [0,1]^2 translated by (0,2); a generous support margin keeps the
  // bump gradients mild, which the Jacobian probe needs
  return make_translation_field(Box(rat(0), rat(0), rat(1), rat(1)), Point(rat(0), rat(2)),
                                rat(4));
}

}  // namespace

TEST_CASE("zero translation is the identity") {
  auto f = make_translation_field(Box(rat(0), rat(0), rat(1), rat(1)), Point(rat(0), rat(0)),
                                  rat(4));
  for (double x : {0.1, 0.5, 0.9})
    for (double y : {0.2, 0.6}) {
      auto out = translate_flow(f, {x, y}, 64);
      CHECK(out[0] == doctest::Approx(x).epsilon(1e-14));
      CHECK(out[1] == doctest::Approx(y).epsilon(1e-14));
    }
  auto rep = area_distortion_check(f, Box(rat(0), rat(0), rat(1), rat(1)), 4, 64);
  CHECK(rep.max_abs_det_minus_one == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("translation moves K by q within tolerance") {
  auto f = demo_field();
  // grid over K; field is constant q on the hull so the error is pure
  // integrator error
  double worst = 0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      double x = i / 20.0, y = j / 20.0;
      auto out = translate_flow(f, {x, y}, 1000);
      worst = std::max(worst, std::abs(out[0] - x));
      worst = std::max(worst, std::abs(out[1] - (y + 2.0)));
    }
  CHECK(worst < 1e-6);
  auto mid = translate_flow(f, {0.5, 0.5}, 1000);
  CHECK(std::abs(mid[0] - 0.5) < 1e-6);
  CHECK(std::abs(mid[1] - 2.5) < 1e-6);
}

TEST_CASE("points outside the support do not move at all") {
  auto f = demo_field();
  // support is [-4, 5] x [-4, 7]
  for (auto z : {std::vector<double>{-4.5, 0.5}, {6.0, 1.0}, {0.5, 8.0}, {0.5, -5.0}}) {
    auto out = translate_flow(f, z, 100);
    CHECK(out == z);  // bitwise identity
  }
}

TEST_CASE("time-1 map is area preserving to finite-difference accuracy") {
  auto f = demo_field();
  // probe inside the hull: exact translation, deviation tiny
  auto inner = area_distortion_check(f, Box(rat(1, 4), rat(1, 4), rat(3, 4), rat(3, 4)), 4, 500);
  CHECK(inner.max_abs_det_minus_one < 1e-4);
  // probe spanning the bump annulus between hull and support
  auto annulus = area_distortion_check(f, Box(rat(-2), rat(-2), rat(3), rat(5)), 12, 1000);
  CHECK(annulus.max_abs_det_minus_one < 1e-3);
}

TEST_CASE("displacement gadget: shape and exact displacement") {
  // k=1 shape: two squares joined by a corridor
  auto res = build_displacement(1, rat(1), rat(1, 4), rat(1, 64), rat(2, 5));
  const auto& g = res.gadget;
  const auto& rep = res.report;
  // |N| = 2 squares + corridor extra: 2*1 + 2*(1/4)*2*... computed exactly
  CHECK(rep.area_model == g.full_region.area());
  CHECK(rep.area_upper * 2 == rep.area_model);
  CHECK(rep.ridge_ok);
  CHECK(rep.shear_ok);
  CHECK(rep.displaced);
  CHECK(rep.area_preserved);
  CHECK(rep.area_u > rat(0));
  CHECK(rep.area_u < rep.area_u_over);
  // hand-derived erosion area: (3-2nu)(1/4-2nu) + (1-2nu)/2 at nu = 1/64
  CHECK(rep.area_u == rat(1161, 1024));
  CHECK(rep.area_model == rat(5, 2));
  CHECK(rep.meets_target);  // 1161/1024 > (2/5)*(5/2) = 1
}

TEST_CASE("area_u shrinks as nu grows but displacement persists") {
  Rat prev(-1);
  for (auto nu : {rat(1, 64), rat(1, 32), rat(1, 16)}) {
    auto res = build_displacement(2, rat(1), rat(1, 4), nu, rat(1, 3));
    CHECK(res.report.displaced);
    CHECK(res.report.shear_ok);
    if (prev >= 0) CHECK(res.report.area_u < prev);
    prev = res.report.area_u;
  }
}

TEST_CASE("three parameter triples displace exactly") {
  struct Triple { unsigned k; Rat d, delta, nu; };
  for (auto [k, d, delta, nu] : {Triple{1, rat(1), rat(1, 4), rat(1, 16)},
                                 Triple{3, rat(1, 2), rat(1, 8), rat(1, 32)},
                                 Triple{2, rat(1), rat(1, 5), rat(1, 20)}}) {
    auto res = build_displacement(k, d, delta, nu, rat(2, 5));
    CHECK(res.report.ridge_ok);
    CHECK(res.report.shear_ok);
    CHECK(res.report.displaced);
    CHECK(res.report.area_preserved);
  }
}

TEST_CASE("a ridge below the eroded set shears without displacing") {
  // constant tiny ridge: still inside the model, but the shift is smaller
  // than the corridor thickness, so the image overlaps the original
  std::vector<RidgePiece> low{{rat(0), rat(3), rat(1, 64)}};
  auto res = build_displacement(1, rat(1), rat(1, 4), rat(1, 16), rat(2, 5), rat(0), &low);
  CHECK(res.report.shear_ok);
  CHECK_FALSE(res.report.displaced);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_displacement(1, rat(1), rat(1, 4), rat(1, 8), rat(1, 3)),
                  std::invalid_argument);  // nu == delta/2
  CHECK_THROWS_AS(build_displacement(1, rat(1), rat(1, 2), rat(1, 8), rat(1, 3)),
                  std::invalid_argument);  // delta == d/2
  CHECK_THROWS_AS(build_displacement(0, rat(1), rat(1, 4), rat(1, 16), rat(1, 3)),
                  std::invalid_argument);
}

TEST_CASE("shear of the over-approximation is exactly measure preserving") {
  auto res = build_displacement(2, rat(1), rat(1, 4), rat(1, 12), rat(1, 3));
  for (int step = 1; step <= 4; ++step) {
    Region img = shear_image(res.gadget, res.gadget.u_over, Rat(step, 4));
    CHECK(img.area() == res.gadget.u_over.area());
  }
}
