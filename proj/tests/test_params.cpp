#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "stepwave/params.hpp"

using namespace stepwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("scale/unscale round trip", "[params]") {
  const FlowParams flow{0.4, 0.02, 0.01};
  const ScaledParams s = scale(flow, 0.16);
  CHECK_THAT(s.beta, WithinRel(1.0, 1e-15));
  CHECK_THAT(s.tau, WithinRel(0.02 / 0.0256, 1e-13));
  CHECK_THAT(s.delta_bar, WithinRel(2.0 * 0.01 / kPi, 1e-15));
  const FlowParams back = unscale(s);
  CHECK_THAT(back.froude, WithinRel(flow.froude, 1e-14));
  CHECK_THAT(back.bond, WithinRel(flow.bond, 1e-14));
  CHECK_THAT(back.step_height, WithinRel(flow.step_height, 1e-14));
}

TEST_CASE("branch constants, real-branch regime", "[params]") {
  const BranchedConstants c = branched_constants(1.0, 0.2);
  REQUIRE_FALSE(c.critical);
  REQUIRE_FALSE(c.gravity_only);
  CHECK_THAT(c.delta_disc.real(), WithinRel(0.2, 1e-15));
  CHECK_THAT(c.d_minus.real(), WithinRel(1.3819660112501051518, 1e-15));
  CHECK_THAT(c.d_plus.real(), WithinRel(3.6180339887498948482, 1e-15));
  CHECK_THAT(c.d_minus.imag(), WithinAbs(0.0, 0.0));
  // Product and sum of the branch constants come from the quadratic:
  const std::complex<double> prod = c.d_plus * c.d_minus;
  const std::complex<double> sum = c.d_plus + c.d_minus;
  CHECK_THAT(prod.real(), WithinRel(1.0 / (1.0 * 0.2), 1e-13));
  CHECK_THAT(sum.real(), WithinRel(1.0 / 0.2, 1e-13));
}

TEST_CASE("branch constants, conjugate-pair regime", "[params]") {
  const BranchedConstants c = branched_constants(1.0, 0.5);
  REQUIRE_FALSE(c.critical);
  CHECK_THAT(c.delta_disc.real(), WithinRel(-1.0, 1e-15));
  CHECK(c.d_minus.imag() > 0.0);
  CHECK(c.d_plus.imag() < 0.0);
  CHECK_THAT(std::abs(c.d_plus - std::conj(c.d_minus)), WithinAbs(0.0, 1e-15));
  for (const auto d : {c.d_minus, c.d_plus}) {
    const std::complex<double> quad = 1.0 * 0.5 * d * d - 1.0 * d + 1.0;
    CHECK_THAT(std::abs(quad), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("gravity-only limit", "[params]") {
  const BranchedConstants c = branched_constants(2.0, 0.0);
  CHECK(c.gravity_only);
  CHECK_THAT(c.d_minus.real(), WithinRel(0.5, 1e-15));
  CHECK_THROWS_AS(d_of(c, WaveFamily::capillary), std::domain_error);
  CHECK_NOTHROW(d_of(c, WaveFamily::gravity));
}

TEST_CASE("merged-branch detection", "[params]") {
  const BranchedConstants c = branched_constants(1.0, 0.25);
  CHECK(c.critical);
  const BranchedConstants c2 = branched_constants(1.0, 0.25 * (1.0 + 1e-12));
  CHECK(c2.critical);
  const BranchedConstants c3 = branched_constants(1.0, 0.26);
  CHECK_FALSE(c3.critical);
}

TEST_CASE("input validation", "[params]") {
  CHECK_THROWS_AS(FlowParams({-0.1, 0.02, 0.01}).validate(),
                  std::domain_error);
  CHECK_THROWS_AS(FlowParams({0.4, -0.1, 0.01}).validate(), std::domain_error);
  CHECK_THROWS_AS(FlowParams({0.4, 0.02, 0.0}).validate(), std::domain_error);
  CHECK_THROWS_AS(scale(FlowParams{0.4, 0.02, 0.01}, 0.0), std::domain_error);
  CHECK_THROWS_AS(branched_constants(-1.0, 0.2), std::domain_error);
  CHECK_THROWS_AS(branched_constants(1.0, -0.2), std::domain_error);
}
