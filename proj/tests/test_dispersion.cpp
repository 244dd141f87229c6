#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "stepwave/dispersion.hpp"

using namespace stepwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const FlowParams kQuartetFlow{0.4, 0.02, 0.01};
const FlowParams kTwoRealFlow{0.3, 0.001, 0.01};
} // namespace

TEST_CASE("characteristic function is odd", "[dispersion]") {
  const std::complex<double> ks[] = {{0.7, 0.3}, {2.1, -1.4}, {0.0, 3.3}};
  for (const auto& k : ks) {
    const auto diff = dispersion_g(k, kQuartetFlow) +
                      dispersion_g(-k, kQuartetFlow);
    CHECK_THAT(std::abs(diff), WithinAbs(0.0, 1e-13));
  }
}

TEST_CASE("derivatives match finite differences", "[dispersion]") {
  const std::complex<double> k(0.7, 0.3);
  const double h = 1e-6;
  for (const auto& dir :
       {std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 1.0)}) {
    const auto fd_g = (dispersion_g(k + h * dir, kQuartetFlow) -
                       dispersion_g(k - h * dir, kQuartetFlow)) /
                      (2.0 * h * dir);
    const auto gp = dispersion_g_prime(k, kQuartetFlow);
    CHECK_THAT(std::abs(fd_g - gp), WithinAbs(0.0, 1e-6 * (1.0 + std::abs(gp))));
    const auto fd_gp = (dispersion_g_prime(k + h * dir, kQuartetFlow) -
                        dispersion_g_prime(k - h * dir, kQuartetFlow)) /
                       (2.0 * h * dir);
    const auto gpp = dispersion_g_second(k, kQuartetFlow);
    CHECK_THAT(std::abs(fd_gp - gpp),
               WithinAbs(0.0, 1e-6 * (1.0 + std::abs(gpp))));
  }
}

TEST_CASE("saturation guard keeps large arguments finite", "[dispersion]") {
  const std::complex<double> ks[] = {{1e3, 0.0}, {40.0, 5.0}, {-500.0, 2.0}};
  for (const auto& k : ks) {
    CHECK(std::isfinite(std::abs(dispersion_g(k, kQuartetFlow))));
    CHECK(std::isfinite(std::abs(dispersion_g_prime(k, kQuartetFlow))));
    CHECK(std::isfinite(std::abs(dispersion_g_second(k, kQuartetFlow))));
  }
}

TEST_CASE("real root pair in the radiating regime", "[dispersion]") {
  const RealRootPair rp = real_roots(kTwoRealFlow);
  REQUIRE(rp.found);
  REQUIRE_FALSE(rp.near_coalescence);
  CHECK(rp.k0 > 0.0);
  CHECK(rp.k1 > rp.k0);
  CHECK_THAT(std::abs(dispersion_g({rp.k0, 0.0}, kTwoRealFlow)),
             WithinAbs(0.0, 1e-10));
  CHECK_THAT(std::abs(dispersion_g({rp.k1, 0.0}, kTwoRealFlow)),
             WithinAbs(0.0, 1e-10));
}

TEST_CASE("real roots approach the branch constants over eps", "[dispersion]") {
  // For beta = 1, tau = 0.2 the roots k ~ D/eps carry corrections that
  // shrink faster than any power of eps; the double-precision gaps here are
  // the exponentially small tanh corrections.
  const BranchedConstants c = branched_constants(1.0, 0.2);
  const double eps[] = {0.5, 0.4, 0.3};
  const double gap_tol[] = {4e-7, 6e-9, 4e-12};
  double prev_gap = 1.0;
  for (int i = 0; i < 3; ++i) {
    const ScaledParams sp{eps[i], 1.0, 0.2, 0.01};
    const FlowParams flow = unscale(sp);
    const RealRootPair rp = real_roots(flow);
    REQUIRE(rp.found);
    const double gap_minus = std::abs(eps[i] * rp.k0 - c.d_minus.real());
    const double gap_plus = std::abs(eps[i] * rp.k1 - c.d_plus.real());
    CHECK(gap_minus < gap_tol[i]);
    CHECK(gap_plus < 1e-12);
    CHECK(gap_minus < prev_gap);
    prev_gap = gap_minus;
  }
}

TEST_CASE("imaginary ladder enumerates branch by branch", "[dispersion]") {
  const auto ladder = imaginary_ladder(kQuartetFlow, 12);
  // Every root satisfies the axis form of the characteristic equation...
  const double f2 = kQuartetFlow.froude * kQuartetFlow.froude;
  for (double b : ladder) {
    const double s = b * f2 * std::cos(kPi * b) -
                     std::sin(kPi * b) * (1.0 - kQuartetFlow.bond * b * b);
    CHECK_THAT(s, WithinAbs(0.0, 1e-9 * (1.0 + b)));
  }
  // ...they are sorted and distinct...
  for (size_t i = 1; i < ladder.size(); ++i)
    CHECK(ladder[i] > ladder[i - 1] + 1e-9);
  // ...and at these parameters branch 7 holds no root while its
  // neighbours each hold one.
  auto count_in = [&](double lo, double hi) {
    int c = 0;
    for (double b : ladder)
      if (b > lo && b < hi)
        ++c;
    return c;
  };
  CHECK(count_in(6.5, 7.5) == 0);
  for (int n : {1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12})
    CHECK(count_in(n - 0.5, n + 0.5) == 1);
}

TEST_CASE("deep-ladder enumeration stays on branch", "[dispersion]") {
  const FlowParams flow{0.3, 0.01, 0.01};
  const auto ladder = imaginary_ladder(flow, 60);
  const double f2 = flow.froude * flow.froude;
  auto count_in = [&](double lo, double hi) {
    int c = 0;
    for (double b : ladder)
      if (b > lo && b < hi)
        ++c;
    return c;
  };
  // Across the scan/seeded-iteration boundary every branch keeps exactly
  // one root with a small residual.
  for (int n = 35; n <= 45; ++n) {
    CHECK(count_in(n - 0.5, n + 0.5) == 1);
  }
  for (double b : ladder) {
    const double s = b * f2 * std::cos(kPi * b) -
                     std::sin(kPi * b) * (1.0 - flow.bond * b * b);
    CHECK_THAT(s, WithinAbs(0.0, 1e-8 * (1.0 + b)));
  }
}

TEST_CASE("complex quartet at the reference parameters", "[dispersion]") {
  const Quartet q = complex_quartet(kQuartetFlow);
  REQUIRE_FALSE(q.on_axis);
  CHECK_THAT(q.k0.real(), WithinRel(4.000000000105673, 1e-9));
  CHECK_THAT(q.k0.imag(), WithinRel(-5.830951894897773, 1e-9));
  CHECK_THAT(std::abs(q.k1 - std::conj(q.k0)), WithinAbs(0.0, 1e-14));
  CHECK_THAT(std::abs(dispersion_g(q.k0, kQuartetFlow)),
             WithinAbs(0.0, 1e-10));
}

TEST_CASE("region classification", "[dispersion]") {
  CHECK(classify(kTwoRealFlow) == Region::two_real);
  CHECK(classify(kQuartetFlow) == Region::complex_quartet);
}

TEST_CASE("root-coalescence curve", "[dispersion]") {
  const auto curve = critical_curve(1e-4, 1e-2, 50);
  REQUIRE(curve.size() == 50);
  double prev_f = 0.0;
  for (const auto& p : curve) {
    CHECK(p.g_residual <= 1e-10);
    CHECK(p.gp_residual <= 1e-10);
    CHECK(p.froude > prev_f);
    prev_f = p.froude;
    // Small-Bond asymptote: F -> (4B)^{1/4}, k* -> 1/sqrt(B).
    CHECK_THAT(p.froude, WithinRel(std::pow(4.0 * p.bond, 0.25), 1e-6));
    CHECK_THAT(p.k_star * std::sqrt(p.bond), WithinRel(1.0, 1e-6));
  }
}
