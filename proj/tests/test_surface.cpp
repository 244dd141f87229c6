#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "stepwave/surface.hpp"

using namespace stepwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const FlowParams kFlow{0.4, 0.02, 0.01};

// Independent evaluation of the surface angle straight from the inversion
// integral,
//     theta(phi) = delta (F^2 / 2 pi)
//                  integral k e^{i k phi} / (cosh(pi k) g(k)) dk,
// by Simpson quadrature along the real axis (usable where the quartet is
// off-axis, so no poles sit on the integration path; the k = 0 point is a
// removable singularity with value 1/(F^2 - pi)).
double theta_direct(double phi, const FlowParams& flow, double k_max = 12.0,
                    int panels = 48000) {
  const double f2 = flow.froude * flow.froude;
  auto integrand = [&](double k) -> std::complex<double> {
    if (std::abs(k) < 1e-12)
      return std::complex<double>(1.0 / (f2 - kPi), 0.0);
    const std::complex<double> kk(k, 0.0);
    return kk * std::exp(std::complex<double>(0.0, k * phi)) /
           (std::cosh(kPi * kk) * dispersion_g(kk, flow));
  };
  const double h = 2.0 * k_max / double(2 * panels);
  std::complex<double> acc = integrand(-k_max) + integrand(k_max);
  for (int j = 1; j < 2 * panels; ++j)
    acc += integrand(-k_max + h * double(j)) * ((j % 2 == 1) ? 4.0 : 2.0);
  const std::complex<double> integral = acc * (h / 3.0);
  return flow.step_height * f2 / (2.0 * kPi) * integral.real();
}

} // namespace

TEST_CASE("residue series matches direct inversion quadrature", "[surface]") {
  const RootSet roots = find_roots(kFlow, 4);
  const LadderTerms lt = ladder_terms(kFlow, 0.8, 1e-15);
  for (double phi : {0.8, 1.7, -1.3}) {
    const double via_residues = theta_point(phi, kFlow, roots, lt).total;
    const double via_integral = theta_direct(phi, kFlow);
    CHECK_THAT(via_residues, WithinRel(via_integral, 1e-6));
  }
}

TEST_CASE("surface angle is even where the quartet is off-axis", "[surface]") {
  const RootSet roots = find_roots(kFlow, 4);
  const LadderTerms lt = ladder_terms(kFlow, 0.45, 1e-15);
  for (double phi : {0.45, 1.7, 3.2}) {
    const double right = theta_point(phi, kFlow, roots, lt).total;
    const double left = theta_point(-phi, kFlow, roots, lt).total;
    CHECK_THAT(right, WithinRel(left, 1e-12));
  }
}

TEST_CASE("ladder truncation is converged at its quality target", "[surface]") {
  const LadderTerms coarse = ladder_terms(kFlow, 0.025, 1e-15);
  const LadderTerms fine = ladder_terms(kFlow, 0.0125, 1e-15);
  REQUIRE(fine.beta.size() > coarse.beta.size());
  const double a = ladder_sum(coarse, kFlow, 0.025);
  const double b = ladder_sum(fine, kFlow, 0.025);
  CHECK_THAT(a, WithinAbs(b, 1e-12));
}

TEST_CASE("profile values away from the step are depth-independent",
          "[surface]") {
  // Away from phi = 0 the dropped ladder tail is exponentially suppressed,
  // so profiles built with very different truncation depths agree to machine
  // precision there; exactly at phi = 0 only the slow alternating-tail
  // convergence is available (documented behaviour).
  const SurfaceProfile shallow = build_profile(kFlow, {0.0, 0.5, 1.0});
  const SurfaceProfile deep = build_profile(kFlow, {0.0, 0.01, 0.5, 1.0});
  REQUIRE(deep.ladder_terms_used > 10 * shallow.ladder_terms_used);
  CHECK_THAT(deep.theta[2], WithinRel(shallow.theta[1], 1e-14));
  CHECK_THAT(deep.theta[3], WithinRel(shallow.theta[2], 1e-14));
  // Deep-truncation value at the step itself (slow limit ~ -1.405865e-4).
  CHECK_THAT(deep.theta[0], WithinRel(-1.405872e-4, 1e-4));
  CHECK(std::abs(deep.theta[0] - shallow.theta[0]) < 2e-6);
}

TEST_CASE("kernel transforms match their closed forms", "[surface]") {
  struct Frozen {
    double k, plus_im, minus_im;
  };
  // Frozen reference values of the transforms (pure imaginary).
  const Frozen table[] = {
      {0.5, -3.4253771499, -1.3651389007},
      {1.0, -3.1533480949, -0.2720290550},
      {2.0, -3.1416145653, -0.0117335297},
  };
  for (const auto& row : table) {
    const KernelCheck kc = kernel_transform_check(row.k);
    CHECK(kc.rel_plus < 1e-8);
    CHECK(kc.rel_minus < 1e-8);
    CHECK_THAT(kc.numeric_plus.real(), WithinAbs(0.0, 1e-8));
    CHECK_THAT(kc.numeric_minus.real(), WithinAbs(0.0, 1e-8));
    CHECK_THAT(kc.numeric_plus.imag(), WithinAbs(row.plus_im, 2e-9));
    CHECK_THAT(kc.numeric_minus.imag(), WithinAbs(row.minus_im, 2e-9));
  }
}

TEST_CASE("governing-equation residual oracle", "[surface][oracle]") {
  const OracleReport rep = governing_residual_oracle(kFlow);
  // Largest |theta| over the evaluation window 1 <= |phi| <= 12; the global
  // maximum sits nearer the step and is slightly larger (~1.4e-4).
  CHECK(rep.max_theta > 0.9e-4);
  CHECK(rep.max_theta < 1.2e-4);
  CHECK(rep.ratio < 1e-5);
}

TEST_CASE("both amplitude routes agree at machine precision", "[surface]") {
  ScaledParams s{0.1, 1.0, 0.2, 2.0 * 0.01 / kPi};
  const BranchedConstants c = branched_constants(s);
  for (double phi : {-5.0, 0.0, 5.0}) {
    for (WaveFamily fam : {WaveFamily::gravity, WaveFamily::capillary}) {
      const double a_fourier = fourier_amplitude(s, c, fam, phi).amplitude;
      const double a_exp = exp_asym_amplitude(s, c, fam, phi);
      CHECK_THAT(a_fourier, WithinRel(a_exp, 1e-15));
    }
  }
}

TEST_CASE("amplitude envelope decays away from the step when the branch "
          "constants are complex",
          "[surface]") {
  ScaledParams s{0.1, 1.0, 0.5, 2.0 * 0.01 / kPi};
  const BranchedConstants c = branched_constants(s);
  const double at0 = fourier_amplitude(s, c, WaveFamily::gravity, 0.0).amplitude;
  const double at2 = fourier_amplitude(s, c, WaveFamily::gravity, 2.0).amplitude;
  CHECK(at2 < at0);
  CHECK(at0 > 0.0);
}

TEST_CASE("profile builder levels the upstream end", "[surface]") {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i)
    grid.push_back(-10.0 + 20.0 * i / 100.0);
  const SurfaceProfile sp = build_profile(FlowParams{0.3, 0.001, 0.01}, grid);
  REQUIRE(sp.phi.size() == grid.size());
  CHECK(sp.region == Region::two_real);
  double mean = 0.0;
  const size_t quarter = grid.size() / 4;
  for (size_t i = 0; i < quarter; ++i)
    mean += sp.elevation[i];
  mean /= double(quarter);
  CHECK_THAT(mean, WithinAbs(0.0, 1e-12));
  // Ladder part decays away from the step.
  CHECK(std::abs(sp.ladder.front()) < std::abs(sp.ladder[grid.size() / 2]));
}

TEST_CASE("operations refuse coalescing parameters", "[surface]") {
  // On the coalescence curve B = F^4/4 (small-Bond regime) the wave roots
  // merge and the residue evaluation must refuse.
  const FlowParams on_curve{0.4, 0.0064, 0.01};
  const RootSet rs = find_roots(on_curve, 2);
  CHECK(rs.region == Region::boundary);
  const LadderTerms lt = ladder_terms(on_curve, 1.0, 1e-12);
  CHECK_THROWS_AS(theta_point(1.0, on_curve, rs, lt), std::domain_error);
  // Merged branch constants likewise refuse amplitude evaluation.
  ScaledParams s{0.1, 1.0, 0.25, 0.01};
  const BranchedConstants c = branched_constants(s);
  REQUIRE(c.critical);
  CHECK_THROWS_AS(fourier_amplitude(s, c, WaveFamily::gravity, 0.0),
                  std::domain_error);
}
