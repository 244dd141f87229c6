#pragma once
// Exponential-asymptotics route to the same surface waves the Fourier
// inversion produces: the singulant attached to each wave family, the
// Stokes lines it generates, the inner-matching coefficient sequence, the
// Stokes-jump prefactor, and the error-function smoothing that switches
// the wave on across the line.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "stepwave/params.hpp"

namespace stepwave {

// ---------------------------------------------------------------------------
// Singulant.
//
// In the potential plane w = phi + i psi the step's corner sits at
// w = -i pi; mapping zeta = e^{-w} sends the free surface psi = 0 to
// zeta > 0 and the corner to zeta = -1.  The singulant of family D is
//     chi(zeta) = i D (Log zeta - i pi),
// which vanishes at the corner and has chi' = i D / zeta.
// ---------------------------------------------------------------------------

inline std::complex<double> singulant(const std::complex<double>& zeta,
                                      const BranchedConstants& c,
                                      WaveFamily family) {
  const std::complex<double> d = d_of(c, family);
  const std::complex<double> i(0.0, 1.0);
  return i * d * (std::log(zeta) - i * kPi);
}

inline std::complex<double>
singulant_derivative(const std::complex<double>& zeta,
                     const BranchedConstants& c, WaveFamily family) {
  const std::complex<double> d = d_of(c, family);
  return std::complex<double>(0.0, 1.0) * d / zeta;
}

// The singulant must satisfy the eikonal equation the outer expansion
// forces:  beta tau i zeta^2 (chi')^2 + beta zeta chi' - i = 0.
inline double singulant_ode_residual(const std::complex<double>& zeta,
                                     double beta, double tau,
                                     const BranchedConstants& c,
                                     WaveFamily family) {
  const std::complex<double> dchi = singulant_derivative(zeta, c, family);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> res =
      beta * tau * i * zeta * zeta * dchi * dchi + beta * zeta * dchi - i;
  return std::abs(res);
}

// ---------------------------------------------------------------------------
// Stokes lines: curves where Im chi = 0 and Re chi > 0, traced in the
// w-plane from the corner w = -i pi up to the free surface Im w = 0.
// Writing D = p + i q, the line of family D is
//     Re(D w) = pi q   =>   u = q (v + pi) / p   for w = u + i v,
// hitting the surface at u* = pi q / p: downstream of the step for the
// gravity family (q > 0), upstream for the capillary family (q < 0), and
// exactly above the corner when D is real (two-real-roots regime).
// ---------------------------------------------------------------------------

struct StokesLine {
  WaveFamily family = WaveFamily::gravity;
  std::vector<std::complex<double>> points; // w-plane samples, corner->surface
  std::vector<std::complex<double>> chi;    // singulant along the line
  double crossing_phi = 0.0;                // where the line meets Im w = 0
};

inline StokesLine stokes_line(const BranchedConstants& c, WaveFamily family,
                              int n_points = 200) {
  if (n_points < 2)
    throw std::domain_error("need at least two points on a line");
  const std::complex<double> d = d_of(c, family);
  const double p = d.real();
  const double q = d.imag();
  if (!(p > 0.0))
    throw std::domain_error("wave-family constant must have Re > 0");
  StokesLine line;
  line.family = family;
  line.crossing_phi = kPi * q / p;
  line.points.reserve(size_t(n_points));
  line.chi.reserve(size_t(n_points));
  for (int j = 0; j < n_points; ++j) {
    const double v = -kPi + kPi * double(j) / double(n_points - 1);
    const double u = q * (v + kPi) / p;
    const std::complex<double> w(u, v);
    line.points.push_back(w);
    line.chi.push_back(singulant(std::exp(-w), c, family));
  }
  return line;
}

// ---------------------------------------------------------------------------
// Inner-matching coefficients.  The recurrence
//     A_n = beta (A_{n-1} - tau A_{n-2}),   n >= 3,
// with A_0 = 1, A_1 = beta, A_2 = beta^2 (the n = 2 value is NOT produced
// by the recurrence), has for n >= 1 the closed form
//     A_n = (x_+^n - x_-^n) / sqrt(Delta),  x_{+,-} = beta (1 +- sqrt(Delta)) / 2,
// where x_{+,-} = 1 / D_{-,+}.  For Delta < 0 the conjugate-pair roots make
// the expression real automatically.
// ---------------------------------------------------------------------------

inline std::vector<double> inner_coefficients(double beta, double tau,
                                              int n_max) {
  if (!(beta > 0.0) || !(tau >= 0.0))
    throw std::domain_error("need beta > 0 and tau >= 0");
  if (n_max < 0)
    throw std::domain_error("n_max must be non-negative");
  std::vector<double> a(size_t(n_max) + 1);
  a[0] = 1.0;
  if (n_max >= 1)
    a[1] = beta;
  if (n_max >= 2)
    a[2] = beta * beta;
  for (int n = 3; n <= n_max; ++n)
    a[size_t(n)] = beta * (a[size_t(n) - 1] - tau * a[size_t(n) - 2]);
  return a;
}

inline double inner_coefficient_closed(double beta, double tau, int n) {
  if (n == 0)
    return 1.0;
  const BranchedConstants c = branched_constants(beta, tau);
  if (c.gravity_only)
    return std::pow(beta, n); // x_- = 0, sqrt(Delta) = 1
  const std::complex<double> xp = beta * (1.0 + c.sqrt_delta) / 2.0;
  const std::complex<double> xm = beta * (1.0 - c.sqrt_delta) / 2.0;
  const std::complex<double> v =
      (std::pow(xp, n) - std::pow(xm, n)) / c.sqrt_delta;
  return v.real();
}

// ---------------------------------------------------------------------------
// Stokes-jump prefactor.  The late orders of the outer expansion diverge as
// q_n ~ Q Gamma(n + gamma) / chi^{n + gamma} with gamma = 1 and constant
//     Q = Lambda = -(i/2) D_- / sqrt(Delta)   (gravity family)
//         Lambda = +(i/2) D_+ / sqrt(Delta)   (capillary family),
// and the wave switched on across the line is written through
// Theta = -i Lambda.
// ---------------------------------------------------------------------------

inline std::complex<double> lambda_const(const BranchedConstants& c,
                                         WaveFamily family) {
  if (c.critical)
    throw std::domain_error(
        "wave families have merged (discriminant ~ 0); prefactor undefined");
  const std::complex<double> d = d_of(c, family);
  const std::complex<double> i(0.0, 1.0);
  const double sign = (family == WaveFamily::capillary) ? 1.0 : -1.0;
  return sign * 0.5 * i * d / c.sqrt_delta;
}

inline std::complex<double> theta_const(const BranchedConstants& c,
                                        WaveFamily family) {
  return std::complex<double>(0.0, -1.0) * lambda_const(c, family);
}

// Shared wave envelope: both computation routes express the exponentially
// small free-surface amplitude as
//     prefactor * |D / sqrt(Delta)| * exp(-(pi Re D + |Im D * phi|) / eps).
inline double family_envelope(const BranchedConstants& c, WaveFamily family,
                              double eps, double phi) {
  if (c.critical)
    throw std::domain_error(
        "wave families have merged (discriminant ~ 0); amplitude undefined");
  if (!(eps > 0.0))
    throw std::domain_error("eps must be positive");
  const std::complex<double> d = d_of(c, family);
  const double magnitude = std::abs(d / c.sqrt_delta);
  const double decay = kPi * d.real() + std::abs(d.imag() * phi);
  return magnitude * std::exp(-decay / eps);
}

// Amplitude of the switched-on wave by the exponential-asymptotics route.
inline double exp_asym_amplitude(const ScaledParams& s,
                                 const BranchedConstants& c, WaveFamily family,
                                 double phi) {
  s.validate();
  return 2.0 * kPi * s.delta_bar / s.epsilon *
         family_envelope(c, family, s.epsilon, phi);
}

// ---------------------------------------------------------------------------
// Stokes smoothing.  Across the line, the wave's coefficient does not jump
// discontinuously: with distance parameter theta_bar and r = Re chi / eps
// at the crossing, the switching rate is the Gaussian
//     dS/d theta_bar = sqrt(2 pi r) i / eps^gamma * exp(-r theta_bar^2 / 2),
// whose integral over the full line is the jump 2 pi i / eps^gamma
// (times the prefactor Q).
// ---------------------------------------------------------------------------

struct SmoothingResult {
  double r = 0.0;
  double eps = 0.0;
  double gamma = 1.0;
  std::vector<double> theta_bar;           // sample locations
  std::vector<std::complex<double>> rate;  // dS/d theta_bar there
  std::complex<double> total{};            // trapezoid integral of the rate
  std::complex<double> jump_target{};      // 2 pi i / eps^gamma
  double rel_error = 0.0;
};

inline SmoothingResult stokes_smoothing(double r, double eps,
                                        double gamma = 1.0,
                                        int n_points = 10000) {
  if (!(r > 0.0) || !(eps > 0.0))
    throw std::domain_error("need r > 0 and eps > 0");
  if (n_points < 10)
    throw std::domain_error("need at least 10 sample points");
  SmoothingResult out;
  out.r = r;
  out.eps = eps;
  out.gamma = gamma;
  const double span = 8.0 / std::sqrt(r);
  const double scale = std::sqrt(2.0 * kPi * r) / std::pow(eps, gamma);
  const std::complex<double> i(0.0, 1.0);
  out.theta_bar.resize(size_t(n_points));
  out.rate.resize(size_t(n_points));
  const double h = 2.0 * span / double(n_points - 1);
  std::complex<double> acc(0.0, 0.0);
  for (int j = 0; j < n_points; ++j) {
    const double t = -span + h * double(j);
    const std::complex<double> v = scale * i * std::exp(-0.5 * r * t * t);
    out.theta_bar[size_t(j)] = t;
    out.rate[size_t(j)] = v;
    const double w = (j == 0 || j == n_points - 1) ? 0.5 : 1.0;
    acc += w * v;
  }
  out.total = acc * h;
  out.jump_target = 2.0 * kPi * i / std::pow(eps, gamma);
  out.rel_error = std::abs(out.total - out.jump_target) /
                  std::abs(out.jump_target);
  return out;
}

// ---------------------------------------------------------------------------
// The switched-on wave itself.  On the far side of the family's Stokes
// line the surface carries
//     theta_wave = (4 pi delta_bar / eps^gamma) Im[ Theta e^{-chi / eps} ]
// evaluated on the surface zeta = e^{-phi}, gamma = 1.
// ---------------------------------------------------------------------------

struct SwitchedWave {
  WaveFamily family = WaveFamily::gravity;
  double phi = 0.0;
  bool switched_on = false;           // true past the line's surface crossing
  double value = 0.0;                 // theta contribution at phi (0 if off)
  double amplitude = 0.0;             // envelope magnitude at phi
  std::complex<double> jump_factor{}; // -2 pi i Q e^{-chi/eps} / eps^gamma
};

inline SwitchedWave switched_wave(const ScaledParams& s,
                                  const BranchedConstants& c,
                                  WaveFamily family, double phi,
                                  double gamma = 1.0) {
  s.validate();
  SwitchedWave out;
  out.family = family;
  out.phi = phi;
  const std::complex<double> d = d_of(c, family);
  const double crossing = kPi * d.imag() / d.real();
  // Gravity waves live downstream of their crossing, capillary upstream.
  out.switched_on = (family == WaveFamily::gravity) ? (phi >= crossing)
                                                    : (phi <= crossing);
  const std::complex<double> chi =
      singulant(std::exp(std::complex<double>(-phi, 0.0)), c, family);
  const std::complex<double> big_theta = theta_const(c, family);
  const std::complex<double> lambda = lambda_const(c, family);
  const double eg = std::pow(s.epsilon, gamma);
  out.jump_factor = -2.0 * kPi * std::complex<double>(0.0, 1.0) * lambda *
                    std::exp(-chi / s.epsilon) / eg;
  out.amplitude = 2.0 * kPi * s.delta_bar / eg *
                  family_envelope(c, family, s.epsilon, phi);
  out.value = out.switched_on
                  ? 4.0 * kPi * s.delta_bar / eg *
                        (big_theta * std::exp(-chi / s.epsilon)).imag()
                  : 0.0;
  return out;
}

} // namespace stepwave
