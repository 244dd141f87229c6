#pragma once
// Fourier-inversion route to the free-surface response over a small step:
// the surface angle theta(phi) assembled from residue contributions (the
// radiating wave poles plus the imaginary-axis ladder), the integrated
// elevation, the asymptotic amplitude formula, and two independent checks
// (closed-form kernel transforms and a direct residual of the governing
// integro-differential equation).

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "stepwave/asymptotics.hpp"
#include "stepwave/dispersion.hpp"
#include "stepwave/params.hpp"

namespace stepwave {

// log(cosh(z)) without overflow for large |Re z|:
// cosh z = e^{|Re z| sign} (1 + e^{-2 z sign}) / 2.
inline std::complex<double> log_cosh(const std::complex<double>& z) {
  const std::complex<double> zz = (z.real() >= 0.0) ? z : -z;
  if (zz.real() > 30.0)
    return zz - std::log(2.0);
  return zz - std::log(2.0) + std::log(1.0 + std::exp(-2.0 * zz));
}

// ---------------------------------------------------------------------------
// Imaginary-axis ladder, enumerated to a prescribed truncation quality: the
// n-th term contributes ~ F^2 |c_n| e^{-beta_n |phi|}, so terms are kept
// until that bound at the smallest evaluation |phi| drops below tail_tol.
// The coefficients only decay like 1/(pi B beta_n), so near phi = 0 the sum
// converges through sign alternation; ladder_sum applies one averaging step
// (half of the final term) to accelerate the alternating tail.
// ---------------------------------------------------------------------------

struct LadderTerms {
  std::vector<double> beta;  // roots on the positive imaginary axis
  std::vector<double> coef;  // beta_n / (cos(pi beta_n) g'(i beta_n))
  double tail_bound = 0.0;   // bound on the first dropped term at phi_min
  double phi_min = 0.0;
};

inline LadderTerms ladder_terms(const FlowParams& flow, double phi_min,
                                double tail_tol = 1e-15, int n_cap = 6000) {
  flow.validate();
  const double f2 = flow.froude * flow.froude;
  const double pm = std::max(phi_min, 1e-3);
  int n_max = int(std::ceil(-std::log(tail_tol) / pm)) + 5;
  n_max = std::min(n_max, n_cap);
  LadderTerms lt;
  lt.phi_min = phi_min;
  const std::vector<double> roots = imaginary_ladder(flow, n_max);
  for (double b : roots) {
    const double gp =
        dispersion_g_prime(std::complex<double>(0.0, b), flow).real();
    const double c = b / (std::cos(kPi * b) * gp);
    lt.beta.push_back(b);
    lt.coef.push_back(c);
  }
  if (!lt.beta.empty()) {
    const double b = lt.beta.back();
    lt.tail_bound =
        f2 * std::abs(lt.coef.back()) * std::exp(-b * pm) / 2.0;
  }
  return lt;
}

inline double ladder_sum(const LadderTerms& lt, const FlowParams& flow,
                         double phi) {
  const double f2 = flow.froude * flow.froude;
  const double ap = std::abs(phi);
  double acc = 0.0;
  double last = 0.0;
  for (size_t n = 0; n < lt.beta.size(); ++n) {
    last = lt.coef[n] * std::exp(-lt.beta[n] * ap);
    acc += last;
  }
  // Alternating-tail average: S ~ S_N - (last term)/2.
  acc -= 0.5 * last;
  return -f2 * acc;
}

// ---------------------------------------------------------------------------
// Pointwise surface angle from residues.  The radiating-wave part takes the
// pole k* that decays on the evaluated side (k0 with Im <= 0 downstream,
// k1 with Im >= 0 upstream); the two mirror poles combine into
//   wave = sgn * 2 F^2 |k*| e^{Im(k*) phi} / |g'(k*) cosh(pi k*)|
//          * sin(Re(k*) phi - Arg k* + Arg[g'(k*) cosh(pi k*)]),
// with sgn = -1 downstream, +1 upstream.  When the quartet has collapsed
// onto the imaginary axis the mirror pair degenerates to a single pole and
// the contribution becomes one more ladder-type term.  Everything scales
// with the step height.
// ---------------------------------------------------------------------------

struct ThetaPoint {
  double phi = 0.0;
  double wave = 0.0;
  double ladder = 0.0;
  double total = 0.0;
};

inline ThetaPoint theta_point(double phi, const FlowParams& flow,
                              const RootSet& roots, const LadderTerms& lt) {
  if (roots.region == Region::boundary)
    throw std::domain_error(
        "wave roots are coalescing; residue evaluation breaks down");
  const double f2 = flow.froude * flow.froude;
  ThetaPoint out;
  out.phi = phi;

  if (roots.region == Region::imaginary_pair) {
    const double b = std::abs(roots.k0.imag());
    const double gp =
        dispersion_g_prime(std::complex<double>(0.0, b), flow).real();
    out.wave = -f2 * b / (std::cos(kPi * b) * gp) * std::exp(-b * std::abs(phi));
  } else {
    const std::complex<double> ks = (phi >= 0.0) ? roots.k0 : roots.k1;
    const double sgn = (phi >= 0.0) ? -1.0 : 1.0;
    const std::complex<double> gp = dispersion_g_prime(ks, flow);
    const std::complex<double> lc = log_cosh(kPi * ks);
    const double amp = sgn * 2.0 * f2 * std::abs(ks) *
                       std::exp(ks.imag() * phi - lc.real()) / std::abs(gp);
    out.wave = amp * std::sin(ks.real() * phi - std::arg(ks) +
                              std::arg(gp) + lc.imag());
  }

  out.ladder = ladder_sum(lt, flow, phi);
  const double delta = flow.step_height;
  out.wave *= delta;
  out.ladder *= delta;
  out.total = out.wave + out.ladder;
  return out;
}

// ---------------------------------------------------------------------------
// Whole-profile evaluation plus integrated elevation.  The elevation is the
// running integral of theta; it is anchored so that the upstream state is
// level: the mean over the upstream quarter of the grid (where only the
// non-decaying capillary oscillation survives) is removed.
// ---------------------------------------------------------------------------

struct SurfaceProfile {
  std::vector<double> phi;
  std::vector<double> wave;
  std::vector<double> ladder;
  std::vector<double> theta;
  std::vector<double> elevation;
  Region region = Region::two_real;
  int ladder_terms_used = 0;
  double ladder_tail_bound = 0.0;
};

inline SurfaceProfile build_profile(const FlowParams& flow,
                                    const std::vector<double>& grid,
                                    double tail_tol = 1e-15) {
  if (grid.empty())
    throw std::domain_error("empty evaluation grid");
  // The ladder depth is chosen for the smallest nonzero |phi| on the grid;
  // exactly at phi = 0 the exponential protection is gone and the alternating
  // tail converges only like 1/N^2 after the half-term correction, so a
  // phi = 0 entry is accurate to roughly |last coefficient| / N, not to
  // tail_tol.  Away from zero the values are depth-independent to machine
  // precision.
  double phi_min = 1e300;
  for (double p : grid)
    if (std::abs(p) > 0.0)
      phi_min = std::min(phi_min, std::abs(p));
  if (phi_min == 1e300)
    phi_min = 1e-3;
  const RootSet roots = find_roots(flow, 4);
  const LadderTerms lt = ladder_terms(flow, phi_min, tail_tol);
  SurfaceProfile sp;
  sp.region = roots.region;
  sp.ladder_terms_used = int(lt.beta.size());
  sp.ladder_tail_bound = lt.tail_bound;
  sp.phi = grid;
  sp.wave.reserve(grid.size());
  sp.ladder.reserve(grid.size());
  sp.theta.reserve(grid.size());
  for (double p : grid) {
    const ThetaPoint tp = theta_point(p, flow, roots, lt);
    sp.wave.push_back(tp.wave);
    sp.ladder.push_back(tp.ladder);
    sp.theta.push_back(tp.total);
  }
  // Cumulative trapezoid for the elevation, then level the upstream end.
  sp.elevation.assign(grid.size(), 0.0);
  for (size_t i = 1; i < grid.size(); ++i)
    sp.elevation[i] = sp.elevation[i - 1] +
                      0.5 * (sp.theta[i] + sp.theta[i - 1]) *
                          (sp.phi[i] - sp.phi[i - 1]);
  const size_t quarter = std::max<size_t>(1, grid.size() / 4);
  double mean = 0.0;
  for (size_t i = 0; i < quarter; ++i)
    mean += sp.elevation[i];
  mean /= double(quarter);
  for (double& y : sp.elevation)
    y -= mean;
  return sp;
}

// ---------------------------------------------------------------------------
// Asymptotic amplitude of the radiated wave, Fourier route: the residue at
// the wave pole evaluated through the small-parameter form of the root,
//     amplitude = (4 delta / eps) |D / sqrt(Delta)|
//                 * exp(-(pi Re D + |Im D * phi|) / eps).
// ---------------------------------------------------------------------------

struct WaveAmplitude {
  WaveFamily family = WaveFamily::gravity;
  double phi = 0.0;
  double amplitude = 0.0;      // envelope magnitude at phi
  double carrier = 0.0;        // local oscillation wavenumber Re D / eps
  double decay_rate = 0.0;     // envelope decay |Im D| / eps
};

inline WaveAmplitude fourier_amplitude(const ScaledParams& s,
                                       const BranchedConstants& c,
                                       WaveFamily family, double phi) {
  s.validate();
  WaveAmplitude out;
  out.family = family;
  out.phi = phi;
  const double delta = 0.5 * kPi * s.delta_bar; // step height
  out.amplitude =
      4.0 * delta / s.epsilon * family_envelope(c, family, s.epsilon, phi);
  const std::complex<double> d = d_of(c, family);
  out.carrier = d.real() / s.epsilon;
  out.decay_rate = std::abs(d.imag()) / s.epsilon;
  return out;
}

// ---------------------------------------------------------------------------
// Step-forcing kernels and their closed-form Fourier transforms:
//     kp(s) = 1 / (1 - e^{-s})  (pole at 0),   F[kp](k) = -pi i / tanh(pi k),
//     km(s) = 1 / (1 + e^{-s})  (smooth),      F[km](k) = -pi i / sinh(pi k),
// with F[f](k) = integral f(s) e^{-i k s} ds understood as a principal
// value.  The numeric side splits off a Heaviside step (transform 1/(i k))
// and, for kp, the 1/s pole (finite-range PV gives -2i Si(kX)); what is
// left decays exponentially and is integrated by Simpson's rule.
// ---------------------------------------------------------------------------

inline double kernel_plus(double s) { return 1.0 / (1.0 - std::exp(-s)); }
inline double kernel_minus(double s) { return 1.0 / (1.0 + std::exp(-s)); }

// kp(s) - 1/s, analytic through s = 0.
inline double kernel_plus_smooth(double s) {
  if (std::abs(s) < 0.1) {
    const double s2 = s * s;
    // 1/(1-e^{-s}) - 1/s = 1/2 + s/12 - s^3/720 + s^5/30240 - ...
    return 0.5 + s / 12.0 - s * s2 / 720.0 + s2 * s2 * s / 30240.0;
  }
  return kernel_plus(s) - 1.0 / s;
}

namespace detail {

// Sine integral Si(x) by composite Simpson on sin(t)/t.
inline double sine_integral(double x, int panels = 20000) {
  const double h = x / double(2 * panels);
  auto f = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
  double acc = f(0.0) + f(x);
  for (int j = 1; j < 2 * panels; ++j)
    acc += f(h * double(j)) * ((j % 2 == 1) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Simpson integral of a complex-valued function on [a, b].
template <typename F>
std::complex<double> simpson(F&& f, double a, double b, int panels = 20000) {
  const double h = (b - a) / double(2 * panels);
  std::complex<double> acc = f(a) + f(b);
  for (int j = 1; j < 2 * panels; ++j)
    acc += f(a + h * double(j)) * ((j % 2 == 1) ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

} // namespace detail

struct KernelCheck {
  double k = 0.0;
  std::complex<double> numeric_plus{};
  std::complex<double> target_plus{};
  std::complex<double> numeric_minus{};
  std::complex<double> target_minus{};
  double rel_plus = 0.0;
  double rel_minus = 0.0;
};

inline KernelCheck kernel_transform_check(double k, double half_range = 40.0) {
  if (!(k > 0.0))
    throw std::domain_error("transform check needs k > 0");
  KernelCheck out;
  out.k = k;
  const std::complex<double> i(0.0, 1.0);
  const double X = half_range;

  // kp = H(s) + 1/s + [kp - H - 1/s]; the bracket has a bounded jump at 0,
  // so each half-integral must use its own one-sided limit at the shared
  // endpoint s = 0 (H -> 0 from the left, H -> 1 from the right).
  auto dp = [&](double step_at_zero) {
    return [&, step_at_zero](double s) {
      const double heav = s == 0.0 ? step_at_zero : (s > 0.0 ? 1.0 : 0.0);
      return (kernel_plus_smooth(s) - heav) * std::exp(-i * k * s);
    };
  };
  out.numeric_plus = 1.0 / (i * k) -
                     2.0 * i * detail::sine_integral(k * X) +
                     detail::simpson(dp(0.0), -X, 0.0) +
                     detail::simpson(dp(1.0), 0.0, X);
  out.target_plus = -kPi * i / std::tanh(kPi * k);

  // km = H(s) + [km - H]; same one-sided treatment of the jump at 0.
  auto dm = [&](double step_at_zero) {
    return [&, step_at_zero](double s) {
      const double heav = s == 0.0 ? step_at_zero : (s > 0.0 ? 1.0 : 0.0);
      return (kernel_minus(s) - heav) * std::exp(-i * k * s);
    };
  };
  out.numeric_minus = 1.0 / (i * k) + detail::simpson(dm(0.0), -X, 0.0) +
                      detail::simpson(dm(1.0), 0.0, X);
  out.target_minus = -kPi * i / std::sinh(kPi * k);

  out.rel_plus =
      std::abs(out.numeric_plus - out.target_plus) / std::abs(out.target_plus);
  out.rel_minus = std::abs(out.numeric_minus - out.target_minus) /
                  std::abs(out.target_minus);
  return out;
}

// ---------------------------------------------------------------------------
// Independent residual check of the governing equation
//     -(F^2/pi) d/dphi [ (theta * kp)(phi) - delta km(phi) ] - B theta''
//         = -theta,
// with * the convolution over the whole line.  theta is built from the
// residue series on a uniform grid that straddles (but never hits) phi = 0,
// the convolution is a trapezoid rule with the kernel pole handled by
// principal-value subtraction, and both outer derivatives are 4th-order
// central differences.  Reported is the worst residual over a window away
// from the grid ends and the corner.
// ---------------------------------------------------------------------------

struct OracleOptions {
  double half_span = 20.0;  // grid covers [-half_span, half_span]
  double spacing = 0.05;    // uniform step; points offset by spacing/2
  double eval_lo = 1.0;     // residual window: eval_lo <= |phi| <= eval_hi
  double eval_hi = 12.0;
  double tail_tol = 1e-15;  // ladder truncation quality at |phi| = spacing/2
};

struct OracleReport {
  double max_residual = 0.0;
  double max_theta = 0.0;
  double ratio = 0.0;       // max_residual / max_theta
  int n_grid = 0;
  int n_eval = 0;
  int ladder_terms_used = 0;
  double ladder_tail_bound = 0.0;
};

inline OracleReport governing_residual_oracle(const FlowParams& flow,
                                              const OracleOptions& opt = {}) {
  flow.validate();
  const double h = opt.spacing;
  const int n = int(std::lround(2.0 * opt.half_span / h));
  std::vector<double> phi(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    phi[size_t(j)] = -opt.half_span + (double(j) + 0.5) * h;

  const RootSet roots = find_roots(flow, 4);
  const LadderTerms lt = ladder_terms(flow, h / 2.0, opt.tail_tol);
  std::vector<double> th(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    th[size_t(j)] = theta_point(phi[size_t(j)], flow, roots, lt).total;

  // 4th-order first derivative of theta, needed at the pole subtraction.
  auto dtheta = [&](int j) {
    return (th[size_t(j - 2)] - 8.0 * th[size_t(j - 1)] +
            8.0 * th[size_t(j + 1)] - th[size_t(j + 2)]) /
           (12.0 * h);
  };

  // Convolution (theta * kp)(phi_i) over the grid by trapezoid, with the
  // kernel's 1/u pole split off:
  //   integral theta(s) kp(u) ds
  //     = integral theta(s) [kp(u) - 1/u] ds            (smooth)
  //     + integral [theta(s) - theta(phi)] / u ds        (pole removed)
  //     + theta(phi) log|(phi - a)/(b - phi)|            (PV of 1/u)
  // with u = phi - s.
  const double a = phi.front();
  const double b = phi.back();
  auto convolve_at = [&](int ii) {
    const double p = phi[size_t(ii)];
    double smooth = 0.0;
    double pv = 0.0;
    for (int j = 0; j < n; ++j) {
      const double u = p - phi[size_t(j)];
      const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      smooth += w * th[size_t(j)] * kernel_plus_smooth(u);
      if (j == ii)
        pv += w * (-dtheta(ii));
      else
        pv += w * (th[size_t(j)] - th[size_t(ii)]) / u;
    }
    return h * (smooth + pv) +
           th[size_t(ii)] * std::log(std::abs((p - a) / (b - p)));
  };

  // Residual window and the convolution values (also two neighbours each
  // side for the outer derivative).
  std::vector<int> eval_idx;
  for (int j = 2; j < n - 2; ++j) {
    const double ap = std::abs(phi[size_t(j)]);
    if (ap >= opt.eval_lo && ap <= opt.eval_hi)
      eval_idx.push_back(j);
  }
  const int pad_lo = std::max(2, eval_idx.front() - 2);
  const int pad_hi = std::min(n - 3, eval_idx.back() + 2);
  std::vector<double> conv(size_t(n), 0.0);
  for (int j = pad_lo; j <= pad_hi; ++j)
    conv[size_t(j)] = convolve_at(j);

  const double f2 = flow.froude * flow.froude;
  OracleReport rep;
  rep.n_grid = n;
  rep.n_eval = int(eval_idx.size());
  rep.ladder_terms_used = int(lt.beta.size());
  rep.ladder_tail_bound = lt.tail_bound;
  for (int j : eval_idx) {
    const double dconv = (conv[size_t(j - 2)] - 8.0 * conv[size_t(j - 1)] +
                          8.0 * conv[size_t(j + 1)] - conv[size_t(j + 2)]) /
                         (12.0 * h);
    const double w = kernel_minus(phi[size_t(j)]);
    const double dkm = flow.step_height * w * (1.0 - w);
    const double d2t = (-th[size_t(j + 2)] + 16.0 * th[size_t(j + 1)] -
                        30.0 * th[size_t(j)] + 16.0 * th[size_t(j - 1)] -
                        th[size_t(j - 2)]) /
                       (12.0 * h * h);
    const double r =
        -(f2 / kPi) * (dconv - dkm) - flow.bond * d2t + th[size_t(j)];
    rep.max_residual = std::max(rep.max_residual, std::abs(r));
    rep.max_theta = std::max(rep.max_theta, std::abs(th[size_t(j)]));
  }
  rep.ratio = rep.max_theta > 0.0 ? rep.max_residual / rep.max_theta : 0.0;
  return rep;
}

} // namespace stepwave
