#pragma once
// The linearised dispersion relation for flow over topography,
//     g(k) = k F^2 - tanh(pi k) (B k^2 + 1),
// its derivatives, and finders for every root family the inversion
// integral cares about: the real pair (downstream waves), the imaginary
// ladder (exponentially decaying tail), and the complex quartet that the
// real pair turns into once F, B leave the two-real-roots region.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "stepwave/params.hpp"

namespace stepwave {

using cdouble = std::complex<double>;

// tanh(z) saturates double precision long before overflow would hit the
// naive exp-based formula; clamp once |Re z| is past every representable
// difference from +-1.
inline cdouble tanh_safe(const cdouble& z) {
  if (std::abs(z.real()) > 30.0)
    return cdouble(z.real() > 0.0 ? 1.0 : -1.0, 0.0);
  return std::tanh(z);
}

// sech^2(z) = 1 - tanh^2(z), underflows to 0 on the same guard.
inline cdouble sech2_safe(const cdouble& z) {
  if (std::abs(z.real()) > 30.0)
    return cdouble(0.0, 0.0);
  const cdouble c = std::cosh(z);
  return 1.0 / (c * c);
}

inline cdouble dispersion_g(const cdouble& k, const FlowParams& flow) {
  const double f2 = flow.froude * flow.froude;
  return k * f2 -
         tanh_safe(kPi * k) * (flow.bond * k * k + 1.0);
}

inline cdouble dispersion_g_prime(const cdouble& k, const FlowParams& flow) {
  const double f2 = flow.froude * flow.froude;
  const cdouble pk = kPi * k;
  return cdouble(f2, 0.0) -
         kPi * sech2_safe(pk) * (flow.bond * k * k + 1.0) -
         2.0 * k * flow.bond * tanh_safe(pk);
}

inline cdouble dispersion_g_second(const cdouble& k, const FlowParams& flow) {
  const cdouble pk = kPi * k;
  const cdouble t = tanh_safe(pk);
  const cdouble s2 = sech2_safe(pk);
  return 2.0 * kPi * kPi * s2 * t * (flow.bond * k * k + 1.0) -
         4.0 * kPi * k * flow.bond * s2 -
         2.0 * flow.bond * t;
}

namespace detail {

inline double bisect(const std::function<double(double)>& f, double a,
                     double b, int iters = 200) {
  double fa = f(a);
  for (int i = 0; i < iters; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0)
      return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
    if (b - a < 1e-16 * std::max(1.0, std::abs(a)))
      break;
  }
  return 0.5 * (a + b);
}

inline double newton_polish_real(const FlowParams& flow, double k,
                                 int iters = 8) {
  for (int i = 0; i < iters; ++i) {
    const double g = dispersion_g(cdouble(k, 0.0), flow).real();
    const double gp = dispersion_g_prime(cdouble(k, 0.0), flow).real();
    if (gp == 0.0)
      break;
    const double step = g / gp;
    k -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(k)))
      break;
  }
  return k;
}

} // namespace detail

// Positive real roots of g.  In the two-real-roots region there are exactly
// two (the long gravity wave k0 and the short capillary wave k1 > k0); they
// coalesce on the critical curve and vanish beyond it.
struct RealRootPair {
  bool found = false;
  double k0 = 0.0;
  double k1 = 0.0;
  bool near_coalescence = false;
};

inline RealRootPair real_roots(const FlowParams& flow) {
  flow.validate();
  auto gr = [&](double k) { return dispersion_g(cdouble(k, 0.0), flow).real(); };
  // Scan resolution follows the capillary wavelength ~ 1/B for large B.
  const double step = std::min(0.1, 1.0 / (10.0 * kPi * flow.bond + 1.0));
  const double k_hi =
      flow.bond > 0.0
          ? 2.0 * std::max(flow.froude * flow.froude / flow.bond, 1.0 / step)
          : 10.0 / (flow.froude * flow.froude) + 10.0;
  std::vector<double> roots;
  double a = step * 1e-6; // skip the removable zero at k = 0
  double fa = gr(a);
  for (double b = step; b <= k_hi && roots.size() < 2; b += step) {
    const double fb = gr(b);
    if ((fa < 0.0) != (fb < 0.0)) {
      double r = detail::bisect(gr, a, b);
      r = detail::newton_polish_real(flow, r);
      if (r > 0.0)
        roots.push_back(r);
    }
    a = b;
    fa = fb;
  }
  RealRootPair out;
  if (roots.size() == 2) {
    out.found = true;
    out.k0 = std::min(roots[0], roots[1]);
    out.k1 = std::max(roots[0], roots[1]);
    out.near_coalescence =
        (out.k1 - out.k0) < 1e-6 * std::max(1.0, std::abs(out.k1));
  } else if (roots.size() == 1) {
    // A single sign change can only be the coalescence point itself.
    out.found = true;
    out.k0 = out.k1 = roots[0];
    out.near_coalescence = true;
  }
  return out;
}

// Roots of g on the positive imaginary axis, k = i b with b > 0 solving
//     s(b) = b F^2 cos(pi b) - sin(pi b) (1 - B b^2) = 0.
// There is at most one root near every integer n >= 1 for small F, but a
// branch can hold zero or two once B b^2 passes 1, so each unit interval
// (n - 1/2, n + 1/2) is scanned with a sign-change sweep.  Far out on the
// axis the roots approach  b = n + arctan(F^2 n / (1 - B n^2)) / pi, and a
// seeded Newton iteration replaces the scan (the scan would need ever finer
// resolution while Newton lands in ~4 steps).
inline std::vector<double> imaginary_ladder(const FlowParams& flow,
                                            int n_max) {
  flow.validate();
  const double f2 = flow.froude * flow.froude;
  auto s = [&](double b) {
    return b * f2 * std::cos(kPi * b) -
           std::sin(kPi * b) * (1.0 - flow.bond * b * b);
  };
  auto sp = [&](double b) {
    return f2 * std::cos(kPi * b) - b * f2 * kPi * std::sin(kPi * b) -
           kPi * std::cos(kPi * b) * (1.0 - flow.bond * b * b) +
           2.0 * flow.bond * b * std::sin(kPi * b);
  };
  std::vector<double> roots;
  const int scan_limit = std::min(n_max, 40);
  for (int n = 1; n <= scan_limit; ++n) {
    const double lo = n - 0.5 + 1e-9;
    const double hi = n + 0.5 - 1e-9;
    const int cells = 64;
    double a = lo, fa = s(a);
    for (int c = 1; c <= cells; ++c) {
      const double b = lo + (hi - lo) * c / cells;
      const double fb = s(b);
      if ((fa < 0.0) != (fb < 0.0))
        roots.push_back(detail::bisect(s, a, b));
      a = b;
      fa = fb;
    }
  }
  for (int n = scan_limit + 1; n <= n_max; ++n) {
    // Principal arctangent keeps the correction inside (-1/2, 1/2) so the
    // seed stays on branch n even once B n^2 passes 1.
    const double denom = 1.0 - flow.bond * double(n) * double(n);
    double b = n + std::atan(f2 * n / denom) / kPi;
    for (int i = 0; i < 12; ++i) {
      const double d = s(b) / sp(b);
      b -= d;
      if (std::abs(d) < 1e-14 * b)
        break;
    }
    if (std::abs(b - n) < 1.0 && std::abs(s(b)) < 1e-9 * std::max(1.0, b))
      roots.push_back(b);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return y - x < 1e-9; }),
              roots.end());
  return roots;
}

// The off-axis quartet (+-k, +-conj(k)) that the real pair turns into when
// the short and long waves merge.  Returned as the two members in the lower
// half plane / upper half plane with positive real part:
//   k0 (Im < 0) controls the downstream wave, k1 = conj(k0) the upstream.
struct Quartet {
  cdouble k0{}; // Im <= 0
  cdouble k1{}; // Im >= 0
  bool on_axis = false; // quartet collapsed onto the imaginary axis
};

inline Quartet complex_quartet(const FlowParams& flow) {
  flow.validate();
  if (flow.bond <= 0.0)
    throw std::domain_error("complex quartet requires bond > 0");
  const double f2 = flow.froude * flow.froude;
  // Seed from the tanh-saturated quadratic B k^2 - F^2 k + 1 = 0.
  const cdouble disc = std::sqrt(cdouble(f2 * f2 - 4.0 * flow.bond, 0.0));
  cdouble k = (cdouble(f2, 0.0) + disc) / (2.0 * flow.bond);
  if (std::abs(k.imag()) < 1e-12)
    k += cdouble(0.0, 0.2); // nudge off the real axis so Newton can leave it
  bool converged = false;
  for (int i = 0; i < 100; ++i) {
    const cdouble g = dispersion_g(k, flow);
    const cdouble gp = dispersion_g_prime(k, flow);
    if (gp == cdouble(0.0, 0.0))
      break;
    const cdouble step = g / gp;
    k -= step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(k))) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw convergence_error("quartet Newton iteration did not converge");
  Quartet q;
  q.on_axis = std::abs(k.real()) < 1e-8 * std::max(1.0, std::abs(k));
  cdouble below = (k.imag() <= 0.0) ? k : std::conj(k);
  if (q.on_axis)
    below = cdouble(0.0, -std::abs(k.imag()));
  q.k0 = below;
  q.k1 = std::conj(below);
  return q;
}

// Root-structure classification of the (F, B) plane:
//   two_real      -- two distinct positive real roots (waves on both sides)
//   complex_quartet -- roots left the real axis but kept a real part
//   imaginary_pair  -- quartet collapsed onto the imaginary axis (no waves)
//   boundary      -- within tolerance of a transition
enum class Region { two_real, complex_quartet, imaginary_pair, boundary };

inline const char* region_name(Region r) {
  switch (r) {
  case Region::two_real:
    return "two_real";
  case Region::complex_quartet:
    return "complex_quartet";
  case Region::imaginary_pair:
    return "imaginary_pair";
  default:
    return "boundary";
  }
}

inline Region classify(const FlowParams& flow) {
  flow.validate();
  const RealRootPair rp = real_roots(flow);
  if (rp.found)
    return rp.near_coalescence ? Region::boundary : Region::two_real;
  if (flow.bond <= 0.0)
    return Region::two_real; // gravity-only flow always carries its wave
  const Quartet q = complex_quartet(flow);
  return q.on_axis ? Region::imaginary_pair : Region::complex_quartet;
}

// Everything the Fourier inversion needs in one bundle.
struct RootSet {
  Region region = Region::two_real;
  cdouble k0{};                // downstream-controlling root (Im <= 0)
  cdouble k1{};                // upstream-controlling root (Im >= 0)
  std::vector<double> ladder;  // imaginary-axis roots, ascending
};

inline RootSet find_roots(const FlowParams& flow, int n_ladder) {
  RootSet rs;
  rs.region = classify(flow);
  if (rs.region == Region::two_real || rs.region == Region::boundary) {
    const RealRootPair rp = real_roots(flow);
    rs.k0 = cdouble(rp.k0, 0.0);
    rs.k1 = cdouble(rp.k1, 0.0);
  } else {
    const Quartet q = complex_quartet(flow);
    rs.k0 = q.k0;
    rs.k1 = q.k1;
  }
  rs.ladder = imaginary_ladder(flow, n_ladder);
  return rs;
}

// One point of the curve in the (B, F) plane where the two real roots
// coalesce: g(k*) = g'(k*) = 0.
struct CriticalPoint {
  double bond = 0.0;
  double froude = 0.0;
  double k_star = 0.0;
  double g_residual = 0.0;
  double gp_residual = 0.0;
};

// Trace the coalescence curve over a Bond-number range by Newton iteration
// on (g, g') = 0 in the unknowns (k, F) at each fixed B, marching from the
// large-B end so each solution seeds the next (continuation).  The first
// point is seeded from the tanh-saturated closed form k = 1/sqrt(B),
// F = (4B)^(1/4).
inline std::vector<CriticalPoint> critical_curve(double bond_lo,
                                                 double bond_hi, int n) {
  if (!(bond_lo > 0.0) || !(bond_hi > bond_lo))
    throw std::domain_error("need 0 < bond_lo < bond_hi");
  if (n < 2)
    throw std::domain_error("need at least two curve points");
  std::vector<CriticalPoint> curve;
  double k = 1.0 / std::sqrt(bond_hi);
  double F = std::pow(4.0 * bond_hi, 0.25);
  for (int i = n - 1; i >= 0; --i) {
    const double B = bond_lo + (bond_hi - bond_lo) * i / (n - 1);
    FlowParams flow{F, B, 1.0};
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      flow.froude = F;
      const double g = dispersion_g(cdouble(k, 0.0), flow).real();
      const double gp = dispersion_g_prime(cdouble(k, 0.0), flow).real();
      const double gpp = dispersion_g_second(cdouble(k, 0.0), flow).real();
      // Jacobian of (g, g') wrt (k, F):
      const double g_k = gp;
      const double g_F = 2.0 * k * F;
      const double gp_k = gpp;
      const double gp_F = 2.0 * F;
      const double det = g_k * gp_F - g_F * gp_k;
      if (det == 0.0)
        break;
      const double dk = (g * gp_F - g_F * gp) / det;
      const double dF = (g_k * gp - g * gp_k) / det;
      k -= dk;
      F -= dF;
      if (std::abs(dk) < 1e-14 * std::max(1.0, std::abs(k)) &&
          std::abs(dF) < 1e-14 * std::max(1.0, std::abs(F))) {
        converged = true;
        break;
      }
    }
    if (!converged || !(F > 0.0) || !(k > 0.0))
      throw convergence_error("critical-curve Newton failed at bond = " +
                              std::to_string(B));
    flow.froude = F;
    CriticalPoint p;
    p.bond = B;
    p.froude = F;
    p.k_star = k;
    p.g_residual = std::abs(dispersion_g(cdouble(k, 0.0), flow).real());
    p.gp_residual = std::abs(dispersion_g_prime(cdouble(k, 0.0), flow).real());
    curve.push_back(p);
  }
  std::reverse(curve.begin(), curve.end());
  return curve;
}

} // namespace stepwave
