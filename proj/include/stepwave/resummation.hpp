#pragma once
// Resummation of the ladder-pole series: the exact decaying tail behind the
// step is a sum over the imaginary-axis roots, which sit near the integers
// with a small parameter-dependent shift.  Ignoring the shift turns the
// tail into an elementary power series whose closed form is known exactly;
// comparing the truncated series (and the true shifted one) against that
// closed form measures how fast the leading-order resummation converges as
// the small parameter shrinks.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stepwave/dispersion.hpp"
#include "stepwave/params.hpp"

namespace stepwave {

// ---------------------------------------------------------------------------
// Shift of the n-th imaginary-axis root away from the integer n: the root
// solves  tan(pi b)(1 - B b^2) = F^2 b  near b = n, so
//     d_n = b_n - n ~ (1/pi) arctan(F^2 n / (1 - B n^2)) ~ beta eps n / pi.
// ---------------------------------------------------------------------------

struct LadderCorrection {
  int n = 0;
  double beta_n = 0.0;        // the true root
  double d = 0.0;             // beta_n - n
  double leading_order = 0.0; // beta eps n / pi
  double residual = 0.0;      // |dispersion side condition| at beta_n
};

inline LadderCorrection ladder_correction(int n, const ScaledParams& sp) {
  sp.validate();
  if (n < 1)
    throw std::domain_error("ladder index must be >= 1");
  const FlowParams flow = unscale(sp);
  const double f2 = flow.froude * flow.froude;
  const double B = flow.bond;
  auto s = [&](double b) {
    return b * f2 * std::cos(kPi * b) -
           std::sin(kPi * b) * (1.0 - B * b * b);
  };
  auto spd = [&](double b) {
    return f2 * std::cos(kPi * b) - b * f2 * kPi * std::sin(kPi * b) -
           kPi * std::cos(kPi * b) * (1.0 - B * b * b) +
           2.0 * B * b * std::sin(kPi * b);
  };
  const double denom = 1.0 - B * double(n) * double(n);
  double b = n + std::atan(f2 * n / denom) / kPi;
  bool converged = false;
  for (int i = 0; i < 50; ++i) {
    const double step = s(b) / spd(b);
    b -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, b)) {
      converged = true;
      break;
    }
  }
  if (!converged || std::abs(b - n) >= 0.5) {
    // Newton can wander when the root sits close to a branch edge.  Fall
    // back to bisection on the branch interval (n - 1/2, n + 1/2).  If the
    // interval has no sign change, the branch holds no root at all: that
    // happens only for the branch containing the capillary resonance
    // b = 1/sqrt(B), where the root ladder skips one rung.
    double lo = n - 0.5, hi = n + 0.5;
    double slo = s(lo), shi = s(hi);
    if (slo == 0.0) {
      b = lo;
      converged = true;
    } else if (shi == 0.0) {
      b = hi;
      converged = true;
    } else if (slo * shi < 0.0) {
      for (int i = 0; i < 200 && hi - lo > 1e-17 * n; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double smid = s(mid);
        if (smid == 0.0) {
          lo = hi = mid;
          break;
        }
        (slo * smid < 0.0 ? hi : lo) = mid;
        (slo * smid < 0.0 ? shi : slo) = smid;
      }
      b = 0.5 * (lo + hi);
      for (int i = 0; i < 4; ++i) // polish
        b -= s(b) / spd(b);
      converged = std::abs(b - n) < 0.5;
    }
    if (!converged || std::abs(b - n) >= 0.5)
      throw convergence_error(
          "no ladder root in branch n = " + std::to_string(n) +
          " (branch contains the capillary resonance 1/sqrt(B))");
  }
  LadderCorrection out;
  out.n = n;
  out.beta_n = b;
  out.d = b - n;
  out.leading_order = sp.beta * sp.epsilon * double(n) / kPi;
  out.residual = std::abs(s(b));
  return out;
}

// ---------------------------------------------------------------------------
// Closed form of the truncated alternating series
//     partial_N = sum_{n=1}^{N} (-1)^{n+1} n zeta^n
//               = S * { 1 - (1 + N)(-zeta)^N + N (-zeta)^{N+1} },
//     S = zeta / (zeta + 1)^2.
// ---------------------------------------------------------------------------

struct TruncatedSum {
  double zeta = 0.0;
  int n_terms = 0;
  double direct = 0.0; // term-by-term summation
  double closed = 0.0; // closed form above
  double diff = 0.0;
};

inline TruncatedSum truncated_sum_identity(double zeta, int n_terms) {
  if (!(zeta > 0.0))
    throw std::domain_error("zeta must be positive");
  if (n_terms < 0)
    throw std::domain_error("n_terms must be non-negative");
  TruncatedSum out;
  out.zeta = zeta;
  out.n_terms = n_terms;
  double acc = 0.0;
  double zn = 1.0;
  for (int n = 1; n <= n_terms; ++n) {
    zn *= zeta;
    acc += (n % 2 == 1 ? 1.0 : -1.0) * double(n) * zn;
  }
  out.direct = acc;
  const double S = zeta / ((zeta + 1.0) * (zeta + 1.0));
  const double mzN = std::pow(-zeta, n_terms);
  out.closed =
      S * (1.0 - (1.0 + n_terms) * mzN + double(n_terms) * mzN * (-zeta));
  out.diff = std::abs(out.direct - out.closed);
  return out;
}

// ---------------------------------------------------------------------------
// Leading-order reconstruction of the decaying tail.  At depth zeta = e^{-phi}
// the tail resums, to leading order in eps, to
//     tail(zeta) ~ -beta eps delta * zeta / (zeta + 1)^2,
// built from per-root contributions -beta eps delta (-1)^{n+1} n zeta^{b_n}
// with b_n = n (approximate mode) or the true shifted root (exact mode).
// The series is truncated where further terms fall below the working order,
//     N(eps) = ceil(log eps / log zeta),
// and the deviation from the closed form is recorded per eps along with the
// observed convergence slope d log(deviation) / d log(eps).
// ---------------------------------------------------------------------------

struct ReconstructionPoint {
  double epsilon = 0.0;
  int n_used = 0;
  bool n_capped = false;
  double sum_approx = 0.0;    // integer-root series
  double sum_exact = 0.0;     // true-root series
  double target = 0.0;        // resummed closed form
  double deviation_approx = 0.0;
  double deviation_exact = 0.0;
};

struct ReconstructionReport {
  double zeta = 0.0;
  double beta = 0.0;
  double tau = 0.0;
  double step_height = 0.0;
  std::vector<ReconstructionPoint> points;
  double slope_approx = 0.0; // least-squares log-log slope
  double slope_exact = 0.0;
};

namespace detail {

inline double loglog_slope(const std::vector<double>& eps,
                           const std::vector<double>& dev) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = double(eps.size());
  for (size_t i = 0; i < eps.size(); ++i) {
    const double x = std::log(eps[i]);
    const double y = std::log(std::max(dev[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  return denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
}

} // namespace detail

inline ReconstructionReport
reconstruct_leading_order(double beta, double tau, double step_height,
                          double zeta, const std::vector<double>& eps_list,
                          int n_cap = 400) {
  if (!(zeta > 0.0) || !(zeta < 1.0))
    throw std::domain_error("depth factor zeta must lie in (0, 1)");
  if (eps_list.empty())
    throw std::domain_error("need at least one eps");
  ReconstructionReport rep;
  rep.zeta = zeta;
  rep.beta = beta;
  rep.tau = tau;
  rep.step_height = step_height;
  std::vector<double> devs_a, devs_e;
  for (double eps : eps_list) {
    ScaledParams sp;
    sp.epsilon = eps;
    sp.beta = beta;
    sp.tau = tau;
    sp.delta_bar = 2.0 * step_height / kPi;
    sp.validate();
    ReconstructionPoint pt;
    pt.epsilon = eps;
    int N = int(std::ceil(std::log(eps) / std::log(zeta)));
    N = std::max(N, 1);
    if (N > n_cap) {
      N = n_cap;
      pt.n_capped = true;
    }
    pt.n_used = N;
    const double front = -beta * eps * step_height;
    double sa = 0.0, se = 0.0;
    for (int n = 1; n <= N; ++n) {
      const double sign = (n % 2 == 1) ? 1.0 : -1.0;
      sa += sign * double(n) * std::pow(zeta, double(n));
      const LadderCorrection lc = ladder_correction(n, sp);
      se += sign * double(n) * std::pow(zeta, lc.beta_n);
    }
    pt.sum_approx = front * sa;
    pt.sum_exact = front * se;
    pt.target = front * zeta / ((zeta + 1.0) * (zeta + 1.0));
    pt.deviation_approx = std::abs(pt.sum_approx - pt.target);
    pt.deviation_exact = std::abs(pt.sum_exact - pt.target);
    devs_a.push_back(pt.deviation_approx);
    devs_e.push_back(pt.deviation_exact);
    rep.points.push_back(pt);
  }
  if (eps_list.size() >= 2) {
    rep.slope_approx = detail::loglog_slope(eps_list, devs_a);
    rep.slope_exact = detail::loglog_slope(eps_list, devs_e);
  }
  return rep;
}

} // namespace stepwave
