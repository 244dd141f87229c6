#pragma once
// Exact-arithmetic computation of the outer-expansion coefficients and the
// factorial-over-power divergence check on their late orders.
//
// The coefficients obey
//     r_n = beta zeta r'_{n-1} - beta tau [ zeta^2 r''_{n-2} + zeta r'_{n-2} ],
//     r_0 = 1 / (2 (zeta + 1)),
// and every r_n is a finite combination of the basis e_m = (zeta + 1)^{-m}
// (m = 1 .. n+1), on which the two operators act triangularly:
//     zeta d/dzeta   : e_m -> -m (e_m - e_{m+1}),
//     zeta^2 d2/dzeta2: e_m ->  m (m+1) (e_m - 2 e_{m+1} + e_{m+2}).
// Carried in rationals, the recurrence is exact to any order; the late
// orders are predicted to grow like Gamma(n + 2) / |chi|^{n + 2} with chi
// the gravity-family singulant, so the two-step magnitude ratio
//     |r_{n+2}(zeta) / r_n(zeta)|  ->  (n + 1)(n + 2) / |chi(zeta)|^2.
// (Two steps, not one: at zeta = 1 the even orders vanish identically, the
// two wave families contributing equal and opposite values there.)

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "stepwave/asymptotics.hpp"
#include "stepwave/params.hpp"

namespace stepwave {

struct OuterCoefficients {
  mpq_class beta;
  mpq_class tau;
  // coeff[n][m-1] multiplies (zeta + 1)^{-m}; row n has n+1 entries.
  std::vector<std::vector<mpq_class>> coeff;
};

inline OuterCoefficients outer_coefficients(const mpq_class& beta,
                                            const mpq_class& tau, int n_max) {
  if (n_max < 0)
    throw std::domain_error("n_max must be non-negative");
  OuterCoefficients oc;
  oc.beta = beta;
  oc.tau = tau;
  oc.coeff.resize(size_t(n_max) + 1);
  oc.coeff[0] = {mpq_class(1, 2)};
  for (int n = 1; n <= n_max; ++n) {
    std::vector<mpq_class> out(size_t(n) + 1, mpq_class(0));
    const auto& prev = oc.coeff[size_t(n) - 1];
    for (size_t idx = 0; idx < prev.size(); ++idx) {
      const long m = long(idx) + 1;
      const mpq_class t = beta * mpq_class(m) * prev[idx];
      out[idx] -= t;     // e_m
      out[idx + 1] += t; // e_{m+1}
    }
    if (n >= 2) {
      const auto& prev2 = oc.coeff[size_t(n) - 2];
      for (size_t idx = 0; idx < prev2.size(); ++idx) {
        const long m = long(idx) + 1;
        const mpq_class bt = beta * tau * prev2[idx];
        const mpq_class t2 = bt * mpq_class(m * (m + 1));
        out[idx] -= t2;
        out[idx + 1] += 2 * t2;
        out[idx + 2] -= t2;
        const mpq_class t1 = bt * mpq_class(m);
        out[idx] += t1;
        out[idx + 1] -= t1;
      }
    }
    for (auto& c : out)
      c.canonicalize();
    oc.coeff[size_t(n)] = std::move(out);
  }
  return oc;
}

inline mpq_class outer_eval(const OuterCoefficients& oc, int n,
                            const mpq_class& zeta) {
  if (n < 0 || size_t(n) >= oc.coeff.size())
    throw std::domain_error("coefficient order out of range");
  const mpq_class base = 1 / (zeta + 1);
  mpq_class power = base;
  mpq_class acc = 0;
  for (const auto& c : oc.coeff[size_t(n)]) {
    acc += c * power;
    power *= base;
  }
  return acc;
}

struct RatioPoint {
  int n = 0;          // ratio compares orders n and n+2
  double ratio = 0.0; // |r_{n+2}(zeta) / r_n(zeta)|
  double target = 0.0; // (n + 1)(n + 2) / |chi(zeta)|^2
  double rel_diff = 0.0;
};

// Two-step late-order ratios at a positive evaluation point, against the
// factorial-over-power prediction from the gravity-family singulant.
inline std::vector<RatioPoint> late_order_ratios(const OuterCoefficients& oc,
                                                 const mpq_class& zeta) {
  const double beta_d = oc.beta.get_d();
  const double tau_d = oc.tau.get_d();
  const double zeta_d = zeta.get_d();
  if (!(zeta_d > 0.0))
    throw std::domain_error("evaluation point must be positive");
  const BranchedConstants consts = branched_constants(beta_d, tau_d);
  const std::complex<double> chi =
      singulant(std::complex<double>(zeta_d, 0.0), consts,
                WaveFamily::gravity);
  const double chi_abs2 = std::norm(chi);
  std::vector<RatioPoint> out;
  const int n_top = int(oc.coeff.size()) - 1;
  std::vector<mpq_class> values(size_t(n_top) + 1);
  for (int n = 0; n <= n_top; ++n)
    values[size_t(n)] = outer_eval(oc, n, zeta);
  for (int n = 1; n + 2 <= n_top; ++n) {
    if (values[size_t(n)] == 0)
      continue;
    const mpq_class q = values[size_t(n) + 2] / values[size_t(n)];
    RatioPoint p;
    p.n = n;
    p.ratio = std::abs(q.get_d());
    p.target = double(n + 1) * double(n + 2) / chi_abs2;
    p.rel_diff = std::abs(p.ratio - p.target) / p.target;
    out.push_back(p);
  }
  return out;
}

} // namespace stepwave
