#pragma once
// Parameter bundles for free-surface flow over a small step, plus the
// conversions between the physical (Froude/Bond) description and the
// rescaled small-parameter description used by the asymptotic machinery.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace stepwave {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Discriminants smaller than this (relative) are treated as exactly zero:
// the two wavenumber branches have merged and per-branch quantities blow up.
inline constexpr double kCriticalDeltaTol = 1e-10;

// A run is "gravity only" when the scaled surface-tension coefficient is
// identically zero; several formulas take a dedicated limit there.
inline constexpr double kTauZeroTol = 0.0; // exact zero only

class convergence_error : public std::runtime_error {
public:
  explicit convergence_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Physical description: Froude number, Bond number, dimensionless step
// height.  The step height only scales the (linearised) response; it must
// still be positive and small enough for the linearisation to be honest.
struct FlowParams {
  double froude = 0.0;      // F
  double bond = 0.0;        // B >= 0
  double step_height = 0.0; // delta > 0

  void validate() const {
    if (!(froude > 0.0))
      throw std::domain_error("froude must be positive");
    if (!(bond >= 0.0))
      throw std::domain_error("bond must be non-negative");
    if (!(step_height > 0.0))
      throw std::domain_error("step_height must be positive");
  }
};

// Rescaled description: epsilon is the small parameter, beta and tau are
// order-one shape constants, delta_bar the rescaled step height.  The maps
// below fix the convention
//     F^2 = beta * epsilon,   B = beta * tau * epsilon^2,
//     pi * delta_bar = 2 * delta.
struct ScaledParams {
  double epsilon = 0.0;   // > 0
  double beta = 0.0;      // > 0
  double tau = 0.0;       // >= 0
  double delta_bar = 0.0; // > 0

  void validate() const {
    if (!(epsilon > 0.0))
      throw std::domain_error("epsilon must be positive");
    if (!(beta > 0.0))
      throw std::domain_error("beta must be positive");
    if (!(tau >= 0.0))
      throw std::domain_error("tau must be non-negative");
    if (!(delta_bar > 0.0))
      throw std::domain_error("delta_bar must be positive");
  }
};

inline ScaledParams scale(const FlowParams& flow, double epsilon) {
  flow.validate();
  if (!(epsilon > 0.0))
    throw std::domain_error("epsilon must be positive");
  ScaledParams s;
  s.epsilon = epsilon;
  s.beta = flow.froude * flow.froude / epsilon;
  s.tau = flow.bond / (s.beta * epsilon * epsilon);
  s.delta_bar = 2.0 * flow.step_height / kPi;
  s.validate();
  return s;
}

inline FlowParams unscale(const ScaledParams& scaled) {
  scaled.validate();
  FlowParams f;
  f.froude = std::sqrt(scaled.beta * scaled.epsilon);
  f.bond = scaled.beta * scaled.tau * scaled.epsilon * scaled.epsilon;
  f.step_height = kPi * scaled.delta_bar / 2.0;
  return f;
}

enum class WaveFamily { gravity, capillary };

inline const char* family_name(WaveFamily f) {
  return f == WaveFamily::gravity ? "gravity" : "capillary";
}

// The two roots D-, D+ of  beta*tau*D^2 - beta*D + 1 = 0, i.e.
//     D_{-,+} = (1 -+ sqrt(Delta)) / (2 tau),   Delta = 1 - 4 tau / beta.
// For Delta < 0 the branch sqrt(Delta) = -i sqrt(|Delta|) is fixed so that
// Im D- > 0 and Im D+ < 0 (conjugate pair).  tau = 0 collapses to the
// single gravity constant D- = 1/beta; D+ is reported as +infinity-free
// sentinel (0) with gravity_only set.
struct BranchedConstants {
  std::complex<double> delta_disc{};  // Delta (real, stored as complex(Re,0))
  std::complex<double> sqrt_delta{};  // chosen branch of sqrt(Delta)
  std::complex<double> d_minus{};     // gravity-family constant
  std::complex<double> d_plus{};      // capillary-family constant
  bool critical = false;              // |Delta| below tolerance
  bool gravity_only = false;          // tau == 0
};

inline BranchedConstants branched_constants(double beta, double tau) {
  if (!(beta > 0.0))
    throw std::domain_error("beta must be positive");
  if (!(tau >= 0.0))
    throw std::domain_error("tau must be non-negative");
  BranchedConstants c;
  if (tau == 0.0) {
    c.gravity_only = true;
    c.delta_disc = 1.0;
    c.sqrt_delta = 1.0;
    c.d_minus = 1.0 / beta;
    c.d_plus = 0.0; // capillary family absent
    return c;
  }
  const double delta = 1.0 - 4.0 * tau / beta;
  c.delta_disc = delta;
  c.critical = std::abs(delta) < kCriticalDeltaTol;
  if (delta >= 0.0) {
    c.sqrt_delta = std::sqrt(delta);
  } else {
    // branch choice: sqrt(Delta) = -i sqrt(|Delta|)  =>  Im D- > 0.
    c.sqrt_delta = std::complex<double>(0.0, -std::sqrt(-delta));
  }
  c.d_minus = (1.0 - c.sqrt_delta) / (2.0 * tau);
  c.d_plus = (1.0 + c.sqrt_delta) / (2.0 * tau);
  return c;
}

inline BranchedConstants branched_constants(const ScaledParams& s) {
  s.validate();
  return branched_constants(s.beta, s.tau);
}

inline std::complex<double> d_of(const BranchedConstants& c, WaveFamily f) {
  if (f == WaveFamily::capillary && c.gravity_only)
    throw std::domain_error("capillary family absent when tau == 0");
  return f == WaveFamily::gravity ? c.d_minus : c.d_plus;
}

} // namespace stepwave
