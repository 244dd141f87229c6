// Command-line front end: every quantity the library computes, reported as
// deterministic CSV or JSON.
//
// Exit codes: 0 success, 2 usage error, 3 domain error (parameters outside
// the regime an operation supports), 4 iteration failure.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stepwave/asymptotics.hpp"
#include "stepwave/dispersion.hpp"
#include "stepwave/io.hpp"
#include "stepwave/late_orders.hpp"
#include "stepwave/params.hpp"
#include "stepwave/resummation.hpp"
#include "stepwave/surface.hpp"

namespace {

using namespace stepwave;

constexpr double kUnset = -1e301;

struct ParamInput {
  double froude = kUnset;
  double bond = kUnset;
  double epsilon = kUnset;
  double beta = kUnset;
  double tau = kUnset;
  double step = 1.0;

  bool has_flow_pair() const { return froude != kUnset && bond != kUnset; }
  bool has_scaled_triple() const {
    return epsilon != kUnset && beta != kUnset && tau != kUnset;
  }
  void check_exclusive() const {
    const bool any_flow = froude != kUnset || bond != kUnset;
    const bool any_scaled =
        epsilon != kUnset || beta != kUnset || tau != kUnset;
    if (any_flow && any_scaled)
      throw std::invalid_argument(
          "give either --froude/--bond or --epsilon/--beta/--tau, not both");
    if (any_flow && !has_flow_pair())
      throw std::invalid_argument("--froude and --bond must come together");
    if (any_scaled && !has_scaled_triple())
      throw std::invalid_argument(
          "--epsilon, --beta and --tau must come together");
    if (!any_flow && !any_scaled)
      throw std::invalid_argument(
          "parameters required: --froude/--bond or --epsilon/--beta/--tau");
  }
  FlowParams flow() const {
    check_exclusive();
    if (has_flow_pair()) {
      FlowParams f{froude, bond, step};
      f.validate();
      return f;
    }
    return unscale(scaled());
  }
  ScaledParams scaled() const {
    check_exclusive();
    if (!has_scaled_triple())
      throw std::invalid_argument(
          "this operation needs --epsilon/--beta/--tau (the physical pair "
          "does not determine the small parameter)");
    ScaledParams s;
    s.epsilon = epsilon;
    s.beta = beta;
    s.tau = tau;
    s.delta_bar = 2.0 * step / kPi;
    s.validate();
    return s;
  }
};

void add_param_options(CLI::App* cmd, ParamInput& p, bool with_step = true) {
  cmd->add_option("--froude,-F", p.froude, "Froude number");
  cmd->add_option("--bond,-B", p.bond, "Bond number");
  cmd->add_option("--epsilon,-e", p.epsilon, "small parameter");
  cmd->add_option("--beta", p.beta, "scaled inertia constant");
  cmd->add_option("--tau", p.tau, "scaled surface-tension constant");
  if (with_step)
    cmd->add_option("--step", p.step, "step height (default 1)");
}

struct OutputTarget {
  std::string path; // empty -> stdout
  std::unique_ptr<std::ofstream> file;
  std::ostream& stream() {
    if (path.empty())
      return std::cout;
    if (!file) {
      file = std::make_unique<std::ofstream>(path);
      if (!*file)
        throw std::invalid_argument("cannot open output file: " + path);
    }
    return *file;
  }
};

Json params_json(const FlowParams& f) {
  Json j = Json::object();
  j.set("froude", f.froude);
  j.set("bond", f.bond);
  j.set("step_height", f.step_height);
  return j;
}

Json params_json(const ScaledParams& s) {
  Json j = Json::object();
  j.set("epsilon", s.epsilon);
  j.set("beta", s.beta);
  j.set("tau", s.tau);
  j.set("delta_bar", s.delta_bar);
  return j;
}

Json complex_json(const std::complex<double>& z) {
  Json a = Json::array();
  a.push(Json::num(z.real()));
  a.push(Json::num(z.imag()));
  return a;
}

Json header_json() {
  Json j = Json::object();
  j.set("tool", std::string(kToolName) + " " + kToolVersion);
  return j;
}

// ---------------------------------------------------------------- classify

int run_classify(const ParamInput& pi, OutputTarget& out) {
  const FlowParams flow = pi.flow();
  const RootSet rs = find_roots(flow, 8);
  Json j = header_json();
  j.set("params", params_json(flow));
  j.set("region", region_name(rs.region));
  Json roots = Json::object();
  roots.set("k0", complex_json(rs.k0));
  roots.set("k1", complex_json(rs.k1));
  j.set("roots", std::move(roots));
  Json ladder = Json::array();
  for (double b : rs.ladder)
    ladder.push(Json::num(b));
  j.set("ladder_head", std::move(ladder));
  out.stream() << j.dump();
  return 0;
}

// ------------------------------------------------------------------- roots

int run_roots(const ParamInput& pi, int ladder_count, OutputTarget& out) {
  const FlowParams flow = pi.flow();
  const RootSet rs = find_roots(flow, ladder_count);
  Json j = header_json();
  j.set("params", params_json(flow));
  j.set("region", region_name(rs.region));
  Json roots = Json::object();
  roots.set("k0", complex_json(rs.k0));
  roots.set("k1", complex_json(rs.k1));
  roots.set("g_at_k0", complex_json(dispersion_g(rs.k0, flow)));
  roots.set("g_at_k1", complex_json(dispersion_g(rs.k1, flow)));
  j.set("roots", std::move(roots));
  Json ladder = Json::array();
  Json ladder_res = Json::array();
  for (double b : rs.ladder) {
    ladder.push(Json::num(b));
    ladder_res.push(Json::num(
        std::abs(dispersion_g(std::complex<double>(0.0, b), flow))));
  }
  j.set("ladder", std::move(ladder));
  j.set("ladder_residual", std::move(ladder_res));
  out.stream() << j.dump();
  return 0;
}

// ---------------------------------------------------------- critical-curve

int run_critical_curve(const std::string& range, OutputTarget& out) {
  const Grid g = parse_grid(range);
  if (g.count < 2)
    throw std::invalid_argument("critical curve needs at least two points");
  const auto curve = critical_curve(g.start, g.end, int(g.count));
  CsvWriter csv(out.stream());
  csv.meta("bond_range", range);
  csv.columns({"bond", "froude", "k_star", "g_residual", "gp_residual"});
  for (const auto& p : curve)
    csv.row({p.bond, p.froude, p.k_star, p.g_residual, p.gp_residual});
  return 0;
}

// ----------------------------------------------------------------- surface

int run_surface(const ParamInput& pi, const std::string& grid_text,
                OutputTarget& out) {
  const FlowParams flow = pi.flow();
  const Grid grid = parse_grid(grid_text);
  const SurfaceProfile sp = build_profile(flow, grid.materialize());
  CsvWriter csv(out.stream());
  csv.meta("froude", flow.froude);
  csv.meta("bond", flow.bond);
  csv.meta("step_height", flow.step_height);
  csv.meta("region", region_name(sp.region));
  csv.meta("ladder_terms_used", double(sp.ladder_terms_used));
  csv.meta("ladder_tail_bound", sp.ladder_tail_bound);
  csv.columns({"phi", "theta", "wave_part", "ladder_part", "elevation"});
  for (size_t i = 0; i < sp.phi.size(); ++i)
    csv.row({sp.phi[i], sp.theta[i], sp.wave[i], sp.ladder[i],
             sp.elevation[i]});
  return 0;
}

// ------------------------------------------------------------- stokes-lines

int run_stokes_lines(const ParamInput& pi, int n_points, OutputTarget& out) {
  const ScaledParams s = pi.scaled();
  const BranchedConstants c = branched_constants(s);
  CsvWriter csv(out.stream());
  csv.meta("beta", s.beta);
  csv.meta("tau", s.tau);
  csv.meta("discriminant", c.delta_disc.real());
  std::vector<StokesLine> lines;
  lines.push_back(stokes_line(c, WaveFamily::gravity, n_points));
  csv.meta("crossing_gravity_phi", lines.back().crossing_phi);
  if (!c.gravity_only) {
    lines.push_back(stokes_line(c, WaveFamily::capillary, n_points));
    csv.meta("crossing_capillary_phi", lines.back().crossing_phi);
  }
  csv.columns({"family", "w_re", "w_im", "chi_re", "chi_im"});
  for (const auto& line : lines) {
    const double fam = line.family == WaveFamily::gravity ? 0.0 : 1.0;
    for (size_t i = 0; i < line.points.size(); ++i)
      csv.row({fam, line.points[i].real(), line.points[i].imag(),
               line.chi[i].real(), line.chi[i].imag()});
  }
  return 0;
}

// -------------------------------------------------------------- amplitudes

Json amplitude_json(const ScaledParams& s, const BranchedConstants& c,
                    WaveFamily fam, double phi) {
  const WaveAmplitude wa = fourier_amplitude(s, c, fam, phi);
  const SwitchedWave sw = switched_wave(s, c, fam, phi);
  const double ea = exp_asym_amplitude(s, c, fam, phi);
  Json j = Json::object();
  j.set("fourier_amplitude", wa.amplitude);
  j.set("exp_asym_amplitude", ea);
  const double denom = std::max(std::abs(wa.amplitude), std::abs(ea));
  j.set("rel_diff", denom > 0.0 ? std::abs(wa.amplitude - ea) / denom : 0.0);
  j.set("carrier_wavenumber", wa.carrier);
  j.set("decay_rate", wa.decay_rate);
  j.set("crossing_phi", kPi * d_of(c, fam).imag() / d_of(c, fam).real());
  j.set("switched_on", sw.switched_on);
  return j;
}

int run_amplitudes(const ParamInput& pi, double phi, OutputTarget& out) {
  const ScaledParams s = pi.scaled();
  const BranchedConstants c = branched_constants(s);
  Json j = header_json();
  j.set("params", params_json(s));
  j.set("phi", phi);
  j.set("gravity", amplitude_json(s, c, WaveFamily::gravity, phi));
  if (!c.gravity_only)
    j.set("capillary", amplitude_json(s, c, WaveFamily::capillary, phi));
  out.stream() << j.dump();
  return 0;
}

// ------------------------------------------------------------- late-orders

int run_late_orders(double beta, double tau, double zeta, int n_max,
                    OutputTarget& out) {
  if (!(beta > 0.0) || !(tau >= 0.0))
    throw std::domain_error("need beta > 0 and tau >= 0");
  const OuterCoefficients oc =
      outer_coefficients(mpq_class(beta), mpq_class(tau), n_max);
  const auto points = late_order_ratios(oc, mpq_class(zeta));
  Json j = header_json();
  Json params = Json::object();
  params.set("beta", beta);
  params.set("tau", tau);
  params.set("zeta", zeta);
  params.set("n_max", n_max);
  j.set("params", std::move(params));
  Json records = Json::array();
  for (const auto& p : points) {
    Json r = Json::object();
    r.set("n", p.n);
    r.set("ratio", p.ratio);
    r.set("target", p.target);
    r.set("rel_diff", p.rel_diff);
    records.push(std::move(r));
  }
  j.set("records", std::move(records));
  out.stream() << j.dump();
  return 0;
}

// ------------------------------------------------------------------- resum

int run_resum(const ParamInput& pi, double zeta,
              const std::string& eps_text, OutputTarget& out) {
  std::vector<double> eps;
  std::stringstream ss(eps_text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      eps.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --eps-list entry: " + tok);
    }
  }
  const double beta = pi.beta != kUnset ? pi.beta : 1.0;
  const double tau = pi.tau != kUnset ? pi.tau : 0.2;
  const ReconstructionReport rep =
      reconstruct_leading_order(beta, tau, pi.step, zeta, eps);
  Json j = header_json();
  Json params = Json::object();
  params.set("beta", beta);
  params.set("tau", tau);
  params.set("step_height", pi.step);
  j.set("params", std::move(params));
  j.set("zeta", rep.zeta);
  Json epsilon = Json::array();
  Json n_used = Json::array();
  Json deviation = Json::array();
  Json deviation_exact = Json::array();
  for (const auto& p : rep.points) {
    epsilon.push(Json::num(p.epsilon));
    n_used.push(Json::integer(p.n_used));
    deviation.push(Json::num(p.deviation_approx));
    deviation_exact.push(Json::num(p.deviation_exact));
  }
  j.set("epsilon", std::move(epsilon));
  j.set("n_used", std::move(n_used));
  j.set("deviation", std::move(deviation));
  j.set("deviation_exact", std::move(deviation_exact));
  j.set("slope", rep.slope_approx);
  j.set("slope_exact", rep.slope_exact);
  out.stream() << j.dump();
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-surface response of uniform flow over a small step: "
               "dispersion roots, surface profiles, wave amplitudes by two "
               "independent routes, and their asymptotic diagnostics."};
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  ParamInput pi_classify, pi_roots, pi_surface, pi_stokes, pi_amp, pi_resum;
  std::string out_path;
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output,-o", out_path,
                    "write to this file instead of stdout");
  };

  auto* c_classify =
      app.add_subcommand("classify", "root structure of the dispersion "
                                     "relation at the given parameters");
  add_param_options(c_classify, pi_classify);
  add_output(c_classify);

  auto* c_roots = app.add_subcommand(
      "roots", "wave roots and the imaginary-axis ladder, with residuals");
  int ladder_count = 10;
  add_param_options(c_roots, pi_roots);
  c_roots->add_option("--ladder-count", ladder_count,
                      "how many ladder branches to enumerate")
      ->check(CLI::Range(0, 5000));
  add_output(c_roots);

  auto* c_curve = app.add_subcommand(
      "critical-curve",
      "trace the root-coalescence curve over a Bond-number range");
  std::string bond_range;
  c_curve->add_option("--bond-range", bond_range, "lo:hi:count")->required();
  add_output(c_curve);

  auto* c_surface = app.add_subcommand(
      "surface", "surface angle and elevation profile on a grid");
  std::string grid_text;
  add_param_options(c_surface, pi_surface);
  c_surface->add_option("--grid", grid_text, "start:end:count")->required();
  add_output(c_surface);

  auto* c_stokes = app.add_subcommand(
      "stokes-lines", "Stokes lines of both wave families in the w-plane");
  int stokes_points = 200;
  add_param_options(c_stokes, pi_stokes, /*with_step=*/false);
  c_stokes->add_option("--points", stokes_points, "samples per line")
      ->check(CLI::Range(2, 100000));
  add_output(c_stokes);

  auto* c_amp = app.add_subcommand(
      "amplitudes",
      "exponentially small wave amplitudes by both computation routes");
  double amp_phi = 0.0;
  add_param_options(c_amp, pi_amp);
  c_amp->add_option("--phi", amp_phi, "evaluation position (default 0)");
  add_output(c_amp);

  auto* c_late = app.add_subcommand(
      "late-orders",
      "late-order coefficient ratios against the divergence prediction");
  double lo_beta = 1.0, lo_tau = 0.2, lo_zeta = 1.0;
  int lo_nmax = 50;
  c_late->add_option("--beta", lo_beta, "scaled inertia constant");
  c_late->add_option("--tau", lo_tau, "scaled surface-tension constant");
  c_late->add_option("--zeta", lo_zeta, "evaluation point (default 1)");
  c_late->add_option("--n-max", lo_nmax, "highest order")
      ->check(CLI::Range(4, 200));
  add_output(c_late);

  auto* c_resum = app.add_subcommand(
      "resum", "leading-order resummation of the decaying tail vs its "
               "closed form, over a range of the small parameter");
  double rs_zeta = 0.5;
  std::string rs_eps = "0.1,0.05,0.025";
  add_param_options(c_resum, pi_resum);
  c_resum->add_option("--zeta", rs_zeta, "depth factor in (0,1)");
  c_resum->add_option("--eps-list", rs_eps, "comma-separated eps values");
  add_output(c_resum);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  OutputTarget out;
  out.path = out_path;
  try {
    if (c_classify->parsed())
      return run_classify(pi_classify, out);
    if (c_roots->parsed())
      return run_roots(pi_roots, ladder_count, out);
    if (c_curve->parsed())
      return run_critical_curve(bond_range, out);
    if (c_surface->parsed())
      return run_surface(pi_surface, grid_text, out);
    if (c_stokes->parsed())
      return run_stokes_lines(pi_stokes, stokes_points, out);
    if (c_amp->parsed())
      return run_amplitudes(pi_amp, amp_phi, out);
    if (c_late->parsed())
      return run_late_orders(lo_beta, lo_tau, lo_zeta, lo_nmax, out);
    if (c_resum->parsed())
      return run_resum(pi_resum, rs_zeta, rs_eps, out);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const stepwave::convergence_error& e) {
    std::cerr << "iteration failure: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
