#include "mwave/cli.hpp"

#include "mwave/analysis.hpp"
#include "mwave/oracle.hpp"
#include "mwave/table.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace mwave::cli {
namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Manifest = std::vector<std::pair<std::string, std::string>>;

std::string num(double x) { return format_number(x); }

double um(double metres) { return from_si(metres, Unit::Micrometre); }

// Scenario flags shared by profile, components and oracle.
struct ScenarioFlags {
  double vk = 0.0;  // cm/s
  std::optional<double> v;  // cm/s
  bool sudden = false;
  bool is_static = false;
  double t = 0.0;  // ms
  std::string species = "Rb87";

  void add_to(CLI::App& app, bool mirror_laws) {
    app.add_option("--vk", vk, "beam velocity (cm/s)")->required();
    auto* vopt = app.add_option("--v", v, "mirror velocity (cm/s)");
    if (mirror_laws) {
      auto* s = app.add_flag("--sudden", sudden, "sudden removal of the mirror");
      auto* st = app.add_flag("--static", is_static, "mirror at rest");
      vopt->excludes(s)->excludes(st);
      s->excludes(st);
    } else {
      vopt->required();
    }
    app.add_option("--t", t, "time (ms)")->required();
    app.add_option("--species", species, "Rb87, He4, Na23 or neutron");
  }

  Scenario scenario() const {
    MirrorLaw law;
    if (v) law = MovingMirror{to_si(*v, Unit::CentimetrePerSecond)};
    else if (sudden) law = SuddenRemoval{};
    else if (is_static) law = StaticMirror{};
    else throw UsageError("one of --v, --sudden or --static is required");
    return Scenario::from_velocity(PhysicalContext::species(species), to_si(vk, Unit::CentimetrePerSecond), law,
                                   to_si(t, Unit::Millisecond));
  }

  void describe(Manifest& m, const Scenario& s) const {
    m.emplace_back("species", s.context.species_label);
    m.emplace_back("hbar_J_s", num(s.context.hbar));
    m.emplace_back("mass_kg", num(s.context.mass));
    m.emplace_back("vk_cm_s", num(vk));
    m.emplace_back("vk_m_s", num(beam_velocity(s)));
    m.emplace_back("k_1_m", num(s.k));
    if (s.is_sudden()) {
      m.emplace_back("mirror", "sudden");
    } else {
      m.emplace_back("mirror", std::holds_alternative<StaticMirror>(s.mirror) ? "static" : "moving");
      m.emplace_back("v_cm_s", num(from_si(s.mirror_velocity(), Unit::CentimetrePerSecond)));
      m.emplace_back("v_m_s", num(s.mirror_velocity()));
    }
    m.emplace_back("t_ms", num(t));
    m.emplace_back("t_s", num(s.time));
  }
};

struct GridFlags {
  std::optional<double> xmin, xmax;  // um
  Eigen::Index points = 2000;

  void add_to(CLI::App& app, Eigen::Index default_points) {
    points = default_points;
    app.add_option("--xmin", xmin, "left end of the grid (um)");
    app.add_option("--xmax", xmax, "right end of the grid (um)");
    app.add_option("--points", points, "number of grid points");
  }

  // Default span [-1.5 v_k t, 1.1 max(v, v_k) t].
  std::pair<double, double> range(const Scenario& s) const {
    const double vk = beam_velocity(s);
    const double v = s.is_sudden() ? 0.0 : s.mirror_velocity();
    const double lo = xmin ? to_si(*xmin, Unit::Micrometre) : -1.5 * vk * s.time;
    const double hi = xmax ? to_si(*xmax, Unit::Micrometre) : 1.1 * std::max(v, vk) * s.time;
    return {lo, hi};
  }

  Eigen::ArrayXd grid(const Scenario& s, Manifest& m) const {
    const auto [lo, hi] = range(s);
    m.emplace_back("xmin_um", num(um(lo)));
    m.emplace_back("xmax_um", num(um(hi)));
    m.emplace_back("xmin_m", num(lo));
    m.emplace_back("xmax_m", num(hi));
    m.emplace_back("points", std::to_string(points));
    return linear_grid(lo, hi, points);
  }
};

void annotate_fronts(Manifest& m, const Scenario& s) {
  const double vk = beam_velocity(s);
  const double t = s.time;
  if (s.is_sudden()) {
    m.emplace_back("x_minus_um", num(um(-vk * t)));
    m.emplace_back("front_um", num(um(vk * t)));
    return;
  }
  const CriticalPoints cp = critical_points(s);
  m.emplace_back("x_minus_um", num(um(cp.x_minus)));
  m.emplace_back("x_plus_um", num(um(cp.x_plus)));
  m.emplace_back("x_mirror_um", num(um(cp.x_mirror)));
}

struct Output {
  std::string path = "-";

  void add_to(CLI::App& app) { app.add_option("--out", path, "output file, - for stdout"); }

  void emit(Table& t, const std::string& command, std::ostream& out) const {
    t.manifest.insert(t.manifest.begin(), {"command", command});
    t.manifest.emplace_back("output", path);
    if (path == "-") {
      write_table(out, t, utc_timestamp());
      return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open output file " + path);
    write_table(f, t, utc_timestamp());
  }
};

int cmd_profile(const ScenarioFlags& sf, const GridFlags& gf, bool components, const Output& o, std::ostream& out,
                std::ostream& err) {
  const Scenario s = sf.scenario();
  Table t;
  sf.describe(t.manifest, s);
  const Eigen::ArrayXd xs = gf.grid(s, t.manifest);
  annotate_fronts(t.manifest, s);
  const DensityProfile p = profile(s, xs, components);
  t.manifest.emplace_back("flagged_points", std::to_string(p.flagged.size()));
  if (!p.flagged.empty()) err << "warning: " << p.flagged.size() << " points overflowed and were set to 0\n";

  t.columns = {"x_um", "density"};
  t.rows.resize(xs.size(), components ? 6 : 2);
  t.rows.col(0) = xs.matrix() * unit_divisor<double>(Unit::Micrometre);
  t.rows.col(1) = p.densities.matrix();
  if (components) {
    t.columns.insert(t.columns.end(), {"M1_sq", "M2_sq", "M3_sq", "M4_sq"});
    t.rows.rightCols(4) = p.components->abs2().real().matrix();
  }
  o.emit(t, "profile", out);
  return kExitOk;
}

int cmd_components(const ScenarioFlags& sf, const GridFlags& gf, const Output& o, std::ostream& out) {
  const Scenario s = sf.scenario();
  Table t;
  sf.describe(t.manifest, s);
  const Eigen::ArrayXd xs = gf.grid(s, t.manifest);
  const double vk = beam_velocity(s);
  const double v = s.mirror_velocity();
  const double time = s.time;
  t.manifest.emplace_back("x_mirror_um", num(um(v * time)));
  t.manifest.emplace_back("front_I_um", num(um(vk * time)));
  t.manifest.emplace_back("front_II_um", num(um(-vk * time)));
  t.manifest.emplace_back("front_III_um", num(um((2.0 * v - vk) * time)));
  t.manifest.emplace_back("front_IV_um", num(um((2.0 * v + vk) * time)));

  t.columns = {"x_um", "M1_sq", "M2_sq", "M3_sq", "M4_sq"};
  t.rows.resize(xs.size(), 5);
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const WaveComponents c = psi_moving(xs[i], time, s);
    t.rows.row(i) << um(xs[i]), std::norm(c.m1), std::norm(c.m2), std::norm(c.m3), std::norm(c.m4);
  }
  o.emit(t, "components", out);
  return kExitOk;
}

int cmd_cornu(double lo, double hi, Eigen::Index points, const Output& o, std::ostream& out) {
  const Eigen::ArrayXd thetas = linear_grid(lo, hi, points);
  Table t;
  t.manifest = {{"theta_min", num(lo)}, {"theta_max", num(hi)}, {"points", std::to_string(points)}};
  const Extremum e = universal_enhanced_peak();
  const Extremum a = universal_ordinary_peak();
  t.manifest.emplace_back("enhanced_peak", num(e.value) + " at theta " + num(e.argument));
  t.manifest.emplace_back("ordinary_peak", num(a.value) + " at theta " + num(a.argument));
  t.columns = {"theta", "C", "S", "enhanced", "ordinary"};
  t.rows.resize(points, 5);
  for (Eigen::Index i = 0; i < points; ++i) {
    const double th = thetas[i];
    const FresnelPair f = fresnel(th);
    t.rows.row(i) << th, f.c, f.s, universal_enhanced(th), universal_ordinary(th);
  }
  o.emit(t, "cornu", out);
  return kExitOk;
}

int cmd_visibility(const std::vector<double>& vks, double t_ms, const std::string& species, double rmin,
                   double rmax, Eigen::Index rpoints, const Output& o, std::ostream& out) {
  if (!(rmin > 0.0)) throw UsageError("--ratio-min must be positive");
  if (!(rmax >= rmin)) throw UsageError("--ratio-max must be >= --ratio-min");
  if (rpoints < 1) throw UsageError("--ratio-points must be >= 1");
  const Eigen::ArrayXd ratios = rpoints == 1 ? Eigen::ArrayXd::Constant(1, rmin) : linear_grid(rmin, rmax, rpoints);
  const std::vector<double> rv(ratios.data(), ratios.data() + ratios.size());

  Table t;
  const PhysicalContext ctx = PhysicalContext::species(species);
  t.manifest = {{"species", ctx.species_label}, {"t_ms", num(t_ms)}, {"ratio_min", num(rmin)},
                {"ratio_max", num(rmax)}, {"ratio_points", std::to_string(rpoints)}};
  t.columns = {"vk_cm_s", "ratio", "visibility", "p_max"};
  t.rows.resize(static_cast<Eigen::Index>(vks.size()) * rpoints, 4);
  Eigen::Index row = 0;
  for (double vk : vks) {
    if (!(vk > 0.0)) throw UsageError("--vk values must be positive");
    const Scenario tmpl = Scenario::from_velocity(ctx, to_si(vk, Unit::CentimetrePerSecond), SuddenRemoval{},
                                                  to_si(t_ms, Unit::Millisecond));
    const FringeStats sudden = main_fringe(profile(tmpl, front_grid(tmpl)));
    t.manifest.emplace_back("sudden_visibility_vk_" + num(vk), num(sudden.visibility));
    for (const ScanPoint& p : enhancement_scan(rv, tmpl))
      t.rows.row(row++) << vk, p.ratio, p.stats.visibility, p.stats.p_max;
  }
  o.emit(t, "visibility", out);
  return kExitOk;
}

struct OracleFlags {
  std::string method;
  double tolerance = 1e-3;
  std::optional<double> domain_um;
  std::optional<Eigen::Index> grid_points;
  std::optional<double> dt_ms;
  std::string discretization = "spectral";
};

void describe_config(Manifest& m, const OracleConfig& c) {
  m.emplace_back("domain_length_um", num(um(c.domain_length)));
  m.emplace_back("grid_points", std::to_string(c.grid_points));
  m.emplace_back("time_step_ms", num(from_si(c.time_step, Unit::Millisecond)));
  m.emplace_back("truncation_window_um", num(um(c.truncation_window)));
  m.emplace_back("window_um", num(um(c.x_lo)) + " " + num(um(c.x_hi)));
}

std::string suggestion_text(const OracleConfig& c) {
  std::ostringstream os;
  os << "suggested: --domain " << num(um(c.domain_length)) << " (um) --grid-points " << c.grid_points << " --dt "
     << num(from_si(c.time_step, Unit::Millisecond)) << " (ms)";
  return os.str();
}

int cmd_oracle(const ScenarioFlags& sf, const GridFlags& gf, const OracleFlags& of, const Output& o,
               std::ostream& out, std::ostream& err) {
  if (!(of.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  const Scenario s = sf.scenario();
  Table t;
  sf.describe(t.manifest, s);
  const auto [lo, hi] = gf.range(s);
  if (!(lo <= hi)) throw UsageError("--xmin must not exceed --xmax");
  t.manifest.emplace_back("oracle", of.method);
  t.manifest.emplace_back("tolerance", num(of.tolerance));

  DensityProfile numeric;
  OracleConfig cfg;
  std::optional<Eigen::ArrayXd> estimate;
  if (of.method == "grid") {
    cfg = suggest_grid_config(s, lo, hi, of.tolerance);
    if (of.domain_um) cfg.domain_length = to_si(*of.domain_um, Unit::Micrometre);
    if (of.grid_points) cfg.grid_points = *of.grid_points;
    if (of.dt_ms) cfg.time_step = to_si(*of.dt_ms, Unit::Millisecond);
    if (of.discretization == "fd") cfg.discretization = Discretization::FiniteDifference;
    try {
      const GridResult g = evolve_grid(s, cfg);
      t.manifest.emplace_back("norm_drift", num(g.norm_drift));
      t.manifest.emplace_back("steps", std::to_string(g.steps));
      numeric = g.profile;
    } catch (const OracleConfigError& e) {
      err << "error: " << e.what() << '\n' << suggestion_text(e.suggestion()) << '\n';
      return kExitUsage;
    }
    if (numeric.xs.size() == 0) throw UsageError("comparison window contains no grid nodes");
  } else {
    cfg = suggest_quadrature_config(s, lo, hi, of.tolerance);
    if (of.domain_um) cfg.truncation_window = cfg.domain_length = to_si(*of.domain_um, Unit::Micrometre);
    const QuadratureResult q = evolve_quadrature(s, cfg, linear_grid(lo, hi, gf.points), of.tolerance);
    if (q.flagged) err << "warning: estimated truncation error exceeds the tolerance\n";
    t.manifest.emplace_back("flagged", q.flagged ? "yes" : "no");
    numeric = q.profile;
    estimate = q.error_estimate;
  }
  describe_config(t.manifest, cfg);

  const DensityProfile exact = profile(s, numeric.xs);
  const Comparison c = compare(exact, numeric, cfg);
  t.manifest.emplace_back("max_abs_err", num(c.max_abs_err));
  t.manifest.emplace_back("rms_err", num(c.rms_err));
  for (const RegionError& r : c.regions)
    t.manifest.emplace_back("region " + r.name, std::to_string(r.points) + " points, max_abs_err " + num(r.max_abs_err));

  t.columns = {"x_um", "analytic", "oracle", "abs_err"};
  if (estimate) t.columns.push_back("error_estimate");
  t.rows.resize(numeric.xs.size(), static_cast<Eigen::Index>(t.columns.size()));
  for (Eigen::Index i = 0; i < numeric.xs.size(); ++i) {
    t.rows(i, 0) = um(numeric.xs[i]);
    t.rows(i, 1) = exact.densities[i];
    t.rows(i, 2) = numeric.densities[i];
    t.rows(i, 3) = std::abs(exact.densities[i] - numeric.densities[i]);
    if (estimate) t.rows(i, 4) = (*estimate)[i];
  }
  o.emit(t, "oracle", out);
  err << c.report;
  return c.max_abs_err <= of.tolerance ? kExitOk : kExitNumerical;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matter-wave transients behind a moving mirror"};
  app.require_subcommand(1);

  ScenarioFlags profile_sf, comp_sf, oracle_sf;
  GridFlags profile_gf, comp_gf, oracle_gf;
  Output profile_out, comp_out, cornu_out, vis_out, oracle_out;
  bool with_components = false;

  auto* prof = app.add_subcommand("profile", "density profile");
  profile_sf.add_to(*prof, true);
  profile_gf.add_to(*prof, 2000);
  prof->add_flag("--components", with_components, "add |M_I|^2 .. |M_IV|^2 columns");
  profile_out.add_to(*prof);

  auto* comp = app.add_subcommand("components", "the four Moshinsky terms, including beyond the mirror");
  comp_sf.add_to(*comp, false);
  comp_gf.add_to(*comp, 2000);
  comp_out.add_to(*comp);

  double theta_min = -3.0, theta_max = 3.0;
  Eigen::Index theta_points = 601;
  auto* cornu = app.add_subcommand("cornu", "Fresnel integrals and universal profiles");
  cornu->add_option("--theta-min", theta_min);
  cornu->add_option("--theta-max", theta_max);
  cornu->add_option("--points", theta_points);
  cornu_out.add_to(*cornu);

  std::vector<double> vks;
  double vis_t = 0.0, rmin = 1.1, rmax = 10.0;
  Eigen::Index rpoints = 20;
  std::string vis_species = "Rb87";
  auto* vis = app.add_subcommand("visibility", "main-fringe visibility against v / v_k");
  vis->add_option("--vk", vks, "beam velocities (cm/s)")->required()->delimiter(',');
  vis->add_option("--t", vis_t, "time (ms)")->required();
  vis->add_option("--ratio-min", rmin);
  vis->add_option("--ratio-max", rmax);
  vis->add_option("--ratio-points", rpoints);
  vis->add_option("--species", vis_species);
  vis_out.add_to(*vis);

  OracleFlags of;
  auto* orc = app.add_subcommand("oracle", "validate the closed form against a numerical oracle");
  oracle_sf.add_to(*orc, true);
  oracle_gf.add_to(*orc, 51);
  orc->add_option("--oracle", of.method)->required()->check(CLI::IsMember({"grid", "quadrature"}));
  orc->add_option("--tolerance", of.tolerance);
  orc->add_option("--domain", of.domain_um, "domain length or truncation window (um)");
  orc->add_option("--grid-points", of.grid_points);
  orc->add_option("--dt", of.dt_ms, "time step (ms)");
  orc->add_option("--discretization", of.discretization)->check(CLI::IsMember({"spectral", "fd"}));
  oracle_out.add_to(*orc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*prof) return cmd_profile(profile_sf, profile_gf, with_components, profile_out, out, err);
    if (*comp) return cmd_components(comp_sf, comp_gf, comp_out, out);
    if (*cornu) return cmd_cornu(theta_min, theta_max, theta_points, cornu_out, out);
    if (*vis) return cmd_visibility(vks, vis_t, vis_species, rmin, rmax, rpoints, vis_out, out);
    return cmd_oracle(oracle_sf, oracle_gf, of, oracle_out, out, err);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const AnalysisError& e) {
    err << "analysis failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace mwave::cli
