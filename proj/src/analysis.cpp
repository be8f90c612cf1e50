#include "mwave/analysis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace mwave {
namespace {

constexpr double kPeakFraction = 0.25;

struct Vertex {
  double x;
  double y;
};

// Vertex of the parabola through samples i-1, i, i+1, in coordinates local to xs[i].
Vertex parabolic_vertex(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ys, Eigen::Index i) {
  const double h0 = xs[i - 1] - xs[i];
  const double h2 = xs[i + 1] - xs[i];
  const double d0 = ys[i - 1] - ys[i];
  const double d2 = ys[i + 1] - ys[i];
  const double a = (d2 / h2 - d0 / h0) / (h2 - h0);
  if (a == 0.0) return {xs[i], ys[i]};
  const double b = d0 / h0 - a * h0;
  const double s = std::clamp(-b / (2.0 * a), h0, h2);
  return {xs[i] + s, ys[i] + b * s + a * s * s};
}

}  // namespace

Eigen::ArrayXd linear_grid(double lo, double hi, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  if (!(lo <= hi)) throw std::invalid_argument("grid bounds must satisfy lo <= hi");
  if (n == 1) return Eigen::ArrayXd::Constant(1, lo);
  if (lo == hi) throw std::invalid_argument("a multi-point grid needs lo < hi");
  return Eigen::ArrayXd::LinSpaced(n, lo, hi);
}

double fringe_scale(const Scenario& s) {
  return std::sqrt(std::numbers::pi * s.context.hbar_over_mass() * s.time);
}

DensityProfile profile(const Scenario& s, const Eigen::ArrayXd& xs, bool with_components) {
  if (xs.size() == 0) throw std::invalid_argument("profile needs at least one position");
  for (Eigen::Index i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("profile positions must be strictly increasing");
  if (!(s.time > 0.0)) throw std::invalid_argument("profile needs time > 0");

  DensityProfile p{s, xs, Eigen::ArrayXd::Zero(xs.size()), std::nullopt, {}};
  if (with_components) p.components = ComponentArray::Zero(xs.size(), 4);
  const double t = s.time;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    try {
      if (s.is_sudden()) {
        const Complex a = moshinsky(xs[i], s.k, t, s.context);
        const Complex b = moshinsky(xs[i], -s.k, t, s.context);
        p.densities[i] = std::norm(a - b);
        if (p.components) p.components->row(i) << a, b, 0.0, 0.0;
      } else {
        const WaveComponents c = psi_moving(xs[i], t, s);
        p.densities[i] = std::norm(c.psi);
        if (p.components) p.components->row(i) << c.m1, c.m2, c.m3, c.m4;
      }
    } catch (const NumericalError&) {
      p.densities[i] = 0.0;
      p.flagged.push_back(i);
    }
  }
  return p;
}

Eigen::ArrayXd front_grid(const Scenario& s, Eigen::Index points) {
  const double scale = fringe_scale(s);
  const double vk = beam_velocity(s);
  const double t = s.time;
  if (s.is_sudden() || s.mirror_velocity() >= vk) {
    const double front = vk * t;
    double hi = front + 4.0 * scale;
    if (!s.is_sudden()) hi = std::min(hi, s.mirror_velocity() * t);
    return linear_grid(front - 8.0 * scale, hi, points);
  }
  // Reflected region: standing pattern with wavenumber k - m v/hbar next to the mirror.
  const double v = s.mirror_velocity();
  const double kq = s.k - v / s.context.hbar_over_mass();
  const double wavelength = 2.0 * std::numbers::pi / kq;
  const double span = std::min(2.5 * wavelength, 8.0 * scale);
  return linear_grid(v * t - span, v * t, points);
}

FringeStats main_fringe(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& d) {
  if (xs.size() != d.size()) throw std::invalid_argument("positions and densities differ in length");
  const Eigen::Index n = xs.size();
  if (n < 3) throw AnalysisError("main fringe needs at least three samples");
  const double threshold = kPeakFraction * d.maxCoeff();
  if (!(threshold > 0.0)) throw AnalysisError("profile has no positive density");

  Eigen::Index peak = -1;
  for (Eigen::Index i = n - 2; i >= 1; --i) {
    if (d[i] >= d[i - 1] && d[i] > d[i + 1] && d[i] > threshold) {
      peak = i;
      break;
    }
  }
  if (peak < 0) throw AnalysisError("no main peak found (grid too coarse or no fringes)");

  Eigen::Index trough = -1;
  for (Eigen::Index j = peak - 1; j >= 1; --j) {
    if (d[j] <= d[j - 1] && d[j] < d[j + 1]) {
      trough = j;
      break;
    }
  }
  if (trough < 0) throw AnalysisError("no minimum behind the main peak");

  const Vertex top = parabolic_vertex(xs, d, peak);
  const Vertex bottom = parabolic_vertex(xs, d, trough);
  FringeStats f;
  f.p_max = std::max(top.y, d[peak]);
  f.p_min = std::clamp(std::min(bottom.y, d[trough]), 0.0, f.p_max);
  f.x_peak = top.x;
  f.x_min = bottom.x;
  f.visibility = visibility(f.p_max, f.p_min);
  f.fringe_width = 2.0 * std::abs(f.x_peak - f.x_min);

  double spacing = 0.0;
  for (Eigen::Index j = trough - 1; j <= peak; ++j) spacing = std::max(spacing, xs[j + 1] - xs[j]);
  if (spacing > f.fringe_width / 20.0) throw AnalysisError("grid too coarse to resolve the main fringe");
  return f;
}

FringeStats main_fringe(const DensityProfile& p) { return main_fringe(p.xs, p.densities); }

FringeScaling fringe_width_scaling(const Scenario& s, const std::vector<double>& times) {
  if (times.size() < 3) throw std::invalid_argument("fringe width scaling needs at least three times");
  FringeScaling out;
  const auto n = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = times[static_cast<std::size_t>(i)];
    if (!(t > 0.0)) throw std::invalid_argument("times must be positive");
    const Scenario st = s.at_time(t);
    const FringeStats f = main_fringe(profile(st, front_grid(st)));
    out.times.push_back(t);
    out.widths.push_back(f.fringe_width);
    design(i, 0) = 1.0;
    design(i, 1) = std::log(t);
    rhs[i] = std::log(f.fringe_width);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  out.exponent = coef[1];
  return out;
}

double cornu_theta(double x, double t, double k_eff, const PhysicalContext& ctx) {
  if (!(t > 0.0)) throw std::domain_error("cornu_theta needs t > 0");
  const double hm = ctx.hbar_over_mass();
  return (hm * k_eff * t - x) / std::sqrt(std::numbers::pi * hm * t);
}

double universal_enhanced(double theta) {
  if (theta <= 0.0) return 0.0;
  const FresnelPair f = fresnel(theta);
  return 2.0 * (f.s * f.s + f.c * f.c);
}

double universal_ordinary(double theta) {
  const FresnelPair f = fresnel(theta);
  const double s = f.s + 0.5;
  const double c = f.c + 0.5;
  return 0.5 * (s * s + c * c);
}

Extremum universal_enhanced_peak() { return maximize(universal_enhanced, 0.5, 1.6); }

Extremum universal_ordinary_peak() { return maximize(universal_ordinary, 0.5, 1.6); }

std::vector<ScanPoint> enhancement_scan(const std::vector<double>& v_over_vk, const Scenario& tmpl) {
  const double vk = beam_velocity(tmpl);
  std::vector<ScanPoint> out;
  out.reserve(v_over_vk.size());
  for (double ratio : v_over_vk) {
    if (!(ratio > 0.0)) throw std::invalid_argument("velocity ratios must be positive");
    const Scenario s = tmpl.with_mirror(MovingMirror{ratio * vk});
    out.push_back({ratio, main_fringe(profile(s, front_grid(s)))});
  }
  return out;
}

}  // namespace mwave
