#pragma once

#include "mwave/waves.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <vector>

namespace mwave {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-point Moshinsky terms M_I..M_IV (columns 0..3).
using ComponentArray = Eigen::Array<Complex, Eigen::Dynamic, 4>;

struct DensityProfile {
  Scenario scenario;
  Eigen::ArrayXd xs;
  Eigen::ArrayXd densities;
  std::optional<ComponentArray> components;
  /// Indices whose special-function evaluation overflowed; their density is 0.
  std::vector<Eigen::Index> flagged;
};

/// n evenly spaced points on [lo, hi]; n = 1 gives {lo}.
Eigen::ArrayXd linear_grid(double lo, double hi, Eigen::Index n);

/// sqrt(pi hbar t / m), the natural fringe scale at time t.
double fringe_scale(const Scenario& s);

/// |psi|^2 on xs for the scenario's mirror law, zero beyond a finite-velocity
/// mirror. xs must be non-empty and strictly increasing, time > 0.
DensityProfile profile(const Scenario& s, const Eigen::ArrayXd& xs, bool with_components = false);

/// A grid around the main fringe: the beam front v_k t when nothing reflects
/// (sudden removal, v >= v_k) and the mirror-side end of the reflected region
/// otherwise. Spacing is well below 1/20 of the fringe scale.
Eigen::ArrayXd front_grid(const Scenario& s, Eigen::Index points = 4001);

struct FringeStats {
  double p_max = 0.0;
  double p_min = 0.0;
  double x_peak = 0.0;
  double x_min = 0.0;
  double visibility = 0.0;
  double fringe_width = 0.0;
};

/// (p_max - p_min) / (p_max + p_min).
template <typename Scalar>
Scalar visibility(Scalar p_max, Scalar p_min) {
  return (p_max - p_min) / (p_max + p_min);
}

/// Main-fringe statistics. Scanning leftwards from the front, the main peak
/// is the first three-point local maximum above a quarter of the profile
/// maximum; p_min is the first local minimum behind it. Both are refined by
/// a parabola through the neighbouring samples. Throws AnalysisError when no
/// such pair exists or the grid is coarser than fringe_width / 20 there.
FringeStats main_fringe(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& densities);
FringeStats main_fringe(const DensityProfile& p);

struct FringeScaling {
  std::vector<double> times;
  std::vector<double> widths;
  double exponent = 0.0;  // least-squares slope of log(width) against log(t)
};

/// Main-fringe width at each time and the fitted power law. Needs >= 3 times.
FringeScaling fringe_width_scaling(const Scenario& s, const std::vector<double>& times);

/// theta = sqrt(m / (pi hbar t)) (hbar k_eff t / m - x).
double cornu_theta(double x, double t, double k_eff, const PhysicalContext& ctx);

/// 2 (S^2 + C^2) for theta > 0, zero otherwise.
double universal_enhanced(double theta);
/// ((S + 1/2)^2 + (C + 1/2)^2) / 2.
double universal_ordinary(double theta);

struct Extremum {
  double argument = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of f on [lo, hi] (f unimodal there).
template <typename F>
Extremum maximize(F&& f, double lo, double hi, double tol = 1e-12) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

/// First maximum of the enhanced and ordinary universal curves.
Extremum universal_enhanced_peak();
Extremum universal_ordinary_peak();

struct ScanPoint {
  double ratio = 0.0;  // v / v_k
  FringeStats stats;
};

/// Main-fringe statistics of full moving-mirror profiles for each v/v_k,
/// at the template's k, time and species. Ratios must be positive.
std::vector<ScanPoint> enhancement_scan(const std::vector<double>& v_over_vk, const Scenario& tmpl);

}  // namespace mwave
