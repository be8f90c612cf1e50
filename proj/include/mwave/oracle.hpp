#pragma once

#include "mwave/analysis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mwave {

/// Spatial discretization of the grid oracle. Both use Crank-Nicolson in time.
enum class Discretization {
  /// Dirichlet sine basis; the Crank-Nicolson factor is diagonal per mode.
  SineSpectral,
  /// Three-point Laplacian with a tridiagonal solve per step.
  FiniteDifference,
};

/// Settings for both oracles. The grid oracle evolves on a box of length
/// domain_length ending at the mirror (mirror frame) or, for sudden removal,
/// on [-domain_length, domain_length] in the lab frame. The quadrature oracle
/// integrates the initial state over [-truncation_window, 0].
struct OracleConfig {
  double domain_length = 0.0;
  Eigen::Index grid_points = 0;  // intervals across the box
  double time_step = 0.0;
  double truncation_window = 0.0;
  double x_lo = 0.0;  // comparison window, lab frame
  double x_hi = 0.0;
  Discretization discretization = Discretization::SineSpectral;
};

/// Rejected oracle settings; carries a configuration that would pass.
class OracleConfigError : public std::invalid_argument {
 public:
  OracleConfigError(const std::string& what, OracleConfig suggestion)
      : std::invalid_argument(what), suggestion_(suggestion) {}
  const OracleConfig& suggestion() const { return suggestion_; }

 private:
  OracleConfig suggestion_;
};

/// Grid settings expected to reach the given density tolerance on [x_lo, x_hi].
OracleConfig suggest_grid_config(const Scenario& s, double x_lo, double x_hi, double tolerance);
/// Quadrature settings expected to reach the given density tolerance.
OracleConfig suggest_quadrature_config(const Scenario& s, double x_lo, double x_hi, double tolerance);

/// Throws OracleConfigError when the far wall can influence the comparison
/// window, L - |x_lo| <= (v_k + |v|) t + 10 sqrt(hbar t/m), or when the time
/// step exceeds 0.1 rad of the largest kinetic phase in the initial state.
void check_grid_config(const Scenario& s, const OracleConfig& c);

struct GridResult {
  DensityProfile profile;  // lab frame, nodes inside the comparison window
  double norm_drift = 0.0;  // relative change of the discrete norm
  long steps = 0;
};

/// Evolves the initial standing wave on a grid in the mirror rest frame
/// (where the wall is static) and maps the result back to the lab frame.
/// Throws NumericalError if the norm drifts by more than 1e-8.
GridResult evolve_grid(const Scenario& s, const OracleConfig& c);

struct QuadratureResult {
  DensityProfile profile;
  Eigen::ArrayXd error_estimate;  // estimated density error per point
  bool flagged = false;           // some estimate exceeds the tolerance
  long panels = 0;                // panels used for the last point
};

/// Direct quadrature of the superposition integral with the free (sudden
/// removal) or moving-wall kernel. Gauss-Legendre panels are sized so the
/// phase of every exponential changes by at most pi/4 across a panel. The
/// error estimate is the asymptotic endpoint contribution of the discarded
/// initial state beyond -truncation_window.
QuadratureResult evolve_quadrature(const Scenario& s, const OracleConfig& c, const Eigen::ArrayXd& xs,
                                   double tolerance = 1e-4);

struct RegionError {
  std::string name;
  Eigen::Index points = 0;
  double max_abs_err = 0.0;
};

struct Comparison {
  double max_abs_err = 0.0;
  double rms_err = 0.0;
  std::vector<RegionError> regions;
  std::string report;
};

/// Pointwise density comparison on identical grids, broken down by the
/// classical regions of a's scenario.
Comparison compare(const DensityProfile& a, const DensityProfile& b,
                   const std::optional<OracleConfig>& config = std::nullopt);

}  // namespace mwave
