#pragma once

#include "mwave/physics.hpp"
#include "mwave/specialfn.hpp"

namespace mwave {

/// Arguments of the Moshinsky function M(x, k, t). k is signed; t > 0.
struct MoshinskyArgs {
  double x = 0.0;
  double k = 0.0;
  double t = 0.0;
  PhysicalContext context;
};

/// Dimensionless argument z = (1+i)/2 sqrt(hbar t/m) (k - m x/(hbar t)).
Complex moshinsky_z(const MoshinskyArgs& a);

/// M(x,k,t) = exp(i m x^2 / 2 hbar t) w(-z) / 2.
///
/// On the classical side (x < hbar k t/m) -z lies in the lower half-plane and
/// the value is assembled as plane wave minus the upper-half-plane tail, so
/// M(x,k,t) + M(-x,-k,t) reproduces the plane wave to rounding.
Complex moshinsky(const MoshinskyArgs& a);
Complex moshinsky(double x, double k, double t, const PhysicalContext& ctx);

struct AsymptoticValue {
  Complex value;
  bool in_classical_region = false;
  int terms = 0;  // number of series terms summed
};

/// Large-|z| expansion of M: the plane wave on the classical side x <= v_k t
/// plus exp(i m x^2/2 hbar t)/(2 pi i) sum_n Gamma(n+1/2)/z^{2n+1}, summed for
/// n <= min(n_max, floor(|z|^2)). Throws std::domain_error for |z| < 2.
AsymptoticValue moshinsky_asymptotic(const MoshinskyArgs& a, int n_max);

/// Free propagator K_0(x,t|x',t'), principal square root. Requires t > t'.
Complex propagator_free(double x, double t, double xp, double tp, const PhysicalContext& ctx);

/// Propagator for a perfect mirror moving along x_m = v t. Both points must
/// lie in the physical region (x <= v t, x' <= v t').
Complex propagator_moving_wall(double x, double t, double xp, double tp, double v,
                               const PhysicalContext& ctx);

/// 2i sin(kx) for x < 0 and 0 for x >= 0.
Complex initial_state(double x, double k);

/// Wave after sudden removal of the mirror: M(x,k,t) - M(x,-k,t).
Complex psi_sudden(double x, double t, double k, const PhysicalContext& ctx);

/// The four Moshinsky terms of the moving-mirror solution, the common phase
/// prefactor and the physical wavefunction.
struct WaveComponents {
  Complex m1, m2, m3, m4;
  Complex prefactor;
  Complex psi;  // zero beyond the mirror
};

/// Moving-mirror wavefunction. Terms are always evaluated (formal values past
/// the mirror are kept for diagnostics); psi is zeroed for x > v t. A static
/// mirror is v = 0. Throws std::invalid_argument for SuddenRemoval.
WaveComponents psi_moving(double x, double t, const Scenario& s);

/// Two-term form valid for v close to v_k:
/// prefactor * [M(x - vt, 0, t) - M(vt - x, 0, t)], zero beyond the mirror.
Complex psi_near_limit(double x, double t, const Scenario& s);

/// Wavefunction for whichever mirror law the scenario carries. At t = 0 this
/// is the initial state.
Complex psi(double x, double t, const Scenario& s);

struct CriticalPoints {
  double x_minus = 0.0;   // -v_k t
  double x_plus = 0.0;    // (2v - v_k) t
  double x_mirror = 0.0;  // v t
};

/// Classical fronts at s.time. Finite mirror velocities only.
CriticalPoints critical_points(const Scenario& s);

/// Number of classical particle streams through x at time t (each stream
/// contributes 1, no interference).
double classical_density(double x, double t, const Scenario& s);

}  // namespace mwave
