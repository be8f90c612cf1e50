#include "mwave/waves.hpp"

#include <numbers>
#include <stdexcept>

namespace mwave {
namespace {

void require_positive_time(double t) {
  if (!(t > 0.0)) throw std::domain_error("Moshinsky function needs t > 0");
}

// sqrt(hbar t/m) (k - m x/(hbar t)).
double scaled_detuning(double x, double k, double t, double hm) {
  return std::sqrt(hm * t) * (k - x / (hm * t));
}

}  // namespace

Complex moshinsky_z(const MoshinskyArgs& a) {
  require_positive_time(a.t);
  const double u = scaled_detuning(a.x, a.k, a.t, a.context.hbar_over_mass());
  return {0.5 * u, 0.5 * u};
}

Complex moshinsky(const MoshinskyArgs& a) {
  require_positive_time(a.t);
  const double hm = a.context.hbar_over_mass();
  const double u = scaled_detuning(a.x, a.k, a.t, hm);
  const Complex z{0.5 * u, 0.5 * u};
  const Complex chirp = std::polar(1.0, a.x * a.x / (2.0 * hm * a.t));
  if (u > 0.0) {
    // w(-z) = 2 exp(-z^2) - w(z) and exp(i m x^2/2 hbar t) exp(-z^2) is the plane wave.
    const Complex plane = std::polar(1.0, a.k * a.x - 0.5 * hm * a.k * a.k * a.t);
    return plane - 0.5 * chirp * faddeeva(z);
  }
  return 0.5 * chirp * faddeeva(-z);
}

Complex moshinsky(double x, double k, double t, const PhysicalContext& ctx) {
  return moshinsky(MoshinskyArgs{x, k, t, ctx});
}

AsymptoticValue moshinsky_asymptotic(const MoshinskyArgs& a, int n_max) {
  if (n_max < 0) throw std::domain_error("n_max must be >= 0");
  const Complex z = moshinsky_z(a);
  const double r = std::abs(z);
  if (r < 2.0) throw std::domain_error("asymptotic series needs |z| >= 2");

  const double hm = a.context.hbar_over_mass();
  const int n_opt = static_cast<int>(std::floor(r * r));
  const int last = std::min(n_max, n_opt);

  // Term ratio (n + 1/2) / z^2 keeps Gamma(n+1/2) / z^{2n+1} in range for large n.
  const Complex inv_z2 = 1.0 / detail::square(z);
  Complex term = std::sqrt(std::numbers::pi) / z;
  Complex sum{0.0, 0.0};
  for (int n = 0; n <= last; ++n) {
    sum += term;
    term *= (n + 0.5) * inv_z2;
  }
  const Complex chirp = std::polar(1.0, a.x * a.x / (2.0 * hm * a.t));
  AsymptoticValue out;
  out.value = chirp * sum / Complex{0.0, 2.0 * std::numbers::pi};
  out.in_classical_region = a.x <= hm * a.k * a.t;
  out.terms = last + 1;
  if (out.in_classical_region) out.value += std::polar(1.0, a.k * a.x - 0.5 * hm * a.k * a.k * a.t);
  return out;
}

Complex propagator_free(double x, double t, double xp, double tp, const PhysicalContext& ctx) {
  const double dt = t - tp;
  if (!(dt > 0.0)) throw std::domain_error("propagator needs t > t'");
  const double hm = ctx.hbar_over_mass();
  const double dx = x - xp;
  // [m / (2 pi i hbar dt)]^{1/2} = sqrt(m / (2 pi hbar dt)) exp(-i pi/4).
  const double amplitude = std::sqrt(1.0 / (2.0 * std::numbers::pi * hm * dt));
  return std::polar(amplitude, dx * dx / (2.0 * hm * dt) - 0.25 * std::numbers::pi);
}

Complex propagator_moving_wall(double x, double t, double xp, double tp, double v,
                               const PhysicalContext& ctx) {
  const double xm = v * t;
  const double xpm = v * tp;
  if (x > xm || xp > xpm) throw std::domain_error("propagator points must not lie beyond the mirror");
  const double hm = ctx.hbar_over_mass();
  const double y = x - xm;
  const double yp = xp - xpm;
  // Galilean boost from the mirror frame; same sign as the psi_moving prefactor.
  const double phase = (v * y - v * yp + 0.5 * v * v * (t - tp)) / hm;
  return std::polar(1.0, phase) * (propagator_free(y, t, yp, tp, ctx) - propagator_free(y, t, -yp, tp, ctx));
}

Complex initial_state(double x, double k) {
  if (x < 0.0) return {0.0, 2.0 * std::sin(k * x)};
  return {0.0, 0.0};
}

Complex psi_sudden(double x, double t, double k, const PhysicalContext& ctx) {
  return moshinsky(x, k, t, ctx) - moshinsky(x, -k, t, ctx);
}

WaveComponents psi_moving(double x, double t, const Scenario& s) {
  const double v = s.mirror_velocity();
  const double hm = s.context.hbar_over_mass();
  const double q = v / hm;  // m v / hbar
  const double y = x - v * t;
  WaveComponents c;
  c.prefactor = std::polar(1.0, q * x - 0.5 * q * v * t);
  c.m1 = moshinsky(y, s.k - q, t, s.context);
  c.m2 = moshinsky(y, -s.k - q, t, s.context);
  c.m3 = moshinsky(-y, s.k - q, t, s.context);
  c.m4 = moshinsky(-y, -s.k - q, t, s.context);
  // Pairing (m1 - m3) and (m2 - m4) makes psi vanish exactly at the mirror.
  c.psi = x <= v * t ? c.prefactor * ((c.m1 - c.m3) - (c.m2 - c.m4)) : Complex{0.0, 0.0};
  return c;
}

Complex psi_near_limit(double x, double t, const Scenario& s) {
  const double v = s.mirror_velocity();
  if (x > v * t) return {0.0, 0.0};
  const double hm = s.context.hbar_over_mass();
  const double q = v / hm;
  const double y = x - v * t;
  const Complex prefactor = std::polar(1.0, q * x - 0.5 * q * v * t);
  return prefactor * (moshinsky(y, 0.0, t, s.context) - moshinsky(-y, 0.0, t, s.context));
}

Complex psi(double x, double t, const Scenario& s) {
  if (t == 0.0) return initial_state(x, s.k);
  if (s.is_sudden()) return psi_sudden(x, t, s.k, s.context);
  return psi_moving(x, t, s).psi;
}

CriticalPoints critical_points(const Scenario& s) {
  const double v = s.mirror_velocity();
  const double vk = beam_velocity(s);
  const double t = s.time;
  return {-vk * t, (2.0 * v - vk) * t, v * t};
}

double classical_density(double x, double t, const Scenario& s) {
  if (!(t >= 0.0)) throw std::domain_error("classical density needs t >= 0");
  const double vk = beam_velocity(s);
  const double x_minus = -vk * t;
  if (std::holds_alternative<StaticMirror>(s.mirror)) return x <= 0.0 ? 2.0 : 0.0;

  if (s.is_sudden()) {
    if (x <= x_minus) return 2.0;
    return x <= vk * t ? 1.0 : 0.0;
  }

  const double v = s.mirror_velocity();
  const double x_mirror = v * t;
  if (x > x_mirror) return 0.0;
  if (x <= x_minus) return 2.0;
  if (v >= vk) return x <= vk * t ? 1.0 : 0.0;
  const double x_plus = (2.0 * v - vk) * t;
  return x <= x_plus ? 1.0 : 2.0;
}

}  // namespace mwave
