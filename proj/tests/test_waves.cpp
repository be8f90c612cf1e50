#include "mwave/analysis.hpp"
#include "mwave/waves.hpp"

#include "mp_reference.hpp"

#include <doctest.h>

#include <random>

using namespace mwave;

namespace {

const PhysicalContext kRb = PhysicalContext::species("Rb87");

Scenario released(double v_cm_s) {
  return Scenario::from_velocity(kRb, 0.01, MovingMirror{to_si(v_cm_s, Unit::CentimetrePerSecond)}, 0.005);
}

Complex plane_wave(double x, double k, double t, const PhysicalContext& ctx) {
  return std::polar(1.0, k * x - 0.5 * ctx.hbar_over_mass() * k * k * t);
}

}  // namespace

TEST_CASE("moshinsky against the reference Faddeeva function") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xd(-2e-4, 2e-4);
  for (int i = 0; i < 50; ++i) {
    const MoshinskyArgs a{xd(rng), 1.3e7, 0.01, kRb};
    const Complex z = moshinsky_z(a);
    const double phi = a.x * a.x / (2.0 * kRb.hbar_over_mass() * a.t);
    const Complex ref = 0.5 * std::polar(1.0, phi) * reference::faddeeva(-z);
    // Phases of a few thousand radians carry ~1e-16 relative rounding each.
    const double conditioning = 1e-15 * (phi + std::abs(a.k * a.x)) + 1e-13;
    CHECK(std::abs(moshinsky(a) - ref) <= conditioning * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("plane-wave identity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xd(-3e-4, 3e-4);
  std::uniform_real_distribution<double> kd(-3e7, 3e7);
  std::uniform_real_distribution<double> td(1e-4, 0.1);
  for (int i = 0; i < 2000; ++i) {
    const double x = xd(rng), k = kd(rng), t = td(rng);
    const Complex sum = moshinsky(x, k, t, kRb) + moshinsky(-x, -k, t, kRb);
    CHECK(std::abs(sum - plane_wave(x, k, t, kRb)) <= 1e-12);
  }
}

TEST_CASE("moshinsky domain") {
  CHECK_THROWS_AS(moshinsky(0.0, 1.0, 0.0, kRb), std::domain_error);
  CHECK_THROWS_AS(moshinsky_z({0.0, 1.0, -1.0, kRb}), std::domain_error);
  const Complex z = moshinsky_z({0.0, 2.0, 1.0, PhysicalContext::make(1.0, 1.0, "unit")});
  CHECK(z.real() == 1.0);
  CHECK(z.imag() == 1.0);
}

TEST_CASE("asymptotic expansion") {
  const PhysicalContext unit = PhysicalContext::make(1.0, 1.0, "unit");
  // u = sqrt(hbar t/m)(k - m x/hbar t) = 20 with t = 1, x = 0, k = 20: |z| = 14.14.
  const MoshinskyArgs a{0.0, 20.0, 1.0, unit};
  const AsymptoticValue v = moshinsky_asymptotic(a, 60);
  CHECK(v.in_classical_region);
  CHECK(v.terms == 61);
  CHECK(std::abs(v.value - moshinsky(a)) < 1e-14);
  // Leading tail term Gamma(1/2) / (2 pi |z|).
  const double tail = std::abs(moshinsky(a) - plane_wave(0.0, 20.0, 1.0, unit));
  CHECK(tail == doctest::Approx(std::sqrt(std::numbers::pi) / (2.0 * std::numbers::pi * std::abs(moshinsky_z(a))))
                    .epsilon(3e-3));
  CHECK(tail == doctest::Approx(0.01995).epsilon(1e-3));

  const MoshinskyArgs shadow{40.0, 20.0, 1.0, unit};
  const AsymptoticValue w = moshinsky_asymptotic(shadow, 400);
  CHECK_FALSE(w.in_classical_region);
  CHECK(w.terms == static_cast<int>(std::floor(std::norm(moshinsky_z(shadow)))) + 1);
  CHECK(std::abs(w.value - moshinsky(shadow)) < 1e-14);

  CHECK_THROWS_AS(moshinsky_asymptotic({0.0, 1.0, 1.0, unit}, 5), std::domain_error);
  CHECK_THROWS_AS(moshinsky_asymptotic(a, -1), std::domain_error);
}

TEST_CASE("propagators") {
  const double t = 0.004;
  const double amp = std::sqrt(1.0 / (2.0 * std::numbers::pi * kRb.hbar_over_mass() * t));
  const Complex k0 = propagator_free(1e-6, t, -2e-6, 0.0, kRb);
  CHECK(std::abs(k0) == doctest::Approx(amp).epsilon(1e-14));
  CHECK(std::abs(k0 - propagator_free(-2e-6, t + 0.001, 1e-6, 0.001, kRb)) < 1e-9 * amp);
  CHECK_THROWS_AS(propagator_free(0.0, 1.0, 0.0, 1.0, kRb), std::domain_error);

  const double v = 0.005;
  CHECK(propagator_moving_wall(v * t, t, -3e-6, 0.0, v, kRb) == Complex{0.0, 0.0});
  CHECK_THROWS_AS(propagator_moving_wall(v * t + 1e-9, t, -1e-6, 0.0, v, kRb), std::domain_error);
  CHECK_THROWS_AS(propagator_moving_wall(0.0, t, 1e-9, 0.0, v, kRb), std::domain_error);
  const Complex img = propagator_free(-1e-6, t, -2e-6, 0.0, kRb) - propagator_free(-1e-6, t, 2e-6, 0.0, kRb);
  CHECK(propagator_moving_wall(-1e-6, t, -2e-6, 0.0, 0.0, kRb) == img);
}

TEST_CASE("initial state and sudden removal") {
  CHECK(initial_state(-1.0, 0.5) == Complex{0.0, 2.0 * std::sin(-0.5)});
  CHECK(initial_state(0.0, 0.5) == Complex{0.0, 0.0});
  CHECK(initial_state(1.0, 0.5) == Complex{0.0, 0.0});
  const Scenario s = Scenario::from_velocity(kRb, 0.01, SuddenRemoval{}, 0.01);
  CHECK(psi(-1e-5, 0.0, s) == initial_state(-1e-5, s.k));
  CHECK(psi(2e-5, 0.01, s) == moshinsky(2e-5, s.k, 0.01, kRb) - moshinsky(2e-5, -s.k, 0.01, kRb));
}

TEST_CASE("static mirror keeps the standing wave") {
  const Scenario s = Scenario::from_velocity(kRb, 0.01, StaticMirror{}, 0.002);
  for (double x = -2e-4; x <= 0.0; x += 7.3e-6) {
    const double d = std::norm(psi(x, s.time, s));
    CHECK(std::abs(d - 4.0 * std::pow(std::sin(s.k * x), 2)) < 1e-12);
  }
  CHECK(std::norm(psi(1e-6, s.time, s)) == 0.0);
}

TEST_CASE("moving mirror boundary") {
  for (double v : {0.5, 1.0, 1.5}) {
    const Scenario s = released(v);
    const double xm = s.mirror_velocity() * s.time;
    const WaveComponents at = psi_moving(xm, s.time, s);
    CHECK(at.psi == Complex{0.0, 0.0});
    CHECK(std::norm(psi_moving(xm + 1e-7, s.time, s).psi) == 0.0);
    // Formal terms beyond the mirror are kept.
    CHECK(std::norm(psi_moving(xm + 1e-7, s.time, s).m1) > 0.0);
  }
  CHECK_THROWS_AS(psi_moving(0.0, 0.01, released(1.0).with_mirror(SuddenRemoval{})), std::invalid_argument);
}

TEST_CASE("near-limit form is the enhanced universal profile") {
  const Scenario s = released(1.0).at_time(0.01);
  const double q = s.mirror_velocity() / s.context.hbar_over_mass();
  for (double x = -1e-4; x <= 1e-4; x += 3.1e-6) {
    const double d = std::norm(psi_near_limit(x, s.time, s));
    CHECK(std::abs(d - universal_enhanced(cornu_theta(x, s.time, q, s.context))) < 1e-12);
  }
}

TEST_CASE("critical points and classical density") {
  const Scenario s = released(0.8).at_time(0.01);
  const CriticalPoints cp = critical_points(s);
  CHECK(cp.x_minus == doctest::Approx(-1e-4).epsilon(1e-12));
  CHECK(cp.x_plus == doctest::Approx(6e-5).epsilon(1e-12));
  CHECK(cp.x_mirror == doctest::Approx(8e-5).epsilon(1e-12));
  CHECK(classical_density(-2e-4, s.time, s) == 2.0);
  CHECK(classical_density(0.0, s.time, s) == 1.0);
  CHECK(classical_density(7e-5, s.time, s) == 2.0);
  CHECK(classical_density(9e-5, s.time, s) == 0.0);

  const Scenario fast = released(1.5).at_time(0.01);
  CHECK(classical_density(5e-5, fast.time, fast) == 1.0);
  CHECK(classical_density(1.2e-4, fast.time, fast) == 0.0);
  CHECK(classical_density(2e-4, fast.time, fast) == 0.0);

  const Scenario sd = s.with_mirror(SuddenRemoval{});
  CHECK(classical_density(-2e-4, sd.time, sd) == 2.0);
  CHECK(classical_density(5e-5, sd.time, sd) == 1.0);
  CHECK(classical_density(2e-4, sd.time, sd) == 0.0);
  const Scenario st = s.with_mirror(StaticMirror{});
  CHECK(classical_density(-1e-9, st.time, st) == 2.0);
  CHECK(classical_density(1e-9, st.time, st) == 0.0);
  CHECK_THROWS_AS(classical_density(0.0, -1.0, s), std::domain_error);
}
