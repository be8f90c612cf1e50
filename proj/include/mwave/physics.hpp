#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace mwave {

/// Reduced Planck constant (J s).
inline constexpr double kHbar = 1.054571817e-34;
/// Mass of a 87Rb atom (kg). Used by every figure reproduction.
inline constexpr double kRb87Mass = 1.44316060e-25;

/// Species constants. Immutable; all computation is in SI.
struct PhysicalContext {
  double hbar = kHbar;
  double mass = kRb87Mass;
  std::string species_label = "Rb87";

  /// Throws std::invalid_argument unless hbar > 0 and mass > 0.
  static PhysicalContext make(double hbar, double mass, std::string label);
  /// Looks up a compiled-in species: "Rb87", "He4", "Na23" or "neutron".
  static PhysicalContext species(std::string_view label);

  double hbar_over_mass() const { return hbar / mass; }
};

/// Wall at rest at x = 0 for all times.
struct StaticMirror {};
/// Wall moving along x_m = v t for t > 0.
struct MovingMirror {
  double v;  // m/s, finite
};
/// Wall removed at t = 0 (the v -> infinity case).
struct SuddenRemoval {};

using MirrorLaw = std::variant<StaticMirror, MovingMirror, SuddenRemoval>;

/// Beam wavenumber, mirror law and evaluation time. The beam velocity is
/// always derived from k.
struct Scenario {
  PhysicalContext context;
  double k = 0.0;
  MirrorLaw mirror = SuddenRemoval{};
  double time = 0.0;

  /// Validates k > 0, time >= 0 and a finite mirror velocity.
  static Scenario make(PhysicalContext context, double k, MirrorLaw mirror, double time);
  /// Builds a scenario from a beam velocity instead of a wavenumber.
  static Scenario from_velocity(PhysicalContext context, double vk, MirrorLaw mirror, double time);

  Scenario at_time(double t) const;
  Scenario with_mirror(MirrorLaw law) const;

  /// Mirror velocity for the finite-velocity laws (0 for a static wall).
  /// Throws std::invalid_argument for SuddenRemoval.
  double mirror_velocity() const;
  bool is_sudden() const { return std::holds_alternative<SuddenRemoval>(mirror); }
};

/// v_k = hbar k / m.
double beam_velocity(const Scenario& s);
/// k = m v / hbar.
double wavenumber_for_velocity(const PhysicalContext& ctx, double v);

enum class Unit { CentimetrePerSecond, Millisecond, Micrometre, PerMetre, Second, Metre };

Unit parse_unit(std::string_view tag);

/// Lab units are SI divided by an exact power of ten.
template <typename Scalar>
constexpr Scalar unit_divisor(Unit unit) {
  switch (unit) {
    case Unit::CentimetrePerSecond: return Scalar(100);
    case Unit::Millisecond: return Scalar(1000);
    case Unit::Micrometre: return Scalar(1000000);
    case Unit::PerMetre:
    case Unit::Second:
    case Unit::Metre: return Scalar(1);
  }
  return Scalar(1);
}

template <typename Scalar>
constexpr Scalar to_si(Scalar value, Unit unit) {
  return value / unit_divisor<Scalar>(unit);
}

template <typename Scalar>
constexpr Scalar from_si(Scalar value, Unit unit) {
  return value * unit_divisor<Scalar>(unit);
}

/// Converts a lab value tagged with "cm/s", "ms", "um" (or "μm"), "1/m", "s" or "m".
/// Unknown tags throw std::invalid_argument.
double to_si(double value, std::string_view unit_tag);

}  // namespace mwave
