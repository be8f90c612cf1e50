#include "mwave/physics.hpp"

#include <cmath>
#include <stdexcept>

namespace mwave {

PhysicalContext PhysicalContext::make(double hbar, double mass, std::string label) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be positive");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be positive");
  return PhysicalContext{hbar, mass, std::move(label)};
}

PhysicalContext PhysicalContext::species(std::string_view label) {
  // CODATA 2018 atomic masses times the unified atomic mass unit.
  if (label == "Rb87") return make(kHbar, kRb87Mass, "Rb87");
  if (label == "He4") return make(kHbar, 6.6464731e-27, "He4");
  if (label == "Na23") return make(kHbar, 3.8175407e-26, "Na23");
  if (label == "neutron") return make(kHbar, 1.67492750e-27, "neutron");
  throw std::invalid_argument("unknown species: " + std::string(label));
}

Scenario Scenario::make(PhysicalContext context, double k, MirrorLaw mirror, double time) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("wavenumber must be positive");
  if (!(time >= 0.0) || !std::isfinite(time)) throw std::invalid_argument("time must be >= 0");
  if (const auto* m = std::get_if<MovingMirror>(&mirror); m && !std::isfinite(m->v))
    throw std::invalid_argument("mirror velocity must be finite; use SuddenRemoval for v -> inf");
  return Scenario{std::move(context), k, mirror, time};
}

Scenario Scenario::from_velocity(PhysicalContext context, double vk, MirrorLaw mirror, double time) {
  const double k = wavenumber_for_velocity(context, vk);
  return make(std::move(context), k, mirror, time);
}

Scenario Scenario::at_time(double t) const { return make(context, k, mirror, t); }

Scenario Scenario::with_mirror(MirrorLaw law) const { return make(context, k, law, time); }

double Scenario::mirror_velocity() const {
  if (const auto* m = std::get_if<MovingMirror>(&mirror)) return m->v;
  if (std::holds_alternative<StaticMirror>(mirror)) return 0.0;
  throw std::invalid_argument("sudden removal has no finite mirror velocity");
}

double beam_velocity(const Scenario& s) { return s.context.hbar * s.k / s.context.mass; }

double wavenumber_for_velocity(const PhysicalContext& ctx, double v) {
  return ctx.mass * v / ctx.hbar;
}

Unit parse_unit(std::string_view tag) {
  if (tag == "cm/s") return Unit::CentimetrePerSecond;
  if (tag == "ms") return Unit::Millisecond;
  if (tag == "um" || tag == "μm") return Unit::Micrometre;
  if (tag == "1/m") return Unit::PerMetre;
  if (tag == "s") return Unit::Second;
  if (tag == "m") return Unit::Metre;
  throw std::invalid_argument("unknown unit tag: " + std::string(tag));
}

double to_si(double value, std::string_view unit_tag) { return to_si(value, parse_unit(unit_tag)); }

}  // namespace mwave
