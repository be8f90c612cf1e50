#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mwave {

using Complex = std::complex<double>;

/// Raised when a kernel result would overflow or turn non-finite.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Upper half-plane values come from one of three kernels selected by |z|
/// (see detail::faddeeva_region); the lower half-plane uses
/// w(z) = 2 exp(-z^2) - w(-z). Throws NumericalError when exp(-z^2)
/// overflows and std::domain_error for non-finite input.
Complex faddeeva(Complex z);

/// Complementary error function of complex argument, erfc(z) = exp(-z^2) w(iz).
Complex erfc_complex(Complex z);

struct FresnelPair {
  double c = 0.0;
  double s = 0.0;
};

/// Fresnel integrals C(x) = int_0^x cos(pi t^2/2) dt and S(x) likewise with sin.
/// Evaluated through erf of a complex argument on the ray arg = -pi/4.
FresnelPair fresnel(double theta);

/// Maclaurin series for the Fresnel integrals. Cross-check only; loses
/// accuracy like exp(pi theta^2 / 2) and is rejected for |theta| > 4.
FresnelPair fresnel_series(double theta);

/// Gamma(n + 1/2) from Gamma(1/2) = sqrt(pi) by upward recurrence.
template <typename Scalar = double>
Scalar gamma_half(int n) {
  if (n < 0) throw std::domain_error("gamma_half needs n >= 0");
  Scalar g = std::sqrt(std::numbers::pi_v<Scalar>);
  for (int j = 0; j < n; ++j) {
    g *= Scalar(j) + Scalar(0.5);
    if (!std::isfinite(g)) throw NumericalError("gamma_half overflows");
  }
  return g;
}

namespace detail {

enum class FaddeevaRegion { Taylor, Rational, ContinuedFraction };

FaddeevaRegion faddeeva_region(Complex z);

// Kernels valid for Im z >= 0.
Complex faddeeva_taylor(Complex z);
Complex faddeeva_rational(Complex z);
Complex faddeeva_continued_fraction(Complex z);

/// z*z with the real part formed as (x-y)(x+y), exact on the diagonals.
inline Complex square(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  return {(x - y) * (x + y), 2.0 * x * y};
}

/// exp(-z^2), throwing NumericalError past the double range.
Complex exp_minus_square(Complex z);

}  // namespace detail
}  // namespace mwave
