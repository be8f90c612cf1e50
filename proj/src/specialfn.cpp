#include "mwave/specialfn.hpp"

#include <array>

namespace mwave {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// Region radii, tuned against the multiprecision reference in the tests.
constexpr double kTaylorRadius = 1.5;
constexpr double kContinuedFractionRadius = 8.0;

// Weideman's rational expansion of order N in the variable (L + iz)/(L - iz).
constexpr int kRationalOrder = 40;

struct RationalCoefficients {
  double length;
  std::array<double, kRationalOrder> a;
};

RationalCoefficients make_rational_coefficients() {
  constexpr int n = kRationalOrder;
  constexpr int m = 2 * n;
  RationalCoefficients rc{};
  rc.length = std::sqrt(n / std::numbers::sqrt2);
  const double l = rc.length;
  // a_j = (1/2M) sum_{k=-M+1}^{M-1} f(theta_k) cos(j theta_k), theta_k = k pi / M,
  // with f = exp(-t^2)(L^2 + t^2) and t = L tan(theta / 2).
  for (int j = 1; j <= n; ++j) {
    double sum = 0.0;
    for (int k = -m + 1; k <= m - 1; ++k) {
      const double theta = k * kPi / m;
      const double t = l * std::tan(0.5 * theta);
      const double f = std::exp(-t * t) * (l * l + t * t);
      sum += f * std::cos(j * theta);
    }
    rc.a[j - 1] = sum / (2.0 * m);
  }
  return rc;
}

const RationalCoefficients& rational_coefficients() {
  static const RationalCoefficients rc = make_rational_coefficients();
  return rc;
}

void require_finite(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("special function argument must be finite");
}

Complex faddeeva_upper(Complex z) {
  switch (detail::faddeeva_region(z)) {
    case detail::FaddeevaRegion::Taylor: return detail::faddeeva_taylor(z);
    case detail::FaddeevaRegion::Rational: return detail::faddeeva_rational(z);
    case detail::FaddeevaRegion::ContinuedFraction: return detail::faddeeva_continued_fraction(z);
  }
  return {};
}

}  // namespace

namespace detail {

FaddeevaRegion faddeeva_region(Complex z) {
  const double r = std::abs(z);
  if (r < kTaylorRadius) return FaddeevaRegion::Taylor;
  if (r < kContinuedFractionRadius) return FaddeevaRegion::Rational;
  return FaddeevaRegion::ContinuedFraction;
}

Complex faddeeva_taylor(Complex z) {
  // w(z) = sum_n (iz)^n / Gamma(n/2 + 1).
  const Complex iz{-z.imag(), z.real()};
  double c_even = 1.0;              // 1 / Gamma(n/2 + 1), n even
  double c_odd = 2.0 * kInvSqrtPi;  // n odd
  Complex power{1.0, 0.0};
  Complex sum{0.0, 0.0};
  for (int n = 0; n < 80; ++n) {
    const double c = (n % 2 == 0) ? c_even : c_odd;
    const Complex term = c * power;
    sum += term;
    if (n > 4 && std::abs(term) < 1e-18 * std::abs(sum)) break;
    power *= iz;
    if (n % 2 == 0)
      c_even /= 0.5 * n + 1.0;
    else
      c_odd /= 0.5 * n + 1.0;
  }
  return sum;
}

Complex faddeeva_rational(Complex z) {
  const auto& rc = rational_coefficients();
  const Complex iz{-z.imag(), z.real()};
  const Complex denom = rc.length - iz;
  const Complex zeta = (rc.length + iz) / denom;
  Complex p{0.0, 0.0};
  for (int j = kRationalOrder - 1; j >= 0; --j) p = p * zeta + rc.a[j];
  return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

Complex faddeeva_continued_fraction(Complex z) {
  // Laplace continued fraction, evaluated backwards:
  // w(z) = (i/sqrt(pi)) / (z - (1/2) / (z - 1 / (z - (3/2) / (z - ...)))).
  const double r = std::abs(z);
  const int terms = r > 30.0 ? 12 : static_cast<int>(40.0 + 3200.0 / (r * r));
  Complex tail{0.0, 0.0};
  for (int n = terms; n >= 1; --n) tail = (0.5 * n) / (z - tail);
  return Complex{0.0, kInvSqrtPi} / (z - tail);
}

Complex exp_minus_square(Complex z) {
  const Complex z2 = square(z);
  if (-z2.real() > std::log(std::numeric_limits<double>::max()) - 1.0)
    throw NumericalError("exp(-z^2) overflows");
  return std::exp(-z2);
}

}  // namespace detail

Complex faddeeva(Complex z) {
  require_finite(z);
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  return 2.0 * detail::exp_minus_square(z) - faddeeva_upper(-z);
}

Complex erfc_complex(Complex z) {
  require_finite(z);
  // iz lies in the upper half-plane when Re z >= 0.
  if (z.real() >= 0.0) {
    const Complex iz{-z.imag(), z.real()};
    const Complex e = detail::exp_minus_square(z);
    return e * faddeeva_upper(iz);
  }
  const Complex miz{z.imag(), -z.real()};
  const Complex e = detail::exp_minus_square(z);
  return 2.0 - e * faddeeva_upper(miz);
}

FresnelPair fresnel(double theta) {
  if (!std::isfinite(theta)) throw std::domain_error("fresnel argument must be finite");
  if (theta == 0.0) return {0.0, 0.0};
  const double a = std::abs(theta);
  // C + iS = (1+i)/2 erf(s), s = sqrt(pi)/2 (1-i) a.
  const double h = 0.5 * std::sqrt(kPi) * a;
  const Complex s{h, -h};
  const Complex erf = 1.0 - erfc_complex(s);
  const Complex cs = Complex{0.5, 0.5} * erf;
  const double sign = theta < 0.0 ? -1.0 : 1.0;
  return {sign * cs.real(), sign * cs.imag()};
}

FresnelPair fresnel_series(double theta) {
  if (!(std::abs(theta) <= 4.0)) throw std::domain_error("fresnel_series limited to |theta| <= 4");
  const double x = theta;
  const double u = 0.5 * kPi * x * x;
  // C = sum (-1)^n u^{2n} x / ((2n)! (4n+1)),  S = sum (-1)^n u^{2n+1} x / ((2n+1)! (4n+3)).
  long double c = 0.0L;
  long double s = 0.0L;
  long double term = x;  // (-1)^n u^j x / j!
  for (int j = 0; j < 200; ++j) {
    const long double contrib = term / (2 * j + 1);
    if (j % 2 == 0)
      c += contrib;
    else
      s += contrib;
    if (j > 4 && std::abs(contrib) < 1e-22L) break;
    term *= (j % 2 == 0 ? 1.0L : -1.0L) * u / (j + 1);
  }
  return {static_cast<double>(c), static_cast<double>(s)};
}

}  // namespace mwave
