#include "mwave/oracle.hpp"

#include <unsupported/Eigen/FFT>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mwave {
namespace {

constexpr double kNormDriftLimit = 1e-8;
constexpr double kMaxStepPhase = 0.1;
constexpr double kPanelPhase = std::numbers::pi / 4.0;
constexpr double kTailSafety = 1.5;

// 6-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 6> kGaussNodes = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                                               0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
constexpr std::array<double, 6> kGaussWeights = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                                                 0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

// Mirror velocity, or 0 for sudden removal (which is evolved in the lab frame).
double frame_velocity(const Scenario& s) { return s.is_sudden() ? 0.0 : s.mirror_velocity(); }

// Largest wavenumber present in the initial state as seen in the evolution frame.
double max_wavenumber(const Scenario& s) {
  return s.k + std::abs(frame_velocity(s)) / s.context.hbar_over_mass();
}

double round_up_to_node(double length, double k) {
  const double half_wave = std::numbers::pi / k;
  return std::ceil(length / half_wave) * half_wave;
}

// Distance from the far wall (or truncation edge) that must stay free of edge waves.
double far_reach(const Scenario& s, double x_lo, double x_hi) {
  if (s.is_sudden()) return std::max(std::abs(x_lo), std::abs(x_hi));
  return std::abs(x_lo);
}

double causality_margin(const Scenario& s) {
  const double t = s.time;
  return (beam_velocity(s) + std::abs(frame_velocity(s))) * t + 10.0 * std::sqrt(s.context.hbar_over_mass() * t);
}

// Sine transform sum_j f_j sin(pi n j / N) over interior nodes via an odd
// extension of length 2N. f and the result hold nodes 1..N-1.
class SineTransform {
 public:
  explicit SineTransform(Eigen::Index n) : n_(n), ext_(static_cast<std::size_t>(2 * n)) {}

  void apply(const std::vector<Complex>& f, std::vector<Complex>& out) {
    const auto n = static_cast<std::size_t>(n_);
    ext_[0] = 0.0;
    ext_[n] = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      ext_[j] = f[j - 1];
      ext_[2 * n - j] = -f[j - 1];
    }
    fft_.fwd(spec_, ext_);
    out.resize(n - 1);
    for (std::size_t m = 1; m < n; ++m) out[m - 1] = Complex{0.0, 0.5} * spec_[m];
  }

 private:
  Eigen::Index n_;
  Eigen::FFT<double> fft_;
  std::vector<Complex> ext_;
  std::vector<Complex> spec_;
};

double squared_norm(const std::vector<Complex>& f) {
  double sum = 0.0;
  for (const Complex& c : f) sum += std::norm(c);
  return sum;
}

// Exact Crank-Nicolson in the Dirichlet sine basis: each mode picks up
// ((1 - i w dt/2) / (1 + i w dt/2))^steps, a pure phase.
void step_spectral(std::vector<Complex>& f, double span, double hm, double dt, long steps) {
  const Eigen::Index n = static_cast<Eigen::Index>(f.size()) + 1;
  SineTransform dst(n);
  std::vector<Complex> modes;
  dst.apply(f, modes);
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const double kappa = std::numbers::pi * static_cast<double>(m + 1) / span;
    const double omega = 0.5 * hm * kappa * kappa;
    modes[m] *= std::polar(1.0, -2.0 * static_cast<double>(steps) * std::atan(0.5 * omega * dt));
  }
  dst.apply(modes, f);
  const double scale = 2.0 / static_cast<double>(n);
  for (Complex& c : f) c *= scale;
}

// Three-point Laplacian, (1 + i dt H/2) f' = (1 - i dt H/2) f, Thomas algorithm.
void step_finite_difference(std::vector<Complex>& f, double dy, double hm, double dt, long steps) {
  const std::size_t n = f.size();
  const Complex a{0.0, 0.25 * dt * hm / (dy * dy)};
  const Complex diag = 1.0 + 2.0 * a;
  // Forward-elimination coefficients depend only on the matrix.
  std::vector<Complex> c_prime(n);
  std::vector<Complex> denom(n);
  denom[0] = diag;
  c_prime[0] = -a / diag;
  for (std::size_t j = 1; j < n; ++j) {
    denom[j] = diag + a * c_prime[j - 1];
    c_prime[j] = -a / denom[j];
  }
  std::vector<Complex> rhs(n);
  for (long s = 0; s < steps; ++s) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex left = j > 0 ? f[j - 1] : Complex{};
      const Complex right = j + 1 < n ? f[j + 1] : Complex{};
      rhs[j] = (1.0 - 2.0 * a) * f[j] + a * (left + right);
    }
    rhs[0] /= denom[0];
    for (std::size_t j = 1; j < n; ++j) rhs[j] = (rhs[j] + a * rhs[j - 1]) / denom[j];
    f[n - 1] = rhs[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) f[j] = rhs[j] - c_prime[j] * f[j + 1];
  }
}

// One exponential of the quadrature integrand: amplitude * exp(i (a2 x'^2 + a1 x' + a0)).
struct Exponential {
  Complex amplitude;
  double a2, a1, a0;

  double phase(double xp) const { return (a2 * xp + a1) * xp + a0; }
  double slope(double xp) const { return 2.0 * a2 * xp + a1; }
};

std::vector<Exponential> exponentials(const Scenario& s, double x) {
  const double hm = s.context.hbar_over_mass();
  const double t = s.time;
  const double ht = hm * t;
  const Complex c = std::polar(std::sqrt(1.0 / (2.0 * std::numbers::pi * ht)), -0.25 * std::numbers::pi);
  const double a2 = 0.5 / ht;
  const double k = s.k;
  if (s.is_sudden()) {
    const double a0 = x * x * a2;
    return {{c, a2, -x / ht + k, a0}, {-c, a2, -x / ht - k, a0}};
  }
  const double v = s.mirror_velocity();
  const double q = v / hm;
  const double X = x - v * t;
  const Complex p = c * std::polar(1.0, q * X + 0.5 * q * v * t);
  const double a0 = X * X * a2;
  return {{p, a2, -X / ht - q + k, a0},
          {-p, a2, -X / ht - q - k, a0},
          {-p, a2, X / ht - q + k, a0},
          {p, a2, X / ht - q - k, a0}};
}

// Integrand of the superposition integral at x'.
Complex integrand(const Scenario& s, double x, double xp) {
  const Complex init = initial_state(xp, s.k);
  if (s.is_sudden()) return propagator_free(x, s.time, xp, 0.0, s.context) * init;
  return propagator_moving_wall(x, s.time, xp, 0.0, s.mirror_velocity(), s.context) * init;
}

// Contribution of the initial state beyond -w, from two terms of the
// endpoint expansion of each exponential. Infinite if a stationary point
// lies in the discarded tail.
Complex tail_estimate(const std::vector<Exponential>& terms, double w) {
  Complex sum{0.0, 0.0};
  const double a = -w;
  for (const Exponential& e : terms) {
    const double d1 = e.slope(a);
    if (d1 == 0.0 || -e.a1 / (2.0 * e.a2) < a) return {std::numeric_limits<double>::infinity(), 0.0};
    const double d2 = 2.0 * e.a2;
    const Complex lead = 1.0 / Complex{0.0, d1} - d2 / (d1 * d1 * d1);
    sum += e.amplitude * std::polar(1.0, e.phase(a)) * lead;
  }
  return sum;
}

double max_slope(const std::vector<Exponential>& terms, double xp) {
  double m = 0.0;
  for (const Exponential& e : terms) m = std::max(m, std::abs(e.slope(xp)));
  return m;
}

struct PanelSum {
  Complex value;
  long panels;
};

PanelSum integrate(const Scenario& s, double x, double w, const std::vector<Exponential>& terms) {
  const double curvature_cap = std::sqrt(kPanelPhase / terms.front().a2);
  Complex sum{0.0, 0.0};
  long panels = 0;
  double a = -w;
  while (a < 0.0) {
    double h = std::min(curvature_cap, -a);
    for (int it = 0; it < 60; ++it) {
      const double slope = std::max(max_slope(terms, a), max_slope(terms, a + h));
      if (slope * h <= kPanelPhase) break;
      h = 0.999 * kPanelPhase / slope;
    }
    const double b = (a + h >= -1e-6 * h) ? 0.0 : a + h;  // no sliver panel at 0
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex panel{0.0, 0.0};
    for (std::size_t g = 0; g < kGaussNodes.size(); ++g)
      panel += kGaussWeights[g] * integrand(s, x, mid + half * kGaussNodes[g]);
    sum += half * panel;
    ++panels;
    a = b;
  }
  return {sum, panels};
}

const char* discretization_name(Discretization d) {
  return d == Discretization::SineSpectral ? "sine-spectral" : "finite-difference";
}

}  // namespace

OracleConfig suggest_grid_config(const Scenario& s, double x_lo, double x_hi, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(s.time > 0.0)) throw std::invalid_argument("oracle needs time > 0");
  const double hm = s.context.hbar_over_mass();
  const double sigma = std::sqrt(hm * s.time);
  // Edge waves from the far wall decay like 1/distance^2 once the wall sits on a node.
  const double buffer = std::max(10.0 * sigma, 20.0 * sigma / std::sqrt(tolerance));
  OracleConfig c;
  c.x_lo = x_lo;
  c.x_hi = x_hi;
  c.domain_length = round_up_to_node(far_reach(s, x_lo, x_hi) + causality_margin(s) + buffer, s.k);
  const double kmax = max_wavenumber(s);
  const double span = s.is_sudden() ? 2.0 * c.domain_length : c.domain_length;
  // The kink of the truncated wave at x = 0 gives an O(dy^2) error; in the
  // mirror frame only the curvature jumps and the error falls like dy^4.
  const double kdy = s.is_sudden() ? 0.15 * std::sqrt(tolerance / 1.5e-2)
                                   : std::min(0.5, 0.3 * std::pow(tolerance / 1e-4, 0.25));
  const double intervals = span * kmax / kdy;
  c.grid_points = Eigen::Index{1} << static_cast<int>(std::ceil(std::log2(intervals)));
  // Crank-Nicolson phase error per mode is ~ w^3 dt^2 t / 12; the kink also
  // feeds modes well above k.
  const double kt = s.is_sudden() ? 4.0 * kmax : kmax;
  const double omega = 0.5 * hm * kt * kt;
  const double dt_accuracy = std::sqrt(12.0 * tolerance / (8.0 * omega * omega * omega * s.time));
  c.time_step = std::min(dt_accuracy, 0.5 * kMaxStepPhase / omega);
  c.truncation_window = c.domain_length;
  return c;
}

OracleConfig suggest_quadrature_config(const Scenario& s, double x_lo, double x_hi, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(s.time > 0.0)) throw std::invalid_argument("oracle needs time > 0");
  const double sigma = std::sqrt(s.context.hbar_over_mass() * s.time);
  // With sin(k x') = 0 at the edge the tail is ~ 2 k sigma / (sqrt(2 pi) u^2) in psi, u = distance / sigma.
  const double u = std::max(50.0, std::sqrt(8.0 * max_wavenumber(s) * sigma / tolerance));
  OracleConfig c;
  c.x_lo = x_lo;
  c.x_hi = x_hi;
  const double reach = std::max(std::abs(x_lo), std::abs(x_hi));
  c.truncation_window = round_up_to_node(reach + causality_margin(s) + u * sigma, s.k);
  c.domain_length = c.truncation_window;
  return c;
}

void check_grid_config(const Scenario& s, const OracleConfig& c) {
  if (!(s.time > 0.0)) throw std::invalid_argument("oracle needs time > 0");
  const double tol = 1e-3;
  auto reject = [&](const std::string& why) {
    throw OracleConfigError(why, suggest_grid_config(s, c.x_lo, c.x_hi, tol));
  };
  if (!(c.x_lo <= c.x_hi)) reject("comparison window needs x_lo <= x_hi");
  if (c.grid_points < 4) reject("grid needs at least 4 intervals");
  if (!(c.time_step > 0.0)) reject("time step must be positive");
  if (!(c.domain_length > 0.0)) reject("domain length must be positive");
  if (!(c.domain_length - far_reach(s, c.x_lo, c.x_hi) > causality_margin(s)))
    reject("domain too short: the far wall can reach the comparison window");
  const double kmax = max_wavenumber(s);
  const double omega = 0.5 * s.context.hbar_over_mass() * kmax * kmax;
  if (!(omega * c.time_step < kMaxStepPhase)) reject("time step too large for the beam's kinetic phase");
  const double span = s.is_sudden() ? 2.0 * c.domain_length : c.domain_length;
  if (span / static_cast<double>(c.grid_points) * kmax > 2.0 * std::numbers::pi / 6.0)
    reject("grid too coarse: fewer than 6 points per wavelength");
}

GridResult evolve_grid(const Scenario& s, const OracleConfig& c) {
  check_grid_config(s, c);
  const double hm = s.context.hbar_over_mass();
  const double t = s.time;
  const double v = frame_velocity(s);
  const double q = v / hm;
  const double L = c.domain_length;
  const Eigen::Index n = c.grid_points;
  const double left = -L;
  const double span = s.is_sudden() ? 2.0 * L : L;
  const double dy = span / static_cast<double>(n);

  // Interior nodes 1..n-1 in the evolution frame.
  std::vector<Complex> f(static_cast<std::size_t>(n - 1));
  for (Eigen::Index j = 1; j < n; ++j) {
    const double y = left + static_cast<double>(j) * dy;
    f[static_cast<std::size_t>(j - 1)] = initial_state(y, s.k) * std::polar(1.0, -q * y);
  }
  const double norm0 = squared_norm(f);

  const long steps = std::max(1L, std::lround(t / c.time_step));
  const double dt = t / static_cast<double>(steps);
  if (c.discretization == Discretization::SineSpectral)
    step_spectral(f, span, hm, dt, steps);
  else
    step_finite_difference(f, dy, hm, dt, steps);

  GridResult out;
  out.steps = steps;
  out.norm_drift = norm0 > 0.0 ? std::abs(squared_norm(f) - norm0) / norm0 : 0.0;
  if (!(out.norm_drift <= kNormDriftLimit)) throw NumericalError("grid oracle norm drift exceeds 1e-8");

  std::vector<double> xs;
  std::vector<double> ds;
  for (Eigen::Index j = 0; j <= n; ++j) {
    const double y = left + static_cast<double>(j) * dy;
    const double x = y + v * t;
    if (x < c.x_lo || x > c.x_hi) continue;
    const Complex phi = (j == 0 || j == n) ? Complex{} : f[static_cast<std::size_t>(j - 1)];
    xs.push_back(x);
    ds.push_back(std::norm(std::polar(1.0, q * x - 0.5 * q * v * t) * phi));
  }
  out.profile.scenario = s;
  out.profile.xs = Eigen::Map<const Eigen::ArrayXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  out.profile.densities = Eigen::Map<const Eigen::ArrayXd>(ds.data(), static_cast<Eigen::Index>(ds.size()));
  return out;
}

QuadratureResult evolve_quadrature(const Scenario& s, const OracleConfig& c, const Eigen::ArrayXd& xs,
                                   double tolerance) {
  if (!(s.time > 0.0)) throw std::invalid_argument("oracle needs time > 0");
  if (!(c.truncation_window >= 0.0)) throw std::invalid_argument("truncation window must be >= 0");
  const double w = c.truncation_window;
  QuadratureResult out;
  out.profile.scenario = s;
  out.profile.xs = xs;
  out.profile.densities = Eigen::ArrayXd::Zero(xs.size());
  out.error_estimate = Eigen::ArrayXd::Zero(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (w == 0.0) continue;
    if (!s.is_sudden() && x > s.mirror_velocity() * s.time) continue;
    const std::vector<Exponential> terms = exponentials(s, x);
    const PanelSum r = integrate(s, x, w, terms);
    const double tail = std::abs(tail_estimate(terms, w));
    const double amp = std::abs(r.value);
    out.profile.densities[i] = std::norm(r.value);
    out.error_estimate[i] = kTailSafety * (2.0 * amp * tail + tail * tail) + 1e-12;
    out.panels = r.panels;
    if (!(out.error_estimate[i] <= tolerance)) out.flagged = true;
  }
  return out;
}

Comparison compare(const DensityProfile& a, const DensityProfile& b, const std::optional<OracleConfig>& config) {
  if (a.xs.size() != b.xs.size() || !(a.xs == b.xs).all())
    throw std::invalid_argument("compared profiles must share the same grid");
  const Scenario& s = a.scenario;
  const double t = s.time;
  const double vk = beam_velocity(s);

  // Region boundaries (right edges, inclusive) and names.
  std::vector<std::pair<std::string, double>> bounds;
  const double inf = std::numeric_limits<double>::infinity();
  if (s.is_sudden()) {
    bounds = {{"x<=x-", -vk * t}, {"x-<x<=vk*t", vk * t}, {"x>vk*t", inf}};
  } else if (std::holds_alternative<StaticMirror>(s.mirror)) {
    bounds = {{"x<=0", 0.0}, {"x>0", inf}};
  } else {
    const CriticalPoints cp = critical_points(s);
    const double v = s.mirror_velocity();
    if (v < vk)
      bounds = {{"x<=x-", cp.x_minus}, {"x-<x<=x+", cp.x_plus}, {"x+<x<=xm", cp.x_mirror}, {"x>xm", inf}};
    else
      bounds = {{"x<=x-", cp.x_minus}, {"x-<x<=vk*t", vk * t}, {"vk*t<x<=xm", cp.x_mirror}, {"x>xm", inf}};
  }

  Comparison out;
  for (const auto& [name, edge] : bounds) out.regions.push_back({name, 0, 0.0});
  double sum_sq = 0.0;
  for (Eigen::Index i = 0; i < a.xs.size(); ++i) {
    const double err = std::abs(a.densities[i] - b.densities[i]);
    out.max_abs_err = std::max(out.max_abs_err, err);
    sum_sq += err * err;
    std::size_t r = 0;
    while (a.xs[i] > bounds[r].second) ++r;
    out.regions[r].points += 1;
    out.regions[r].max_abs_err = std::max(out.regions[r].max_abs_err, err);
  }
  if (a.xs.size() > 0) out.rms_err = std::sqrt(sum_sq / static_cast<double>(a.xs.size()));

  std::ostringstream os;
  os.precision(12);
  if (config) {
    os << "domain_length_m: " << config->domain_length << '\n'
       << "grid_points: " << config->grid_points << '\n'
       << "time_step_s: " << config->time_step << '\n'
       << "truncation_window_m: " << config->truncation_window << '\n'
       << "window_m: " << config->x_lo << ' ' << config->x_hi << '\n'
       << "discretization: " << discretization_name(config->discretization) << '\n';
  }
  os << "max_abs_err: " << out.max_abs_err << '\n' << "rms_err: " << out.rms_err << '\n';
  for (const RegionError& r : out.regions)
    os << "region " << r.name << ": points " << r.points << " max_abs_err " << r.max_abs_err << '\n';
  out.report = os.str();
  return out;
}

}  // namespace mwave
