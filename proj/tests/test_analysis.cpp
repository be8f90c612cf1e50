#include "mwave/analysis.hpp"

#include <doctest.h>

using namespace mwave;

namespace {

const PhysicalContext kRb = PhysicalContext::species("Rb87");

Scenario beam(MirrorLaw law, double t = 0.01) { return Scenario::from_velocity(kRb, 0.01, law, t); }

}  // namespace

TEST_CASE("linear grids") {
  CHECK(linear_grid(1.0, 1.0, 1).size() == 1);
  CHECK(linear_grid(-1.0, 1.0, 5)[2] == 0.0);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(linear_grid(1.0, 1.0, 3), std::invalid_argument);
}

TEST_CASE("profile") {
  const Scenario s = beam(MovingMirror{0.008});
  const DensityProfile p = profile(s, linear_grid(-1.5e-4, 1.1e-4, 261), true);
  REQUIRE(p.components);
  CHECK(p.flagged.empty());
  for (Eigen::Index i = 0; i < p.xs.size(); ++i) {
    if (p.xs[i] > 8e-5) CHECK(p.densities[i] == 0.0);
    const auto row = p.components->row(i);
    if (p.xs[i] <= 8e-5) {
      const Complex bracket = (row(0) - row(2)) - (row(1) - row(3));
      CHECK(std::norm(bracket) == doctest::Approx(p.densities[i]).epsilon(1e-12));
    }
  }
  const DensityProfile sd = profile(s.with_mirror(SuddenRemoval{}), linear_grid(-1e-5, 1e-5, 3), true);
  CHECK((sd.components->rightCols(2).abs() == 0.0).all());
  CHECK(sd.densities[1] == doctest::Approx(std::norm(psi_sudden(0.0, 0.01, s.k, kRb))).epsilon(1e-15));

  Eigen::ArrayXd bad(3);
  bad << 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(profile(s, bad), std::invalid_argument);
  CHECK_THROWS_AS(profile(s, Eigen::ArrayXd()), std::invalid_argument);
  CHECK_THROWS_AS(profile(s.at_time(0.0), linear_grid(0.0, 1.0, 2)), std::invalid_argument);
}

TEST_CASE("main fringe on a synthetic pattern") {
  const Eigen::ArrayXd xs = linear_grid(0.0, 3.2, 3201);
  const Eigen::ArrayXd d = 1.0 + 0.5 * (2.0 * std::numbers::pi * xs).cos();
  const FringeStats f = main_fringe(xs, d);
  CHECK(f.x_peak == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(f.x_min == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(f.p_max == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(f.p_min == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(f.visibility == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(f.fringe_width == doctest::Approx(1.0).epsilon(1e-9));

  const Eigen::ArrayXd coarse = linear_grid(0.0, 3.2, 40);
  CHECK_THROWS_AS(main_fringe(coarse, 1.0 + 0.5 * (2.0 * std::numbers::pi * coarse).cos()), AnalysisError);
  CHECK_THROWS_AS(main_fringe(xs, xs), AnalysisError);
  CHECK_THROWS_AS(main_fringe(xs, Eigen::ArrayXd::Zero(xs.size())), AnalysisError);
  CHECK_THROWS_AS(main_fringe(xs, d.head(10)), std::invalid_argument);
}

TEST_CASE("visibility") {
  CHECK(visibility(1.5, 0.5) == 0.5);
  CHECK(visibility(2.0L, 0.0L) == 1.0L);
}

TEST_CASE("universal profiles") {
  CHECK(universal_enhanced(0.0) == 0.0);
  CHECK(universal_enhanced(-1.0) == 0.0);
  CHECK(universal_ordinary(0.0) == doctest::Approx(0.25).epsilon(1e-15));
  // Far from the front both tend to the beam density.
  CHECK(universal_enhanced(60.0) == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(universal_ordinary(60.0) == doctest::Approx(1.0).epsilon(2e-2));

  const Extremum e = universal_enhanced_peak();
  const Extremum o = universal_ordinary_peak();
  CHECK(e.value == doctest::Approx(1.80141635).epsilon(1e-8));
  CHECK(e.argument == doctest::Approx(1.2093781).epsilon(1e-6));
  CHECK(o.value == doctest::Approx(1.3704429).epsilon(1e-7));
  CHECK_THROWS_AS(cornu_theta(0.0, 0.0, 1.0, kRb), std::domain_error);
}

TEST_CASE("front grid resolves the fringe") {
  for (const MirrorLaw& law : {MirrorLaw{SuddenRemoval{}}, MirrorLaw{MovingMirror{0.015}}, MirrorLaw{MovingMirror{0.008}}}) {
    const Scenario s = beam(law);
    const Eigen::ArrayXd g = front_grid(s);
    CHECK((g.tail(g.size() - 1) - g.head(g.size() - 1)).maxCoeff() < fringe_scale(s) / 20.0);
    const FringeStats f = main_fringe(profile(s, g));
    CHECK(f.visibility > 0.0);
    CHECK(f.visibility <= 1.0);
  }
}

TEST_CASE("fringe width scaling") {
  const Scenario s = beam(SuddenRemoval{});
  const FringeScaling fs = fringe_width_scaling(s, {0.01, 0.02, 0.04});
  CHECK(fs.widths.size() == 3);
  CHECK(fs.exponent == doctest::Approx(0.5).epsilon(1e-3));
  CHECK_THROWS_AS(fringe_width_scaling(s, {0.01, 0.04}), std::invalid_argument);
  CHECK_THROWS_AS(fringe_width_scaling(s, {0.01, -0.02, 0.04}), std::invalid_argument);
}

TEST_CASE("enhancement scan") {
  const Scenario tmpl = beam(SuddenRemoval{}, 0.1);
  const std::vector<ScanPoint> scan = enhancement_scan({1.1, 3.0, 200.0}, tmpl);
  CHECK(scan[0].stats.visibility > scan[1].stats.visibility);
  CHECK(scan[1].stats.visibility > scan[2].stats.visibility);
  const FringeStats sudden = main_fringe(profile(tmpl, front_grid(tmpl)));
  CHECK(scan[2].stats.visibility == doctest::Approx(sudden.visibility).epsilon(1e-2));
  CHECK_THROWS_AS(enhancement_scan({0.0}, tmpl), std::invalid_argument);
}
