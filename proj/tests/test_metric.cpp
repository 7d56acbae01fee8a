#include "doctest.h"
#include "parapress/metric.hpp"
#include "parapress/registry.hpp"

using namespace parapress;

namespace {

struct Setup {
  RationalMap f;
  OmegaSet om;
  JuliaSample sample;
};

Setup quad_setup() {
  auto f = make_example("quad_parabolic");
  return {f, omega(f, 3), sample_inverse_iteration(f, {2.0, 0.0}, 30000, 200, 5)};
}

}  // namespace

TEST_CASE("postcritical truncation of quad_parabolic") {
  auto f = make_example("quad_parabolic");
  // Critical orbit of 0: 1/4, 5/16, 89/256, ...; Omega adds 1/2.
  auto tr = postcritical_truncation(f, 3, {Complex{0.5, 0.0}});
  bool a = false, b = false, c = false, d = false;
  for (const auto& p : tr.points) {
    if (std::abs(p - Complex{0.25, 0}) < 1e-12) a = true;
    if (std::abs(p - Complex{0.3125, 0}) < 1e-12) b = true;
    if (std::abs(p - Complex{89.0 / 256.0, 0}) < 1e-12) c = true;
    if (std::abs(p - Complex{0.5, 0}) < 1e-12) d = true;
  }
  CHECK(a);
  CHECK(b);
  CHECK(c);
  CHECK(d);
  CHECK(tr.include_infinity);  // infinity is critical and fixed for polynomials
  CHECK(!tr.omega_was_empty);

  auto tr2 = postcritical_truncation(make_example("square"), 5, {});
  CHECK(tr2.omega_was_empty);
}

TEST_CASE("density: plateau exact, surrogate reciprocal-distance elsewhere") {
  MilnorMetric m;
  m.alpha = 0.1;
  m.M = 2.5;
  m.omega_points = {Complex{0.5, 0.0}};
  m.truncation.points = {Complex{0.0, 0.0}, Complex{0.5, 0.0}};
  // Inside the plateau: exactly M.
  CHECK(density(m, {0.55, 0.0}) == 2.5);
  CHECK(density(m, {0.5, 0.099}) == 2.5);
  // Outside: 1/dist to the truncation set.  dist({1,0} -> {0.5,0}) = 0.5.
  CHECK(density(m, {1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
  // Singular at a truncation point outside the plateau.
  CHECK_THROWS_AS(density(m, {0.0, 0.0}), NumericError);
}

TEST_CASE("derivative norm algebra on z^2") {
  // With the surrogate density 1/|z| (truncation {0}), ||f'|| = 2 on the circle.
  auto f = make_example("square");
  MilnorMetric m;
  m.alpha = 0.0;  // no plateau
  m.M = 1.0;
  m.truncation.points = {Complex{0.0, 0.0}};
  for (double a : {0.3, 1.4, 2.8}) {
    Complex z{std::cos(a), std::sin(a)};
    CHECK(derivative_norm(m, f, z) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("constant density cancels in the norm") {
  auto f = make_example("quad_parabolic");
  MilnorMetric m;
  m.alpha = 100.0;  // plateau everywhere
  m.M = 7.0;
  m.omega_points = {Complex{0.5, 0.0}};
  Complex z{0.3, 0.2};
  CHECK(derivative_norm(m, f, z) == doctest::Approx(f.abs_derivative(z)).epsilon(1e-12));
}

TEST_CASE("choose_M formula on quad_parabolic") {
  auto f = make_example("quad_parabolic");
  std::vector<Complex> om{{0.5, 0.0}};
  auto tr = postcritical_truncation(f, 50, om);
  double r = 1.2;
  bool no_extra = false;
  double M = choose_M(f, 0.1, om, r, tr, &no_extra);
  CHECK(!no_extra);
  // f^-1(1/2) \ {1/2} = {-1/2}, |f'(-1/2)| = 1, so M = r * rho(-1/2) + 1.
  double rho = surrogate_density(tr, {-0.5, 0.0});
  CHECK(M == doctest::Approx(r * rho + 1.0).epsilon(1e-12));
  CHECK_THROWS_AS(choose_M(f, 0.1, {}, r, tr), PreconditionError);
}

TEST_CASE("local distance") {
  MilnorMetric m;
  m.alpha = 0.2;
  m.M = 3.0;
  m.omega_points = {Complex{0.0, 0.0}};
  m.truncation.points = {Complex{0.0, 0.0}};
  CHECK(local_distance(m, {0.05, 0}, {0.05, 0}) == 0.0);
  // Both in the plateau: M * |x - y|.
  CHECK(local_distance(m, {0.05, 0}, {0.15, 0}) == doctest::Approx(0.3).epsilon(1e-12));
  // Symmetry is exact.
  CHECK(local_distance(m, {0.05, 0}, {0.15, 0}) == local_distance(m, {0.15, 0}, {0.05, 0}));
  CHECK_THROWS_AS(local_distance(m, {0, 0}, {1, 0}), PreconditionError);
}

TEST_CASE("two-pass calibration verifies expansion on quad_parabolic") {
  auto s = quad_setup();
  auto cal = calibrate_metric(s.f, s.om, s.sample.points);
  CHECK(cal.metric.alpha > 0.0);
  CHECK(cal.metric.M >= 1.0);
  CHECK(cal.metric.r_alpha > 1.0);
  CHECK(cal.report.r_min_on_K > 1.0);
  CHECK(cal.report.global_min >= 1.0 - 1e-6);
  CHECK(cal.report.violations.empty());
  // Plateau exactness at random plateau points.
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    Complex z = Complex{0.5, 0.0} + cal.metric.alpha * rng.uniform() * rng.unit();
    CHECK(density(cal.metric, z) == cal.metric.M);
  }
}

TEST_CASE("calibration requires a parabolic map") {
  auto f = make_example("square");
  auto om = omega(f, 3);
  auto s = sample_inverse_iteration(f, {2.0, 0.0}, 5000, 100, 2);
  CHECK_THROWS_AS(calibrate_metric(f, om, s.points), PreconditionError);
}

TEST_CASE("gross mistuning of M produces violations near f^-1(Omega)") {
  auto s = quad_setup();
  auto cal = calibrate_metric(s.f, s.om, s.sample.points);
  MilnorMetric bad = cal.metric;
  bad.M = 0.01;
  auto rep = verify_expansion(bad, s.f, s.sample.points, bad.alpha);
  CHECK(!rep.violations.empty());
  // Violations cluster where orbits enter the plateau: near f^-1(Omega).
  bool near_preimage = false;
  for (const auto& v : rep.violations)
    if (std::abs(s.f.eval_finite(v) - Complex{0.5, 0.0}) <= bad.alpha) near_preimage = true;
  CHECK(near_preimage);
}

TEST_CASE("cocycle property of the derivative norm") {
  auto s = quad_setup();
  auto cal = calibrate_metric(s.f, s.om, s.sample.points);
  for (std::size_t i = 0; i < 200; ++i) {
    Complex z = s.sample.points[i * 37];
    Complex fz = s.f.eval_finite(z);
    double lhs = derivative_norm(cal.metric, s.f, fz) * derivative_norm(cal.metric, s.f, z);
    // ||(f^2)'(z)|| computed directly from the density quotient and chain rule.
    double rhs = density(cal.metric, s.f.eval_finite(fz)) * s.f.abs_derivative(fz) *
                 s.f.abs_derivative(z) / density(cal.metric, z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("Lipschitz comparability of the local distance") {
  auto s = quad_setup();
  auto cal = calibrate_metric(s.f, s.om, s.sample.points);
  double dmin = 1e300, dmax = 0.0;
  for (std::size_t i = 0; i < 2000; ++i) {
    double d = density(cal.metric, s.sample.points[i]);
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    Complex x = s.sample.points[rng.below(2000)];
    Complex y = x + 0.5 * cal.metric.alpha * rng.unit();
    double ld = local_distance(cal.metric, x, y);
    double eu = std::abs(x - y);
    CHECK(ld >= 0.99 * dmin * eu);
    CHECK(ld <= 1.01 * dmax * eu);
  }
}
