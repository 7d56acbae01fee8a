#include "doctest.h"
#include "parapress/potential.hpp"
#include "parapress/registry.hpp"

using namespace parapress;

namespace {
std::shared_ptr<const RationalMap> shared_example(const std::string& name) {
  return std::make_shared<const RationalMap>(make_example(name));
}
}  // namespace

TEST_CASE("geometric potential values") {
  auto sq = shared_example("square");
  auto phi1 = Potential::geometric(sq, 1.0);
  // |f'| = 2 on the unit circle: phi_1 = -log 2.
  CHECK(phi1({1.0, 0.0}) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  auto quad = shared_example("quad_parabolic");
  CHECK(Potential::geometric(quad, 1.0)({0.5, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
  // Near-critical evaluation is signaled.
  CHECK_THROWS_AS(phi1({0.0, 0.0}), NumericError);
}

TEST_CASE("constant and combination") {
  auto c = Potential::constant(0.3);
  CHECK(c({5, 7}) == 0.3);
  auto sq = shared_example("square");
  auto mix = Potential::combination({{0.5, Potential::geometric(sq, 1.0)},
                                     {0.5, Potential::constant(0.0)}});
  CHECK(mix({1.0, 0.0}) == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("pointwise nearest-neighbor table") {
  auto p = Potential::pointwise({{{0, 0}, 1.0}, {{1, 0}, 2.0}});
  CHECK(p({0.1, 0.0}) == 1.0);
  CHECK(p({0.9, 0.0}) == 2.0);
  CHECK_THROWS_AS(Potential::pointwise({}), PreconditionError);
}

TEST_CASE("potential spec parsing") {
  auto sq = shared_example("square");
  CHECK(parse_potential("geometric:t=1.0", sq)({1.0, 0.0}) ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(parse_potential("const:c=0.3", sq)({0, 0}) == 0.3);
  auto mix = parse_potential("mix:0.5*geometric:t=1+0.5*const:c=0", sq);
  CHECK(mix({1.0, 0.0}) == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(parse_potential("bogus:x=1", sq), PreconditionError);
  CHECK_THROWS_AS(parse_potential("mix:geometric:t=1", sq), PreconditionError);
}

TEST_CASE("birkhoff sums") {
  auto sq = shared_example("square");
  // Constant: n*c.
  auto c = Potential::constant(0.25);
  CHECK(birkhoff_sum(*sq, c, {1, 0}, 8).value == doctest::Approx(2.0).epsilon(1e-12));
  // Geometric on the circle: -n t log 2.
  auto phi = Potential::geometric(sq, 0.7);
  Complex z{std::cos(1.1), std::sin(1.1)};
  CHECK(birkhoff_sum(*sq, phi, z, 9).value == doctest::Approx(-9 * 0.7 * std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("cocycle identity S_{m+n} = S_m + S_n o f^m") {
  auto quad = shared_example("quad_parabolic");
  auto phi = Potential::geometric(quad, 1.3);
  Complex z{0.41, 0.33};
  double lhs = birkhoff_sum(*quad, phi, z, 13).value;
  double rhs = birkhoff_sum(*quad, phi, z, 5).value +
               birkhoff_sum(*quad, phi, quad->iterate(z, 5), 8).value;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("linearity of birkhoff sums over combinations") {
  auto quad = shared_example("quad_parabolic");
  auto a = Potential::geometric(quad, 1.0);
  auto b = Potential::constant(0.4);
  auto mix = Potential::combination({{0.3, a}, {0.7, b}});
  Complex z{0.2, 0.6};
  double direct = birkhoff_sum(*quad, mix, z, 11).value;
  double split = 0.3 * birkhoff_sum(*quad, a, z, 11).value +
                 0.7 * birkhoff_sum(*quad, b, z, 11).value;
  CHECK(direct == doctest::Approx(split).epsilon(1e-10));
}

TEST_CASE("coboundary identity between metrics") {
  // Geometric potentials in two conformal metrics differ by the telescoping
  // coboundary t (log(rho2/rho1)(f^n z) - log(rho2/rho1)(z)).
  auto quad = shared_example("quad_parabolic");
  auto om = omega(*quad, 3);
  auto sample = sample_inverse_iteration(*quad, {2.0, 0.0}, 30000, 200, 5);
  auto cal = calibrate_metric(*quad, om, sample.points);
  auto metric = std::make_shared<const MilnorMetric>(cal.metric);

  double t = 0.8;
  auto phi_euclid = Potential::geometric(quad, t);
  auto phi_milnor = Potential::geometric_milnor(quad, t, metric);
  int n = 12;
  for (std::size_t i = 0; i < 50; ++i) {
    Complex z = sample.points[i * 101];
    double s1 = birkhoff_sum(*quad, phi_euclid, z, n).value;
    double s2 = birkhoff_sum(*quad, phi_milnor, z, n).value;
    // rho1 = 1 (Euclidean), rho2 = Milnor density.
    double g = [&](Complex w) { return std::log(density(*metric, w)); }(quad->iterate(z, n)) -
               std::log(density(*metric, z));
    CHECK(s1 - s2 == doctest::Approx(t * g).epsilon(1e-8));
  }
}
