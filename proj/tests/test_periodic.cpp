#include "doctest.h"
#include "parapress/periodic.hpp"
#include "parapress/registry.hpp"

using namespace parapress;

TEST_CASE("classify by multiplier") {
  Config cfg;
  CHECK(classify({2, 0}, cfg.q_max, cfg.root_unity_tol).kind == Stability::repelling);
  CHECK(classify({0, 0}, cfg.q_max, cfg.root_unity_tol).kind == Stability::superattracting);
  CHECK(classify({0.5, 0}, cfg.q_max, cfg.root_unity_tol).kind == Stability::attracting);
  auto par = classify({1, 0}, cfg.q_max, cfg.root_unity_tol);
  CHECK(par.kind == Stability::parabolic);
  CHECK(par.p == 0);
  CHECK(par.q == 1);
  // exp(2 pi i / 3): parabolic(1/3)
  Complex w{std::cos(2.0943951023931953), std::sin(2.0943951023931953)};
  auto p3 = classify(w, cfg.q_max, cfg.root_unity_tol);
  CHECK(p3.kind == Stability::parabolic);
  CHECK(p3.p == 1);
  CHECK(p3.q == 3);
  // Indifferent with golden-mean angle: irrational within q_max.
  double theta = 2.0 * 3.141592653589793 * 0.6180339887498949;
  auto irr = classify({std::cos(theta), std::sin(theta)}, cfg.q_max, cfg.root_unity_tol);
  CHECK(irr.kind == Stability::irrationally_indifferent);
}

TEST_CASE("fixed points of z^2: 0, 1, infinity") {
  auto orbits = find_periodic_points(make_example("square"), 1);
  REQUIRE(orbits.size() == 3);
  bool zero = false, one = false, inf = false;
  for (const auto& o : orbits) {
    REQUIRE(o.period == 1);
    if (o.points[0].infinite) {
      inf = true;
      CHECK(std::abs(o.multiplier) < 1e-6);
      CHECK(o.cls.kind == Stability::superattracting);
    } else if (std::abs(o.points[0].value) < 1e-9) {
      zero = true;
      CHECK(std::abs(o.multiplier) < 1e-9);
    } else {
      one = true;
      CHECK(std::abs(o.points[0].value - Complex{1, 0}) < 1e-9);
      CHECK(std::abs(o.multiplier - Complex{2, 0}) < 1e-9);
    }
  }
  CHECK(zero);
  CHECK(one);
  CHECK(inf);
}

TEST_CASE("quad_parabolic has the double fixed point 1/2") {
  auto orbits = find_periodic_points(make_example("quad_parabolic"), 1);
  bool found_half = false;
  for (const auto& o : orbits) {
    if (o.points[0].infinite) continue;
    found_half = true;
    CHECK(std::abs(o.points[0].value - Complex{0.5, 0}) < 1e-9);
    CHECK(std::abs(o.multiplier - Complex{1, 0}) < 1e-9);
    CHECK(o.cls.kind == Stability::parabolic);
    CHECK(o.multiplicity == 2);
  }
  CHECK(found_half);
}

TEST_CASE("blaschke has the triple fixed point 1") {
  auto orbits = find_periodic_points(make_example("blaschke_parabolic"), 1);
  REQUIRE(orbits.size() == 1);  // z(z^2+3) - (3z^2+1) = (z-1)^3
  CHECK(std::abs(orbits[0].points[0].value - Complex{1, 0}) < 1e-9);
  CHECK(std::abs(orbits[0].multiplier - Complex{1, 0}) < 1e-9);
  CHECK(orbits[0].cls.kind == Stability::parabolic);
  CHECK(orbits[0].multiplicity == 3);
}

TEST_CASE("exact period filtering and forward verification") {
  auto f = make_example("square");
  for (int n : {2, 3, 4}) {
    auto orbits = find_periodic_points(f, n);
    for (const auto& o : orbits) {
      REQUIRE(o.period == n);
      REQUIRE(static_cast<int>(o.points.size()) == n);
      if (o.points[0].infinite) continue;
      Complex z = o.points[0].value;
      CHECK(std::abs(f.iterate(z, n) - z) < 1e-6);
      for (int m = 1; m < n; ++m)
        if (n % m == 0) CHECK(std::abs(f.iterate(z, m) - z) > 1e-6);
      Complex lam{1, 0};
      for (const auto& p : o.points) lam *= f.derivative(p.value);
      CHECK(std::abs(lam - o.multiplier) < 1e-9 * (1.0 + std::abs(lam)));
    }
  }
  // Exact cycle counts for z^2: n = 2: one 2-cycle; n = 3: two; n = 4: three.
  CHECK(find_periodic_points(f, 2).size() == 1);
  CHECK(find_periodic_points(f, 3).size() == 2);
  CHECK(find_periodic_points(f, 4).size() == 3);
}

TEST_CASE("seeded route matches the polynomial route") {
  auto f = make_example("blaschke_parabolic");
  Config tight;
  tight.compose_coeff_budget = 1.0;  // force the seeded route
  auto a = solve_periodic(f, 3, default_config());
  auto b = solve_periodic(f, 3, tight, {Complex{1.0, 0.0}});
  CHECK(a.route == "polynomial");
  CHECK(b.route == "seeded-newton");
  std::size_t matched = 0, a_finite = 0;
  for (const auto& atom : a.fixed_points_of_fn) {
    if (atom.z.infinite) continue;
    ++a_finite;
    for (const auto& batom : b.fixed_points_of_fn) {
      if (batom.z.infinite) continue;
      if (std::abs(atom.z.value - batom.z.value) < 1e-6) {
        ++matched;
        break;
      }
    }
  }
  CHECK(matched == a_finite);
}

TEST_CASE("omega detection") {
  auto sq = omega(make_example("square"), 4);
  CHECK(sq.empty());
  CHECK(sq.scope == 4);

  auto qp = omega(make_example("quad_parabolic"), 4);
  REQUIRE(qp.orbits.size() == 1);
  CHECK(std::abs(qp.orbits[0].points[0].value - Complex{0.5, 0}) < 1e-9);

  auto bl = omega(make_example("blaschke_parabolic"), 4);
  REQUIRE(bl.orbits.size() == 1);
  CHECK(std::abs(bl.orbits[0].points[0].value - Complex{1.0, 0}) < 1e-9);
}

TEST_CASE("a_omega") {
  auto f = make_example("quad_parabolic");
  auto om = omega(f, 4);
  CHECK(a_omega(om, [](Complex) { return 0.375; }) == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(a_omega(om, [](Complex z) { return z.real(); }) == doctest::Approx(0.5).epsilon(1e-9));
  for (double t : {-2.0, 0.5, 3.0}) {
    double a = a_omega(om, [&](Complex z) { return -t * std::log(f.abs_derivative(z)); });
    CHECK(std::abs(a) < 1e-9);
  }
  OmegaSet empty_set;
  CHECK_THROWS_AS(a_omega(empty_set, [](Complex) { return 0.0; }), PreconditionError);
}

TEST_CASE("a_omega shift identity") {
  auto f = make_example("blaschke_parabolic");
  auto om = omega(f, 3);
  auto phi = [&](Complex z) { return -0.7 * std::log(f.abs_derivative(z)); };
  double base = a_omega(om, phi);
  double shifted = a_omega(om, [&](Complex z) { return phi(z) + 1.25; });
  CHECK(shifted - base == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("precondition report") {
  auto quad = make_example("quad_parabolic");
  auto om = omega(quad, 3);
  auto tree = preimage_tree(quad, {2.0, 0.0}, 8);
  auto rep = check_parabolic_preconditions(quad, tree.leaves(), om);
  CHECK(rep.omega_nonempty);
  CHECK(rep.clearance_ok);
  CHECK(rep.pass);

  auto sq = make_example("square");
  auto om2 = omega(sq, 3);
  auto tree2 = preimage_tree(sq, {2.0, 0.0}, 8);
  auto rep2 = check_parabolic_preconditions(sq, tree2.leaves(), om2);
  CHECK(!rep2.omega_nonempty);
  CHECK(!rep2.pass);

  // cheb: critical point 0 lies on J = [-2, 2].
  auto ch = make_example("cheb");
  auto om3 = omega(ch, 2);
  auto tree3 = preimage_tree(ch, {1.9, 0.0}, 10);
  auto rep3 = check_parabolic_preconditions(ch, tree3.leaves(), om3);
  CHECK(!rep3.clearance_ok);
  CHECK(!rep3.pass);
}

TEST_CASE("reduce_to_fixed") {
  auto quad = make_example("quad_parabolic");
  auto om = omega(quad, 3);
  auto red = reduce_to_fixed(quad, om);
  CHECK(red.k == 1);
  REQUIRE(red.map.has_value());

  // lambda = exp(2 pi i/3) z + z^2: parabolic fixed point with q = 3 -> k = 3.
  Complex lam{std::cos(2.0943951023931953), std::sin(2.0943951023931953)};
  RationalMap rot({{0, 0}, lam, {1, 0}}, {{1, 0}});
  auto omr = omega(rot, 2);
  REQUIRE(!omr.empty());
  CHECK(omr.orbits[0].cls.q == 3);
  auto redr = reduce_to_fixed(rot, omr);
  CHECK(redr.k == 3);
  REQUIRE(redr.map.has_value());
  CHECK(redr.map->degree() == 8);
  CHECK(std::abs(redr.map->derivative({0, 0}) - Complex{1, 0}) < 1e-9);
}
