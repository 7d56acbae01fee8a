#include "doctest.h"
#include "parapress/julia.hpp"
#include "parapress/registry.hpp"

using namespace parapress;

TEST_CASE("inverse iteration lands on the circle for z^2") {
  auto f = make_example("square");
  auto s = sample_inverse_iteration(f, {2.0, 0.0}, 2000, 50, 1);
  REQUIRE(s.points.size() == 2000);
  for (const auto& z : s.points) CHECK(std::abs(std::abs(z) - 1.0) < 1e-6);
}

TEST_CASE("circle oracle for blaschke after burn-in 100") {
  auto f = make_example("blaschke_parabolic");
  auto s = sample_inverse_iteration(f, {0.0, 2.0}, 5000, 100, 7);
  double worst = 0.0;
  for (const auto& z : s.points) worst = std::max(worst, std::abs(std::abs(z) - 1.0));
  CHECK(worst < 1e-3);
}

TEST_CASE("identical seeds give identical clouds") {
  auto f = make_example("quad_parabolic");
  auto a = sample_inverse_iteration(f, {2.0, 0.0}, 500, 100, 12345);
  auto b = sample_inverse_iteration(f, {2.0, 0.0}, 500, 100, 12345);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
  auto c = sample_inverse_iteration(f, {2.0, 0.0}, 500, 100, 54321);
  bool all_same = true;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (a.points[i] != c.points[i]) all_same = false;
  CHECK(!all_same);
}

TEST_CASE("count=1 burn_in=0 from a J point returns a preimage of it") {
  auto f = make_example("square");
  auto s = sample_inverse_iteration(f, {1.0, 0.0}, 1, 0, 3);
  REQUIRE(s.points.size() == 1);
  CHECK(std::abs(f.eval_finite(s.points[0]) - Complex{1.0, 0.0}) < 1e-9);
}

TEST_CASE("petal thinning removes points hugging Omega") {
  auto f = make_example("quad_parabolic");
  std::vector<Complex> om{{0.5, 0.0}};
  auto s = sample_inverse_iteration(f, {2.0, 0.0}, 3000, 100, 5, default_config(), true, om);
  for (const auto& z : s.points) CHECK(std::abs(z - Complex{0.5, 0.0}) >= 1e-4);
}

TEST_CASE("invariance defect of an inverse-iteration cloud") {
  auto f = make_example("blaschke_parabolic");
  auto s = sample_inverse_iteration(f, {0.0, 2.0}, 4000, 150, 9);
  // Forward image of the cloud stays close to the cloud (both lie on J).
  double worst = 0.0;
  for (std::size_t i = 0; i < 500; ++i) {
    Complex w = f.eval_finite(s.points[i]);
    double best = 1e300;
    for (const auto& z : s.points) best = std::min(best, std::abs(w - z));
    worst = std::max(worst, best);
  }
  CHECK(worst < 0.05);
}

TEST_CASE("membership proxy") {
  auto f = make_example("square");
  CHECK(j_membership_proxy(f, {0.7071067811865476, 0.7071067811865476}));
  CHECK(!j_membership_proxy(f, {3.0, 0.0}));  // escapes
}

TEST_CASE("escape boundary sampler on quad_parabolic") {
  auto f = make_example("quad_parabolic");
  auto s = sample_escape_boundary(f, 2000, 11);
  REQUIRE(s.points.size() == 2000);
  // Boundary points neither escape quickly nor sit deep in the basin.
  std::size_t on_j = 0;
  for (std::size_t i = 0; i < 200; ++i)
    if (j_membership_proxy(f, s.points[i], 60, 1e6)) ++on_j;
  CHECK(on_j > 150);
  // Non-polynomial maps are rejected.
  CHECK_THROWS_AS(sample_escape_boundary(make_example("blaschke_parabolic"), 100, 1),
                  PreconditionError);
  // cheb's filled Julia set has measure zero: no bounded seeds.
  CHECK_THROWS_AS(sample_escape_boundary(make_example("cheb"), 100, 1), NumericError);
}

TEST_CASE("box counting: unit circle cloud") {
  auto f = make_example("square");
  auto s = sample_inverse_iteration(f, {2.0, 0.0}, 30000, 100, 1);
  auto res = box_counting_dimension(s.points, default_box_scales());
  CHECK(res.dimension == doctest::Approx(1.0).epsilon(0.05));
  CHECK(!res.degenerate);
}

TEST_CASE("box counting: single point repeated is degenerate with dimension 0") {
  std::vector<Complex> pts(20000, Complex{0.25, 0.5});
  auto res = box_counting_dimension(pts, default_box_scales());
  CHECK(res.degenerate);
  CHECK(res.dimension == 0.0);
}

TEST_CASE("box counting preconditions") {
  std::vector<Complex> few(100, Complex{0, 0});
  CHECK_THROWS_AS(box_counting_dimension(few, default_box_scales()), PreconditionError);
  std::vector<Complex> many(20000, Complex{0, 0});
  CHECK_THROWS_AS(box_counting_dimension(many, {0.1, 0.09, 0.08, 0.07}), PreconditionError);
}

TEST_CASE("ball mask") {
  std::vector<Complex> centers{{0.5, 0.0}};
  std::vector<Complex> pts{{0.55, 0.0}, {0.61, 0.0}, {0.5, 0.1}};
  auto mask = ball_mask(pts, centers, 0.1);
  CHECK(mask[0] == 1);
  CHECK(mask[1] == 0);
  CHECK(mask[2] == 0);  // distance exactly the radius: outside an open ball
  auto none = ball_mask(pts, {}, 0.1);
  CHECK((none[0] == 0 && none[1] == 0 && none[2] == 0));
  CHECK_THROWS_AS(ball_mask(pts, centers, 0.0), PreconditionError);
}
