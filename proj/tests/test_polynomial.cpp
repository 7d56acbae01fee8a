#include "doctest.h"
#include "parapress/polynomial.hpp"

using namespace parapress;

TEST_CASE("horner evaluation and derivative") {
  Polynomial p({{1, 0}, {0, 0}, {3, 0}});  // 1 + 3z^2
  CHECK(p(Complex{2, 0}) == Complex{13, 0});
  CHECK(p.degree() == 2);
  Polynomial d = p.derivative();
  CHECK(d(Complex{2, 0}) == Complex{12, 0});
}

TEST_CASE("arithmetic") {
  Polynomial a({{1, 0}, {1, 0}});           // 1 + z
  Polynomial b({{-1, 0}, {1, 0}});          // -1 + z
  Polynomial c = a * b;                     // z^2 - 1
  CHECK(c.degree() == 2);
  CHECK(std::abs(c(Complex{3, 0}) - Complex{8, 0}) < 1e-14);
  Polynomial s = a + b;                     // 2z
  CHECK(s.degree() == 1);
  CHECK(std::abs(s.coeffs()[0]) == 0.0);
}

TEST_CASE("roots of z^2 - 1") {
  auto rs = solve_roots(Polynomial({{-1, 0}, {0, 0}, {1, 0}}));
  REQUIRE(rs.roots.size() == 2);
  CHECK(std::abs(rs.roots[0] - Complex{-1, 0}) < 1e-12);
  CHECK(std::abs(rs.roots[1] - Complex{1, 0}) < 1e-12);
}

TEST_CASE("roots of unity at moderately large degree") {
  // z^64 - 1: all roots on the unit circle.
  std::vector<Complex> c(65, Complex{0, 0});
  c[0] = {-1, 0};
  c[64] = {1, 0};
  auto rs = solve_roots(Polynomial(c));
  REQUIRE(rs.roots.size() == 64);
  for (const auto& r : rs.roots) CHECK(std::abs(std::abs(r) - 1.0) < 1e-10);
}

TEST_CASE("trailing zero coefficients give roots at the origin") {
  // z^3 + z^2 = z^2 (z + 1)
  auto rs = solve_roots(Polynomial({{0, 0}, {0, 0}, {1, 0}, {1, 0}}));
  REQUIRE(rs.roots.size() == 3);
  auto clusters = cluster_roots(rs.roots, 1e-8);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].second == 1);  // -1
  CHECK(clusters[1].second == 2);  // 0 double
}

TEST_CASE("multiple-root cluster centroid recovers the center") {
  // (z - 1/2)^2 = z^2 - z + 1/4
  auto rs = solve_roots(Polynomial({{0.25, 0}, {-1, 0}, {1, 0}}));
  auto clusters = cluster_roots(rs.roots, 1e-5);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].second == 2);
  CHECK(std::abs(clusters[0].first - Complex{0.5, 0}) < 1e-7);
}
