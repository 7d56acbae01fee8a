#include "doctest.h"
#include "parapress/decomposition.hpp"
#include "parapress/julia.hpp"
#include "parapress/registry.hpp"

using namespace parapress;

namespace {

// Exhaustive split-scan oracle: the largest k <= n with the length-k suffix in
// B(eta) and the length-(n-k) prefix in G(eta), checked from the raw pattern.
std::pair<int, int> decompose_oracle(const std::vector<int>& lam, double eta) {
  const int n = static_cast<int>(lam.size());
  auto suffix_in_bad = [&](int k) {
    if (k == 0) return true;
    int sum = 0;
    for (int i = n - k; i < n; ++i) sum += lam[i];
    return static_cast<double>(sum) < eta * k;
  };
  auto prefix_in_good = [&](int g) {
    for (int k = 1; k <= g; ++k) {
      int sum = 0;
      for (int i = g - k; i < g; ++i) sum += lam[i];
      if (static_cast<double>(sum) < eta * k) return false;
    }
    return true;
  };
  for (int k = n; k >= 0; --k)
    if (suffix_in_bad(k) && prefix_in_good(n - k)) return {n - k, k};
  return {-1, -1};  // unreachable by construction
}

// Segment with a prescribed lambda pattern: far from Omega for 1, at Omega for 0.
OrbitSegment fake_segment(const std::vector<int>& lam) {
  OrbitSegment seg;
  seg.length = static_cast<int>(lam.size());
  for (int v : lam) seg.points.push_back(v ? Complex{10.0, 0.0} : Complex{0.5, 0.0});
  seg.start = seg.points[0];
  return seg;
}

const DecompositionParams params{0.1, 0.5, {Complex{0.5, 0.0}}};

}  // namespace

TEST_CASE("lambda indicator boundary convention") {
  std::vector<Complex> om{{0.5, 0.0}};
  CHECK(lambda_indicator({0.5, 0.0}, om, 0.1) == 0);       // the parabolic point
  CHECK(lambda_indicator({0.8, 0.0}, om, 0.1) == 1);       // dist 0.3 = 3 alpha
  CHECK(lambda_indicator({0.7, 0.0}, om, 0.1) == 0);       // dist exactly 2 alpha: closed ball
  CHECK(lambda_indicator({0.7 + 1e-12, 0.0}, om, 0.1) == 1);
}

TEST_CASE("in_good / in_bad on prescribed patterns") {
  // All points far from Omega: good for every eta <= 1.
  auto all1 = fake_segment({1, 1, 1, 1});
  DecompositionParams p = params;
  for (double eta : {0.1, 0.5, 1.0}) {
    p.eta = eta;
    CHECK(in_good(all1, p));
    CHECK(!in_bad(all1, p));
  }
  // Last point in the ball: k = 1 fails for every eta > 0.
  auto lastin = fake_segment({1, 1, 1, 0});
  p.eta = 0.01;
  CHECK(!in_good(lastin, p));
  // All points in the ball: bad for every eta > 0.
  auto all0 = fake_segment({0, 0, 0});
  CHECK(in_bad(all0, p));
  // Pattern (1,0,1): suffix averages 1, 1/2, 2/3 -> good at 1/2, not at 0.6.
  auto pat = fake_segment({1, 0, 1});
  p.eta = 0.5;
  CHECK(in_good(pat, p));
  p.eta = 0.6;
  CHECK(!in_good(pat, p));
  // Pattern (1,0,0,0) with eta 0.3: average 0.25 < 0.3 -> bad.
  auto pat2 = fake_segment({1, 0, 0, 0});
  p.eta = 0.3;
  CHECK(in_bad(pat2, p));
}

TEST_CASE("decompose edge splits") {
  DecompositionParams p = params;
  p.eta = 0.4;
  auto allE = fake_segment({1, 1, 1, 1, 1});
  CHECK(decompose(allE, p) == std::pair<int, int>{5, 0});
  auto allP = fake_segment({0, 0, 0, 0});
  CHECK(decompose(allP, p) == std::pair<int, int>{0, 4});
  // The documented example pattern (1,1,0,1,0,0) at eta 0.4.
  auto pat = fake_segment({1, 1, 0, 1, 0, 0});
  auto lam = lambda_pattern(pat, p);
  CHECK(decompose(pat, p) == decompose_oracle(lam, p.eta));
}

TEST_CASE("decompose matches the exhaustive oracle on random patterns") {
  Rng rng(77);
  DecompositionParams p = params;
  for (int trial = 0; trial < 5000; ++trial) {
    int n = 1 + static_cast<int>(rng.below(40));
    std::vector<int> lam(n);
    for (auto& v : lam) v = rng.uniform() < 0.45 ? 0 : 1;
    p.eta = 0.1 + 0.8 * rng.uniform();
    auto seg = fake_segment(lam);
    auto got = decompose(seg, p);
    auto want = decompose_oracle(lam, p.eta);
    REQUIRE(got == want);
    CHECK(got.first + got.second == n);
    // Returned parts satisfy their defining classes (vacuous when empty).
    if (got.first >= 1) {
      OrbitSegment prefix = seg;
      prefix.length = got.first;
      prefix.points.resize(got.first);
      CHECK(in_good(prefix, p));
    }
    if (got.second >= 1) {
      OrbitSegment suffix;
      suffix.length = got.second;
      suffix.points.assign(seg.points.end() - got.second, seg.points.end());
      suffix.start = suffix.points[0];
      CHECK(in_bad(suffix, p));
    }
  }
}

TEST_CASE("monotonicity in eta and G contained in D") {
  auto f = make_example("quad_parabolic");
  auto sample = sample_inverse_iteration(f, {2.0, 0.0}, 4000, 150, 21);
  DecompositionParams p;
  p.alpha = 0.1;
  p.omega_points = {Complex{0.5, 0.0}};
  Rng rng(31);
  for (int trial = 0; trial < 800; ++trial) {
    Complex z = sample.points[rng.below(sample.points.size())];
    auto seg = OrbitSegment::make(f, z, 1 + static_cast<int>(rng.below(30)));
    p.eta = 0.6;
    if (in_good(seg, p)) {
      DecompositionParams weaker = p;
      weaker.eta = 0.3;
      CHECK(in_good(seg, weaker));
      CHECK(in_D_alpha(seg, p.omega_points, p.alpha));  // G(eta) subset of D(alpha)
    }
  }
}

TEST_CASE("in_D_alpha checks the last point") {
  DecompositionParams p = params;
  auto good_end = fake_segment({0, 0, 1});
  CHECK(in_D_alpha(good_end, p.omega_points, p.alpha));
  auto bad_end = fake_segment({1, 1, 0});
  CHECK(!in_D_alpha(bad_end, p.omega_points, p.alpha));
}

TEST_CASE("orbit segment caches the forward orbit") {
  auto f = make_example("square");
  auto seg = OrbitSegment::make(f, {0.6, 0.8}, 6);
  REQUIRE(seg.points.size() == 6);
  Complex z{0.6, 0.8};
  for (const auto& p : seg.points) {
    CHECK(std::abs(p - z) < 1e-10);
    z = f.eval_finite(z);
  }
}
