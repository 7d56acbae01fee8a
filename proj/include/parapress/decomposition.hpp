// The lambda-decomposition of orbit segments: good prefixes, bad suffixes,
// and the collection D(alpha) of segments ending away from Omega.
#pragma once

#include "parapress/rational_map.hpp"

namespace parapress {

struct OrbitSegment {
  Complex start{0.0, 0.0};
  int length = 1;
  std::vector<Complex> points;  // cached forward orbit

  static OrbitSegment make(const RationalMap& f, Complex start, int n);
};

struct DecompositionParams {
  double alpha = 0.1;
  double eta = 0.5;
  std::vector<Complex> omega_points;
};

// lambda = 1 iff dist(z, Omega) > 2 alpha (strictly; the closed ball gets 0).
int lambda_indicator(Complex z, const std::vector<Complex>& omega_points, double alpha);

std::vector<int> lambda_pattern(const OrbitSegment& seg, const DecompositionParams& p);

// Every suffix average of lambda is >= eta.
bool in_good(const OrbitSegment& seg, const DecompositionParams& p);

// The full average of lambda is strictly below eta.
bool in_bad(const OrbitSegment& seg, const DecompositionParams& p);

// The split (g, s), g + s = n, with s the largest suffix length whose average
// is < eta; the prefix is then automatically good.  Always exists.
std::pair<int, int> decompose(const OrbitSegment& seg, const DecompositionParams& p);

// Last point lies in E(alpha) = J \ closure(B(Omega, 2 alpha)).
bool in_D_alpha(const OrbitSegment& seg, const std::vector<Complex>& omega_points, double alpha);

}  // namespace parapress
