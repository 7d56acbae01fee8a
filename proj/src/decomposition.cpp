#include "parapress/decomposition.hpp"

#include <cmath>

namespace parapress {

OrbitSegment OrbitSegment::make(const RationalMap& f, Complex start, int n) {
  if (n < 1) throw PreconditionError("OrbitSegment: length must be >= 1");
  OrbitSegment seg;
  seg.start = start;
  seg.length = n;
  seg.points = f.orbit(start, n);
  return seg;
}

int lambda_indicator(Complex z, const std::vector<Complex>& omega_points, double alpha) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& w : omega_points) d = std::min(d, std::abs(z - w));
  return d > 2.0 * alpha ? 1 : 0;
}

std::vector<int> lambda_pattern(const OrbitSegment& seg, const DecompositionParams& p) {
  std::vector<int> lam;
  lam.reserve(seg.points.size());
  for (const auto& z : seg.points) lam.push_back(lambda_indicator(z, p.omega_points, p.alpha));
  return lam;
}

bool in_good(const OrbitSegment& seg, const DecompositionParams& p) {
  auto lam = lambda_pattern(seg, p);
  int sum = 0;
  for (int k = 1; k <= seg.length; ++k) {
    sum += lam[static_cast<std::size_t>(seg.length - k)];
    if (static_cast<double>(sum) < p.eta * k) return false;
  }
  return true;
}

bool in_bad(const OrbitSegment& seg, const DecompositionParams& p) {
  auto lam = lambda_pattern(seg, p);
  int sum = 0;
  for (int v : lam) sum += v;
  return static_cast<double>(sum) < p.eta * seg.length;
}

std::pair<int, int> decompose(const OrbitSegment& seg, const DecompositionParams& p) {
  auto lam = lambda_pattern(seg, p);
  // s = largest k with suffix-sum(k) < eta k.  Maximality forces every suffix
  // average of the remaining prefix to be >= eta, so the prefix is good.
  int sum = 0, s = 0;
  for (int k = 1; k <= seg.length; ++k) {
    sum += lam[static_cast<std::size_t>(seg.length - k)];
    if (static_cast<double>(sum) < p.eta * k) s = k;
  }
  return {seg.length - s, s};
}

bool in_D_alpha(const OrbitSegment& seg, const std::vector<Complex>& omega_points, double alpha) {
  return lambda_indicator(seg.points.back(), omega_points, alpha) == 1;
}

}  // namespace parapress
