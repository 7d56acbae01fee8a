#include "parapress/julia.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace parapress {

JuliaSample sample_inverse_iteration(const RationalMap& f, Complex z0, std::size_t count,
                                     int burn_in, std::uint64_t seed, const Config& cfg,
                                     bool petal_thin, const std::vector<Complex>& omega_points) {
  if (count < 1) throw PreconditionError("sample_inverse_iteration: count must be >= 1");
  JuliaSample out;
  out.method = SampleMethod::inverse_iteration;
  out.seed = seed;
  out.burn_in = burn_in;
  out.points.reserve(count);

  Rng rng(seed);
  Complex z = z0;
  std::size_t kept = 0;
  std::size_t steps = 0;
  const std::size_t step_cap = (count + static_cast<std::size_t>(burn_in)) * 4 + 1000;
  while (kept < count && steps < step_cap) {
    std::vector<Complex> fiber;
    try {
      fiber = f.preimages(z, cfg);
    } catch (const NumericError&) {
      // Degenerate fiber: nudge and re-branch.
      z += 1e-9 * (1.0 + std::abs(z)) * rng.unit();
      ++out.rebranch_count;
      continue;
    }
    z = fiber[rng.below(fiber.size())];
    ++steps;
    if (steps <= static_cast<std::size_t>(burn_in)) continue;
    if (petal_thin) {
      bool near_omega = false;
      for (const auto& w : omega_points)
        if (std::abs(z - w) < 1e-4) near_omega = true;
      if (near_omega) continue;
    }
    out.points.push_back(z);
    ++kept;
  }
  if (kept < count)
    throw NumericError("sample_inverse_iteration: walk stalled (kept " + std::to_string(kept) +
                       " of " + std::to_string(count) + ")");
  return out;
}

namespace {

bool escapes(const RationalMap& f, Complex z, int n_steps, double radius) {
  for (int i = 0; i < n_steps; ++i) {
    SpherePoint img = f.evaluate(SpherePoint{z});
    if (img.infinite || std::abs(img.value) > radius) return true;
    z = img.value;
  }
  return false;
}

}  // namespace

JuliaSample sample_escape_boundary(const RationalMap& f, std::size_t count, std::uint64_t seed,
                                   double window, const Config& cfg) {
  (void)cfg;
  if (!f.is_polynomial())
    throw PreconditionError("sample_escape_boundary: polynomial maps only");
  JuliaSample out;
  out.method = SampleMethod::escape_boundary;
  out.seed = seed;

  const int esc_steps = 300;
  const double esc_radius = 4.0 + window;
  Rng rng(seed);

  // Seed pools on both sides of the basin boundary.
  std::vector<Complex> inside, outside;
  std::size_t attempts = 0;
  const std::size_t attempt_cap = count * 40 + 20000;
  while ((inside.size() < count || outside.size() < count) && attempts < attempt_cap) {
    ++attempts;
    Complex z{rng.uniform(-window, window), rng.uniform(-window, window)};
    if (escapes(f, z, esc_steps, esc_radius)) {
      if (outside.size() < count) outside.push_back(z);
    } else {
      if (inside.size() < count) inside.push_back(z);
    }
  }
  if (inside.empty())
    throw NumericError(
        "sample_escape_boundary: no bounded-orbit seeds found; the filled Julia set has "
        "no sampled interior (use inverse iteration instead)");
  if (outside.empty()) throw NumericError("sample_escape_boundary: no escaping seeds found");

  out.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Complex a = outside[i % outside.size()];  // escaping
    Complex b = inside[i % inside.size()];    // bounded
    for (int it = 0; it < 52; ++it) {
      Complex m = 0.5 * (a + b);
      if (escapes(f, m, esc_steps, esc_radius))
        a = m;
      else
        b = m;
    }
    out.points.push_back(0.5 * (a + b));
  }
  return out;
}

bool j_membership_proxy(const RationalMap& f, Complex z, int n_check, double window) {
  for (int i = 0; i < n_check; ++i) {
    SpherePoint img = f.evaluate(SpherePoint{z});
    if (img.infinite || std::abs(img.value) > window) return false;
    z = img.value;
  }
  return true;
}

std::vector<double> default_box_scales() { return {0.3, 0.19, 0.12, 0.075, 0.047, 0.03}; }

BoxCountResult box_counting_dimension(const std::vector<Complex>& points,
                                      const std::vector<double>& scales) {
  if (points.size() < 10000)
    throw PreconditionError("box_counting_dimension: need at least 1e4 points");
  if (scales.size() < 4)
    throw PreconditionError("box_counting_dimension: need at least 4 scales");
  auto [mn, mx] = std::minmax_element(scales.begin(), scales.end());
  if (*mx / *mn < 8.0)
    throw PreconditionError("box_counting_dimension: scales must span at least a factor 8");

  BoxCountResult out;
  for (double delta : scales) {
    std::set<std::pair<long long, long long>> cells;
    for (const auto& z : points)
      cells.insert({static_cast<long long>(std::floor(z.real() / delta)),
                    static_cast<long long>(std::floor(z.imag() / delta))});
    out.counts.emplace_back(delta, cells.size());
  }
  bool all_equal = true;
  for (const auto& [d, n] : out.counts)
    if (n != out.counts.front().second) all_equal = false;
  if (all_equal) {
    out.degenerate = true;
    out.dimension = 0.0;
    return out;
  }

  // LSQ fit of log N against log(1/delta).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(out.counts.size());
  for (const auto& [d, n] : out.counts) {
    double x = std::log(1.0 / d), y = std::log(static_cast<double>(n));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double icept = (sy - slope * sx) / m;
  out.dimension = slope;
  for (const auto& [d, n] : out.counts) {
    double x = std::log(1.0 / d), y = std::log(static_cast<double>(n));
    out.max_residual = std::max(out.max_residual, std::abs(y - (slope * x + icept)));
  }
  return out;
}

std::vector<char> ball_mask(const std::vector<Complex>& points,
                            const std::vector<Complex>& centers, double radius,
                            const std::function<double(Complex, Complex)>& dist) {
  if (radius <= 0.0) throw PreconditionError("ball_mask: radius must be positive");
  std::vector<char> out(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const auto& c : centers) {
      double d = dist ? dist(points[i], c) : std::abs(points[i] - c);
      if (d < radius) {  // open balls
        out[i] = 1;
        break;
      }
    }
  }
  return out;
}

}  // namespace parapress
