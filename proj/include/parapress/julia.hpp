// Point-cloud approximations of J(f): inverse-iteration and escape-boundary
// samplers, box-counting dimension, neighborhood masks.
#pragma once

#include <functional>

#include "parapress/rational_map.hpp"

namespace parapress {

enum class SampleMethod { inverse_iteration, escape_boundary };

struct JuliaSample {
  std::vector<Complex> points;
  SampleMethod method = SampleMethod::inverse_iteration;
  std::uint64_t seed = 0;
  int burn_in = 0;
  std::size_t rebranch_count = 0;  // degenerate fibers perturbed during the walk
};

// Random backward orbit with uniformly random branch choice; deterministic
// under a fixed seed.  Degenerate fibers are re-branched from a perturbed
// anchor and counted.  petal_thin removes points within 1e-4 of omega_points.
JuliaSample sample_inverse_iteration(const RationalMap& f, Complex z0, std::size_t count,
                                     int burn_in, std::uint64_t seed,
                                     const Config& cfg = default_config(),
                                     bool petal_thin = false,
                                     const std::vector<Complex>& omega_points = {});

// Polynomial maps only: bisects the escape predicate along random chords between
// escaping and non-escaping seeds.  Throws PreconditionError for non-polynomial
// maps and NumericError when no bounded-orbit seeds exist (empty interior).
JuliaSample sample_escape_boundary(const RationalMap& f, std::size_t count, std::uint64_t seed,
                                   double window = 2.5, const Config& cfg = default_config());

// Cheap necessary condition for J-membership: the forward orbit stays within
// the working window for N_check steps.
bool j_membership_proxy(const RationalMap& f, Complex z, int n_check = 200,
                        double window = 1e6);

struct BoxCountResult {
  double dimension = 0.0;
  double max_residual = 0.0;             // max |log N - fit| over scales
  std::vector<std::pair<double, std::size_t>> counts;  // (delta, N(delta))
  bool degenerate = false;               // all counts equal
};

// Default ladder spans one decade; chosen to balance intercept bias at coarse
// scales against sample-coverage bias at fine ones.
std::vector<double> default_box_scales();

// Least-squares slope of log N(delta) against log(1/delta).
// Requires >= 1e4 points and >= 4 scales spanning at least a factor 8.
BoxCountResult box_counting_dimension(const std::vector<Complex>& points,
                                      const std::vector<double>& scales);

// Per-point membership in the union of open balls B(c, radius) over centers.
// The default distance is Euclidean; pass a calibrated metric's local distance
// for the Milnor variant.
std::vector<char> ball_mask(const std::vector<Complex>& points,
                            const std::vector<Complex>& centers, double radius,
                            const std::function<double(Complex, Complex)>& dist = {});

}  // namespace parapress
