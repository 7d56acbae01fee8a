// Milnor metric: plateau density M on B(Omega, alpha), quasi-hyperbolic
// surrogate density 1/dist(z, P_N(f)) elsewhere, with the two-pass (r, M)
// calibration and empirical expansion verification.
#pragma once

#include "parapress/julia.hpp"
#include "parapress/periodic.hpp"

namespace parapress {

struct PostcriticalTruncation {
  std::vector<Complex> points;   // forward critical orbit points plus Omega, deduplicated
  bool include_infinity = false; // a critical orbit reached infinity (chordal distance used)
  bool omega_was_empty = false;  // metric requested for a non-parabolic map
};

// Union over critical points c of {f(c), ..., f^N(c)}, plus Omega.
PostcriticalTruncation postcritical_truncation(const RationalMap& f, int N,
                                               const std::vector<Complex>& omega_points,
                                               const Config& cfg = default_config());

struct MilnorMetric {
  double alpha = 0.0;     // Euclidean radius of the plateau balls
  double M = 1.0;         // plateau density
  double r_alpha = 1.0;   // measured pass-1 expansion constant
  PostcriticalTruncation truncation;
  std::vector<Complex> omega_points;
};

// Quasi-hyperbolic surrogate 1/dist(z, truncation); the plateau is not applied.
double surrogate_density(const PostcriticalTruncation& trunc, Complex z);

// M on B(Omega, alpha; Euclidean), surrogate elsewhere.  Throws NumericError
// when z coincides with a truncation point outside the plateau.
double density(const MilnorMetric& metric, Complex z);

// ||f'(z)||_psi = psi(f z) |f'(z)| / psi(z).
double derivative_norm(const MilnorMetric& metric, const RationalMap& f, Complex z);

// Pass 1 of the calibration: min of the surrogate-density derivative norm over
// sampled z with z and f(z) both in K(alpha) = J \ B(Omega, alpha).
double measure_expansion_r(const RationalMap& f, const PostcriticalTruncation& trunc,
                           const std::vector<Complex>& omega_points, double alpha,
                           const std::vector<Complex>& sample);

// Pass 2: M = max{ r rho(z) / |f'(z)| : z in f^-1(Omega) \ Omega } + 1.
// When the fiber adds no new preimages, returns 1 + safety margin and flags it.
double choose_M(const RationalMap& f, double alpha, const std::vector<Complex>& omega_points,
                double r, const PostcriticalTruncation& trunc, bool* no_extra_preimages = nullptr,
                const Config& cfg = default_config());

// Small-scale approximation |x - y| * density(midpoint) of the conformal path
// metric; contract requires |x - y| <= alpha.
double local_distance(const MilnorMetric& metric, Complex x, Complex y);

struct ExpansionReport {
  double r_min_on_K = 0.0;   // min Milnor norm over sampled K(alpha) ∩ f^-1 K(alpha)
  double global_min = 0.0;   // min Milnor norm over the whole sample
  std::vector<Complex> violations;  // sampled points with norm <= 1
  std::size_t points_on_K = 0;
  double mesh_proxy = 0.0;   // max nearest-neighbor distance over the sample
};

// Empirical check of uniform expansion.  Throws PreconditionError when the
// sample's nearest-neighbor mesh proxy exceeds alpha/4.
ExpansionReport verify_expansion(const MilnorMetric& metric, const RationalMap& f,
                                 const std::vector<Complex>& sample, double alpha);

struct MetricCalibration {
  MilnorMetric metric;
  ExpansionReport report;
  std::vector<double> ladder_tried;
  bool no_extra_preimages = false;
};

// Two-pass calibration over the alpha ladder: largest alpha whose verification
// reports r_min_on_K > 1 with no violations.
MetricCalibration calibrate_metric(const RationalMap& f, const OmegaSet& omega_set,
                                   const std::vector<Complex>& sample,
                                   const Config& cfg = default_config(),
                                   std::vector<double> ladder = {0.2, 0.1, 0.05, 0.02, 0.01});

}  // namespace parapress
