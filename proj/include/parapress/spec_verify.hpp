// Empirical specification witnesses: transition-time estimation, orbit gluing
// with forward-checked shadowing, contraction profiles on good segments, and
// the Bowen-property variation bound.
#pragma once

#include "parapress/decomposition.hpp"
#include "parapress/julia.hpp"
#include "parapress/metric.hpp"
#include "parapress/potential.hpp"

namespace parapress {

struct TransitionEstimate {
  int N = 0;                 // smallest certified depth
  double epsilon = 0.0;
  std::size_t net_size = 0;
  bool capped = false;       // search hit the cap without certifying
  std::vector<double> coverage_by_depth;  // fraction of (center, ball) pairs hit at each depth
};

// Smallest N such that the depth-N preimage tree of every net point intersects
// every epsilon-ball of the net (net: greedy epsilon/2-separated subset of the
// sample).  Upper witness for the locally-eventually-onto transition time.
TransitionEstimate estimate_transition_time(const RationalMap& f, double epsilon,
                                            const JuliaSample& sample,
                                            const Config& cfg = default_config(), int cap = 12);

struct GluingResult {
  bool ok = false;
  Complex y{0.0, 0.0};
  int tau = 0;  // uniform transition time; equals the certified N_epsilon
  std::vector<double> shadow_distances;  // d_{n_i} to each segment, forward-checked
  std::vector<std::string> branch_codes; // preimage digits used per link
  double nearest_miss = 0.0;             // best forward distance when a link fails
  std::string note;
};

// Work backwards from y_k = x_k; each link searches the depth-(N + n_i)
// preimage tree of the current y for a node whose forward orbit epsilon-shadows
// segment i.  Shadowing is certified by forward iteration only.
GluingResult glue(const RationalMap& f, const std::vector<OrbitSegment>& segments,
                  double epsilon, int n_eps, double alpha,
                  const std::vector<Complex>& omega_points,
                  const Config& cfg = default_config());

// Recompute all offsets Sum(n_j + tau) and the d_{n_i} distances by forward
// iteration; true iff every distance is < epsilon.
bool verify_shadowing(const RationalMap& f, const GluingResult& result,
                      const std::vector<OrbitSegment>& segments, double epsilon);

struct ContractionProfile {
  std::vector<double> distances;  // d(f^l x, f^l y) in the Milnor local metric
  std::vector<double> bounds;     // r^{-eta (n-l)} epsilon
  std::size_t violations = 0;
};

// Per-step distances of a verified shadowing pair against the contraction
// envelope with the measured expansion r.
ContractionProfile contraction_profile(const RationalMap& f, const OrbitSegment& seg, Complex y,
                                       double epsilon, double eta, const MilnorMetric& metric);

// Pull a perturbation of the segment endpoint back through the segment's own
// inverse branches (nearest preimage to each orbit point).  Empty on fiber
// degeneracy or when the partner fails to epsilon-shadow.
std::vector<Complex> pullback_partner(const RationalMap& f, const OrbitSegment& seg,
                                      Complex endpoint_offset, double epsilon,
                                      const Config& cfg = default_config());

struct BowenVariationReport {
  double sup_variation = 0.0;
  double bound = 0.0;  // K eps^a / (1 - r^{-eta a})
  std::size_t trials = 0;
  std::size_t skipped = 0;  // partner generation failures
  bool within_bound = false;
};

// Max Birkhoff-sum variation over shadowing partners of good segments, against
// the Hoelder bound with declared (K, a) and the measured r.
BowenVariationReport bowen_variation(const RationalMap& f, const Potential& phi,
                                     const std::vector<OrbitSegment>& good_segments,
                                     double epsilon, double eta, double holder_K, double holder_a,
                                     double r, std::uint64_t seed,
                                     const Config& cfg = default_config());

// Sliding-window harvest of good segments from long random orbits.
std::vector<OrbitSegment> harvest_good_segments(const RationalMap& f, const JuliaSample& sample,
                                                int length, const DecompositionParams& params,
                                                std::size_t count, std::uint64_t seed);

// Segments whose last point lies in E(alpha), for gluing experiments.
std::vector<OrbitSegment> harvest_D_segments(const RationalMap& f, const JuliaSample& sample,
                                             int length, double alpha,
                                             const std::vector<Complex>& omega_points,
                                             std::size_t count, std::uint64_t seed);

}  // namespace parapress
