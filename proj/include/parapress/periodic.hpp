// Periodic points, multiplier classification, the rationally indifferent set
// Omega, the obstruction A(Omega, phi), and reduction to an iterate with fixed
// parabolic points.
#pragma once

#include <functional>
#include <optional>

#include "parapress/rational_map.hpp"

namespace parapress {

enum class Stability { superattracting, attracting, repelling, parabolic, irrationally_indifferent };

struct Classification {
  Stability kind = Stability::repelling;
  int p = 0, q = 1;  // rotation number p/q for parabolic points
};

std::string to_string(const Classification& c);

// Multiplier-based stability per the documented test ordering.
Classification classify(Complex multiplier, int q_max, double tol);

struct PeriodicOrbit {
  std::vector<SpherePoint> points;  // the cycle, starting at its lex-min finite point
  int period = 1;
  Complex multiplier{0.0, 0.0};
  Classification cls;
  int multiplicity = 1;  // root multiplicity of the first point in f^n(z) - z
};

// Every solution of f^n(z) = z the solver can reach, plus the exact-period-n
// cycles assembled from them.
struct PeriodicSolveResult {
  struct Atom {
    SpherePoint z;
    Complex deriv_n{0.0, 0.0};  // (f^n)'(z), chart-local at infinity
    int multiplicity = 1;
  };
  std::vector<Atom> fixed_points_of_fn;  // includes divisor periods
  std::vector<PeriodicOrbit> exact_orbits;
  std::string route;  // "polynomial" or "seeded-newton"
};

// Solve f^n(z) = z.  Uses exact polynomial composition while coefficients stay
// within budget; otherwise Newton iteration seeded at preimage-tree leaves with
// neutral-cluster collapsing (points within ~1e-5 of a parabolic point are
// numerically indistinguishable from it in doubles).  known_parabolic anchors
// snap those clusters; find_periodic_points threads them from divisor periods.
PeriodicSolveResult solve_periodic(const RationalMap& f, int n,
                                   const Config& cfg = default_config(),
                                   const std::vector<Complex>& known_parabolic = {});

// Exact-period-n cycles, deduplicated up to rotation, sorted by lex-min point.
std::vector<PeriodicOrbit> find_periodic_points(const RationalMap& f, int n,
                                                const Config& cfg = default_config());

struct OmegaSet {
  std::vector<PeriodicOrbit> orbits;  // all classified parabolic
  int scope = 0;                      // max period searched

  bool empty() const { return orbits.empty(); }
  std::vector<Complex> points() const;  // all cycle points (finite chart)
};

// All parabolic cycles of period <= n_max.  An empty result is a meaningful
// "not parabolic within scope" outcome, carried by OmegaSet::empty().
OmegaSet omega(const RationalMap& f, int n_max = default_config().omega_n_max,
               const Config& cfg = default_config());

struct PreconditionReport {
  double critical_clearance = 0.0;  // min dist from C(f) to the sample (chordal at inf)
  bool clearance_ok = false;
  bool omega_nonempty = false;
  bool pass = false;
  std::string note;
};

PreconditionReport check_parabolic_preconditions(const RationalMap& f,
                                                 const std::vector<Complex>& julia_sample,
                                                 const OmegaSet& omega_set,
                                                 const Config& cfg = default_config());

// Maximal Birkhoff average of phi over the rationally indifferent cycles.
// Throws PreconditionError when omega is empty.
double a_omega(const OmegaSet& omega_set, const std::function<double(Complex)>& phi);

struct IterateReduction {
  int k = 1;
  std::optional<RationalMap> map;  // empty when the degree budget was exceeded
};

// k = lcm of periods and parabolic denominators q, so Omega(f^k) is fixed with
// multiplier 1; the composed map is returned when within budget.
IterateReduction reduce_to_fixed(const RationalMap& f, const OmegaSet& omega_set,
                                 const Config& cfg = default_config());

}  // namespace parapress
