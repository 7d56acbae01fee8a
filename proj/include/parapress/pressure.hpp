// Topological pressure oracles (separated sets, preimage trees, periodic
// orbits, Ulam discretization), the pressure gap, the Bowen root, and
// equilibrium-measure diagnostics.
#pragma once

#include "parapress/potential.hpp"
#include "parapress/spec_verify.hpp"

namespace parapress {

enum class PressureMethod { separated, tree, periodic, ulam };
enum class ExtrapolationMode { last, aitken, slope };

std::string to_string(PressureMethod m);
std::string to_string(ExtrapolationMode m);

struct PressureEstimate {
  double value = 0.0;
  PressureMethod method = PressureMethod::tree;
  int n = 0;
  double epsilon = 0.0;  // separated oracle only
  std::vector<double> diagnostics;  // (1/m) log Lambda_m, m = 1..n
  ExtrapolationMode mode = ExtrapolationMode::last;
  double tail_width = 0.0;
  bool cauchy_ok = false;
  std::string note;
};

// value/tail_width from the level sequence under the declared mode.
double extrapolate(const std::vector<double>& levels, ExtrapolationMode mode,
                   double* tail_width = nullptr);

struct ConstraintSpec {
  enum class Kind { all, good, bad, d_alpha } kind = Kind::all;
  double eta = 0.5;
  double alpha = 0.1;
  std::vector<Complex> omega_points;
};

// Greedy (n, eps)-separated partition sum over the constrained candidates,
// processed in descending weight order; a lower bound for the supremum.
// Returns 0 with *empty_class set when no candidate qualifies.
double partition_sum(const RationalMap& f, const Potential& phi,
                     const std::vector<Complex>& candidates, int n, double epsilon,
                     const ConstraintSpec& constraint, bool* empty_class = nullptr);

// Def-style separated-set pressure; candidates per level are depth-m preimage
// tree leaves anchored at `anchor`.
PressureEstimate pressure_separated(const RationalMap& f, const Potential& phi, Complex anchor,
                                    int n_max, double epsilon, const ConstraintSpec& constraint,
                                    ExtrapolationMode mode = ExtrapolationMode::last,
                                    const Config& cfg = default_config());

// (1/n) log sum over f^{-n}(w) of e^{S_n phi}; the workhorse oracle.
// A degenerate anchor is perturbed by 1e-6 with a recorded note.
PressureEstimate pressure_tree(const RationalMap& f, const Potential& phi, Complex anchor, int n,
                               ExtrapolationMode mode = ExtrapolationMode::last,
                               const Config& cfg = default_config());

// (1/n) log sum over f^n(z) = z of e^{S_n phi(z)}, multiplicity included;
// atoms where the potential is singular are skipped and counted in the note.
PressureEstimate pressure_periodic(const RationalMap& f, const Potential& phi, int n,
                                   ExtrapolationMode mode = ExtrapolationMode::last,
                                   const Config& cfg = default_config());

// log of the leading eigenvalue of the weighted cell-transition operator on
// occupied cells of a grid over the sample's bounding box.
PressureEstimate pressure_ulam(const RationalMap& f, const Potential& phi,
                               const JuliaSample& sample, int grid_resolution, int iterations,
                               const Config& cfg = default_config());

struct GapReport {
  double a_omega_value = 0.0;
  double pressure = 0.0;
  double margin = 0.0;  // diagnostic tail width
  bool gap = false;     // A < P - margin
  PressureEstimate estimate;
};

GapReport a_omega_vs_pressure(const RationalMap& f, const Potential& phi,
                              const OmegaSet& omega_set, Complex anchor, int n,
                              ExtrapolationMode mode = ExtrapolationMode::slope,
                              const Config& cfg = default_config());

struct PressureCurveRow {
  double t = 0.0;
  double p_tree = 0.0;
  double p_periodic = 0.0;
  bool has_periodic = false;
  double p_ulam = 0.0;
  bool has_ulam = false;
  int n = 0;
  double tail_width = 0.0;
  std::string error;  // per-cell failures recorded, curve still emitted
};

struct PressureCurveOptions {
  int n_tree = 14;
  int n_periodic = 0;       // 0 disables the periodic column
  int ulam_cells = 0;       // 0 disables the Ulam column (resolution per axis)
  ExtrapolationMode mode = ExtrapolationMode::last;
  Complex anchor{0.0, 0.0};
  const JuliaSample* sample = nullptr;  // required for Ulam
};

std::vector<PressureCurveRow> pressure_curve(const RationalMap& f,
                                             const std::vector<double>& t_values,
                                             const PressureCurveOptions& opts,
                                             const Config& cfg = default_config());

struct BowenRootResult {
  double h = 0.0;
  double tol = 0.0;
  ExtrapolationMode mode = ExtrapolationMode::slope;
  int n = 0;
  bool parabolic_mode = false;  // inf{t : P < tol} rather than a sign crossing
  Complex anchor{0.0, 0.0};
  std::vector<std::pair<double, double>> evaluations;  // (t, P_est) in bisection order
};

struct BowenRootOptions {
  int n = 22;
  double tol = 0.03;            // threshold for the parabolic regime
  ExtrapolationMode mode = ExtrapolationMode::slope;
  double t_lo = 0.0, t_hi = 3.0;
  double resolution = 0.002;
};

// Root of t -> P_est(phi_t).  With omega nonempty: parabolic regime, tree
// anchored at a parabolic point, h = inf{t : P_est(t) < tol}.  Otherwise a
// plain sign-crossing bisection anchored at `generic_anchor`.
BowenRootResult bowen_root(const RationalMap& f, const OmegaSet& omega_set,
                           Complex generic_anchor, const BowenRootOptions& opts = {},
                           const Config& cfg = default_config());

struct WeightedPointMeasure {
  std::vector<std::pair<Complex, double>> atoms;  // weights sum to 1 within 1e-12
  std::string note;
};

enum class EquilibriumSource { tree, periodic };

// Atoms at depth-n tree leaves (or period-n points), weights ~ e^{S_n phi}.
WeightedPointMeasure equilibrium_approx(const RationalMap& f, const Potential& phi, Complex anchor,
                                        int n, EquilibriumSource source,
                                        const Config& cfg = default_config());

struct EquilibriumDiagnostics {
  double integral = 0.0;          // sum w_i phi(z_i)
  double entropy_estimate = 0.0;  // P_est - integral
  double omega_mass = 0.0;        // measure of B(Omega, 2 beta)
  bool entropy_positive = false;
  bool omega_mass_ok = false;     // < 1/2
  std::string note;
};

EquilibriumDiagnostics equilibrium_diagnostics(const Potential& phi,
                                               const WeightedPointMeasure& measure,
                                               const std::vector<Complex>& omega_points,
                                               double beta, const PressureEstimate& pressure);

}  // namespace parapress
