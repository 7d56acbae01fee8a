// Degree-d rational maps of the sphere: evaluation in both charts, derivatives,
// critical points, preimage fibers and preimage trees.
#pragma once

#include <optional>

#include "parapress/polynomial.hpp"

namespace parapress {

class RationalMap {
 public:
  // Coefficients ascending; the larger-degree polynomial is normalized monic.
  // Throws PreconditionError for degree < 2 or numerically non-coprime P, Q.
  RationalMap(std::vector<Complex> numerator, std::vector<Complex> denominator,
              const Config& cfg = default_config());

  int degree() const { return degree_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }

  // Total evaluation on the sphere; switches to the w = 1/z chart for |z| > 1.
  SpherePoint evaluate(const SpherePoint& z) const;

  // Plain finite-chart evaluation, suitable for orbits on a bounded Julia set.
  Complex eval_finite(Complex z) const { return num_(z) / den_(z); }

  // f'(z) = (P'Q - PQ')/Q^2 in the finite chart.  Throws NumericError at poles.
  Complex derivative(Complex z) const;
  double abs_derivative(Complex z) const { return std::abs(derivative(z)); }
  Complex second_derivative(Complex z) const;

  // Derivative of the return map along a cycle, computed in local charts so that
  // cycles through infinity get the correct (chart-invariant) multiplier.
  Complex cycle_multiplier(const std::vector<SpherePoint>& cycle) const;

  // Forward orbit z, f z, ..., f^{n-1} z in the finite chart.
  std::vector<Complex> orbit(Complex z, int n) const;
  Complex iterate(Complex z, int n) const;
  // f^n(z) and (f^n)'(z) by the chain rule.
  std::pair<Complex, Complex> iterate_with_derivative(Complex z, int n) const;
  // f^n(z), (f^n)'(z), (f^n)''(z); used to polish multiple fixed points where
  // f^n(z) - z itself drowns in rounding noise.
  std::tuple<Complex, Complex, Complex> iterate_with_two_derivatives(Complex z, int n) const;

  // All roots of P'Q - PQ' plus infinity when the degree count demands it.
  std::vector<SpherePoint> critical_points(const Config& cfg = default_config()) const;
  std::vector<SpherePoint> critical_values(const Config& cfg = default_config()) const;

  // The d preimages of w (with multiplicity), sorted lexicographically, each
  // verified against |f(z) - w| < cfg.fiber_tol.  Degenerate fibers (degree
  // drop, i.e. infinity enters the fiber) throw NumericError unless
  // allow_degenerate is set, in which case the finite roots are returned.
  std::vector<Complex> preimages(Complex w, const Config& cfg = default_config(),
                                 bool allow_degenerate = false) const;

  // Symbolic composition f^k as a new RationalMap; empty when the coefficient
  // or degree budget is exceeded.
  std::optional<RationalMap> iterate_map(int k, const Config& cfg = default_config()) const;

  std::string describe() const;

 private:
  Polynomial num_, den_;
  Polynomial dnum_, dden_;    // P', Q'
  Polynomial wronskian_;      // P'Q - PQ'
  Polynomial dwronskian_;     // (P'Q - PQ')'
  int degree_ = 0;
};

struct PreimageTree {
  Complex root;
  int depth = 0;
  // nodes[k] holds level k (nodes[0] = {root}); parent[k][i] indexes nodes[k-1].
  std::vector<std::vector<Complex>> nodes;
  std::vector<std::vector<std::size_t>> parent;
  std::vector<std::vector<int>> branch_digit;  // which fiber slot the node came from

  const std::vector<Complex>& leaves() const { return nodes.back(); }
  // Branch code of a leaf as digits over {0..d-1}, deepest step first.
  std::string leaf_code(std::size_t leaf_index) const;
};

// Full fiber tree of depth n anchored at w.  Node budget enforced; fiber
// degeneracy propagates as NumericError.
PreimageTree preimage_tree(const RationalMap& f, Complex w, int n,
                           const Config& cfg = default_config());

}  // namespace parapress
