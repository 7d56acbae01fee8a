// Dense univariate polynomials over C with an Aberth-Ehrlich root solver.
#pragma once

#include <utility>

#include "parapress/common.hpp"

namespace parapress {

// Coefficients stored ascending: c[0] + c[1] z + ... + c[d] z^d.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(Complex v) { return Polynomial({v}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 when zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex leading() const { return c_.empty() ? Complex{} : c_.back(); }
  double max_abs_coeff() const;

  Complex operator()(Complex z) const;      // Horner
  Complex eval_reversed(Complex w) const;   // w^deg * p(1/w), stable for |w| <= 1
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex s) const;

 private:
  void trim();
  std::vector<Complex> c_;
};

struct RootSolve {
  std::vector<Complex> roots;  // with multiplicity, sorted lexicographically
  double max_rel_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// All complex roots by Aberth-Ehrlich simultaneous iteration followed by Newton
// polishing.  Throws NumericError when the iteration fails to settle; the
// message carries the offending polynomial's degree and residual.
RootSolve solve_roots(const Polynomial& p, double polish_tol = 1e-12, int max_sweeps = 120);

// Group near-identical roots; returns (representative, multiplicity) pairs where
// the representative is the cluster centroid (accurate for symmetric clusters of
// a multiple root).  Output sorted lexicographically.
std::vector<std::pair<Complex, int>> cluster_roots(const std::vector<Complex>& roots, double tol);

}  // namespace parapress
