#include "parapress/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace parapress {

void Polynomial::trim() {
  while (!c_.empty() && std::abs(c_.back()) == 0.0) c_.pop_back();
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& a : c_) m = std::max(m, std::abs(a));
  return m;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc{0.0, 0.0};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex Polynomial::eval_reversed(Complex w) const {
  Complex acc{0.0, 0.0};
  for (const auto& a : c_) acc = acc * w + a;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Complex> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Complex> r(std::max(c_.size(), o.c_.size()), Complex{});
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<Complex> r(std::max(c_.size(), o.c_.size()), Complex{});
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Complex> r(c_.size() + o.c_.size() - 1, Complex{});
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(Complex s) const {
  std::vector<Complex> r = c_;
  for (auto& a : r) a *= s;
  return Polynomial(std::move(r));
}

namespace {

// Relative backward-error style residual: |p(z)| / sum |c_i||z|^i.
double rel_residual(const std::vector<Complex>& c, Complex z) {
  double az = std::abs(z);
  double scale = 0.0, pw = 1.0;
  Complex acc{0.0, 0.0};
  Complex zp{1.0, 0.0};
  for (const auto& a : c) {
    acc += a * zp;
    scale += std::abs(a) * pw;
    zp *= z;
    pw *= az;
  }
  if (scale == 0.0) return 0.0;
  return std::abs(acc) / scale;
}

}  // namespace

RootSolve solve_roots(const Polynomial& p, double polish_tol, int max_sweeps) {
  RootSolve out;
  if (p.degree() <= 0) {
    out.converged = true;
    return out;
  }
  std::vector<Complex> c = p.coeffs();

  // Factor out roots at the origin.
  std::size_t zeros = 0;
  while (zeros < c.size() - 1 && std::abs(c[zeros]) == 0.0) ++zeros;
  for (std::size_t i = 0; i < zeros; ++i) out.roots.push_back(Complex{0.0, 0.0});
  c.erase(c.begin(), c.begin() + static_cast<long>(zeros));

  const int d = static_cast<int>(c.size()) - 1;
  if (d >= 1) {
    // Monic normalization; Cauchy radius bound for initial guesses.
    Complex lead = c.back();
    for (auto& a : c) a /= lead;
    double radius = 0.0;
    for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(c[i]));
    radius = 1.0 + radius;
    radius = std::min(radius, 1e8);

    std::vector<Complex> z(d);
    for (int i = 0; i < d; ++i) {
      // Spiral start; the 0.3700884 offset breaks symmetric stagnation.
      double a = 6.283185307179586 * (static_cast<double>(i) / d) + 0.3700884;
      double r = radius * (0.6 + 0.4 * (static_cast<double>(i % 7) / 7.0));
      z[i] = Complex{r * std::cos(a), r * std::sin(a)};
    }

    Polynomial q{std::vector<Complex>(c)};
    Polynomial dq = q.derivative();
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
      double max_step = 0.0;
      for (int i = 0; i < d; ++i) {
        Complex pv = q(z[i]);
        if (std::abs(pv) == 0.0) continue;
        Complex dv = dq(z[i]);
        if (std::abs(dv) == 0.0) {
          z[i] += Complex{1e-8, 1e-8};
          max_step = 1.0;
          continue;
        }
        Complex w = pv / dv;
        Complex s{0.0, 0.0};
        for (int j = 0; j < d; ++j)
          if (j != i) s += 1.0 / (z[i] - z[j]);
        Complex denom = 1.0 - w * s;
        Complex step = (std::abs(denom) < 1e-300) ? w : w / denom;
        z[i] -= step;
        max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
      }
      if (max_step < 1e-14) break;
    }
    out.iterations = sweep;

    // Newton polish against the monic coefficients.
    for (auto& r : z) {
      for (int it = 0; it < 12; ++it) {
        Complex pv = q(r), dv = dq(r);
        if (std::abs(dv) == 0.0) break;
        Complex step = pv / dv;
        r -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
      }
      out.roots.push_back(r);
    }

    for (const auto& r : z) out.max_rel_residual = std::max(out.max_rel_residual, rel_residual(c, r));
    // Multiple roots stall at ~eps^(1/multiplicity); accept a loose residual and
    // let the caller's clustering recover the center.
    out.converged = out.max_rel_residual < std::max(polish_tol, 1e-6);
    if (!out.converged) {
      throw NumericError("root solver failed to converge: degree " + std::to_string(p.degree()) +
                         ", relative residual " + std::to_string(out.max_rel_residual));
    }
  } else {
    out.converged = true;
  }

  std::sort(out.roots.begin(), out.roots.end(), lex_less);
  return out;
}

std::vector<std::pair<Complex, int>> cluster_roots(const std::vector<Complex>& roots, double tol) {
  std::vector<std::pair<Complex, int>> clusters;  // (sum, count) while building
  std::vector<char> used(roots.size(), 0);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex sum = roots[i];
    int count = 1;
    used[i] = 1;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) < tol) {
        sum += roots[j];
        ++count;
        used[j] = 1;
      }
    }
    clusters.emplace_back(sum / static_cast<double>(count), count);
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  return clusters;
}

}  // namespace parapress
