#include "parapress/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace parapress {

RationalMap::RationalMap(std::vector<Complex> numerator, std::vector<Complex> denominator,
                         const Config& cfg)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.is_zero() || den_.is_zero())
    throw PreconditionError("rational map: numerator and denominator must be nonzero");
  degree_ = std::max(num_.degree(), den_.degree());
  if (degree_ < 2) throw PreconditionError("rational map: degree must be >= 2");

  // Normalize so the larger-degree polynomial is monic.
  Complex lead = (num_.degree() >= den_.degree()) ? num_.leading() : den_.leading();
  num_ = num_ * (1.0 / lead);
  den_ = den_ * (1.0 / lead);

  // Numerical coprimality: no common root within tolerance.
  if (den_.degree() >= 1) {
    auto qroots = solve_roots(den_);
    for (const auto& r : qroots.roots) {
      double scale = std::max(1.0, num_.max_abs_coeff() * std::pow(1.0 + std::abs(r), num_.degree()));
      if (std::abs(num_(r)) < cfg.fiber_tol * scale)
        throw PreconditionError("rational map: P and Q share a root near " +
                                format_point(SpherePoint{r}));
    }
  }

  dnum_ = num_.derivative();
  dden_ = den_.derivative();
  wronskian_ = dnum_ * den_ - num_ * dden_;
  dwronskian_ = wronskian_.derivative();
}

SpherePoint RationalMap::evaluate(const SpherePoint& z) const {
  const int dp = num_.degree(), dq = den_.degree();
  if (z.infinite) {
    if (dp > dq) return SpherePoint::inf();
    if (dp < dq) return SpherePoint{Complex{0.0, 0.0}};
    return SpherePoint{num_.leading() / den_.leading()};
  }
  if (std::abs(z.value) <= 1.0) {
    Complex q = den_(z.value);
    if (std::abs(q) == 0.0) return SpherePoint::inf();
    return SpherePoint{num_(z.value) / q};
  }
  // Chart w = 1/z: f(1/w) = w^{d-dp} prev(w) / (w^{d-dq} qrev(w)) with the
  // reversed-coefficient polynomials; stable for |w| < 1.
  Complex w = 1.0 / z.value;
  Complex pv = num_.eval_reversed(w) * std::pow(w, static_cast<double>(degree_ - dp));
  Complex qv = den_.eval_reversed(w) * std::pow(w, static_cast<double>(degree_ - dq));
  if (std::abs(qv) == 0.0) return SpherePoint::inf();
  return SpherePoint{pv / qv};
}

Complex RationalMap::derivative(Complex z) const {
  Complex q = den_(z);
  double scale = den_.max_abs_coeff() * std::pow(1.0 + std::abs(z), den_.degree());
  if (std::abs(q) < 1e-13 * scale)
    throw NumericError("derivative at a pole: z = " + format_point(SpherePoint{z}));
  return wronskian_(z) / (q * q);
}

namespace {

// Numerical derivative of a chart-composed local map; h scaled to the point.
template <typename F>
Complex num_deriv(F&& g, Complex z) {
  double h = 1e-7 * (1.0 + std::abs(z));
  return (g(z + Complex{h, 0.0}) - g(z - Complex{h, 0.0})) / (2.0 * h);
}

}  // namespace

Complex RationalMap::cycle_multiplier(const std::vector<SpherePoint>& cycle) const {
  Complex lambda{1.0, 0.0};
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const SpherePoint& a = cycle[i];
    const SpherePoint& b = cycle[(i + 1) % n];
    if (!a.infinite && !b.infinite) {
      lambda *= derivative(a.value);
    } else if (!a.infinite && b.infinite) {
      // z-chart -> w-chart: d/dz [1/f(z)]
      lambda *= num_deriv([this](Complex z) { return 1.0 / eval_finite(z); }, a.value);
    } else if (a.infinite && !b.infinite) {
      // w-chart -> z-chart: d/dw [f(1/w)] at 0
      lambda *= num_deriv(
          [this](Complex w) {
            SpherePoint v = evaluate(SpherePoint{1.0 / w});
            return v.infinite ? Complex{1e30, 0.0} : v.value;
          },
          Complex{1e-7, 0.0});
    } else {
      // w-chart -> w-chart: d/dw [1/f(1/w)] at 0
      lambda *= num_deriv(
          [this](Complex w) {
            if (std::abs(w) == 0.0) w = Complex{1e-12, 0.0};
            SpherePoint v = evaluate(SpherePoint{1.0 / w});
            return v.infinite ? Complex{0.0, 0.0} : 1.0 / v.value;
          },
          Complex{0.0, 0.0});
    }
  }
  return lambda;
}

std::vector<Complex> RationalMap::orbit(Complex z, int n) const {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(z);
    if (i + 1 < n) z = eval_finite(z);
  }
  return out;
}

Complex RationalMap::iterate(Complex z, int n) const {
  for (int i = 0; i < n; ++i) z = eval_finite(z);
  return z;
}

std::pair<Complex, Complex> RationalMap::iterate_with_derivative(Complex z, int n) const {
  Complex d{1.0, 0.0};
  for (int i = 0; i < n; ++i) {
    d *= derivative(z);
    z = eval_finite(z);
  }
  return {z, d};
}

Complex RationalMap::second_derivative(Complex z) const {
  Complex q = den_(z);
  double scale = den_.max_abs_coeff() * std::pow(1.0 + std::abs(z), den_.degree());
  if (std::abs(q) < 1e-13 * scale)
    throw NumericError("second derivative at a pole: z = " + format_point(SpherePoint{z}));
  // f'' = (w'Q - 2wQ')/Q^3 with w = P'Q - PQ'.
  return (dwronskian_(z) * q - 2.0 * wronskian_(z) * dden_(z)) / (q * q * q);
}

std::tuple<Complex, Complex, Complex> RationalMap::iterate_with_two_derivatives(Complex z,
                                                                                int n) const {
  Complex d1{1.0, 0.0}, d2{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    Complex fp = derivative(z);
    Complex fpp = second_derivative(z);
    d2 = fpp * d1 * d1 + fp * d2;
    d1 = fp * d1;
    z = eval_finite(z);
  }
  return {z, d1, d2};
}

std::vector<SpherePoint> RationalMap::critical_points(const Config& cfg) const {
  std::vector<SpherePoint> out;
  const int expected = 2 * degree_ - 2;
  if (!wronskian_.is_zero() && wronskian_.degree() >= 1) {
    auto solve = solve_roots(wronskian_, cfg.polish_tol);
    for (auto& [rep, mult] : cluster_roots(solve.roots, cfg.cluster_tol)) {
      // Polish simple roots once more on the wronskian.
      Complex r = rep;
      if (mult == 1) {
        Polynomial dw = wronskian_.derivative();
        for (int it = 0; it < 8; ++it) {
          Complex dv = dw(r);
          if (std::abs(dv) == 0.0) break;
          r -= wronskian_(r) / dv;
        }
      }
      for (int i = 0; i < mult; ++i) out.push_back(SpherePoint{r});
    }
  }
  int missing = expected - static_cast<int>(out.size());
  for (int i = 0; i < missing; ++i) out.push_back(SpherePoint::inf());
  return out;
}

std::vector<SpherePoint> RationalMap::critical_values(const Config& cfg) const {
  std::vector<SpherePoint> out;
  for (const auto& c : critical_points(cfg)) out.push_back(evaluate(c));
  return out;
}

std::vector<Complex> RationalMap::preimages(Complex w, const Config& cfg,
                                            bool allow_degenerate) const {
  // Roots of P(z) - w Q(z).
  Polynomial fiber = num_ - den_ * w;
  if (fiber.degree() < degree_ && !allow_degenerate)
    throw NumericError("degenerate fiber at w = " + format_point(SpherePoint{w}) +
                       " (degree drop; infinity enters the fiber)");
  if (fiber.degree() < 1) {
    if (allow_degenerate) return {};
    throw NumericError("degenerate fiber: constant fiber polynomial");
  }
  auto solve = solve_roots(fiber, cfg.polish_tol);
  std::vector<Complex> roots = solve.roots;

  // Newton polish against the fiber polynomial, then verify.
  Polynomial dfiber = fiber.derivative();
  for (auto& r : roots) {
    for (int it = 0; it < 10; ++it) {
      Complex dv = dfiber(r);
      if (std::abs(dv) == 0.0) break;
      Complex step = fiber(r) / dv;
      r -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
    }
  }
  std::sort(roots.begin(), roots.end(), lex_less);
  for (const auto& r : roots) {
    SpherePoint img = evaluate(SpherePoint{r});
    double err = img.infinite ? 2.0 : std::abs(img.value - w);
    // Multiple roots carry larger forward error; scale by the local fiber
    // conditioning rather than rejecting them outright.
    double mult_slack = 1.0;
    if (std::abs(dfiber(r)) < 1e-6 * std::max(1.0, fiber.max_abs_coeff())) mult_slack = 1e6;
    if (err > cfg.fiber_tol * mult_slack * (1.0 + std::abs(w)))
      throw NumericError("preimage verification failed at w = " + format_point(SpherePoint{w}) +
                         ": |f(z)-w| = " + std::to_string(err));
  }
  return roots;
}

std::optional<RationalMap> RationalMap::iterate_map(int k, const Config& cfg) const {
  Polynomial n = num_, d = den_;
  for (int step = 1; step < k; ++step) {
    // f(N/D) = sum p_i N^i D^{dp-i} * D^{d-dp} / (sum q_i N^i D^{dq-i} * D^{d-dq})
    std::vector<Polynomial> npow(static_cast<std::size_t>(degree_) + 1);
    npow[0] = Polynomial::constant(1.0);
    for (int i = 1; i <= degree_; ++i) npow[static_cast<std::size_t>(i)] = npow[static_cast<std::size_t>(i - 1)] * n;
    std::vector<Polynomial> dpow = npow;
    dpow[0] = Polynomial::constant(1.0);
    for (int i = 1; i <= degree_; ++i) dpow[static_cast<std::size_t>(i)] = dpow[static_cast<std::size_t>(i - 1)] * d;

    Polynomial nn, dd;
    const auto& pc = num_.coeffs();
    const auto& qc = den_.coeffs();
    for (std::size_t i = 0; i < pc.size(); ++i)
      nn = nn + npow[i] * dpow[static_cast<std::size_t>(degree_) - i] * pc[i];
    for (std::size_t i = 0; i < qc.size(); ++i)
      dd = dd + npow[i] * dpow[static_cast<std::size_t>(degree_) - i] * qc[i];
    n = nn;
    d = dd;
    if (std::max(n.degree(), d.degree()) > cfg.compose_degree_budget) return std::nullopt;
    if (std::max(n.max_abs_coeff(), d.max_abs_coeff()) > cfg.compose_coeff_budget) return std::nullopt;
  }
  return RationalMap(n.coeffs(), d.coeffs(), cfg);
}

std::string RationalMap::describe() const {
  std::ostringstream os;
  auto put = [&os](const Polynomial& p) {
    os << "[";
    for (int i = 0; i <= p.degree(); ++i) {
      if (i) os << ", ";
      os << p.coeffs()[static_cast<std::size_t>(i)].real() << "+"
         << p.coeffs()[static_cast<std::size_t>(i)].imag() << "i";
    }
    os << "]";
  };
  os << "P=";
  put(num_);
  os << " Q=";
  put(den_);
  return os.str();
}

std::string PreimageTree::leaf_code(std::size_t leaf_index) const {
  std::string code;
  std::size_t idx = leaf_index;
  for (int level = depth; level >= 1; --level) {
    code.push_back(static_cast<char>('0' + branch_digit[static_cast<std::size_t>(level)][idx]));
    idx = parent[static_cast<std::size_t>(level)][idx];
  }
  return code;
}

PreimageTree preimage_tree(const RationalMap& f, Complex w, int n, const Config& cfg) {
  if (n < 1) throw PreconditionError("preimage_tree: depth must be >= 1");
  double total = std::pow(static_cast<double>(f.degree()), n);
  if (total > static_cast<double>(cfg.node_budget))
    throw NumericError("preimage_tree: d^n exceeds the node budget");

  PreimageTree tree;
  tree.root = w;
  tree.depth = n;
  tree.nodes.assign(static_cast<std::size_t>(n) + 1, {});
  tree.parent.assign(static_cast<std::size_t>(n) + 1, {});
  tree.branch_digit.assign(static_cast<std::size_t>(n) + 1, {});
  tree.nodes[0] = {w};

  for (int level = 1; level <= n; ++level) {
    auto& cur = tree.nodes[static_cast<std::size_t>(level)];
    auto& par = tree.parent[static_cast<std::size_t>(level)];
    auto& dig = tree.branch_digit[static_cast<std::size_t>(level)];
    const auto& prev = tree.nodes[static_cast<std::size_t>(level - 1)];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      auto fiber = f.preimages(prev[i], cfg);
      for (std::size_t b = 0; b < fiber.size(); ++b) {
        cur.push_back(fiber[b]);
        par.push_back(i);
        dig.push_back(static_cast<int>(b));
      }
    }
  }
  return tree;
}

}  // namespace parapress
