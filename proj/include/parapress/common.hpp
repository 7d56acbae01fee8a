// Shared basic types: complex numbers on the sphere, errors, seeded RNG, tolerances.
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace parapress {

using Complex = std::complex<double>;

// Numeric failure (root solver divergence, singular density, budget overrun, ...).
// The CLI maps this to exit code 1.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A required hypothesis does not hold (map not parabolic, critical point on J, ...).
// The CLI maps this to exit code 2.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point on the Riemann sphere: finite value or the point at infinity.
struct SpherePoint {
  Complex value{0.0, 0.0};
  bool infinite = false;

  SpherePoint() = default;
  SpherePoint(Complex z) : value(z) {}  // NOLINT: implicit by design
  static SpherePoint inf() {
    SpherePoint p;
    p.infinite = true;
    return p;
  }

  bool operator==(const SpherePoint& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

// Chordal distance on the sphere, diameter 2.  Used wherever infinity may occur.
inline double chordal(const SpherePoint& a, const SpherePoint& b) {
  if (a.infinite && b.infinite) return 0.0;
  if (a.infinite) return 2.0 / std::sqrt(1.0 + std::norm(b.value));
  if (b.infinite) return 2.0 / std::sqrt(1.0 + std::norm(a.value));
  return 2.0 * std::abs(a.value - b.value) /
         std::sqrt((1.0 + std::norm(a.value)) * (1.0 + std::norm(b.value)));
}

inline std::string format_point(const SpherePoint& p) {
  if (p.infinite) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", p.value.real(), p.value.imag());
  return buf;
}

// Lexicographic order by (re, im); the deterministic ordering used for fibers,
// roots and cycle representatives.
inline bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Seeded RNG with a platform-independent uniform; mt19937_64 output is pinned
// by the standard, so identical seeds give identical streams everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) {
    return std::min<std::size_t>(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }
  Complex unit() {
    double a = uniform() * 6.283185307179586476925287;
    return {std::cos(a), std::sin(a)};
  }

 private:
  std::mt19937_64 gen_;
};

// Global numeric tolerances and budgets.  Defaults follow the documented
// contract; callers may copy and adjust.
struct Config {
  double fiber_tol = 1e-9;          // |f(z) - w| accepted at preimages
  double polish_tol = 1e-12;        // Newton residual target (relative)
  double root_unity_tol = 1e-8;     // |lambda^q - 1| for parabolic detection
  int q_max = 12;                   // largest root-of-unity order searched
  double cluster_tol = 1e-6;        // multiple-root clustering
  double divisor_match_tol = 1e-7;  // exact-period filtering distance
  std::size_t node_budget = 1u << 20;   // preimage-tree node cap
  int compose_degree_budget = 4096;     // symbolic iterate degree cap
  double compose_coeff_budget = 1e8;    // symbolic iterate coefficient cap
  int postcritical_N = 50;          // truncation length per critical orbit
  double critical_clearance = 0.05; // min dist C(f) to J before flagging
  int omega_n_max = 6;              // default Omega search scope
};

inline const Config& default_config() {
  static const Config cfg{};
  return cfg;
}

}  // namespace parapress
