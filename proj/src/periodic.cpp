#include "parapress/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace parapress {

std::string to_string(const Classification& c) {
  switch (c.kind) {
    case Stability::superattracting: return "superattracting";
    case Stability::attracting: return "attracting";
    case Stability::repelling: return "repelling";
    case Stability::parabolic:
      return "parabolic(" + std::to_string(c.p) + "/" + std::to_string(c.q) + ")";
    case Stability::irrationally_indifferent: return "irrationally-indifferent";
  }
  return "?";
}

Classification classify(Complex multiplier, int q_max, double tol) {
  double m = std::abs(multiplier);
  if (m < tol) return {Stability::superattracting, 0, 1};
  if (m < 1.0 - tol) return {Stability::attracting, 0, 1};
  if (m > 1.0 + tol) return {Stability::repelling, 0, 1};
  // Indifferent: look for a root of unity of order <= q_max.
  for (int q = 1; q <= q_max; ++q) {
    Complex lq = std::pow(multiplier, q);
    if (std::abs(lq - Complex{1.0, 0.0}) < tol * q) {
      double angle = std::arg(multiplier) / (2.0 * 3.14159265358979323846);
      int p = static_cast<int>(std::lround(angle * q));
      p = ((p % q) + q) % q;
      int g = std::gcd(p == 0 ? q : p, q);
      return {Stability::parabolic, p / g, q / g};
    }
  }
  return {Stability::irrationally_indifferent, 0, 1};
}

namespace {

// Deterministic non-exceptional point on (near) J: backward random walk with a
// fixed internal seed.
Complex julia_anchor(const RationalMap& f, const Config& cfg) {
  const Complex starts[] = {{2.0, 0.3}, {0.0, 2.0}, {-1.7, 0.9}, {0.4, -1.9}, {1.1, 1.3}};
  Rng rng(0x5eed0001ULL);
  for (Complex z0 : starts) {
    try {
      Complex z = z0;
      for (int i = 0; i < 200; ++i) {
        auto fiber = f.preimages(z, cfg);
        // Exceptional points have a single-point fiber {z}.
        bool moved = false;
        for (const auto& q : fiber)
          if (std::abs(q - z) > 1e-12) moved = true;
        if (!moved) break;
        z = fiber[rng.below(fiber.size())];
      }
      return z;
    } catch (const NumericError&) {
      continue;  // degenerate fiber hit; try the next start
    }
  }
  throw NumericError("could not find a non-exceptional backward-orbit anchor");
}

struct NewtonResult {
  Complex z;
  Complex deriv;  // (f^n)'(z)
  bool ok = false;
};

NewtonResult newton_fixed_of_iterate(const RationalMap& f, Complex z, int n, int iters = 100) {
  NewtonResult res;
  for (int it = 0; it < iters; ++it) {
    Complex fz, dz;
    try {
      std::tie(fz, dz) = f.iterate_with_derivative(z, n);
    } catch (const NumericError&) {
      return res;  // orbit hit a pole
    }
    if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag())) return res;
    Complex dF = dz - 1.0;
    if (std::abs(dF) == 0.0) break;
    Complex step = (fz - z) / dF;
    z -= step;
    if (std::abs(step) < 1e-13 * (1.0 + std::abs(z))) break;
  }
  Complex fz, dz;
  try {
    std::tie(fz, dz) = f.iterate_with_derivative(z, n);
  } catch (const NumericError&) {
    return res;
  }
  if (std::abs(fz - z) < 1e-9 * (1.0 + std::abs(z)) && std::abs(z) < 1e6) {
    res.z = z;
    res.deriv = dz;
    res.ok = true;
  }
  return res;
}

// Refine a parabolic (multiple) fixed point of f^n.  Near an m-fold root,
// f^n(z) - z drowns in rounding noise within ~eps^(1/m) of the root, so Newton
// runs on the first or second derivative of the iterate instead: for a double
// root (f^n)' - 1 has a simple zero there; for a triple root (f^n)'' does.
Complex polish_neutral(const RationalMap& f, Complex z0, int n) {
  auto fitness = [&](Complex z) {
    auto [fz, d1] = f.iterate_with_derivative(z, n);
    return std::abs(fz - z) + std::abs(d1 - Complex{1.0, 0.0});
  };
  Complex best = z0;
  double best_fit = fitness(z0);

  // Double-root candidate: Newton on G = (f^n)' - 1 with G' = (f^n)''.
  {
    Complex z = z0;
    bool ok = true;
    for (int it = 0; it < 40; ++it) {
      auto [fz, d1, d2] = f.iterate_with_two_derivatives(z, n);
      (void)fz;
      if (std::abs(d2) < 1e-300) {
        ok = false;
        break;
      }
      Complex step = (d1 - Complex{1.0, 0.0}) / d2;
      z -= step;
      if (!std::isfinite(z.real())) {
        ok = false;
        break;
      }
      if (std::abs(step) < 1e-15) break;
    }
    if (ok && std::abs(z - z0) < 1e-2) {
      double fit = fitness(z);
      if (fit < best_fit) {
        best = z;
        best_fit = fit;
      }
    }
  }

  // Triple-root candidate: secant on H = (f^n)''.
  {
    auto H = [&](Complex z) { return std::get<2>(f.iterate_with_two_derivatives(z, n)); };
    Complex a = z0, b = z0 + Complex{1e-6, 1e-6};
    Complex Ha = H(a), Hb = H(b);
    bool ok = true;
    for (int it = 0; it < 60; ++it) {
      Complex den = Hb - Ha;
      if (std::abs(den) < 1e-300) {
        ok = false;
        break;
      }
      Complex c = b - Hb * (b - a) / den;
      if (!std::isfinite(c.real())) {
        ok = false;
        break;
      }
      a = b;
      Ha = Hb;
      b = c;
      Hb = H(b);
      if (std::abs(b - a) < 1e-15) break;
    }
    if (ok && std::abs(b - z0) < 1e-2) {
      double fit = fitness(b);
      if (fit < best_fit) {
        best = b;
        best_fit = fit;
      }
    }
  }
  return best;
}

// Attracting / superattracting cycles of period p <= n, located by following
// critical orbits forward.
std::vector<std::vector<Complex>> attracting_cycles(const RationalMap& f, int n, const Config& cfg) {
  std::vector<std::vector<Complex>> cycles;
  for (const auto& c : f.critical_points(cfg)) {
    if (c.infinite) continue;  // infinity handled by the caller's bookkeeping
    Complex z = c.value;
    bool escaped = false;
    for (int i = 0; i < 600; ++i) {
      SpherePoint img = f.evaluate(SpherePoint{z});
      if (img.infinite || std::abs(img.value) > 1e8) {
        escaped = true;
        break;
      }
      z = img.value;
    }
    if (escaped) continue;
    // Detect near-cycling of period p <= n.
    std::vector<Complex> tail = f.orbit(z, 2 * n + 2);
    for (int p = 1; p <= n; ++p) {
      if (std::abs(tail[static_cast<std::size_t>(p)] - tail[0]) < 1e-5) {
        auto nr = newton_fixed_of_iterate(f, tail[0], p);
        if (!nr.ok) break;
        if (std::abs(nr.deriv) < 1.0 - 1e-6) {
          std::vector<Complex> cyc = f.orbit(nr.z, p);
          bool fresh = true;
          for (const auto& known : cycles)
            if (std::abs(known[0] - cyc[0]) < 1e-8) fresh = false;
          if (fresh) cycles.push_back(cyc);
        }
        break;
      }
    }
  }
  return cycles;
}

}  // namespace

PeriodicSolveResult solve_periodic(const RationalMap& f, int n, const Config& cfg,
                                   const std::vector<Complex>& known_parabolic) {
  PeriodicSolveResult out;
  std::vector<std::pair<Complex, int>> finite_solutions;  // (point, multiplicity)
  int infinity_multiplicity = 0;

  auto composed = f.iterate_map(n, cfg);
  if (composed) {
    out.route = "polynomial";
    Polynomial fixed_poly =
        composed->numerator() - composed->denominator() * Polynomial({Complex{0, 0}, Complex{1, 0}});
    auto solve = solve_roots(fixed_poly, cfg.polish_tol);
    auto clusters = cluster_roots(solve.roots, cfg.cluster_tol);
    for (auto& [rep, mult] : clusters) {
      Complex z = rep;
      if (mult == 1) {
        auto nr = newton_fixed_of_iterate(f, z, n);
        if (nr.ok) z = nr.z;
      } else {
        z = polish_neutral(f, z, n);
      }
      finite_solutions.emplace_back(z, mult);
    }
    // An m-fold root spreads ~eps^(1/m) (1e-5 for a triple root), wider than
    // the first-pass clustering; merge near-neutral clusters coarsely.
    std::vector<std::pair<Complex, int>> merged;
    for (const auto& [z, mult] : finite_solutions) {
      auto [fz, dz] = f.iterate_with_derivative(z, n);
      (void)fz;
      bool neutral = std::abs(dz - Complex{1.0, 0.0}) < 1e-3;
      bool absorbed = false;
      for (auto& [mz, mmult] : merged) {
        if (std::abs(mz - z) < 1e-4 && neutral) {
          auto [mfz, mdz] = f.iterate_with_derivative(mz, n);
          (void)mfz;
          if (std::abs(mdz - Complex{1.0, 0.0}) < 1e-3) {
            mmult += mult;
            if (std::abs(f.iterate(z, n) - z) < std::abs(f.iterate(mz, n) - mz)) mz = z;
            absorbed = true;
            break;
          }
        }
      }
      if (!absorbed) merged.emplace_back(z, mult);
    }
    for (auto& [mz, mmult] : merged)
      if (mmult > 1) mz = polish_neutral(f, mz, n);
    finite_solutions = std::move(merged);
    // Count at infinity: the sphere carries d^n + 1 fixed points of f^n.
    double total = std::pow(static_cast<double>(f.degree()), n) + 1.0;
    infinity_multiplicity = static_cast<int>(std::lround(total)) - fixed_poly.degree();
  } else {
    out.route = "seeded-newton";
    if (std::pow(static_cast<double>(f.degree()), n) > (1 << 16))
      throw NumericError("solve_periodic: d^n too large for the seeded route");

    Complex anchor = julia_anchor(f, cfg);
    int seed_depth = n + 2;
    std::vector<Complex> seeds{anchor};
    for (int level = 0; level < seed_depth; ++level) {
      std::vector<Complex> next;
      next.reserve(seeds.size() * static_cast<std::size_t>(f.degree()));
      for (const auto& s : seeds) {
        std::vector<Complex> fiber;
        try {
          fiber = f.preimages(s, cfg);
        } catch (const NumericError&) {
          continue;
        }
        next.insert(next.end(), fiber.begin(), fiber.end());
      }
      seeds = std::move(next);
    }

    std::vector<Complex> plain;
    std::vector<Complex> neutral;
    for (const auto& s : seeds) {
      auto nr = newton_fixed_of_iterate(f, s, n);
      if (!nr.ok) continue;
      if (std::abs(nr.deriv - Complex{1.0, 0.0}) < 1e-5)
        neutral.push_back(nr.z);
      else
        plain.push_back(nr.z);
    }
    for (const auto& z : plain) {
      bool dup = false;
      for (const auto& [p, m] : finite_solutions)
        if (std::abs(p - z) < 1e-8) dup = true;
      if (!dup) finite_solutions.emplace_back(z, 1);
    }
    // Neutral finds are numerically indistinguishable within ~1e-5 of a
    // parabolic point: collapse coarse clusters, snapping to known anchors.
    for (auto& [rep, count] : cluster_roots(neutral, 1e-3)) {
      (void)count;
      Complex z = rep;
      bool snapped = false;
      for (const auto& w : known_parabolic) {
        if (std::abs(w - z) < 1e-3) {
          z = w;
          snapped = true;
          break;
        }
      }
      if (!snapped) z = polish_neutral(f, z, n);
      bool dup = false;
      for (const auto& [p, m] : finite_solutions)
        if (std::abs(p - z) < 1e-6) dup = true;
      if (!dup) finite_solutions.emplace_back(z, 1);
    }
    for (const auto& cyc : attracting_cycles(f, n, cfg)) {
      int p = static_cast<int>(cyc.size());
      if (n % p != 0) continue;
      for (const auto& z : cyc) {
        bool dup = false;
        for (const auto& [q, m] : finite_solutions)
          if (std::abs(q - z) < 1e-8) dup = true;
        if (!dup) finite_solutions.emplace_back(z, 1);
      }
    }
    if (f.numerator().degree() > f.denominator().degree()) infinity_multiplicity = 1;
  }

  std::sort(finite_solutions.begin(), finite_solutions.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  for (const auto& [z, mult] : finite_solutions) {
    auto [fz, dz] = f.iterate_with_derivative(z, n);
    (void)fz;
    out.fixed_points_of_fn.push_back({SpherePoint{z}, dz, mult});
  }
  if (infinity_multiplicity > 0) {
    Complex lam = f.cycle_multiplier({SpherePoint::inf()});
    out.fixed_points_of_fn.push_back({SpherePoint::inf(), std::pow(lam, n), infinity_multiplicity});
  }

  // Assemble exact-period-n cycles.
  std::vector<char> used(out.fixed_points_of_fn.size(), 0);
  auto find_near = [&](Complex z) -> int {
    for (std::size_t i = 0; i < out.fixed_points_of_fn.size(); ++i) {
      const auto& a = out.fixed_points_of_fn[i];
      if (!a.z.infinite && std::abs(a.z.value - z) < 1e-6) return static_cast<int>(i);
    }
    return -1;
  };
  for (std::size_t i = 0; i < out.fixed_points_of_fn.size(); ++i) {
    if (used[i]) continue;
    const auto& atom = out.fixed_points_of_fn[i];
    if (atom.z.infinite) {
      used[i] = 1;
      if (n == 1) {
        PeriodicOrbit orb;
        orb.points = {SpherePoint::inf()};
        orb.period = 1;
        orb.multiplier = f.cycle_multiplier({SpherePoint::inf()});
        orb.cls = classify(orb.multiplier, cfg.q_max, cfg.root_unity_tol);
        orb.multiplicity = atom.multiplicity;
        out.exact_orbits.push_back(orb);
      }
      continue;
    }
    Complex z = atom.z.value;
    // Exact period: smallest divisor m of n with f^m(z) = z.
    int exact = n;
    for (int m = 1; m < n; ++m) {
      if (n % m != 0) continue;
      if (std::abs(f.iterate(z, m) - z) < cfg.divisor_match_tol * (1.0 + std::abs(z))) {
        exact = m;
        break;
      }
    }
    if (exact < n) {
      used[i] = 1;
      continue;
    }
    // Collect the cycle, matching orbit points back to solved atoms.
    std::vector<Complex> cycle_pts;
    Complex w = z;
    bool clean = true;
    for (int stepi = 0; stepi < n; ++stepi) {
      int j = find_near(w);
      if (j < 0) {
        clean = false;
        break;
      }
      used[static_cast<std::size_t>(j)] = 1;
      cycle_pts.push_back(out.fixed_points_of_fn[static_cast<std::size_t>(j)].z.value);
      w = f.eval_finite(cycle_pts.back());
    }
    if (!clean || cycle_pts.size() != static_cast<std::size_t>(n)) continue;
    // Rotate so the lex-min point leads.
    std::size_t lead = 0;
    for (std::size_t k = 1; k < cycle_pts.size(); ++k)
      if (lex_less(cycle_pts[k], cycle_pts[lead])) lead = k;
    std::rotate(cycle_pts.begin(), cycle_pts.begin() + static_cast<long>(lead), cycle_pts.end());

    PeriodicOrbit orb;
    for (const auto& p : cycle_pts) orb.points.push_back(SpherePoint{p});
    orb.period = n;
    orb.multiplier = f.cycle_multiplier(orb.points);
    orb.cls = classify(orb.multiplier, cfg.q_max, cfg.root_unity_tol);
    orb.multiplicity = atom.multiplicity;
    out.exact_orbits.push_back(orb);
  }
  std::sort(out.exact_orbits.begin(), out.exact_orbits.end(), [](const auto& a, const auto& b) {
    if (a.period != b.period) return a.period < b.period;
    if (a.points[0].infinite != b.points[0].infinite) return b.points[0].infinite;
    return lex_less(a.points[0].value, b.points[0].value);
  });
  return out;
}

std::vector<PeriodicOrbit> find_periodic_points(const RationalMap& f, int n, const Config& cfg) {
  // Thread parabolic anchors found at proper divisor periods.
  std::vector<Complex> known;
  for (int m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    auto res = solve_periodic(f, m, cfg, known);
    for (const auto& orb : res.exact_orbits)
      if (orb.cls.kind == Stability::parabolic)
        for (const auto& p : orb.points)
          if (!p.infinite) known.push_back(p.value);
  }
  return solve_periodic(f, n, cfg, known).exact_orbits;
}

std::vector<Complex> OmegaSet::points() const {
  std::vector<Complex> out;
  for (const auto& orb : orbits)
    for (const auto& p : orb.points)
      if (!p.infinite) out.push_back(p.value);
  return out;
}

OmegaSet omega(const RationalMap& f, int n_max, const Config& cfg) {
  OmegaSet out;
  out.scope = n_max;
  std::vector<Complex> known;
  for (int n = 1; n <= n_max; ++n) {
    auto res = solve_periodic(f, n, cfg, known);
    for (const auto& orb : res.exact_orbits) {
      if (orb.cls.kind != Stability::parabolic) continue;
      out.orbits.push_back(orb);
      for (const auto& p : orb.points)
        if (!p.infinite) known.push_back(p.value);
    }
  }
  return out;
}

PreconditionReport check_parabolic_preconditions(const RationalMap& f,
                                                 const std::vector<Complex>& julia_sample,
                                                 const OmegaSet& omega_set, const Config& cfg) {
  if (julia_sample.empty()) throw PreconditionError("preconditions: empty Julia sample");
  PreconditionReport rep;
  rep.critical_clearance = 4.0;  // larger than the sphere's chordal diameter
  for (const auto& c : f.critical_points(cfg)) {
    for (const auto& z : julia_sample) {
      double d = c.infinite ? chordal(c, SpherePoint{z}) : std::abs(c.value - z);
      rep.critical_clearance = std::min(rep.critical_clearance, d);
    }
  }
  rep.clearance_ok = rep.critical_clearance >= cfg.critical_clearance;
  rep.omega_nonempty = !omega_set.empty();
  rep.pass = rep.clearance_ok && rep.omega_nonempty;
  if (!rep.omega_nonempty)
    rep.note = "not parabolic within scope (no rationally indifferent cycle of period <= " +
               std::to_string(omega_set.scope) + ")";
  else if (!rep.clearance_ok)
    rep.note = "critical point within clearance of the Julia sample";
  return rep;
}

double a_omega(const OmegaSet& omega_set, const std::function<double(Complex)>& phi) {
  if (omega_set.empty()) throw PreconditionError("a_omega: Omega is empty");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& orb : omega_set.orbits) {
    double sum = 0.0;
    for (const auto& p : orb.points) {
      if (p.infinite) throw NumericError("a_omega: cycle through infinity is unsupported");
      sum += phi(p.value);
    }
    best = std::max(best, sum / static_cast<double>(orb.period));
  }
  return best;
}

IterateReduction reduce_to_fixed(const RationalMap& f, const OmegaSet& omega_set,
                                 const Config& cfg) {
  IterateReduction red;
  long long k = 1;
  for (const auto& orb : omega_set.orbits) {
    long long need = static_cast<long long>(orb.period) * orb.cls.q;
    k = std::lcm(k, need);
    if (k > 64) break;  // d^k is hopeless far earlier; keep lcm bounded
  }
  red.k = static_cast<int>(k);
  if (red.k == 1) {
    red.map = f;
    return red;
  }
  if (std::pow(static_cast<double>(f.degree()), red.k) <= cfg.compose_degree_budget)
    red.map = f.iterate_map(red.k, cfg);
  return red;
}

}  // namespace parapress
