#include "parapress/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace parapress {

std::string to_string(PressureMethod m) {
  switch (m) {
    case PressureMethod::separated: return "separated";
    case PressureMethod::tree: return "tree";
    case PressureMethod::periodic: return "periodic";
    case PressureMethod::ulam: return "ulam";
  }
  return "?";
}

std::string to_string(ExtrapolationMode m) {
  switch (m) {
    case ExtrapolationMode::last: return "last";
    case ExtrapolationMode::aitken: return "aitken";
    case ExtrapolationMode::slope: return "slope";
  }
  return "?";
}

double extrapolate(const std::vector<double>& levels, ExtrapolationMode mode,
                   double* tail_width) {
  if (levels.size() < 3) throw PreconditionError("extrapolate: need at least 3 levels");
  const std::size_t n = levels.size();
  if (tail_width) {
    *tail_width = std::max(std::abs(levels[n - 1] - levels[n - 2]),
                           std::abs(levels[n - 2] - levels[n - 3]));
  }
  switch (mode) {
    case ExtrapolationMode::last:
      return levels.back();
    case ExtrapolationMode::aitken: {
      double a0 = levels[n - 3], a1 = levels[n - 2], a2 = levels[n - 1];
      double den = a2 - 2.0 * a1 + a0;
      if (std::abs(den) < 1e-14) return a2;
      return a2 - (a2 - a1) * (a2 - a1) / den;
    }
    case ExtrapolationMode::slope: {
      // LSQ slope of log Lambda_m = m * levels[m-1] over the trailing half.
      std::size_t m0 = n / 2;
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      double cnt = 0;
      for (std::size_t i = m0; i < n; ++i) {
        double x = static_cast<double>(i + 1);
        double y = x * levels[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        cnt += 1;
      }
      double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
      if (tail_width) {
        // Fit residual RMS doubles as the uncertainty proxy in slope mode.
        double icept = (sy - slope * sx) / cnt;
        double ss = 0;
        for (std::size_t i = m0; i < n; ++i) {
          double x = static_cast<double>(i + 1);
          double r = x * levels[i] - (slope * x + icept);
          ss += r * r;
        }
        *tail_width = std::max(2.0 * std::sqrt(ss / cnt), 1e-3);
      }
      return slope;
    }
  }
  return levels.back();
}

namespace {

bool segment_in_class(const OrbitSegment& seg, const ConstraintSpec& c) {
  switch (c.kind) {
    case ConstraintSpec::Kind::all: return true;
    case ConstraintSpec::Kind::good:
      return in_good(seg, {c.alpha, c.eta, c.omega_points});
    case ConstraintSpec::Kind::bad:
      return in_bad(seg, {c.alpha, c.eta, c.omega_points});
    case ConstraintSpec::Kind::d_alpha:
      return in_D_alpha(seg, c.omega_points, c.alpha);
  }
  return true;
}

double d_n_max(const std::vector<Complex>& a, const std::vector<Complex>& b, double stop_at) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
    if (m >= stop_at) return m;
  }
  return m;
}

void finish_estimate(PressureEstimate& est) {
  est.value = extrapolate(est.diagnostics, est.mode, &est.tail_width);
  est.cauchy_ok = est.tail_width < 0.02;
}

}  // namespace

double partition_sum(const RationalMap& f, const Potential& phi,
                     const std::vector<Complex>& candidates, int n, double epsilon,
                     const ConstraintSpec& constraint, bool* empty_class) {
  struct Cand {
    const OrbitSegment* seg;
    double weight_log;
  };
  std::vector<OrbitSegment> segs;
  segs.reserve(candidates.size());
  std::vector<Cand> pool;
  for (const auto& z : candidates) {
    OrbitSegment seg = OrbitSegment::make(f, z, n);
    if (!segment_in_class(seg, constraint)) continue;
    double s = 0.0;
    for (const auto& p : seg.points) s += phi(p);
    segs.push_back(std::move(seg));
    pool.push_back({nullptr, s});
  }
  for (std::size_t i = 0; i < segs.size(); ++i) pool[i].seg = &segs[i];
  if (empty_class) *empty_class = pool.empty();
  if (pool.empty()) return 0.0;

  std::stable_sort(pool.begin(), pool.end(), [](const Cand& a, const Cand& b) {
    if (a.weight_log != b.weight_log) return a.weight_log > b.weight_log;
    return lex_less(a.seg->start, b.seg->start);
  });

  std::vector<const OrbitSegment*> chosen;
  double lambda = 0.0;
  for (const auto& c : pool) {
    bool separated = true;
    for (const auto* s : chosen) {
      if (d_n_max(c.seg->points, s->points, epsilon) < epsilon) {
        separated = false;
        break;
      }
    }
    if (separated) {
      chosen.push_back(c.seg);
      lambda += std::exp(c.weight_log);
    }
  }
  return lambda;
}

PressureEstimate pressure_separated(const RationalMap& f, const Potential& phi, Complex anchor,
                                    int n_max, double epsilon, const ConstraintSpec& constraint,
                                    ExtrapolationMode mode, const Config& cfg) {
  PressureEstimate est;
  est.method = PressureMethod::separated;
  est.n = n_max;
  est.epsilon = epsilon;
  est.mode = mode;
  std::vector<Complex> leaves{anchor};
  bool warned_empty = false;
  for (int m = 1; m <= n_max; ++m) {
    std::vector<Complex> next;
    next.reserve(leaves.size() * static_cast<std::size_t>(f.degree()));
    for (const auto& p : leaves) {
      auto fiber = f.preimages(p, cfg, /*allow_degenerate=*/true);
      next.insert(next.end(), fiber.begin(), fiber.end());
    }
    leaves = std::move(next);
    if (leaves.size() > cfg.node_budget) throw NumericError("pressure_separated: node budget");
    bool empty = false;
    double lambda = partition_sum(f, phi, leaves, m, epsilon, constraint, &empty);
    if (empty) {
      warned_empty = true;
      est.diagnostics.push_back(-std::numeric_limits<double>::infinity());
    } else {
      est.diagnostics.push_back(std::log(lambda) / m);
    }
  }
  if (warned_empty) {
    est.note = "empty constrained candidate class at some depth; Lambda = 0 there";
    // Extrapolation over-infinite levels is meaningless; report the last finite value.
    double last = -std::numeric_limits<double>::infinity();
    for (double v : est.diagnostics)
      if (std::isfinite(v)) last = v;
    est.value = last;
    est.tail_width = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  finish_estimate(est);
  return est;
}

PressureEstimate pressure_tree(const RationalMap& f, const Potential& phi, Complex anchor, int n,
                               ExtrapolationMode mode, const Config& cfg) {
  if (n < 3) throw PreconditionError("pressure_tree: need n >= 3 for diagnostics");
  PressureEstimate est;
  est.method = PressureMethod::tree;
  est.n = n;
  est.mode = mode;

  // Reject anchors near a critical value; perturb on degenerate fibers.
  Complex w = anchor;
  for (int attempt = 0; attempt < 3; ++attempt) {
    try {
      f.preimages(w, cfg);
      break;
    } catch (const NumericError&) {
      w += Complex{1e-6, 1e-6};
      est.note = "anchor perturbed by 1e-6 (degenerate fiber)";
    }
  }

  // Depth-first accumulation of Z_m = sum e^{S_m phi} per level; storage O(depth * d).
  std::vector<double> z_level(static_cast<std::size_t>(n) + 1, 0.0);
  struct Frame {
    std::vector<Complex> fiber;
    std::size_t next;
    double s;
  };
  std::vector<Frame> stack;
  stack.push_back({f.preimages(w, cfg), 0, 0.0});
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (fr.next >= fr.fiber.size()) {
      stack.pop_back();
      continue;
    }
    Complex z = fr.fiber[fr.next++];
    double s = fr.s + phi(z);
    std::size_t depth = stack.size();
    z_level[depth] += std::exp(s);
    if (depth < static_cast<std::size_t>(n))
      stack.push_back({f.preimages(z, cfg, /*allow_degenerate=*/true), 0, s});
  }
  for (int m = 1; m <= n; ++m) est.diagnostics.push_back(std::log(z_level[static_cast<std::size_t>(m)]) / m);
  finish_estimate(est);
  return est;
}

PressureEstimate pressure_periodic(const RationalMap& f, const Potential& phi, int n,
                                   ExtrapolationMode mode, const Config& cfg) {
  if (n < 3) throw PreconditionError("pressure_periodic: need n >= 3 for diagnostics");
  PressureEstimate est;
  est.method = PressureMethod::periodic;
  est.n = n;
  est.mode = mode;
  std::size_t skipped = 0;
  std::vector<Complex> known;
  for (int m = 1; m <= n; ++m) {
    auto res = solve_periodic(f, m, cfg, known);
    for (const auto& orb : res.exact_orbits)
      if (orb.cls.kind == Stability::parabolic)
        for (const auto& p : orb.points)
          if (!p.infinite) known.push_back(p.value);
    double z_m = 0.0;
    for (const auto& atom : res.fixed_points_of_fn) {
      if (atom.z.infinite) {
        // Geometric potentials are singular at a superattracting fixed point;
        // constants contribute exactly.
        if (phi.kind() == Potential::Kind::constant)
          z_m += atom.multiplicity * std::exp(phi.constant_value() * m);
        else if (phi.kind() == Potential::Kind::geometric && std::abs(atom.deriv_n) > 1e-300)
          z_m += atom.multiplicity *
                 std::exp(-phi.geometric_t() * std::log(std::abs(atom.deriv_n)));
        else if (phi.kind() == Potential::Kind::geometric && phi.geometric_t() == 0.0)
          z_m += atom.multiplicity;
        else
          ++skipped;
        continue;
      }
      try {
        double s = birkhoff_sum(f, phi, atom.z.value, m).value;
        z_m += atom.multiplicity * std::exp(s);
      } catch (const NumericError&) {
        ++skipped;
      }
    }
    if (z_m <= 0.0)
      throw NumericError("pressure_periodic: empty periodic sum at depth " + std::to_string(m));
    est.diagnostics.push_back(std::log(z_m) / m);
  }
  if (skipped) est.note = std::to_string(skipped) + " atoms skipped (singular potential)";
  finish_estimate(est);
  return est;
}

PressureEstimate pressure_ulam(const RationalMap& f, const Potential& phi,
                               const JuliaSample& sample, int grid_resolution, int iterations,
                               const Config& cfg) {
  (void)cfg;
  if (sample.points.empty()) throw PreconditionError("pressure_ulam: empty sample");
  PressureEstimate est;
  est.method = PressureMethod::ulam;
  est.n = iterations;
  est.mode = ExtrapolationMode::last;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& z : sample.points) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  double pad = 1e-9 + 0.001 * std::max(xmax - xmin, ymax - ymin);
  xmin -= pad;
  ymin -= pad;
  xmax += pad;
  ymax += pad;
  double hx = (xmax - xmin) / grid_resolution, hy = (ymax - ymin) / grid_resolution;

  auto cell_of = [&](Complex z) -> long long {
    long long ix = static_cast<long long>((z.real() - xmin) / hx);
    long long iy = static_cast<long long>((z.imag() - ymin) / hy);
    if (ix < 0 || iy < 0 || ix >= grid_resolution || iy >= grid_resolution) return -1;
    return ix * grid_resolution + iy;
  };

  // Occupied cells, each represented by the sample point nearest its center.
  std::map<long long, std::size_t> rep;  // cell -> sample index
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    long long c = cell_of(sample.points[i]);
    if (c < 0) continue;
    auto it = rep.find(c);
    if (it == rep.end()) {
      rep[c] = i;
    } else {
      double cx = xmin + (static_cast<double>(c / grid_resolution) + 0.5) * hx;
      double cy = ymin + (static_cast<double>(c % grid_resolution) + 0.5) * hy;
      Complex center{cx, cy};
      if (std::abs(sample.points[i] - center) < std::abs(sample.points[it->second] - center))
        it->second = i;
    }
  }
  const std::size_t ncells = rep.size();
  if (ncells < 2) throw PreconditionError("pressure_ulam: fewer than 2 occupied cells");

  std::vector<long long> cells;
  std::vector<Complex> reps;
  for (const auto& [c, i] : rep) {
    cells.push_back(c);
    reps.push_back(sample.points[i]);
  }
  auto index_of = [&](long long c) -> long {
    auto it = std::lower_bound(cells.begin(), cells.end(), c);
    if (it == cells.end() || *it != c) return -1;
    return static_cast<long>(it - cells.begin());
  };

  std::size_t leaked = 0;
  std::vector<long> target(ncells, -1);
  std::vector<double> weight(ncells, 0.0);
  for (std::size_t i = 0; i < ncells; ++i) {
    weight[i] = std::exp(phi(reps[i]));
    long j = index_of(cell_of(f.eval_finite(reps[i])));
    if (j < 0)
      ++leaked;
    else
      target[i] = j;
  }

  std::vector<double> v(ncells, 1.0), nv(ncells, 0.0);
  double lambda = 0.0, prev_lambda = -1.0, osc = 0.0;
  int it = 0;
  for (; it < iterations; ++it) {
    std::fill(nv.begin(), nv.end(), 0.0);
    for (std::size_t i = 0; i < ncells; ++i)
      if (target[i] >= 0) nv[static_cast<std::size_t>(target[i])] += weight[i] * v[i];
    double norm = std::accumulate(nv.begin(), nv.end(), 0.0);
    if (norm <= 0.0) throw NumericError("pressure_ulam: operator collapsed to zero");
    lambda = norm / std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : nv) x /= norm;
    v = nv;
    for (auto& x : v) x *= static_cast<double>(ncells);
    est.diagnostics.push_back(std::log(lambda));
    if (it > 4) {
      osc = std::abs(std::log(lambda) - std::log(prev_lambda));
      if (osc < 1e-12) break;
    }
    prev_lambda = lambda;
  }
  while (est.diagnostics.size() < 3) est.diagnostics.push_back(std::log(lambda));
  est.value = est.diagnostics.back();
  est.tail_width = osc;
  est.cauchy_ok = osc < 1e-6;
  if (it == iterations && osc >= 1e-6)
    est.note = "power iteration did not settle; oscillation amplitude " + std::to_string(osc);
  if (leaked) est.note += (est.note.empty() ? "" : "; ") + std::to_string(leaked) + " cells leak mass";
  return est;
}

GapReport a_omega_vs_pressure(const RationalMap& f, const Potential& phi,
                              const OmegaSet& omega_set, Complex anchor, int n,
                              ExtrapolationMode mode, const Config& cfg) {
  GapReport rep;
  rep.a_omega_value = a_omega(omega_set, [&phi](Complex z) { return phi(z); });
  rep.estimate = pressure_tree(f, phi, anchor, n, mode, cfg);
  rep.pressure = rep.estimate.value;
  rep.margin = rep.estimate.tail_width;
  rep.gap = rep.a_omega_value < rep.pressure - rep.margin;
  return rep;
}

std::vector<PressureCurveRow> pressure_curve(const RationalMap& f,
                                             const std::vector<double>& t_values,
                                             const PressureCurveOptions& opts, const Config& cfg) {
  std::vector<PressureCurveRow> rows;
  auto fmap = std::make_shared<const RationalMap>(f);
  for (double t : t_values) {
    PressureCurveRow row;
    row.t = t;
    row.n = opts.n_tree;
    Potential phi = Potential::geometric(fmap, t);
    try {
      auto est = pressure_tree(f, phi, opts.anchor, opts.n_tree, opts.mode, cfg);
      row.p_tree = est.value;
      row.tail_width = est.tail_width;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    if (opts.n_periodic > 0) {
      try {
        row.p_periodic = pressure_periodic(f, phi, opts.n_periodic, opts.mode, cfg).value;
        row.has_periodic = true;
      } catch (const std::exception& e) {
        row.error += (row.error.empty() ? "" : "; ");
        row.error += e.what();
      }
    }
    if (opts.ulam_cells > 0 && opts.sample) {
      try {
        row.p_ulam = pressure_ulam(f, phi, *opts.sample, opts.ulam_cells, 400, cfg).value;
        row.has_ulam = true;
      } catch (const std::exception& e) {
        row.error += (row.error.empty() ? "" : "; ");
        row.error += e.what();
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

BowenRootResult bowen_root(const RationalMap& f, const OmegaSet& omega_set, Complex generic_anchor,
                           const BowenRootOptions& opts, const Config& cfg) {
  BowenRootResult res;
  res.tol = opts.tol;
  res.mode = opts.mode;
  res.n = opts.n;
  res.parabolic_mode = !omega_set.empty();
  res.anchor = res.parabolic_mode ? omega_set.points().front() : generic_anchor;

  auto fmap = std::make_shared<const RationalMap>(f);
  auto estimate = [&](double t) {
    Potential phi = Potential::geometric(fmap, t);
    double v = pressure_tree(f, phi, res.anchor, opts.n, opts.mode, cfg).value;
    res.evaluations.emplace_back(t, v);
    return v;
  };
  // Predicate: "past the root".  Parabolic regime: P below tol; else P < 0.
  auto past = [&](double t) {
    double v = estimate(t);
    return res.parabolic_mode ? (v < opts.tol) : (v < 0.0);
  };

  double lo = opts.t_lo, hi = opts.t_hi;
  if (past(lo)) throw NumericError("bowen_root: no bracket (P already below threshold at t_lo)");
  if (!past(hi)) throw NumericError("bowen_root: no bracket (P above threshold at t_hi)");
  while (hi - lo > opts.resolution) {
    double mid = 0.5 * (lo + hi);
    if (past(mid))
      hi = mid;
    else
      lo = mid;
  }
  res.h = 0.5 * (lo + hi);
  return res;
}

WeightedPointMeasure equilibrium_approx(const RationalMap& f, const Potential& phi, Complex anchor,
                                        int n, EquilibriumSource source, const Config& cfg) {
  WeightedPointMeasure out;
  std::vector<std::pair<Complex, double>> raw;  // (atom, log weight)
  if (source == EquilibriumSource::tree) {
    PreimageTree tree = preimage_tree(f, anchor, n, cfg);
    for (const auto& leaf : tree.leaves())
      raw.emplace_back(leaf, birkhoff_sum(f, phi, leaf, n).value);
  } else {
    auto res = solve_periodic(f, n, cfg);
    for (const auto& atom : res.fixed_points_of_fn) {
      if (atom.z.infinite) continue;  // finite-chart measure; noted below
      double s = birkhoff_sum(f, phi, atom.z.value, n).value;
      for (int k = 0; k < atom.multiplicity; ++k) raw.emplace_back(atom.z.value, s);
    }
    out.note = "periodic atoms (finite chart)";
  }
  if (raw.empty()) throw NumericError("equilibrium_approx: no atoms");
  double smax = -1e300;
  for (const auto& [z, s] : raw) smax = std::max(smax, s);
  double total = 0.0;
  for (const auto& [z, s] : raw) total += std::exp(s - smax);
  for (const auto& [z, s] : raw) out.atoms.emplace_back(z, std::exp(s - smax) / total);
  return out;
}

EquilibriumDiagnostics equilibrium_diagnostics(const Potential& phi,
                                               const WeightedPointMeasure& measure,
                                               const std::vector<Complex>& omega_points,
                                               double beta, const PressureEstimate& pressure) {
  EquilibriumDiagnostics diag;
  for (const auto& [z, w] : measure.atoms) {
    diag.integral += w * phi(z);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& om : omega_points) d = std::min(d, std::abs(z - om));
    if (d < 2.0 * beta) diag.omega_mass += w;
  }
  diag.entropy_estimate = pressure.value - diag.integral;
  diag.entropy_positive = diag.entropy_estimate > 0.0;
  diag.omega_mass_ok = diag.omega_mass < 0.5;
  if (omega_points.empty()) {
    diag.omega_mass = 0.0;
    diag.omega_mass_ok = true;
    diag.note = "Omega empty; omega_mass reported as 0";
  }
  return diag;
}

}  // namespace parapress
