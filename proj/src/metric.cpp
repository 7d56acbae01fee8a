#include "parapress/metric.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace parapress {

PostcriticalTruncation postcritical_truncation(const RationalMap& f, int N,
                                               const std::vector<Complex>& omega_points,
                                               const Config& cfg) {
  if (N < 1) throw PreconditionError("postcritical_truncation: N must be >= 1");
  PostcriticalTruncation out;
  out.omega_was_empty = omega_points.empty();
  auto push = [&](Complex p) {
    for (const auto& q : out.points)
      if (std::abs(p - q) < 1e-10) return;
    out.points.push_back(p);
  };
  for (const auto& c : f.critical_points(cfg)) {
    SpherePoint z = c;
    for (int k = 0; k < N; ++k) {
      z = f.evaluate(z);
      if (z.infinite || std::abs(z.value) > 1e12) {
        out.include_infinity = true;
        break;
      }
      push(z.value);
    }
  }
  for (const auto& w : omega_points) push(w);
  std::sort(out.points.begin(), out.points.end(), lex_less);
  return out;
}

namespace {

double dist_to_truncation(const PostcriticalTruncation& trunc, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : trunc.points) d = std::min(d, std::abs(z - p));
  if (trunc.include_infinity)
    d = std::min(d, 2.0 / std::sqrt(1.0 + std::norm(z)));
  return d;
}

double dist_to_omega(const std::vector<Complex>& omega_points, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& w : omega_points) d = std::min(d, std::abs(z - w));
  return d;
}

}  // namespace

double surrogate_density(const PostcriticalTruncation& trunc, Complex z) {
  double d = dist_to_truncation(trunc, z);
  if (d < 1e-14)
    throw NumericError("singular density: z coincides with a postcritical truncation point at " +
                       format_point(SpherePoint{z}));
  return 1.0 / d;
}

double density(const MilnorMetric& metric, Complex z) {
  if (dist_to_omega(metric.omega_points, z) <= metric.alpha) return metric.M;
  return surrogate_density(metric.truncation, z);
}

double derivative_norm(const MilnorMetric& metric, const RationalMap& f, Complex z) {
  Complex fz = f.eval_finite(z);
  return density(metric, fz) * f.abs_derivative(z) / density(metric, z);
}

double measure_expansion_r(const RationalMap& f, const PostcriticalTruncation& trunc,
                           const std::vector<Complex>& omega_points, double alpha,
                           const std::vector<Complex>& sample) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& z : sample) {
    if (dist_to_omega(omega_points, z) <= alpha) continue;
    Complex fz = f.eval_finite(z);
    if (dist_to_omega(omega_points, fz) <= alpha) continue;
    double norm = surrogate_density(trunc, fz) * f.abs_derivative(z) / surrogate_density(trunc, z);
    r = std::min(r, norm);
  }
  if (!std::isfinite(r))
    throw NumericError("measure_expansion_r: no sampled points on K(alpha) ∩ f^-1 K(alpha)");
  return r;
}

double choose_M(const RationalMap& f, double alpha, const std::vector<Complex>& omega_points,
                double r, const PostcriticalTruncation& trunc, bool* no_extra_preimages,
                const Config& cfg) {
  (void)alpha;
  if (omega_points.empty()) throw PreconditionError("choose_M: not parabolic (Omega empty)");
  double best = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& w : omega_points) {
    for (const auto& z : f.preimages(w, cfg, /*allow_degenerate=*/true)) {
      if (dist_to_omega(omega_points, z) < 1e-8) continue;  // the point of Omega itself
      found = true;
      best = std::max(best, r * surrogate_density(trunc, z) / f.abs_derivative(z));
    }
  }
  if (no_extra_preimages) *no_extra_preimages = !found;
  if (!found) return 2.0;  // 1 + safety margin, flagged via no_extra_preimages
  return best + 1.0;
}

double local_distance(const MilnorMetric& metric, Complex x, Complex y) {
  double d = std::abs(x - y);
  if (d > metric.alpha)
    throw PreconditionError("local_distance: |x-y| exceeds alpha (local contract only)");
  if (d == 0.0) return 0.0;
  return d * density(metric, 0.5 * (x + y));
}

namespace {

// Max nearest-neighbor distance via cell hashing; O(N) for clouds on a curve.
double mesh_proxy(const std::vector<Complex>& pts, double cell) {
  std::unordered_map<long long, std::vector<std::size_t>> grid;
  auto key = [cell](Complex z) {
    long long gx = static_cast<long long>(std::floor(z.real() / cell));
    long long gy = static_cast<long long>(std::floor(z.imag() / cell));
    return gx * 2000003LL + gy;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) grid[key(pts[i])].push_back(i);
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    long long gx = static_cast<long long>(std::floor(pts[i].real() / cell));
    long long gy = static_cast<long long>(std::floor(pts[i].imag() / cell));
    for (long long dx = -1; dx <= 1 && best > 0.0; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find((gx + dx) * 2000003LL + (gy + dy));
        if (it == grid.end()) continue;
        for (auto j : it->second)
          if (j != i) best = std::min(best, std::abs(pts[i] - pts[j]));
      }
    if (!std::isfinite(best)) best = cell;  // isolated in its 3x3 block
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

ExpansionReport verify_expansion(const MilnorMetric& metric, const RationalMap& f,
                                 const std::vector<Complex>& sample, double alpha) {
  ExpansionReport rep;
  rep.mesh_proxy = mesh_proxy(sample, alpha / 4.0);
  if (rep.mesh_proxy > alpha / 4.0)
    throw PreconditionError("verify_expansion: sample too sparse (nearest-neighbor proxy " +
                            std::to_string(rep.mesh_proxy) + " > alpha/4)");
  rep.r_min_on_K = std::numeric_limits<double>::infinity();
  rep.global_min = std::numeric_limits<double>::infinity();
  for (const auto& z : sample) {
    double norm = derivative_norm(metric, f, z);
    rep.global_min = std::min(rep.global_min, norm);
    if (norm <= 1.0) rep.violations.push_back(z);
    Complex fz = f.eval_finite(z);
    if (dist_to_omega(metric.omega_points, z) > alpha &&
        dist_to_omega(metric.omega_points, fz) > alpha) {
      ++rep.points_on_K;
      rep.r_min_on_K = std::min(rep.r_min_on_K, norm);
    }
  }
  return rep;
}

MetricCalibration calibrate_metric(const RationalMap& f, const OmegaSet& omega_set,
                                   const std::vector<Complex>& sample, const Config& cfg,
                                   std::vector<double> ladder) {
  if (omega_set.empty())
    throw PreconditionError("calibrate_metric: not parabolic (Omega empty within scope)");
  MetricCalibration cal;
  auto omega_pts = omega_set.points();
  auto trunc = postcritical_truncation(f, cfg.postcritical_N, omega_pts, cfg);

  for (double alpha : ladder) {
    cal.ladder_tried.push_back(alpha);
    double r;
    try {
      r = measure_expansion_r(f, trunc, omega_pts, alpha, sample);
    } catch (const NumericError&) {
      continue;
    }
    if (r <= 1.0) continue;
    bool no_extra = false;
    double M = choose_M(f, alpha, omega_pts, r, trunc, &no_extra, cfg);
    MilnorMetric metric{alpha, M, r, trunc, omega_pts};
    ExpansionReport rep = verify_expansion(metric, f, sample, alpha);
    if (rep.r_min_on_K > 1.0 && rep.violations.empty()) {
      cal.metric = std::move(metric);
      cal.report = std::move(rep);
      cal.no_extra_preimages = no_extra;
      return cal;
    }
  }
  throw NumericError("calibrate_metric: no alpha in the ladder verified expansion");
}

}  // namespace parapress
