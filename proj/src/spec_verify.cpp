#include "parapress/spec_verify.hpp"

#include <algorithm>
#include <cmath>

namespace parapress {

namespace {

std::vector<Complex> greedy_net(const std::vector<Complex>& pts, double sep, std::size_t cap) {
  std::vector<Complex> net;
  for (const auto& p : pts) {
    bool covered = false;
    for (const auto& c : net)
      if (std::abs(p - c) < sep) {
        covered = true;
        break;
      }
    if (!covered) {
      net.push_back(p);
      if (net.size() >= cap) break;
    }
  }
  return net;
}

double d_n(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TransitionEstimate estimate_transition_time(const RationalMap& f, double epsilon,
                                            const JuliaSample& sample, const Config& cfg,
                                            int cap) {
  TransitionEstimate est;
  est.epsilon = epsilon;
  auto net = greedy_net(sample.points, epsilon / 2.0, 4096);
  est.net_size = net.size();
  if (net.empty()) throw PreconditionError("estimate_transition_time: empty sample");

  // Grow each net point's preimage tree level by level; at each depth record the
  // fraction of (tree, ball) pairs already hit.
  std::vector<std::vector<Complex>> trees(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) trees[i] = {net[i]};
  std::vector<std::vector<char>> hit(net.size(), std::vector<char>(net.size(), 0));

  for (int depth = 1; depth <= cap; ++depth) {
    bool all = true;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < net.size(); ++i) {
      std::vector<Complex> next;
      next.reserve(trees[i].size() * static_cast<std::size_t>(f.degree()));
      for (const auto& p : trees[i]) {
        auto fiber = f.preimages(p, cfg, /*allow_degenerate=*/true);
        next.insert(next.end(), fiber.begin(), fiber.end());
      }
      trees[i] = std::move(next);
      for (std::size_t j = 0; j < net.size(); ++j) {
        if (!hit[i][j]) {
          for (const auto& p : trees[i])
            if (std::abs(p - net[j]) < epsilon) {
              hit[i][j] = 1;
              break;
            }
        }
        if (hit[i][j])
          ++hits;
        else
          all = false;
      }
    }
    est.coverage_by_depth.push_back(static_cast<double>(hits) /
                                    static_cast<double>(net.size() * net.size()));
    if (all) {
      est.N = std::max(depth, 1);
      return est;
    }
    if (trees[0].size() * net.size() > cfg.node_budget)
      throw NumericError("estimate_transition_time: node budget exceeded before certifying");
  }
  est.capped = true;
  est.N = cap;
  return est;
}

GluingResult glue(const RationalMap& f, const std::vector<OrbitSegment>& segments, double epsilon,
                  int n_eps, double alpha, const std::vector<Complex>& omega_points,
                  const Config& cfg) {
  GluingResult res;
  res.tau = n_eps;
  if (segments.empty()) throw PreconditionError("glue: no segments");
  for (const auto& seg : segments)
    if (!in_D_alpha(seg, omega_points, alpha))
      throw PreconditionError("glue: a segment does not end in E(alpha)");

  if (segments.size() == 1) {
    res.ok = true;
    res.y = segments[0].start;
    res.shadow_distances = {0.0};
    res.branch_codes = {""};
    return res;
  }

  struct Node {
    Complex z;
    std::size_t parent;
    int digit;
  };

  Complex y = segments.back().start;
  res.shadow_distances.assign(segments.size(), 0.0);
  res.branch_codes.assign(segments.size(), "");
  res.nearest_miss = std::numeric_limits<double>::infinity();

  for (std::size_t i = segments.size() - 1; i-- > 0;) {
    const auto& seg = segments[i];
    const int depth = n_eps + seg.length;
    if (std::pow(static_cast<double>(f.degree()), depth) > static_cast<double>(cfg.node_budget))
      throw NumericError("glue: link tree d^(N+n) exceeds the node budget");

    std::vector<std::vector<Node>> levels(static_cast<std::size_t>(depth) + 1);
    levels[0] = {{y, 0, -1}};
    bool dead = false;
    for (int level = 1; level <= depth; ++level) {
      const auto& prev = levels[static_cast<std::size_t>(level - 1)];
      auto& cur = levels[static_cast<std::size_t>(level)];
      for (std::size_t pi = 0; pi < prev.size(); ++pi) {
        auto fiber = f.preimages(prev[pi].z, cfg, /*allow_degenerate=*/true);
        for (std::size_t b = 0; b < fiber.size(); ++b) {
          if (level > n_eps) {
            // Constrained zone: node must track the segment's orbit.
            int j = depth - level;
            if (std::abs(fiber[b] - seg.points[static_cast<std::size_t>(j)]) >= epsilon) continue;
          }
          cur.push_back({fiber[b], pi, static_cast<int>(b)});
        }
      }
      if (cur.empty()) {
        dead = true;
        break;
      }
    }
    if (dead) {
      res.ok = false;
      res.note = "no candidate survived pruning on link " + std::to_string(i);
      return res;
    }

    // Deterministic first leaf passing the exact forward check.
    const auto& leaves = levels.back();
    long chosen = -1;
    double best_miss = std::numeric_limits<double>::infinity();
    for (std::size_t li = 0; li < leaves.size(); ++li) {
      double d = d_n(f.orbit(leaves[li].z, seg.length), seg.points);
      if (d < best_miss) best_miss = d;
      if (d < epsilon) {
        chosen = static_cast<long>(li);
        break;
      }
    }
    if (chosen < 0) {
      res.ok = false;
      res.nearest_miss = best_miss;
      res.note = "no leaf epsilon-shadows segment " + std::to_string(i) +
                 " (nearest miss " + std::to_string(best_miss) + ")";
      return res;
    }

    // Reconstruct the branch code (deepest step first).
    std::string code;
    std::size_t idx = static_cast<std::size_t>(chosen);
    for (int level = depth; level >= 1; --level) {
      code.push_back(static_cast<char>('0' + levels[static_cast<std::size_t>(level)][idx].digit));
      idx = levels[static_cast<std::size_t>(level)][idx].parent;
    }
    res.branch_codes[i] = code;
    res.shadow_distances[i] = d_n(f.orbit(leaves[static_cast<std::size_t>(chosen)].z, seg.length),
                                  seg.points);
    y = leaves[static_cast<std::size_t>(chosen)].z;
  }

  res.y = y;
  // The last segment is shadowed exactly (y_k = x_k); record the others' final
  // distances by one full forward verification.
  res.ok = true;
  Complex z = res.y;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    res.shadow_distances[i] = d_n(f.orbit(z, segments[i].length), segments[i].points);
    for (int s = 0; s < segments[i].length + res.tau; ++s) z = f.eval_finite(z);
  }
  return res;
}

bool verify_shadowing(const RationalMap& f, const GluingResult& result,
                      const std::vector<OrbitSegment>& segments, double epsilon) {
  if (!result.ok) return false;
  Complex z = result.y;
  for (const auto& seg : segments) {
    if (d_n(f.orbit(z, seg.length), seg.points) >= epsilon) return false;
    for (int s = 0; s < seg.length + result.tau; ++s) z = f.eval_finite(z);
  }
  return true;
}

ContractionProfile contraction_profile(const RationalMap& f, const OrbitSegment& seg, Complex y,
                                       double epsilon, double eta, const MilnorMetric& metric) {
  ContractionProfile prof;
  const int n = seg.length;
  std::vector<Complex> yorb = f.orbit(y, n);
  for (int l = 0; l < n; ++l) {
    double d = local_distance(metric, seg.points[static_cast<std::size_t>(l)],
                              yorb[static_cast<std::size_t>(l)]);
    double bound = std::pow(metric.r_alpha > 0 ? metric.r_alpha : 1.0, -eta * (n - l)) * epsilon;
    prof.distances.push_back(d);
    prof.bounds.push_back(bound);
    if (d > bound) ++prof.violations;
  }
  return prof;
}

std::vector<Complex> pullback_partner(const RationalMap& f, const OrbitSegment& seg,
                                      Complex endpoint_offset, double epsilon, const Config& cfg) {
  const int n = seg.length;
  std::vector<Complex> partner(static_cast<std::size_t>(n));
  partner[static_cast<std::size_t>(n - 1)] = seg.points.back() + endpoint_offset;
  for (int j = n - 2; j >= 0; --j) {
    std::vector<Complex> fiber;
    try {
      fiber = f.preimages(partner[static_cast<std::size_t>(j + 1)], cfg);
    } catch (const NumericError&) {
      return {};
    }
    // The segment's own branch: nearest preimage to the orbit point.
    Complex best = fiber[0];
    for (const auto& q : fiber)
      if (std::abs(q - seg.points[static_cast<std::size_t>(j)]) <
          std::abs(best - seg.points[static_cast<std::size_t>(j)]))
        best = q;
    partner[static_cast<std::size_t>(j)] = best;
  }
  for (int j = 0; j < n; ++j)
    if (std::abs(partner[static_cast<std::size_t>(j)] - seg.points[static_cast<std::size_t>(j)]) >=
        epsilon)
      return {};
  return partner;
}

BowenVariationReport bowen_variation(const RationalMap& f, const Potential& phi,
                                     const std::vector<OrbitSegment>& good_segments,
                                     double epsilon, double eta, double holder_K, double holder_a,
                                     double r, std::uint64_t seed, const Config& cfg) {
  BowenVariationReport rep;
  Rng rng(seed);
  for (const auto& seg : good_segments) {
    Complex offset = 0.5 * epsilon * rng.unit();
    auto partner = pullback_partner(f, seg, offset, epsilon, cfg);
    if (partner.empty()) {
      ++rep.skipped;
      continue;
    }
    ++rep.trials;
    double sx = 0.0, sy = 0.0;
    for (int j = 0; j < seg.length; ++j) {
      sx += phi(seg.points[static_cast<std::size_t>(j)]);
      sy += phi(partner[static_cast<std::size_t>(j)]);
    }
    rep.sup_variation = std::max(rep.sup_variation, std::abs(sx - sy));
  }
  rep.bound = holder_K * std::pow(epsilon, holder_a) / (1.0 - std::pow(r, -eta * holder_a));
  rep.within_bound = rep.sup_variation <= rep.bound;
  return rep;
}

std::vector<OrbitSegment> harvest_good_segments(const RationalMap& f, const JuliaSample& sample,
                                                int length, const DecompositionParams& params,
                                                std::size_t count, std::uint64_t seed) {
  std::vector<OrbitSegment> out;
  Rng rng(seed);
  std::size_t tries = 0;
  const std::size_t cap = count * 4000 + 10000;
  while (out.size() < count && tries++ < cap) {
    Complex z = sample.points[rng.below(sample.points.size())];
    auto seg = OrbitSegment::make(f, z, length);
    if (in_good(seg, params)) out.push_back(std::move(seg));
  }
  if (out.size() < count)
    throw NumericError("harvest_good_segments: found only " + std::to_string(out.size()) +
                       " of " + std::to_string(count));
  return out;
}

std::vector<OrbitSegment> harvest_D_segments(const RationalMap& f, const JuliaSample& sample,
                                             int length, double alpha,
                                             const std::vector<Complex>& omega_points,
                                             std::size_t count, std::uint64_t seed) {
  std::vector<OrbitSegment> out;
  Rng rng(seed);
  std::size_t tries = 0;
  const std::size_t cap = count * 4000 + 10000;
  while (out.size() < count && tries++ < cap) {
    Complex z = sample.points[rng.below(sample.points.size())];
    auto seg = OrbitSegment::make(f, z, length);
    if (in_D_alpha(seg, omega_points, alpha)) out.push_back(std::move(seg));
  }
  if (out.size() < count)
    throw NumericError("harvest_D_segments: found only " + std::to_string(out.size()) + " of " +
                       std::to_string(count));
  return out;
}

}  // namespace parapress
