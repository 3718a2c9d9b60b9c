#pragma once

// Brute-force reference computations shared by the unit and acceptance tests.
// Each one recomputes a quantity from its definition without touching the
// library's fast paths.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "csrstat/measure.hpp"

namespace oracle {

using csrstat::Coord;
using csrstat::PointSample;
using csrstat::VoxelGrid;
using csrstat::Window;

inline Coord voxel_centre(const Window& w, std::size_t i, std::size_t j, std::size_t k) {
  const double l = w.voxel_len();
  return {(i + 0.5) * l, (j + 0.5) * l, w.dim() == 3 ? (k + 0.5) * l : 0.0};
}

/// K(r) for a voxel grid straight from the double sum over distinct voxels.
inline std::vector<double> kbar_direct(const VoxelGrid& g, const std::vector<double>& radii) {
  const Window& w = g.window();
  struct Mass {
    Coord c;
    double v;
  };
  std::vector<Mass> masses;
  double total = 0.0;
  std::size_t active = 0;
  for (std::size_t i = 0; i < w.extent(0); ++i)
    for (std::size_t j = 0; j < w.extent(1); ++j)
      for (std::size_t k = 0; k < w.extent(2); ++k) {
        const std::size_t f = w.index(i, j, k);
        if (!g.active(f)) continue;
        ++active;
        total += g[f];
        if (g[f] != 0.0) masses.push_back({voxel_centre(w, i, j, k), g[f]});
      }
  const double volume = static_cast<double>(active) * std::pow(w.voxel_len(), w.dim());
  const double lambda = total / volume;
  std::vector<double> K(radii.size(), 0.0);
  for (std::size_t a = 0; a < masses.size(); ++a)
    for (std::size_t b = 0; b < masses.size(); ++b) {
      if (a == b) continue;
      const double dx = masses[a].c[0] - masses[b].c[0], dy = masses[a].c[1] - masses[b].c[1],
                   dz = masses[a].c[2] - masses[b].c[2];
      const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
      for (std::size_t r = 0; r < radii.size(); ++r)
        if (d <= radii[r] * (1.0 + 1e-12)) K[r] += masses[a].v * masses[b].v;
    }
  for (double& k : K) k /= lambda * lambda * volume;
  return K;
}

/// Weighted classic estimator: sum over ordered pairs x != y of w_x w_y [d <= r] / (lambda^2 vol).
inline std::vector<double> weighted_classic(const std::vector<Coord>& pts, const std::vector<double>& weights,
                                            double volume, const std::vector<double>& radii) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double lambda = total / volume;
  std::vector<double> K(radii.size(), 0.0);
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b) {
      if (a == b) continue;
      const double dx = pts[a][0] - pts[b][0], dy = pts[a][1] - pts[b][1], dz = pts[a][2] - pts[b][2];
      const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
      for (std::size_t r = 0; r < radii.size(); ++r)
        if (d <= radii[r]) K[r] += weights[a] * weights[b];
    }
  for (double& k : K) k /= lambda * lambda * volume;
  return K;
}

/// Exact integral of max(h - 1, 0) for the polyline through (x_i, h_i): each
/// segment is cut at its crossing with 1 and the clipped part integrated as a
/// triangle or trapezoid.
inline double area_above_one(const std::vector<double>& h, const std::vector<double>& x) {
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double x0 = x[i], x1 = x[i + 1], a = h[i] - 1.0, b = h[i + 1] - 1.0;
    if (a <= 0.0 && b <= 0.0) continue;
    if (a >= 0.0 && b >= 0.0) {
      area += (x1 - x0) * (a + b) / 2.0;
      continue;
    }
    const double xc = x0 + (x1 - x0) * a / (a - b); // zero of the linear interpolant
    area += a > 0.0 ? (xc - x0) * a / 2.0 : (x1 - xc) * b / 2.0;
  }
  return area;
}

/// Dense midpoint rule for the same integral (independent of crossing logic).
inline double area_above_one_numeric(const std::vector<double>& h, const std::vector<double>& x, int per_segment) {
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double dx = (x[i + 1] - x[i]) / per_segment;
    for (int s = 0; s < per_segment; ++s) {
      const double t = (s + 0.5) / per_segment;
      area += std::max(0.0, h[i] + t * (h[i + 1] - h[i]) - 1.0) * dx;
    }
  }
  return area;
}

/// One-tailed Mann-Whitney p from the U statistic (pairwise comparisons,
/// ties 1/2) over every split of the pooled sample.
inline double mann_whitney_bruteforce(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size(), na = a.size();
  auto u_of = [&](std::uint32_t mask) {
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1u) continue;
        u += pooled[i] > pooled[j] ? 1.0 : pooled[i] == pooled[j] ? 0.5 : 0.0;
      }
    }
    return u;
  };
  const double u_obs = u_of((1u << na) - 1u);
  std::size_t hits = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != na) continue;
    ++total;
    if (u_of(mask) >= u_obs - 1e-9) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

/// PMF of sum_m w_m N_m with N_m ~ Poisson(alpha_m) on the lattice of
/// multiples of `unit` (every weight must be an integer multiple of it).
inline std::vector<double> wsp_marginal_pmf(const std::vector<double>& weights, const std::vector<double>& alphas,
                                            double unit, std::size_t support) {
  std::vector<double> pmf(support, 0.0);
  pmf[0] = 1.0;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    const auto step = static_cast<std::size_t>(std::llround(weights[m] / unit));
    std::vector<double> next(support, 0.0);
    for (std::size_t k = 0; k * step < support; ++k) {
      const double p = std::exp(k * std::log(alphas[m]) - alphas[m] - std::lgamma(k + 1.0));
      if (p == 0.0 && k > alphas[m]) break;
      for (std::size_t s = 0; s + k * step < support; ++s) next[s + k * step] += p * pmf[s];
    }
    pmf.swap(next);
  }
  return pmf;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double tv = 0.0;
  for (std::size_t i = 0; i < std::max(p.size(), q.size()); ++i)
    tv += std::abs((i < p.size() ? p[i] : 0.0) - (i < q.size() ? q[i] : 0.0));
  return tv / 2.0;
}

inline double relative_error(double got, double want) {
  const double scale = std::max(std::abs(got), std::abs(want));
  return scale == 0.0 ? 0.0 : std::abs(got - want) / scale;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace oracle
