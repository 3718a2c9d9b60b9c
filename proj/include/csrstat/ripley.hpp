#pragma once

// Ripley K, L and H estimation.
//
//   k_bar                 convolution estimator for voxel grids (any nonnegative measure)
//   k_point_classic       biased point estimator normalised by the window volume
//   k_hat_edge_corrected  point estimator weighted by the window self-overlap
//
// All estimators report K in length units^d and derive L and H with the CSR
// normalisation L(r) = (K(r) / c_d)^(1/d), H(r) = L(r) - r.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "csrstat/autocorrelation.hpp"
#include "csrstat/errors.hpp"
#include "csrstat/measure.hpp"

namespace csrstat {

/// Strictly increasing, nonnegative, finite radii in length units.
class RadiiGrid {
public:
  RadiiGrid() = default;

  explicit RadiiGrid(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.empty()) throw InputError("radii grid is empty");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      if (!std::isfinite(radii_[i]) || radii_[i] < 0.0) throw InputError("radii must be finite and nonnegative");
      if (i > 0 && !(radii_[i] > radii_[i - 1])) throw InputError("radii must be strictly increasing");
    }
  }

  /// 0, step, 2*step, ... up to and including r_max (within round-off).
  static RadiiGrid uniform(double r_max, double step) {
    if (!(step > 0.0) || !(r_max >= 0.0)) throw InputError("radius step must be positive and r_max nonnegative");
    std::vector<double> r;
    const auto n = static_cast<std::size_t>(std::floor(r_max / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) r.push_back(static_cast<double>(i) * step);
    return RadiiGrid(std::move(r));
  }

  std::span<const double> values() const noexcept { return radii_; }
  std::size_t size() const noexcept { return radii_.size(); }
  double operator[](std::size_t i) const noexcept { return radii_[i]; }
  double back() const noexcept { return radii_.back(); }

  /// Index of the first radius r with r^2 >= d2, or size() if none. A relative
  /// slack keeps lags lying exactly on a radius (e.g. sqrt(13)) from rounding out.
  std::size_t first_covering(double d2) const noexcept {
    auto it = std::lower_bound(radii_.begin(), radii_.end(), d2,
                               [](double r, double x) { return r * r * (1.0 + kCoverSlack) < x; });
    return static_cast<std::size_t>(it - radii_.begin());
  }

  friend bool operator==(const RadiiGrid&, const RadiiGrid&) = default;

private:
  static constexpr double kCoverSlack = 1e-12;
  std::vector<double> radii_;
};

struct RipleyCurves {
  RadiiGrid radii;
  std::vector<double> K;
  std::vector<double> L;
  std::vector<double> H;
  double lambda = 0.0;
  double c_bar = 0.0; ///< diagonal term sum_n phi(v_n)^2 / (lambda^2 nu(W)); 0 for point estimators
};

/// Volume constant c_d with nu(B(o, r)) = c_d r^d.
inline double unit_ball_volume(int d) {
  switch (d) {
  case 2: return std::numbers::pi;
  case 3: return 4.0 * std::numbers::pi / 3.0;
  default: throw InputError("unsupported dimension " + std::to_string(d));
  }
}

inline double ball_volume(int d, double r) {
  if (!(r >= 0.0)) throw InputError("ball radius must be nonnegative");
  return unit_ball_volume(d) * std::pow(r, d);
}

/// Volume of W intersected with W translated by t, for a rectangular window.
inline double edge_overlap(const Window& window, const Coord& t) {
  double v = 1.0;
  for (int a = 0; a < window.dim(); ++a)
    v *= std::max(0.0, window.length(a) - std::abs(t[static_cast<std::size_t>(a)]));
  return v;
}

inline double edge_overlap(const VoxelGrid& grid, const Coord& t) {
  if (grid.has_mask()) throw InputError("analytic overlap requires rectangular W");
  return edge_overlap(grid.window(), t);
}

struct LHCurves {
  std::vector<double> L;
  std::vector<double> H;
};

/// L(r) = (K(r) / c_d)^(1/d) and H(r) = L(r) - r; both are 0 at r = 0.
inline LHCurves l_h_from_k(std::span<const double> K, const RadiiGrid& radii, int d) {
  if (K.size() != radii.size()) throw InputError("K and radii lengths differ");
  const double c = unit_ball_volume(d);
  LHCurves out{std::vector<double>(K.size()), std::vector<double>(K.size())};
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (!(K[i] >= 0.0)) throw InputError("negative K value");
    const double r = radii[i];
    if (r == 0.0) continue;
    out.L[i] = d == 2 ? std::sqrt(K[i] / c) : std::cbrt(K[i] / c);
    out.H[i] = out.L[i] - r;
  }
  return out;
}

namespace detail {

inline RipleyCurves finish_curves(const RadiiGrid& radii, std::vector<double> K, int d, double lambda, double c_bar) {
  auto lh = l_h_from_k(K, radii, d);
  return {radii, std::move(K), std::move(lh.L), std::move(lh.H), lambda, c_bar};
}

/// Turns per-bucket sums into cumulative curve values scaled by `norm`.
inline std::vector<double> cumulate(std::vector<double> buckets, std::size_t n, double norm) {
  std::vector<double> K(n, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += buckets[i];
    K[i] = acc * norm;
  }
  return K;
}

inline void require_pairs(const PointSample& points) {
  if (points.size() < 2) throw InputError("K estimation needs at least 2 points");
}

inline double squared_distance(const Coord& a, const Coord& b) noexcept {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

} // namespace detail

/// Convolution estimator for a voxel grid:
///   K(r) = (sum_{n1,n2: |c_n1 - c_n2| <= r} phi_n1 phi_n2 - sum_n phi_n^2) / (lambda^2 nu(W))
/// with lambda = phi(W) / nu(W). The pair sum is read off the FFT
/// autocorrelation, so K(0) is exactly zero.
inline RipleyCurves k_bar(const VoxelGrid& grid, const RadiiGrid& radii) {
  const auto [total, lambda] = total_and_intensity(grid);
  (void)total;
  if (radii.back() > grid.window().diameter() * (1.0 + 1e-12))
    throw InputError("radius exceeds the window diameter");
  const Autocorrelation ac = autocorrelate(grid.window(), grid.values(), radii.back());
  std::vector<double> buckets(radii.size() + 1, 0.0);
  for (const LagValue& lag : ac.lags) buckets[radii.first_covering(lag.dist2)] += lag.value;
  const double norm = 1.0 / (lambda * lambda * grid.observed_volume());
  return detail::finish_curves(radii, detail::cumulate(std::move(buckets), radii.size(), norm), grid.dim(), lambda,
                               ac.zero_lag * norm);
}

/// K(r) = (1 / (lambda^2 nu(W))) sum over ordered pairs x != y of [d(x, y) <= r],
/// lambda = |points| / nu(W).
inline RipleyCurves k_point_classic(const PointSample& points, const RadiiGrid& radii) {
  detail::require_pairs(points);
  const double volume = points.volume();
  const double lambda = static_cast<double>(points.size()) / volume;
  const auto pts = points.points();
  std::vector<double> buckets(radii.size() + 1, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      buckets[radii.first_covering(detail::squared_distance(pts[i], pts[j]))] += 2.0;
  const double norm = 1.0 / (lambda * lambda * volume);
  return detail::finish_curves(radii, detail::cumulate(std::move(buckets), radii.size(), norm), points.dim(), lambda,
                               0.0);
}

/// Edge-corrected estimator: each pair x != y with d(x, y) <= r contributes
/// 1 / (lambda^2 nu(W intersect (W + x - y))).
inline RipleyCurves k_hat_edge_corrected(const PointSample& points, const RadiiGrid& radii) {
  detail::require_pairs(points);
  const double lambda = static_cast<double>(points.size()) / points.volume();
  const auto pts = points.points();
  std::vector<double> buckets(radii.size() + 1, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const std::size_t b = radii.first_covering(detail::squared_distance(pts[i], pts[j]));
      if (b == radii.size()) continue;
      const Coord t{pts[i][0] - pts[j][0], pts[i][1] - pts[j][1], pts[i][2] - pts[j][2]};
      const double overlap = edge_overlap(points.window(), t);
      if (!(overlap > 0.0)) throw NumericalError("pair separation exceeds window");
      buckets[b] += 2.0 / overlap;
    }
  return detail::finish_curves(radii, detail::cumulate(std::move(buckets), radii.size(), 1.0 / (lambda * lambda)),
                               points.dim(), lambda, 0.0);
}

} // namespace csrstat
