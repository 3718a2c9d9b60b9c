#pragma once

// Spatially quantized observations of a random measure: a rectangular window
// partitioned into cubical voxels, a grid of nonnegative voxel masses with an
// optional in-window mask, and raw point samples.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csrstat/errors.hpp"

namespace csrstat {

using Coord = std::array<double, 3>;

/// Rectangular observation window measured in voxels of side `voxel_len`.
/// Unused trailing axes (2D windows) have extent 1.
class Window {
public:
  Window() = default;

  Window(std::span<const std::size_t> extent, double voxel_len) : voxel_len_(voxel_len) {
    if (extent.size() != 2 && extent.size() != 3)
      throw InputError("window dimension must be 2 or 3, got " + std::to_string(extent.size()));
    if (!(voxel_len > 0.0) || !std::isfinite(voxel_len))
      throw InputError("voxel length must be positive and finite");
    dim_ = static_cast<int>(extent.size());
    for (std::size_t i = 0; i < extent.size(); ++i) {
      if (extent[i] == 0) throw InputError("window extent must be positive on every axis");
      extent_[i] = extent[i];
    }
  }

  Window(std::initializer_list<std::size_t> extent, double voxel_len)
      : Window(std::span<const std::size_t>(extent.begin(), extent.size()), voxel_len) {}

  int dim() const noexcept { return dim_; }
  double voxel_len() const noexcept { return voxel_len_; }
  std::size_t extent(int axis) const noexcept { return extent_[static_cast<std::size_t>(axis)]; }
  std::vector<std::size_t> extents() const { return {extent_.begin(), extent_.begin() + dim_}; }

  /// Side length of the window along `axis` in length units.
  double length(int axis) const noexcept { return static_cast<double>(extent(axis)) * voxel_len_; }

  std::size_t voxel_count() const noexcept { return extent_[0] * extent_[1] * extent_[2]; }

  /// Volume of one voxel, l^d.
  double voxel_volume() const noexcept { return std::pow(voxel_len_, dim_); }

  /// Euclidean diameter of the window in length units.
  double diameter() const noexcept {
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) s += length(a) * length(a);
    return std::sqrt(s);
  }

  /// Row-major flat index; the first axis varies slowest.
  std::size_t index(std::size_t i, std::size_t j, std::size_t k = 0) const noexcept {
    return (i * extent_[1] + j) * extent_[2] + k;
  }

  /// Centre of voxel (i, j, k) in length units: (idx + 0.5) * l per axis.
  Coord centre(std::size_t flat) const noexcept {
    const std::size_t k = flat % extent_[2];
    const std::size_t j = (flat / extent_[2]) % extent_[1];
    const std::size_t i = flat / (extent_[1] * extent_[2]);
    Coord c{(static_cast<double>(i) + 0.5) * voxel_len_, (static_cast<double>(j) + 0.5) * voxel_len_, 0.0};
    if (dim_ == 3) c[2] = (static_cast<double>(k) + 0.5) * voxel_len_;
    return c;
  }

  friend bool operator==(const Window& a, const Window& b) noexcept {
    return a.dim_ == b.dim_ && a.extent_ == b.extent_ && a.voxel_len_ == b.voxel_len_;
  }

private:
  int dim_ = 2;
  std::array<std::size_t, 3> extent_{1, 1, 1};
  double voxel_len_ = 1.0;
};

/// Quantized observation of a random measure: one nonnegative mass per voxel.
///
/// Masked-out voxels are forced to zero on construction and do not count
/// toward the active volume. Immutable after construction.
class VoxelGrid {
public:
  VoxelGrid(Window window, std::vector<double> values,
            std::optional<std::vector<std::uint8_t>> mask = std::nullopt)
      : window_(std::move(window)), values_(std::move(values)), mask_(std::move(mask)) {
    const std::size_t n = window_.voxel_count();
    if (values_.size() != n)
      throw InputError("grid has " + std::to_string(values_.size()) + " values, window needs " +
                       std::to_string(n));
    for (double v : values_)
      if (!std::isfinite(v) || v < 0.0) throw InputError("grid values must be finite and nonnegative");
    if (mask_) {
      if (mask_->size() != n) throw InputError("mask shape does not match grid");
      active_ = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if ((*mask_)[i]) {
          (*mask_)[i] = 1;
          ++active_;
        } else {
          values_[i] = 0.0;
        }
      }
      if (active_ == 0) throw InputError("mask selects no voxels");
    } else {
      active_ = n;
    }
  }

  const Window& window() const noexcept { return window_; }
  int dim() const noexcept { return window_.dim(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  bool has_mask() const noexcept { return mask_.has_value(); }
  const std::optional<std::vector<std::uint8_t>>& mask() const noexcept { return mask_; }
  bool active(std::size_t i) const noexcept { return !mask_ || (*mask_)[i] != 0; }

  /// Number of in-window voxels, N_active.
  std::size_t active_count() const noexcept { return active_; }

  /// Flat indices of the in-window voxels in ascending order.
  std::vector<std::size_t> active_indices() const {
    std::vector<std::size_t> out;
    out.reserve(active_);
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (active(i)) out.push_back(i);
    return out;
  }

  /// Lebesgue volume of the observation region, N_active * l^d.
  double observed_volume() const noexcept {
    return static_cast<double>(active_) * window_.voxel_volume();
  }

  /// Same window and mask, new values.
  VoxelGrid with_values(std::vector<double> values) const { return VoxelGrid(window_, std::move(values), mask_); }

  friend bool operator==(const VoxelGrid& a, const VoxelGrid& b) noexcept {
    return a.window_ == b.window_ && a.values_ == b.values_ && a.mask_ == b.mask_;
  }

private:
  Window window_;
  std::vector<double> values_;
  std::optional<std::vector<std::uint8_t>> mask_;
  std::size_t active_ = 0;
};

/// Point-process observation inside a rectangular window.
class PointSample {
public:
  PointSample(Window window, std::vector<Coord> points) : window_(std::move(window)), points_(std::move(points)) {
    for (const Coord& p : points_) {
      for (int a = 0; a < window_.dim(); ++a) {
        const double x = p[static_cast<std::size_t>(a)];
        if (!std::isfinite(x) || x < 0.0 || x > window_.length(a))
          throw InputError("point coordinate outside the window");
      }
      if (window_.dim() == 2 && p[2] != 0.0) throw InputError("2D point with nonzero z coordinate");
    }
  }

  const Window& window() const noexcept { return window_; }
  int dim() const noexcept { return window_.dim(); }
  std::span<const Coord> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  /// Window volume in length units.
  double volume() const noexcept {
    return static_cast<double>(window_.voxel_count()) * window_.voxel_volume();
  }

private:
  Window window_;
  std::vector<Coord> points_;
};

struct VoxelizeResult {
  VoxelGrid grid;
  /// True when some voxel holds more than one point, i.e. the grid is not a
  /// simple 0/1 occupancy pattern.
  bool multi_occupancy = false;
};

namespace detail {

inline std::size_t bin_index(double x, double l, std::size_t n) {
  const auto k = static_cast<std::size_t>(std::floor(x / l));
  return k >= n ? n - 1 : k; // upper boundary clamps into the last voxel
}

} // namespace detail

/// Counts points per half-open voxel [k*l, (k+1)*l). The window side lengths
/// must be integral multiples of `voxel_len`.
inline VoxelizeResult voxelize(const PointSample& sample, double voxel_len) {
  if (sample.empty()) throw InputError("empty sample");
  if (!(voxel_len > 0.0) || !std::isfinite(voxel_len)) throw InputError("voxel length must be positive");
  const Window& w = sample.window();
  std::vector<std::size_t> ext;
  for (int a = 0; a < w.dim(); ++a) {
    const double ratio = w.length(a) / voxel_len;
    if (ratio < 1.0 - 1e-9) throw InputError("voxel length exceeds the window extent");
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
      throw InputError("window extent is not a multiple of the voxel length");
    ext.push_back(static_cast<std::size_t>(rounded));
  }
  Window grid_window(ext, voxel_len);
  std::vector<double> counts(grid_window.voxel_count(), 0.0);
  bool multi = false;
  for (const Coord& p : sample.points()) {
    const std::size_t i = detail::bin_index(p[0], voxel_len, grid_window.extent(0));
    const std::size_t j = detail::bin_index(p[1], voxel_len, grid_window.extent(1));
    const std::size_t k = w.dim() == 3 ? detail::bin_index(p[2], voxel_len, grid_window.extent(2)) : 0;
    double& c = counts[grid_window.index(i, j, k)];
    c += 1.0;
    if (c > 1.0) multi = true;
  }
  return {VoxelGrid(grid_window, std::move(counts)), multi};
}

/// Replaces each point by the centre of the voxel containing it.
inline PointSample snap_to_centres(const PointSample& sample, double voxel_len) {
  const auto grid_window = voxelize(sample, voxel_len).grid.window();
  std::vector<Coord> out;
  out.reserve(sample.size());
  for (const Coord& p : sample.points()) {
    Coord c{0.0, 0.0, 0.0};
    for (int a = 0; a < sample.dim(); ++a) {
      const auto ax = static_cast<std::size_t>(a);
      c[ax] = (static_cast<double>(detail::bin_index(p[ax], voxel_len, grid_window.extent(a))) + 0.5) * voxel_len;
    }
    out.push_back(c);
  }
  return PointSample(sample.window(), std::move(out));
}

/// Sums a 3D grid along z. An output voxel is in the mask iff any voxel of its
/// z-column is.
inline VoxelGrid project_to_2d(const VoxelGrid& grid) {
  if (grid.dim() != 3) throw InputError("project_to_2d needs a 3D grid");
  const Window& w = grid.window();
  const std::size_t nx = w.extent(0), ny = w.extent(1), nz = w.extent(2);
  Window out_window({nx, ny}, w.voxel_len());
  std::vector<double> sums(nx * ny, 0.0);
  std::optional<std::vector<std::uint8_t>> mask;
  if (grid.has_mask()) mask.emplace(nx * ny, 0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t k = 0; k < nz; ++k) {
        const std::size_t src = w.index(i, j, k);
        sums[i * ny + j] += grid[src];
        if (mask && grid.active(src)) (*mask)[i * ny + j] = 1;
      }
  return VoxelGrid(out_window, std::move(sums), std::move(mask));
}

struct Intensity {
  double total = 0.0;  ///< phi(W): in-mask mass
  double lambda = 0.0; ///< phi(W) / nu(W)
};

/// Total in-window mass and the intensity estimate total / (N_active * l^d).
inline Intensity total_and_intensity(const VoxelGrid& grid) {
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid.active(i)) total += grid[i];
  if (!(total > 0.0)) throw NumericalError("degenerate sample: total mass is zero");
  return {total, total / grid.observed_volume()};
}

} // namespace csrstat
