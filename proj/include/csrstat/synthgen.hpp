#pragma once

// Synthetic CSR and clustered grids for calibration studies.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "csrstat/errors.hpp"
#include "csrstat/measure.hpp"
#include "csrstat/null_models.hpp"
#include "csrstat/rng.hpp"

namespace csrstat {

/// Poisson process with Gaussian kernels: centres from a homogeneous Poisson
/// process of intensity `lambda` (per unit volume), each carrying an isotropic
/// Gaussian density with standard deviation `sigma`.
struct KernelProcessParams {
  double lambda = 0.1;
  double sigma = 1.0;
  double margin = 4.0; ///< width of the border around the window where centres are also drawn

  static KernelProcessParams with_default_margin(double lambda, double sigma) { return {lambda, sigma, 4.0 * sigma}; }
};

inline void validate(const KernelProcessParams& p) {
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda)) throw InputError("kernel process lambda must be positive");
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw InputError("kernel process sigma must be positive");
  if (!(p.margin >= 0.0) || !std::isfinite(p.margin)) throw InputError("kernel process margin must be nonnegative");
}

/// Voxel value = sum over centres of the Gaussian density N(c_n; x, sigma^2 I)
/// at the voxel centre. Contributions beyond 8 sigma are skipped.
inline VoxelGrid kernel_density_grid(std::span<const Coord> centres, double sigma, const Window& window) {
  const int d = window.dim();
  const double l = window.voxel_len();
  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.5 * d);
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  const double cutoff = 8.0 * sigma;
  std::vector<double> values(window.voxel_count(), 0.0);
  std::array<long, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (const Coord& x : centres) {
    bool outside = false;
    for (int a = 0; a < 3; ++a) {
      const auto ax = static_cast<std::size_t>(a);
      if (a >= d) {
        lo[ax] = hi[ax] = 0;
        continue;
      }
      const long n = static_cast<long>(window.extent(a));
      lo[ax] = std::max(0L, static_cast<long>(std::floor((x[ax] - cutoff) / l)));
      hi[ax] = std::min(n - 1, static_cast<long>(std::floor((x[ax] + cutoff) / l)));
      if (lo[ax] > hi[ax]) outside = true;
    }
    if (outside) continue;
    for (long i = lo[0]; i <= hi[0]; ++i) {
      const double di = (static_cast<double>(i) + 0.5) * l - x[0];
      for (long j = lo[1]; j <= hi[1]; ++j) {
        const double dj = (static_cast<double>(j) + 0.5) * l - x[1];
        for (long k = lo[2]; k <= hi[2]; ++k) {
          const double dk = d == 3 ? (static_cast<double>(k) + 0.5) * l - x[2] : 0.0;
          const double r2 = di * di + dj * dj + dk * dk;
          values[window.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k))] +=
              norm * std::exp(-r2 * inv2s2);
        }
      }
    }
  }
  return VoxelGrid(window, std::move(values));
}

/// Centres of a kernel-process realisation: homogeneous Poisson points in the
/// window expanded by `margin` on every side (window coordinates).
inline std::vector<Coord> kernel_process_centres(const KernelProcessParams& params, const Window& window,
                                                 std::uint64_t seed) {
  validate(params);
  SplitMix64 rng(seed);
  double volume = 1.0;
  for (int a = 0; a < window.dim(); ++a) volume *= window.length(a) + 2.0 * params.margin;
  const long n = std::poisson_distribution<long>(params.lambda * volume)(rng);
  std::vector<Coord> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    Coord p{0.0, 0.0, 0.0};
    for (int a = 0; a < window.dim(); ++a)
      p[static_cast<std::size_t>(a)] = -params.margin + rng.uniform() * (window.length(a) + 2.0 * params.margin);
    pts.push_back(p);
  }
  return pts;
}

inline VoxelGrid gen_ppgk(const KernelProcessParams& params, const Window& window, std::uint64_t seed) {
  const auto centres = kernel_process_centres(params, window, seed);
  return kernel_density_grid(centres, params.sigma, window);
}

/// Per-voxel independent Poisson(lambda * l^d) counts.
inline VoxelGrid gen_poisson_grid(double lambda, const Window& window, std::uint64_t seed) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("poisson grid lambda must be positive");
  SplitMix64 rng(seed);
  std::poisson_distribution<long> dist(lambda * window.voxel_volume());
  std::vector<double> values(window.voxel_count());
  for (double& v : values) v = static_cast<double>(dist(rng));
  return VoxelGrid(window, std::move(values));
}

struct LabeledGrid {
  std::string id;
  std::string generator; ///< gamma | wsp | poisson | ppgk
  std::string params;    ///< key=value pairs separated by ';'
  std::uint64_t seed = 0;
  VoxelGrid grid;
};

inline constexpr int kScenarioReplicates = 5;
inline constexpr double kScenarioLambda = 0.1;
inline const std::vector<double>& scenario_sigmas() {
  static const std::vector<double> s{1.0, 2.0, 3.0, 4.0, 5.0, 10.0};
  return s;
}

namespace detail {

inline std::string format_list(std::span<const double> xs) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ":" : "") << xs[i];
  return os.str();
}

inline std::string format_num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

} // namespace detail

/// The synthetic calibration suite on a 50 x 50 window (l = 1), five
/// replicates per setting:
///   Gamma process with a ~ U(0, 10], b ~ U(0, 2]
///   WSP with weights {0.25, 0.5, 1, 2, 4}, alpha_m ~ U[0.37, 2.7]
///   Poisson grid with lambda = 0.1
///   Gaussian-kernel process with lambda = 0.1, sigma in {1, 2, 3, 4, 5, 10}
inline std::vector<LabeledGrid> gen_scenario_suite(std::uint64_t seed) {
  const Window window({50, 50}, 1.0);
  std::vector<LabeledGrid> out;
  std::uint64_t index = 0;
  auto next_seed = [&] { return derive_seed(seed, index++); };
  auto id = [](const std::string& tag, int rep) { return tag + "_r" + std::to_string(rep); };

  for (int rep = 0; rep < kScenarioReplicates; ++rep) {
    const std::uint64_t s = next_seed();
    SplitMix64 rng(s);
    const GammaParams p{10.0 * (1.0 - rng.uniform()), 2.0 * (1.0 - rng.uniform())};
    out.push_back({id("gamma", rep), "gamma", "a=" + detail::format_num(p.a) + ";b=" + detail::format_num(p.b), s,
                   sample_gamma_grid(p, window, std::nullopt, derive_seed(s, 0))});
  }
  for (int rep = 0; rep < kScenarioReplicates; ++rep) {
    const std::uint64_t s = next_seed();
    SplitMix64 rng(s);
    WSPParams p{default_wsp_weights(), {}};
    for (std::size_t m = 0; m < p.weights.size(); ++m) p.alphas.push_back(0.37 + (2.7 - 0.37) * rng.uniform());
    out.push_back({id("wsp", rep), "wsp",
                   "weights=" + detail::format_list(p.weights) + ";alphas=" + detail::format_list(p.alphas), s,
                   sample_wsp_grid(p, window, std::nullopt, derive_seed(s, 0))});
  }
  for (int rep = 0; rep < kScenarioReplicates; ++rep) {
    const std::uint64_t s = next_seed();
    out.push_back({id("poisson", rep), "poisson", "lambda=" + detail::format_num(kScenarioLambda), s,
                   gen_poisson_grid(kScenarioLambda, window, derive_seed(s, 0))});
  }
  for (double sigma : scenario_sigmas()) {
    for (int rep = 0; rep < kScenarioReplicates; ++rep) {
      const std::uint64_t s = next_seed();
      const auto p = KernelProcessParams::with_default_margin(kScenarioLambda, sigma);
      out.push_back({id("ppgk_s" + detail::format_num(sigma), rep), "ppgk",
                     "lambda=" + detail::format_num(p.lambda) + ";sigma=" + detail::format_num(sigma) +
                         ";margin=" + detail::format_num(p.margin),
                     s, gen_ppgk(p, window, derive_seed(s, 0))});
    }
  }
  return out;
}

} // namespace csrstat
