#pragma once

// CSR null-hypothesis engines.
//
// Parametric classes fitted to the voxel marginals:
//   - Gamma process: voxel values i.i.d. Gamma(a * l^d, b), shape-scale form.
//   - Mark Sum Poisson (weighted sum of Poissons, "WSP"): voxel value
//     sum_m w_m n_m with independent n_m ~ Poisson(alpha_m), weights fixed,
//     alphas fitted by EM over the finite set of latent decompositions.
// Nonparametric engines: permutation of in-mask values, resampling with
// replacement, resampling from a reference population, plus point-process
// samplers for the homogeneous Poisson and binomial nulls.

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "csrstat/errors.hpp"
#include "csrstat/measure.hpp"
#include "csrstat/rng.hpp"

namespace csrstat {

using Mask = std::optional<std::vector<std::uint8_t>>;

// ---------------------------------------------------------------------------
// Gamma process

struct GammaParams {
  double a = 1.0; ///< shape per unit volume
  double b = 1.0; ///< scale
};

inline void validate(const GammaParams& p) {
  if (!(p.a > 0.0) || !(p.b > 0.0) || !std::isfinite(p.a) || !std::isfinite(p.b))
    throw InputError("gamma parameters must be positive and finite");
}

inline constexpr double kGammaValueFloor = 1e-6;

/// Maximum-likelihood Gamma fit of voxel values.
///
/// Values are clamped to >= 1e-6 (Gamma support is positive). The shape k
/// solves log k - digamma(k) = log(mean) - mean(log x) by Newton's method from
/// the moment estimate mean^2 / variance; the scale is mean / k. The returned
/// shape is per unit volume: a = k / voxel_volume.
inline GammaParams fit_gamma_mle(std::span<const double> values, double voxel_volume = 1.0) {
  if (values.size() < 10) throw InputError("gamma fit needs at least 10 values");
  const double n = static_cast<double>(values.size());
  double sum = 0.0, sum_log = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("gamma fit needs finite nonnegative values");
    const double x = std::max(v, kGammaValueFloor);
    sum += x;
    sum_log += std::log(x);
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) {
    const double d = std::max(v, kGammaValueFloor) - mean;
    ss += d * d;
  }
  const double var = ss / (n - 1.0);
  if (!(var > 0.0)) throw NumericalError("degenerate marginal: zero variance");

  const double s = std::log(mean) - sum_log / n;
  const double k0 = mean * mean / var;
  double k = k0;
  bool converged = false;
  if (s > 0.0) {
    for (int it = 0; it < 100; ++it) {
      const double f = std::log(k) - boost::math::digamma(k) - s;
      const double df = 1.0 / k - boost::math::trigamma(k);
      double next = k - f / df;
      if (!std::isfinite(next)) break;
      if (next <= 0.0) next = k / 2.0;
      const double step = std::abs(next - k);
      k = next;
      if (step < 1e-10) {
        converged = true;
        break;
      }
    }
  }
  if (!converged || !std::isfinite(k) || k <= 0.0) k = k0;
  return {k / voxel_volume, mean / k};
}

/// In-mask voxels i.i.d. Gamma(a * l^d, b); masked voxels are zero.
inline VoxelGrid sample_gamma_grid(const GammaParams& params, const Window& window, const Mask& mask,
                                   std::uint64_t seed) {
  validate(params);
  SplitMix64 rng(seed);
  std::gamma_distribution<double> dist(params.a * window.voxel_volume(), params.b);
  std::vector<double> values(window.voxel_count(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!mask || (*mask)[i]) values[i] = dist(rng);
  return VoxelGrid(window, std::move(values), mask);
}

/// Gamma(a * l^d, 1) draws normalised to sum to `total`: a Dirichlet process
/// with concentration a scaled by the observed total.
inline VoxelGrid sample_dirichlet_conditioned(double a, double total, const Window& window, const Mask& mask,
                                              std::uint64_t seed) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InputError("dirichlet concentration must be positive");
  if (!(total > 0.0) || !std::isfinite(total)) throw InputError("conditioning total must be positive");
  SplitMix64 rng(seed);
  std::gamma_distribution<double> dist(a * window.voxel_volume(), 1.0);
  std::vector<double> values(window.voxel_count(), 0.0);
  for (int attempt = 0; attempt < 2; ++attempt) {
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (!mask || (*mask)[i]) sum += values[i] = dist(rng);
    if (sum > 0.0) {
      const double scale = total / sum;
      for (double& v : values) v *= scale;
      return VoxelGrid(window, std::move(values), mask);
    }
  }
  throw NumericalError("dirichlet sample is identically zero");
}

// ---------------------------------------------------------------------------
// Weighted sum of Poissons (Mark Sum Poisson marginals)

inline constexpr double kAlphaFloor = 1e-8;
inline constexpr double kRepresentTol = 1e-9;

struct WSPParams {
  std::vector<double> weights; ///< fixed mark weights w_m
  std::vector<double> alphas;  ///< per-voxel Poisson means alpha_m
};

inline void validate_weights(std::span<const double> weights) {
  if (weights.empty()) throw InputError("at least one mark weight is required");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw InputError("mark weights must be positive and finite");
  std::vector<double> sorted(weights.begin(), weights.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("mark weights must be distinct");
}

inline void validate(const WSPParams& p) {
  validate_weights(p.weights);
  if (p.alphas.size() != p.weights.size()) throw InputError("alphas and weights lengths differ");
  for (double a : p.alphas)
    if (!(a >= 0.0) || !std::isfinite(a)) throw InputError("alphas must be nonnegative and finite");
}

namespace detail {

/// Depth-first enumeration of n >= 0 with sum_m w_m n_m == x (within 1e-9).
/// `order` lists mark indices; the last one is solved for directly.
template <class Visit>
void for_each_decomposition(double x, std::span<const double> weights, std::span<const std::size_t> order,
                            std::vector<int>& n, std::size_t depth, Visit&& visit) {
  const std::size_t m = order[depth];
  const double w = weights[m];
  if (depth + 1 == order.size()) {
    const double k = std::round(x / w);
    if (k >= 0.0 && std::abs(x - k * w) <= kRepresentTol) {
      n[m] = static_cast<int>(k);
      visit(static_cast<const std::vector<int>&>(n));
    }
    n[m] = 0;
    return;
  }
  const auto kmax = static_cast<int>(std::floor((x + kRepresentTol) / w));
  for (int k = 0; k <= kmax; ++k) {
    n[m] = k;
    for_each_decomposition(std::max(0.0, x - k * w), weights, order, n, depth + 1, visit);
  }
  n[m] = 0;
}

inline std::vector<std::size_t> descending_weight_order(std::span<const double> weights) {
  std::vector<std::size_t> order(weights.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  return order;
}

/// Largest-weight-first decomposition: the first solution found when every
/// mark, heaviest first, takes as many units as still allow a solution.
inline std::optional<std::vector<int>> greedy_decomposition(double x, std::span<const double> weights) {
  const auto order = descending_weight_order(weights);
  std::vector<int> n(weights.size(), 0);
  auto search = [&](auto&& self, double rem, std::size_t depth) -> bool {
    const std::size_t m = order[depth];
    const double w = weights[m];
    if (depth + 1 == order.size()) {
      const double k = std::round(rem / w);
      if (k >= 0.0 && std::abs(rem - k * w) <= kRepresentTol) {
        n[m] = static_cast<int>(k);
        return true;
      }
      return false;
    }
    for (auto k = static_cast<int>(std::floor((rem + kRepresentTol) / w)); k >= 0; --k) {
      n[m] = k;
      if (self(self, std::max(0.0, rem - k * w), depth + 1)) return true;
    }
    n[m] = 0;
    return false;
  };
  if (search(search, x, 0)) return n;
  return std::nullopt;
}

/// Per-mark table of log Poisson(n; alpha) for n = 0..max_n.
inline std::vector<std::vector<double>> log_pmf_tables(std::span<const double> weights, std::span<const double> alphas,
                                                       double x_max) {
  std::vector<std::vector<double>> t(weights.size());
  for (std::size_t m = 0; m < weights.size(); ++m) {
    const auto kmax = static_cast<std::size_t>(std::floor((x_max + kRepresentTol) / weights[m]));
    const double la = std::log(alphas[m]);
    t[m].resize(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k) {
      const double kd = static_cast<double>(k);
      t[m][k] = kd * la - alphas[m] - std::lgamma(kd + 1.0);
    }
  }
  return t;
}

/// Posterior summary of one observed value: log marginal likelihood and the
/// posterior mean of every latent count.
struct Posterior {
  double log_marginal = -std::numeric_limits<double>::infinity();
  std::vector<double> expected_counts;
  std::size_t decompositions = 0;
};

/// Streams over all decompositions of x accumulating a rescaled log-sum-exp.
inline Posterior posterior(double x, std::span<const double> weights, std::span<const std::size_t> order,
                           const std::vector<std::vector<double>>& log_pmf) {
  const std::size_t M = weights.size();
  Posterior out;
  out.expected_counts.assign(M, 0.0);
  double max_log = -std::numeric_limits<double>::infinity();
  double mass = 0.0;
  std::vector<int> n(M, 0);
  for_each_decomposition(x, weights, order, n, 0, [&](const std::vector<int>& counts) {
    double lp = 0.0;
    for (std::size_t m = 0; m < M; ++m) lp += log_pmf[m][static_cast<std::size_t>(counts[m])];
    ++out.decompositions;
    if (lp > max_log) {
      const double f = std::exp(max_log - lp);
      mass *= f;
      for (double& e : out.expected_counts) e *= f;
      max_log = lp;
    }
    const double wgt = std::exp(lp - max_log);
    mass += wgt;
    for (std::size_t m = 0; m < M; ++m) out.expected_counts[m] += wgt * counts[m];
  });
  if (out.decompositions == 0) return out;
  out.log_marginal = max_log + std::log(mass);
  for (double& e : out.expected_counts) e /= mass;
  return out;
}

/// Distinct values with multiplicities (exact grouping of pre-rounded data).
inline std::vector<std::pair<double, double>> tally(std::span<const double> values) {
  std::map<double, double> counts;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("WSP values must be finite and nonnegative");
    counts[v] += 1.0;
  }
  return {counts.begin(), counts.end()};
}

} // namespace detail

/// All n with sum_m w_m n_m = x, found by bounded depth-first search.
inline std::vector<std::vector<int>> enumerate_decompositions(double x, std::span<const double> weights) {
  validate_weights(weights);
  if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("value must be finite and nonnegative");
  std::vector<std::size_t> order(weights.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::vector<int>> out;
  std::vector<int> n(weights.size(), 0);
  detail::for_each_decomposition(x, weights, order, n, 0, [&](const std::vector<int>& c) { out.push_back(c); });
  return out;
}

/// Sorted set of values sum_m w_m n_m up to an upper bound.
class RepresentableLattice {
public:
  RepresentableLattice(std::span<const double> weights, double upper) {
    validate_weights(weights);
    max_weight_ = *std::max_element(weights.begin(), weights.end());
    std::set<double> reach{0.0};
    for (double w : weights) {
      // Unbounded closure: elements inserted ahead of the cursor are visited later.
      for (auto it = reach.begin(); it != reach.end(); ++it) {
        const double next = *it + w;
        if (next > upper + kRepresentTol) continue;
        auto hi = reach.lower_bound(next - kRepresentTol);
        if (hi != reach.end() && *hi <= next + kRepresentTol) continue;
        reach.insert(next);
      }
    }
    values_.assign(reach.begin(), reach.end());
  }

  std::span<const double> values() const noexcept { return values_; }

  /// Nearest lattice value within max(weights) of x; ties go to the lower value.
  double round(double x) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), x);
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_d = std::numeric_limits<double>::infinity();
    if (it != values_.end()) {
      best = *it;
      best_d = *it - x;
    }
    if (it != values_.begin()) {
      const double lo = *std::prev(it);
      if (x - lo <= best_d + 1e-12) {
        best = lo;
        best_d = x - lo;
      }
    }
    if (!(best_d <= max_weight_ + kRepresentTol)) throw NumericalError("no representable value near " + std::to_string(x));
    return best;
  }

private:
  std::vector<double> values_;
  double max_weight_ = 0.0;
};

inline double round_to_representable(double x, std::span<const double> weights) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("value must be finite and nonnegative");
  validate_weights(weights);
  const double wmax = *std::max_element(weights.begin(), weights.end());
  return RepresentableLattice(weights, x + wmax).round(x);
}

/// Rounds every value onto the lattice, building it once.
inline std::vector<double> round_all_to_representable(std::span<const double> values, std::span<const double> weights) {
  validate_weights(weights);
  double hi = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("values must be finite and nonnegative");
    hi = std::max(hi, v);
  }
  const RepresentableLattice lattice(weights, hi + *std::max_element(weights.begin(), weights.end()));
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(lattice.round(v));
  return out;
}

/// sum_i log sum_{n in decompositions(x_i)} prod_m Poisson(n_m; alpha_m)
inline double wsp_loglik(std::span<const double> values, const WSPParams& params) {
  validate(params);
  const auto tallies = detail::tally(values);
  if (tallies.empty()) return 0.0;
  const auto order = detail::descending_weight_order(params.weights);
  const auto tables = detail::log_pmf_tables(params.weights, params.alphas, tallies.back().first);
  double ll = 0.0;
  for (const auto& [x, count] : tallies) {
    const auto post = detail::posterior(x, params.weights, order, tables);
    if (post.decompositions == 0) throw InputError("unrepresentable value " + std::to_string(x));
    ll += count * post.log_marginal;
  }
  return ll;
}

struct WSPFit {
  WSPParams params;
  /// Log-likelihood at the initial alphas followed by one entry per EM iteration.
  std::vector<double> loglik_trace;
};

/// EM fit of the alphas for fixed weights. Values must already lie on the
/// representable lattice (see round_all_to_representable).
///
/// Initial responsibilities put all mass on each value's largest-weight-first
/// decomposition; the M-step is alpha_m = sum_{i,n} gamma(i,n) n_m / N,
/// floored at 1e-8.
inline WSPFit fit_wsp_em(std::span<const double> values, std::span<const double> weights, int max_iters) {
  validate_weights(weights);
  if (max_iters < 1) throw InputError("EM needs at least one iteration");
  if (values.empty()) throw InputError("EM needs at least one value");
  const auto tallies = detail::tally(values);
  const std::size_t M = weights.size();
  const double N = static_cast<double>(values.size());

  std::vector<double> alphas(M, 0.0);
  for (const auto& [x, count] : tallies) {
    const auto n = detail::greedy_decomposition(x, weights);
    if (!n) throw InputError("unrepresentable value " + std::to_string(x));
    for (std::size_t m = 0; m < M; ++m) alphas[m] += count * (*n)[m];
  }
  for (double& a : alphas) a = std::max(a / N, kAlphaFloor);

  const auto order = detail::descending_weight_order(weights);
  const double x_max = tallies.back().first;
  WSPFit fit;
  fit.params.weights.assign(weights.begin(), weights.end());

  for (int it = 0;; ++it) {
    const auto tables = detail::log_pmf_tables(weights, alphas, x_max);
    double ll = 0.0;
    std::vector<double> expected(M, 0.0);
    for (const auto& [x, count] : tallies) {
      const auto post = detail::posterior(x, weights, order, tables);
      if (post.decompositions == 0) throw InputError("unrepresentable value " + std::to_string(x));
      ll += count * post.log_marginal;
      for (std::size_t m = 0; m < M; ++m) expected[m] += count * post.expected_counts[m];
    }
    if (!std::isfinite(ll)) throw NumericalError("non-finite WSP log-likelihood");
    fit.loglik_trace.push_back(ll);
    if (it == max_iters) break;
    for (std::size_t m = 0; m < M; ++m) alphas[m] = std::max(expected[m] / N, kAlphaFloor);
  }
  fit.params.alphas = std::move(alphas);
  return fit;
}

/// Per in-mask voxel: independent Poisson(alpha_m) counts, value sum_m w_m n_m.
inline VoxelGrid sample_wsp_grid(const WSPParams& params, const Window& window, const Mask& mask, std::uint64_t seed) {
  validate(params);
  SplitMix64 rng(seed);
  std::vector<std::poisson_distribution<long>> marks;
  for (double a : params.alphas) marks.emplace_back(a);
  std::vector<double> values(window.voxel_count(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    double v = 0.0;
    for (std::size_t m = 0; m < marks.size(); ++m) v += params.weights[m] * static_cast<double>(marks[m](rng));
    values[i] = v;
  }
  return VoxelGrid(window, std::move(values), mask);
}

// ---------------------------------------------------------------------------
// Nonparametric engines

/// Uniform (Fisher-Yates) permutation of the in-mask values.
inline VoxelGrid permute_grid(const VoxelGrid& grid, std::uint64_t seed) {
  if (grid.active_count() < 2) throw InputError("permutation needs at least 2 in-mask voxels");
  const auto idx = grid.active_indices();
  std::vector<double> pool;
  pool.reserve(idx.size());
  for (std::size_t i : idx) pool.push_back(grid[i]);
  SplitMix64 rng(seed);
  for (std::size_t i = pool.size() - 1; i > 0; --i) std::swap(pool[i], pool[rng.below(i + 1)]);
  std::vector<double> values(grid.values().begin(), grid.values().end());
  for (std::size_t k = 0; k < idx.size(); ++k) values[idx[k]] = pool[k];
  return grid.with_values(std::move(values));
}

/// Each in-mask voxel draws independently from the empirical distribution of
/// the in-mask values.
inline VoxelGrid resample_empirical(const VoxelGrid& grid, std::uint64_t seed) {
  const auto idx = grid.active_indices();
  std::vector<double> pool;
  pool.reserve(idx.size());
  for (std::size_t i : idx) pool.push_back(grid[i]);
  SplitMix64 rng(seed);
  std::vector<double> values(grid.size(), 0.0);
  for (std::size_t i : idx) values[i] = pool[rng.below(pool.size())];
  return grid.with_values(std::move(values));
}

/// Per-pixel resampling from a reference population, rescaled to the input
/// total.
///
/// With several reference grids each in-mask voxel copies the value at the
/// same position from a uniformly chosen reference. With a single reference
/// the reference value is used as a rate: a Bernoulli(value / max value) draw
/// when the input is 0/1 valued (point occupancy), otherwise a Poisson(value)
/// draw.
inline VoxelGrid resample_reference(const VoxelGrid& grid, std::span<const VoxelGrid> references, std::uint64_t seed) {
  if (references.empty()) throw InputError("reference resampling needs at least one reference grid");
  for (const auto& ref : references)
    if (ref.window().extents() != grid.window().extents())
      throw InputError("reference grid shape does not match the input grid");
  const auto idx = grid.active_indices();
  double input_total = 0.0;
  bool binary = true;
  for (std::size_t i : idx) {
    input_total += grid[i];
    if (grid[i] != 0.0 && grid[i] != 1.0) binary = false;
  }
  if (!(input_total > 0.0)) throw NumericalError("degenerate sample: total mass is zero");

  double ref_total = 0.0, ref_max = 0.0;
  for (const auto& ref : references)
    for (std::size_t i : idx) {
      ref_total += ref[i];
      ref_max = std::max(ref_max, ref[i]);
    }
  if (!(ref_total > 0.0)) throw InputError("zero reference total");

  SplitMix64 rng(seed);
  std::vector<double> values(grid.size(), 0.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    double sum = 0.0;
    for (std::size_t i : idx) {
      double v;
      if (references.size() > 1) {
        v = references[rng.below(references.size())][i];
      } else if (binary) {
        v = rng.uniform() < references[0][i] / ref_max ? 1.0 : 0.0;
      } else {
        v = static_cast<double>(std::poisson_distribution<long>(std::max(references[0][i], 1e-300))(rng));
      }
      values[i] = v;
      sum += v;
    }
    if (sum > 0.0) {
      const double scale = input_total / sum;
      for (std::size_t i : idx) values[i] *= scale;
      return grid.with_values(std::move(values));
    }
  }
  throw NumericalError("reference resampling produced only empty samples");
}

// ---------------------------------------------------------------------------
// Point-process nulls

namespace detail {

inline Coord uniform_point(const Window& window, SplitMix64& rng) {
  Coord p{0.0, 0.0, 0.0};
  for (int a = 0; a < window.dim(); ++a) p[static_cast<std::size_t>(a)] = rng.uniform() * window.length(a);
  return p;
}

} // namespace detail

/// Homogeneous Poisson process: N ~ Poisson(lambda nu(W)) uniform points.
inline PointSample sample_poisson_points(double lambda, const Window& window, std::uint64_t seed) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("intensity must be positive");
  SplitMix64 rng(seed);
  const double volume = static_cast<double>(window.voxel_count()) * window.voxel_volume();
  const long n = std::poisson_distribution<long>(lambda * volume)(rng);
  std::vector<Coord> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) pts.push_back(detail::uniform_point(window, rng));
  return PointSample(window, std::move(pts));
}

/// Binomial process: exactly n uniform points.
inline PointSample binomial_conditioned(std::size_t n, const Window& window, std::uint64_t seed) {
  if (n < 1) throw InputError("binomial process needs n >= 1");
  SplitMix64 rng(seed);
  std::vector<Coord> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(detail::uniform_point(window, rng));
  return PointSample(window, std::move(pts));
}

// ---------------------------------------------------------------------------
// Null model selection

enum class NullKind {
  Permutation,
  GammaFit,
  GammaConditionedDirichlet,
  WSPFit,
  EmpiricalResample,
  EmpiricalReference,
  PoissonParametric,
  BinomialConditioned,
};

inline std::vector<double> default_wsp_weights() { return {0.25, 0.5, 1.0, 2.0, 4.0}; }

struct NullModelSpec {
  NullKind kind = NullKind::Permutation;
  std::vector<double> wsp_weights = default_wsp_weights();
  int wsp_iters = 5;
  std::vector<VoxelGrid> references; ///< EmpiricalReference only
};

inline bool is_point_null(NullKind k) noexcept {
  return k == NullKind::PoissonParametric || k == NullKind::BinomialConditioned;
}

inline NullKind parse_null_kind(const std::string& s) {
  if (s == "permutation") return NullKind::Permutation;
  if (s == "gamma") return NullKind::GammaFit;
  if (s == "gamma-cond") return NullKind::GammaConditionedDirichlet;
  if (s == "wsp") return NullKind::WSPFit;
  if (s == "empirical") return NullKind::EmpiricalResample;
  if (s == "reference") return NullKind::EmpiricalReference;
  if (s == "poisson") return NullKind::PoissonParametric;
  if (s == "binomial") return NullKind::BinomialConditioned;
  throw InputError("unknown null model '" + s + "'");
}

inline std::string to_string(NullKind k) {
  switch (k) {
  case NullKind::Permutation: return "permutation";
  case NullKind::GammaFit: return "gamma";
  case NullKind::GammaConditionedDirichlet: return "gamma-cond";
  case NullKind::WSPFit: return "wsp";
  case NullKind::EmpiricalResample: return "empirical";
  case NullKind::EmpiricalReference: return "reference";
  case NullKind::PoissonParametric: return "poisson";
  case NullKind::BinomialConditioned: return "binomial";
  }
  return "unknown";
}

} // namespace csrstat
