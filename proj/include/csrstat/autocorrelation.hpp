#pragma once

// Linear (non-circular) autocorrelation of a voxel grid through FFTW.
//
// The grid is zero-padded to the next power of two >= 2 * extent on every
// axis, so lag values never wrap around. Only lags within a caller-supplied
// radius are returned.

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "csrstat/measure.hpp"

namespace csrstat {

/// One nonzero lag of the autocorrelation: squared length (length units^2)
/// and the summed product sum_n phi(v_n) phi(v_n + lag).
struct LagValue {
  double dist2;
  double value;
};

struct Autocorrelation {
  double zero_lag = 0.0;        ///< sum_n phi(v_n)^2, computed directly
  std::vector<LagValue> lags;   ///< all lags with 0 < |lag| * l <= max_radius
};

namespace detail {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

template <class T>
struct FftwFree {
  void operator()(T* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree<T>>;

/// Forward/backward real plans for one padded shape. Plans are created once
/// under the planner lock and executed through the new-array interface, which
/// FFTW documents as thread-safe.
class FftPlans {
public:
  explicit FftPlans(const std::vector<int>& dims) : dims_(dims) {
    std::size_t real = 1;
    for (int d : dims_) real *= static_cast<std::size_t>(d);
    real_size_ = real;
    complex_size_ = real / static_cast<std::size_t>(dims_.back()) * (static_cast<std::size_t>(dims_.back()) / 2 + 1);
    auto in = alloc_real();
    auto out = alloc_complex();
    const int rank = static_cast<int>(dims_.size());
    forward_ = fftw_plan_dft_r2c(rank, dims_.data(), in.get(), out.get(), FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r(rank, dims_.data(), out.get(), in.get(), FFTW_ESTIMATE);
    if (!forward_ || !backward_) throw NumericalError("FFTW plan creation failed");
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
  ~FftPlans() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  std::size_t real_size() const noexcept { return real_size_; }
  std::size_t complex_size() const noexcept { return complex_size_; }

  FftwBuffer<double> alloc_real() const {
    return FftwBuffer<double>(static_cast<double*>(fftw_malloc(sizeof(double) * real_size_)));
  }
  FftwBuffer<fftw_complex> alloc_complex() const {
    return FftwBuffer<fftw_complex>(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * complex_size_)));
  }

  void forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(forward_, in, out); }
  void backward(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(backward_, in, out); }

private:
  std::vector<int> dims_;
  std::size_t real_size_ = 0;
  std::size_t complex_size_ = 0;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

inline const FftPlans& plans_for(const std::vector<int>& dims) {
  static std::mutex mutex;
  static std::map<std::vector<int>, std::unique_ptr<FftPlans>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[dims];
  if (!slot) slot = std::make_unique<FftPlans>(dims);
  return *slot;
}

} // namespace detail

/// Autocorrelation of `values` (laid out on `window`, zero outside any mask)
/// for every lag of length at most `max_radius`.
///
/// Lag sums smaller than 1e-12 of the zero-lag sum are FFT round-off on a
/// nonnegative signal and are returned as exact zeros.
inline Autocorrelation autocorrelate(const Window& window, std::span<const double> values, double max_radius) {
  const int dim = window.dim();
  std::array<std::size_t, 3> ext{window.extent(0), window.extent(1), dim == 3 ? window.extent(2) : 1};
  std::array<std::size_t, 3> pad{1, 1, 1};
  std::vector<int> dims;
  for (int a = 0; a < dim; ++a) {
    const auto ax = static_cast<std::size_t>(a);
    pad[ax] = detail::next_pow2(2 * ext[ax]);
    dims.push_back(static_cast<int>(pad[ax]));
  }

  Autocorrelation out;
  for (double v : values) out.zero_lag += v * v;
  if (out.zero_lag == 0.0) return out;

  const auto& plans = detail::plans_for(dims);
  auto real = plans.alloc_real();
  auto spec = plans.alloc_complex();
  std::fill(real.get(), real.get() + plans.real_size(), 0.0);
  for (std::size_t i = 0; i < ext[0]; ++i)
    for (std::size_t j = 0; j < ext[1]; ++j)
      for (std::size_t k = 0; k < ext[2]; ++k)
        real[(i * pad[1] + j) * pad[2] + k] = values[(i * ext[1] + j) * ext[2] + k];

  plans.forward(real.get(), spec.get());
  for (std::size_t i = 0; i < plans.complex_size(); ++i) {
    const double re = spec[i][0], im = spec[i][1];
    spec[i][0] = re * re + im * im;
    spec[i][1] = 0.0;
  }
  plans.backward(spec.get(), real.get());

  const double scale = 1.0 / static_cast<double>(plans.real_size());
  const double floor = 1e-12 * out.zero_lag;
  const double l = window.voxel_len();
  const double r2max = max_radius * max_radius;
  std::array<long, 3> reach{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    const auto ax = static_cast<std::size_t>(a);
    reach[ax] = std::min(static_cast<long>(ext[ax]) - 1, static_cast<long>(std::floor(max_radius / l)));
  }
  auto wrap = [](long lag, std::size_t p) { return static_cast<std::size_t>(lag < 0 ? lag + static_cast<long>(p) : lag); };

  for (long a = -reach[0]; a <= reach[0]; ++a)
    for (long b = -reach[1]; b <= reach[1]; ++b)
      for (long c = -reach[2]; c <= reach[2]; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const double da = static_cast<double>(a) * l, db = static_cast<double>(b) * l, dc = static_cast<double>(c) * l;
        const double d2 = da * da + db * db + dc * dc;
        if (d2 > r2max) continue;
        double v = real[(wrap(a, pad[0]) * pad[1] + wrap(b, pad[1])) * pad[2] + wrap(c, pad[2])] * scale;
        if (v < floor) v = 0.0;
        out.lags.push_back({d2, v});
      }
  return out;
}

} // namespace csrstat
