#pragma once

// Fourier partial-sum operators on the circle, the classical kernels, the
// pointwise variational Carleson operator, and the cumulative partial
// Fourier integral on compact domains.

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "variation.hpp"

namespace vnlab {

namespace detail {

// Iterative radix-2 FFT; forward convention sum_j a_j e^{-2 pi i jk/n}.
// Twiddles come from a directly evaluated table so rounding stays at eps.
inline void fft(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft: power-of-two size required");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  static thread_local std::vector<cplx> roots;
  static thread_local std::size_t roots_n = 0;
  static thread_local bool roots_inv = false;
  if (roots_n != n || roots_inv != inverse) {
    roots.resize(n / 2);
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n / 2; ++k)
      roots[k] = std::polar(1.0, sgn * 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n));
    roots_n = n;
    roots_inv = inverse;
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx u = a[i + k];
        cplx v = a[i + k + len / 2] * roots[k * stride];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
  if (inverse)
    for (cplx& v : a) v /= static_cast<double>(n);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Coefficients and partial sums on the circle.
// ---------------------------------------------------------------------------

struct FourierCoefficients {
  std::map<int, cplx> coeffs;
  int max_degree = 0;

  cplx at(int k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? cplx{0.0, 0.0} : it->second;
  }
};

// f_hat_k = int_0^1 f(y) e^{-2 pi i k y} dy for |k| <= n/2 - 1; exact for
// trigonometric polynomials of degree < n/2.
inline FourierCoefficients fourier_coefficients(const SampledFunction& f) {
  if (!f.domain.periodic) throw std::invalid_argument("fourier_coefficients: periodic domain required");
  const std::size_t n = f.grid_count();
  if (!is_power_of_two(n)) throw std::invalid_argument("fourier_coefficients: power-of-two grid required");
  std::vector<cplx> y = f.samples;
  detail::fft(y, false);
  FourierCoefficients out;
  const int half = static_cast<int>(n) / 2;
  out.max_degree = half - 1;
  for (int k = -(half - 1); k <= half - 1; ++k) {
    std::size_t bin = static_cast<std::size_t>((k % static_cast<int>(n) + static_cast<int>(n)) %
                                               static_cast<int>(n));
    out.coeffs[k] = y[bin] / static_cast<double>(n);
  }
  return out;
}

// Samples of sum_k c_k e^{2 pi i k x} on the n-point circle grid.
inline SampledFunction coefficients_to_samples(const std::map<int, cplx>& coeffs, std::size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("coefficients_to_samples: power-of-two grid");
  std::vector<cplx> bins(n, cplx{0.0, 0.0});
  for (const auto& [k, c] : coeffs) {
    std::size_t bin = static_cast<std::size_t>((k % static_cast<int>(n) + static_cast<int>(n)) %
                                               static_cast<int>(n));
    bins[bin] += c;
  }
  detail::fft(bins, true);
  for (cplx& v : bins) v *= static_cast<double>(n);
  return SampledFunction(Domain::circle(), std::move(bins));
}

struct PartialSumSweep {
  std::size_t grid_count = 0;
  int n_max = 0;
  std::vector<cplx> data;  // row-major: data[j * (n_max+1) + n] = S_n f(x_j)

  cplx at(std::size_t j, int n) const { return data[j * (n_max + 1) + n]; }
};

// All S_n f for n = 0..n_max by the incremental update
// S_n = S_{n-1} + f_hat_n e^{2 pi i n x} + f_hat_{-n} e^{-2 pi i n x}.
inline PartialSumSweep partial_sum_sweep(const SampledFunction& f, int n_max) {
  const std::size_t n = f.grid_count();
  if (n_max < 0 || static_cast<std::size_t>(n_max) >= n / 2)
    throw std::invalid_argument("partial_sum_sweep: n_max < grid_count/2 required");
  FourierCoefficients fc = fourier_coefficients(f);
  PartialSumSweep out;
  out.grid_count = n;
  out.n_max = n_max;
  out.data.assign(n * static_cast<std::size_t>(n_max + 1), cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = f.x(j);
    const cplx w = std::polar(1.0, 2.0 * M_PI * xj);
    cplx wp{1.0, 0.0}, wm{1.0, 0.0};
    cplx s = fc.at(0);
    out.data[j * (n_max + 1)] = s;
    for (int deg = 1; deg <= n_max; ++deg) {
      wp *= w;
      wm *= std::conj(w);
      s += fc.at(deg) * wp + fc.at(-deg) * wm;
      out.data[j * (n_max + 1) + deg] = s;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical kernels.
// ---------------------------------------------------------------------------

// D_n(x) = sin((2n+1) pi x)/sin(pi x), with the removable singularity (and
// near-singular grid points) evaluated through the exponential-sum form.
inline double dirichlet_value(int n, double x) {
  const double s = std::sin(M_PI * x);
  if (std::abs(s) < 1e-8) {
    double acc = 1.0;
    for (int k = 1; k <= n; ++k) acc += 2.0 * std::cos(2.0 * M_PI * k * x);
    return acc;
  }
  return std::sin((2.0 * n + 1.0) * M_PI * x) / s;
}

inline SampledFunction dirichlet_kernel(int n, std::size_t grid_count) {
  if (n < 0) throw std::invalid_argument("dirichlet_kernel: n >= 0");
  SampledFunction out = SampledFunction::zeros(Domain::circle(), grid_count);
  for (std::size_t j = 0; j < grid_count; ++j)
    out.samples[j] = dirichlet_value(n, out.x(j));
  return out;
}

// K_N = (N+1)^{-1} sum_{j<=N} D_j; coefficients (1 - |k|/(N+1))_+.
inline SampledFunction fejer_kernel(int N, std::size_t grid_count) {
  if (N < 0) throw std::invalid_argument("fejer_kernel: N >= 0");
  std::map<int, cplx> c;
  for (int k = -N; k <= N; ++k)
    c[k] = 1.0 - std::abs(k) / (static_cast<double>(N) + 1.0);
  return coefficients_to_samples(c, grid_count);
}

// 2 K_{2N+1} - K_N; Fourier coefficients equal 1 for |k| <= N+1.
inline SampledFunction vallee_poussin(int N, std::size_t grid_count) {
  if (N < 0) throw std::invalid_argument("vallee_poussin: N >= 0");
  std::map<int, cplx> c;
  for (int k = -(2 * N + 1); k <= 2 * N + 1; ++k) {
    double v = 2.0 * std::max(0.0, 1.0 - std::abs(k) / (2.0 * N + 2.0)) -
               std::max(0.0, 1.0 - std::abs(k) / (static_cast<double>(N) + 1.0));
    c[k] = v;
  }
  return coefficients_to_samples(c, grid_count);
}

// ---------------------------------------------------------------------------
// Pointwise variational Carleson operator over degrees 0..n_max.
// ---------------------------------------------------------------------------

inline SampledFunction variational_carleson(const SampledFunction& f, const VariationParams& vp,
                                            int n_max) {
  PartialSumSweep sweep = partial_sum_sweep(f, n_max);
  SampledFunction out = SampledFunction::zeros(f.domain, f.grid_count());
  std::vector<cplx> seq(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t j = 0; j < f.grid_count(); ++j) {
    for (int deg = 0; deg <= n_max; ++deg) seq[static_cast<std::size_t>(deg)] = sweep.at(j, deg);
    out.samples[j] = variation_norm(seq, vp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cumulative partial Fourier integral C[f](xi, x) = int_{-inf}^x e^{-2 pi i
// xi x'} f(x') dx' on a compact domain, with xi on the FFT dual grid
// (optionally offset by a fraction of the dual step).
// ---------------------------------------------------------------------------

struct PartialIntegralMatrix {
  std::vector<double> xi;   // row frequencies
  std::size_t cols = 0;     // grid_count + 1; column j integrates the first j cells
  std::vector<cplx> data;   // row-major

  cplx at(std::size_t row, std::size_t col) const { return data[row * cols + col]; }
};

inline PartialIntegralMatrix mpz_partial_integral(const SampledFunction& f, double xi_offset = 0.0) {
  if (f.domain.periodic) throw std::invalid_argument("mpz_partial_integral: compact domain required");
  const std::size_t n = f.grid_count();
  const double len = f.domain.length();
  const double dx = f.dx();
  PartialIntegralMatrix out;
  out.cols = n + 1;
  out.xi.resize(n);
  out.data.assign(n * (n + 1), cplx{0.0, 0.0});
  const long long half = static_cast<long long>(n) / 2;
  for (std::size_t row = 0; row < n; ++row) {
    const double xi = (static_cast<double>(static_cast<long long>(row) - half) + xi_offset) / len;
    out.xi[row] = xi;
    cplx acc{0.0, 0.0};
    cplx* dst = &out.data[row * out.cols];
    dst[0] = acc;
    for (std::size_t j = 0; j < n; ++j) {
      acc += std::polar(1.0, -2.0 * M_PI * xi * f.x(j)) * f.samples[j] * dx;
      dst[j + 1] = acc;
    }
  }
  return out;
}

}  // namespace vnlab
