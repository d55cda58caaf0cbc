#pragma once

// Dyadic martingale averages, smooth convolution families, their r-variation,
// and the associated square function.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fourier.hpp"
#include "grid.hpp"
#include "variation.hpp"

namespace vnlab {

// levels[k - k_min][j] = average of f over the dyadic block of length 2^k
// containing x(j).  Levels are built by iterated pairwise halving so that the
// martingale tower identity holds bitwise: re-averaging a level k row up to
// level k' reproduces the level k' row exactly (averaging two equal values is
// the identity in floating point).
struct MartingaleSweep {
  Domain domain;
  int k_min = 0;
  int k_max = 0;
  std::vector<std::vector<cplx>> levels;

  const std::vector<cplx>& level(int k) const {
    if (k < k_min || k > k_max) throw std::out_of_range("MartingaleSweep::level");
    return levels[static_cast<std::size_t>(k - k_min)];
  }
};

namespace detail {

// Number of grid samples per block of length 2^k; must be an exact power of
// two with the block boundaries sitting on grid points.
inline std::size_t block_samples(const SampledFunction& f, int k) {
  const double block = std::ldexp(1.0, k);
  const double ratio = block / f.dx();
  const double rounded = std::round(ratio);
  if (!(rounded >= 1.0) || std::abs(ratio - rounded) > 1e-9 * rounded)
    throw std::invalid_argument("dyadic levels: 2^k must be an integer multiple of the grid step");
  const std::size_t b = static_cast<std::size_t>(rounded);
  if (!is_power_of_two(b))
    throw std::invalid_argument("dyadic levels: 2^k / dx must be a power of two");
  if (b > f.grid_count())
    throw std::invalid_argument("dyadic levels: block exceeds the domain");
  const double left_blocks = f.domain.left / block;
  if (std::abs(left_blocks - std::round(left_blocks)) > 1e-9)
    throw std::invalid_argument("dyadic levels: domain not aligned to 2^k blocks");
  return b;
}

}  // namespace detail

inline MartingaleSweep dyadic_averages(const SampledFunction& f, int k_min, int k_max) {
  if (k_min > k_max) throw std::invalid_argument("dyadic_averages: empty level range");
  MartingaleSweep sw;
  sw.domain = f.domain;
  sw.k_min = k_min;
  sw.k_max = k_max;
  detail::block_samples(f, k_max);  // validate the coarsest level up front
  const std::size_t n = f.grid_count();
  std::vector<cplx> cur = f.samples;  // block size 1
  std::size_t cur_b = 1;
  for (int k = k_min; k <= k_max; ++k) {
    const std::size_t b = detail::block_samples(f, k);
    while (cur_b < b) {  // pairwise halving up to block size b
      for (std::size_t start = 0; start < n; start += 2 * cur_b) {
        const cplx avg = (cur[start] + cur[start + cur_b]) * 0.5;
        for (std::size_t j = 0; j < 2 * cur_b; ++j) cur[start + j] = avg;
      }
      cur_b *= 2;
    }
    sw.levels.push_back(cur);
  }
  return sw;
}

inline SampledFunction martingale_variation(const SampledFunction& f, const VariationParams& vp,
                                            int k_min, int k_max) {
  MartingaleSweep sw = dyadic_averages(f, k_min, k_max);
  const std::size_t n = f.grid_count();
  SampledFunction out = SampledFunction::zeros(f.domain, n);
  std::vector<cplx> seq(sw.levels.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < sw.levels.size(); ++l) seq[l] = sw.levels[l][j];
    out.samples[j] = variation_norm(seq, vp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smooth convolution family A_k f = psi_k * f with psi_k = 2^{-k} psi(2^{-k} .).
// ---------------------------------------------------------------------------

// Smooth even bump supported in [-1,1], built from the exp(-1/t) ramp; it is
// normalized discretely per level so constants are reproduced exactly.
inline double psi_profile(double t) {
  auto ramp = [](double u) {  // 0 for u <= 0, 1 for u >= 1, smooth in between
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
  };
  return ramp(1.0 + t) * ramp(1.0 - t);
}

namespace detail {

// Circular convolution (g * f)(x_i) = dx * sum_j f(x_j) g(x_i - x_j) on an
// n-point grid (n a power of two), via three FFTs.
inline std::vector<cplx> circular_convolve(const std::vector<cplx>& f, const std::vector<cplx>& g,
                                           double dx) {
  std::vector<cplx> a = f, b = g;
  fft(a, false);
  fft(b, false);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i] * dx;
  fft(a, true);
  return a;
}

}  // namespace detail

// A_k f for k = k_min..k_max.  Periodic domains wrap; compact domains zero-pad
// to twice the grid, so the kernel support 2^{k+1} must not exceed the domain
// length there.
inline MartingaleSweep smooth_family(const SampledFunction& f, int k_min, int k_max) {
  if (k_min > k_max) throw std::invalid_argument("smooth_family: empty level range");
  const std::size_t n = f.grid_count();
  if (!is_power_of_two(n)) throw std::invalid_argument("smooth_family: power-of-two grid required");
  const double dx = f.dx();
  const double len = f.domain.length();
  MartingaleSweep sw;
  sw.domain = f.domain;
  sw.k_min = k_min;
  sw.k_max = k_max;
  const std::size_t m = f.domain.periodic ? n : 2 * n;
  std::vector<cplx> fp(m, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) fp[j] = f.samples[j];
  for (int k = k_min; k <= k_max; ++k) {
    const double scale = std::ldexp(1.0, k);
    if (!(scale >= dx)) throw std::invalid_argument("smooth_family: 2^k below the grid step");
    if (!f.domain.periodic && 2.0 * scale > len)
      throw std::invalid_argument("smooth_family: kernel support exceeds the compact domain");
    std::vector<cplx> kern(m, cplx{0.0, 0.0});
    double mass = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double off = (j < m / 2 ? static_cast<double>(j)
                                    : static_cast<double>(j) - static_cast<double>(m)) *
                         dx;
      double v = psi_profile(off / scale) / scale;
      if (f.domain.periodic) {  // periodize the kernel across the circle
        for (int w = 1; w * len <= scale + len; ++w) {
          v += psi_profile((off + w * len) / scale) / scale;
          v += psi_profile((off - w * len) / scale) / scale;
        }
      }
      kern[j] = v;
      mass += v * dx;
    }
    if (!(mass > 0.0)) throw std::runtime_error("smooth_family: degenerate kernel");
    for (cplx& v : kern) v /= mass;  // exact unit mass on the grid
    std::vector<cplx> conv = detail::circular_convolve(fp, kern, dx);
    conv.resize(n);
    sw.levels.push_back(std::move(conv));
  }
  return sw;
}

struct SquareFunctionResult {
  SampledFunction values;  // x -> (sum_k |A_k f(x) - E_k[f](x)|^2)^{1/2}
  double norm = 0.0;       // L^p norm of values
  double ratio = 0.0;      // norm / ||f||_p
};

inline SquareFunctionResult square_function(const SampledFunction& f, int k_min, int k_max,
                                            double p) {
  MartingaleSweep avg = dyadic_averages(f, k_min, k_max);
  MartingaleSweep smooth = smooth_family(f, k_min, k_max);
  const std::size_t n = f.grid_count();
  SquareFunctionResult out;
  out.values = SampledFunction::zeros(f.domain, n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t l = 0; l < avg.levels.size(); ++l)
      acc += std::norm(smooth.levels[l][j] - avg.levels[l][j]);
    out.values.samples[j] = std::sqrt(acc);
  }
  out.norm = lp_norm(out.values, p);
  const double fn = lp_norm(f, p);
  out.ratio = fn > 0.0 ? out.norm / fn : 0.0;
  return out;
}

}  // namespace vnlab
