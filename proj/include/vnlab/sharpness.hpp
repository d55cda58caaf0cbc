#pragma once

// Optimality construction for the variational Fourier partial-sum operator:
// alternating-sign Dirichlet index selection, the pointwise lower bound, and
// the Lorentz-norm growth experiment over the de la Vallee-Poussin kernels.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fit.hpp"
#include "fourier.hpp"
#include "grid.hpp"
#include "variation.hpp"

namespace vnlab {

struct IndexSelection {
  double x = 0.0;
  long long K = 0;              // largest integer < N x
  std::vector<long long> n;     // n_0 < ... < n_{2K-1}, each <= N
};

// n_k = smallest integer with (2 n_k + 1) x > 1/4 + k; the window membership
// (2 n_k + 1) x in (1/4 + k, 3/4 + k) and monotonicity are verified.
inline IndexSelection select_indices(long long N, double x) {
  if (N < 64) throw std::invalid_argument("select_indices: N >= 64 required");
  if (!(8.0 / static_cast<double>(N) <= x && x <= 0.125))
    throw std::invalid_argument("select_indices: need 8/N <= x <= 1/8");
  IndexSelection out;
  out.x = x;
  double Nx = static_cast<double>(N) * x;
  long long K = static_cast<long long>(std::ceil(Nx)) - 1;  // largest integer < Nx
  if (static_cast<double>(K) >= Nx) --K;
  out.K = K;
  out.n.reserve(static_cast<std::size_t>(2 * K));
  for (long long k = 0; k < 2 * K; ++k) {
    double target = 0.25 + static_cast<double>(k);
    long long nk = static_cast<long long>(std::floor((target / x - 1.0) / 2.0)) + 1;
    while ((2.0 * nk + 1.0) * x <= target) ++nk;          // smallest admissible
    while (nk > 0 && (2.0 * (nk - 1) + 1.0) * x > target) --nk;
    double phase = (2.0 * nk + 1.0) * x;
    if (!(phase > target && phase < target + 0.5))
      throw std::runtime_error("select_indices: window admits no integer");
    if (!out.n.empty() && nk <= out.n.back())
      throw std::runtime_error("select_indices: indices failed to increase");
    if (nk > N) throw std::runtime_error("select_indices: index exceeded N");
    out.n.push_back(nk);
  }
  return out;
}

// (sum_{j<K} |D_{n_{2j+1}}(x) - D_{n_{2j}}(x)|^r)^{1/r}; by the alternating
// signs each difference exceeds sqrt(2)/sin(pi x) in magnitude.
inline double pointwise_lower_bound(long long N, double x, double r) {
  IndexSelection sel = select_indices(N, x);
  detail::PowR pw(r);
  double acc = 0.0;
  for (long long j = 0; j < sel.K; ++j) {
    double hi = dirichlet_value(static_cast<int>(sel.n[static_cast<std::size_t>(2 * j)]), x);
    double lo = dirichlet_value(static_cast<int>(sel.n[static_cast<std::size_t>(2 * j + 1)]), x);
    acc += pw(std::abs(lo - hi));
  }
  return std::pow(acc, 1.0 / r);
}

// ---------------------------------------------------------------------------
// Growth experiment.  ratio(N) = ||V^r S f^N||_{L^{p,s}} / ||f^N||_{L^{p,1}}.
// The variation runs over degrees n = 0..N+1 where S_n f^N = D_n, so each
// grid point's sequence is generated directly from the Dirichlet closed form
// (with a periodically re-synchronised rotation recurrence) and fed to the
// real-sequence variation fast path.
// ---------------------------------------------------------------------------

struct GrowthRow {
  long long N = 0;
  double ratio = 0.0;
};

struct GrowthResult {
  std::vector<GrowthRow> table;
  double fitted_exponent = 0.0;  // slope of log ratio vs log N
  double target = 0.0;           // 1/p - 1/r' when p < r'
};

inline double variational_ratio_for_kernel(long long N, double p, double r, double s,
                                           std::size_t grid_count) {
  SampledFunction v = SampledFunction::zeros(Domain::circle(), grid_count);
  VariationParams vp(r);
  std::vector<double> seq(static_cast<std::size_t>(N) + 2);
  for (std::size_t j = 0; j < grid_count; ++j) {
    const double x = v.x(j);
    const double sx = std::sin(M_PI * x);
    if (std::abs(sx) < 1e-12) {
      // x = 0: D_n(0) = 2n+1 increases monotonically, one increment suffices.
      std::vector<double> mono{1.0, 2.0 * static_cast<double>(N + 1) + 1.0};
      v.samples[j] = variation_norm_real(mono, vp);
      continue;
    }
    const cplx step = std::polar(1.0, 2.0 * M_PI * x);
    cplx z = std::polar(1.0, M_PI * x);  // e^{i (2n+1) pi x} at n = 0
    for (long long deg = 0; deg <= N + 1; ++deg) {
      if ((deg & 1023) == 0) z = std::polar(1.0, (2.0 * deg + 1.0) * M_PI * x);
      seq[static_cast<std::size_t>(deg)] = z.imag() / sx;
      z *= step;
    }
    v.samples[j] = variation_norm_real(seq, vp);
  }
  double num = lorentz_norm(v, {p, s});
  double den = lorentz_norm(vallee_poussin(static_cast<int>(N), grid_count), {p, 1.0});
  return num / den;
}

inline GrowthResult growth_experiment(double p, double r, double s,
                                      const std::vector<long long>& N_list,
                                      std::size_t grid_count) {
  GrowthResult out;
  const double rp = VariationParams(r).conjugate();
  out.target = 1.0 / p - 1.0 / rp;
  std::vector<double> xs, ys;
  for (long long N : N_list) {
    double ratio = variational_ratio_for_kernel(N, p, r, s, grid_count);
    out.table.push_back({N, ratio});
    xs.push_back(static_cast<double>(N));
    ys.push_back(ratio);
  }
  out.fitted_exponent = loglog_fit(xs, ys).slope;
  return out;
}

// For the endpoint p = r': ratio^s should be affine in log N; returns the fit
// of ratio^s against log N (positive slope, high R^2 expected).
inline LinearFit growth_log_fit(const GrowthResult& g, double s) {
  std::vector<double> xs, ys;
  for (const GrowthRow& row : g.table) {
    xs.push_back(std::log(static_cast<double>(row.N)));
    ys.push_back(std::pow(row.ratio, s));
  }
  return linear_fit(xs, ys);
}

}  // namespace vnlab
