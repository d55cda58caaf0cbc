#pragma once

// Uniform-grid sampled functions, exact dyadic interval arithmetic, and
// Lorentz-norm numerics shared by every other header in the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace vnlab {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Domains.  Either the unit circle [0,1) (period fixed to 1) or a compact
// segment [left, right).  Samples live at left endpoints of the grid cells;
// all continuum integrals are left-endpoint Riemann sums.
// ---------------------------------------------------------------------------

struct Domain {
  bool periodic = true;
  double left = 0.0;
  double right = 1.0;

  static Domain circle() { return Domain{true, 0.0, 1.0}; }
  static Domain segment(double l, double r) {
    if (!(l < r)) throw std::invalid_argument("Domain: need left < right");
    return Domain{false, l, r};
  }
  double length() const { return right - left; }
  bool operator==(const Domain&) const = default;
};

struct SampledFunction {
  Domain domain;
  std::vector<cplx> samples;

  SampledFunction() = default;
  SampledFunction(Domain d, std::vector<cplx> s) : domain(d), samples(std::move(s)) {
    if (samples.size() < 2) throw std::invalid_argument("SampledFunction: grid_count >= 2 required");
  }
  static SampledFunction zeros(Domain d, std::size_t n) {
    return SampledFunction(d, std::vector<cplx>(n, cplx{0.0, 0.0}));
  }

  std::size_t grid_count() const { return samples.size(); }
  double dx() const { return domain.length() / static_cast<double>(samples.size()); }
  double x(std::size_t j) const { return domain.left + static_cast<double>(j) * dx(); }
};

inline bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

// Left-endpoint quadrature of f over its domain.
inline cplx integral(const SampledFunction& f) {
  cplx s{0.0, 0.0};
  for (const cplx& v : f.samples) s += v;
  return s * f.dx();
}

// Grid L^p norm, p finite; p = inf gives the sup norm.
inline double lp_norm(const SampledFunction& f, double p) {
  if (p == kInf) {
    double m = 0.0;
    for (const cplx& v : f.samples) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p > 0 required");
  double s = 0.0;
  for (const cplx& v : f.samples) s += std::pow(std::abs(v), p);
  return std::pow(s * f.dx(), 1.0 / p);
}

// Grid inner product <f,g> = integral of f * conj(g).
inline cplx inner(const SampledFunction& f, const SampledFunction& g) {
  if (f.grid_count() != g.grid_count()) throw std::invalid_argument("inner: grid mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t j = 0; j < f.samples.size(); ++j) s += f.samples[j] * std::conj(g.samples[j]);
  return s * f.dx();
}

// ---------------------------------------------------------------------------
// Dyadic intervals [2^k m, 2^k (m+1)) with exact integer endpoints.  Floating
// point enters only when an endpoint is materialised for quadrature.
// ---------------------------------------------------------------------------

struct DyadicInterval {
  int scale = 0;        // length 2^scale, exactly
  long long index = 0;  // [index * 2^scale, (index+1) * 2^scale)

  double length() const { return std::ldexp(1.0, scale); }
  double lower() const { return std::ldexp(static_cast<double>(index), scale); }
  double upper() const { return std::ldexp(static_cast<double>(index + 1), scale); }
  double center() const { return std::ldexp(static_cast<double>(2 * index + 1), scale - 1); }

  DyadicInterval parent() const { return DyadicInterval{scale + 1, index >> 1}; }
  bool is_left_child() const { return (index & 1) == 0; }

  bool contains(double y) const { return y >= lower() && y < upper(); }
  bool contains(const DyadicInterval& o) const {
    if (o.scale > scale) return false;
    int d = scale - o.scale;
    if (d > 62) throw std::invalid_argument("DyadicInterval::contains: scale gap too large");
    return (o.index >> d) == index;
  }
  bool disjoint(const DyadicInterval& o) const { return !contains(o) && !o.contains(*this); }

  // Interval of length 2^scale containing x.
  static DyadicInterval covering(int scale, double x) {
    return DyadicInterval{scale, static_cast<long long>(std::floor(std::ldexp(x, -scale)))};
  }

  bool operator==(const DyadicInterval&) const = default;
};

inline std::pair<DyadicInterval, DyadicInterval> dyadic_children(const DyadicInterval& J) {
  return {DyadicInterval{J.scale - 1, 2 * J.index}, DyadicInterval{J.scale - 1, 2 * J.index + 1}};
}

// ---------------------------------------------------------------------------
// Lorentz norms via the decreasing rearrangement.
// ---------------------------------------------------------------------------

struct LorentzParams {
  double p = 2.0;
  double s = 2.0;  // kInf encodes the weak (sup) form explicitly
};

inline std::vector<double> decreasing_rearrangement(const SampledFunction& f) {
  std::vector<double> a(f.samples.size());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = std::abs(f.samples[j]);
  std::sort(a.begin(), a.end(), std::greater<double>());
  return a;
}

// (int_0^|domain| (t^{1/p} f*(t))^s dt/t)^{1/s}, evaluated at t = (j+1)*dx so
// the t -> 0 singularity is never touched; s = inf takes the sup instead.
inline double lorentz_norm(const SampledFunction& f, const LorentzParams& lp) {
  if (!(lp.p > 0.0)) throw std::invalid_argument("lorentz_norm: p > 0 required");
  if (!(lp.s > 0.0)) throw std::invalid_argument("lorentz_norm: s > 0 required");
  const std::vector<double> fs = decreasing_rearrangement(f);
  const double dt = f.dx();
  if (lp.s == kInf) {
    double m = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      double t = static_cast<double>(j + 1) * dt;
      m = std::max(m, std::pow(t, 1.0 / lp.p) * fs[j]);
    }
    return m;
  }
  // f* is a genuine step function on cells [j dt, (j+1) dt), so integrate the
  // weight t^{s/p-1} exactly per cell; the singularity at t = 0 would otherwise
  // be under-counted when the largest values sit on only a few cells.
  const double a = lp.s / lp.p;
  double acc = 0.0;
  double tpow_lo = 0.0;  // (j dt)^a, carried across iterations
  for (std::size_t j = 0; j < fs.size(); ++j) {
    double tpow_hi = std::pow(static_cast<double>(j + 1) * dt, a);
    if (fs[j] != 0.0) acc += (tpow_hi - tpow_lo) / a * std::pow(fs[j], lp.s);
    tpow_lo = tpow_hi;
  }
  return std::pow(acc, 1.0 / lp.s);
}

}  // namespace vnlab
