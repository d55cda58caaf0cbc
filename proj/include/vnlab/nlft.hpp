#pragma once

// SU(1,1)-valued curves driven by a piecewise-constant potential: exact
// exponential propagation, left/right traces, the log-metric, curve
// r-variation, bisection, and the trace-comparison experiment.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fit.hpp"
#include "grid.hpp"
#include "rng.hpp"
#include "variation.hpp"

namespace vnlab {

// Group element [[a, b], [conj(b), conj(a)]] with |a|^2 - |b|^2 = 1.
struct SU11Element {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};
};

// Algebra element [[i d, c], [conj(c), -i d]].
struct AlgebraElement {
  cplx c{0.0, 0.0};
  double d = 0.0;
};

inline SU11Element su11_mul(const SU11Element& g, const SU11Element& h) {
  return {g.a * h.a + g.b * std::conj(h.b), g.a * h.b + g.b * std::conj(h.a)};
}

inline SU11Element su11_inverse(const SU11Element& g) { return {std::conj(g.a), -g.b}; }

// Deviation of |a|^2 - |b|^2 from 1; zero exactly on the group.
inline double su11_defect(const SU11Element& g) {
  return std::abs(std::norm(g.a) - std::norm(g.b) - 1.0);
}

// |c| + |d|: the generators w = [[0,1],[1,0]] and v = [[0,i],[-i,0]] have unit
// norm, and the off-diagonal and diagonal components couple additively.  (A
// Euclidean combination would be blind to the leading commutator correction,
// which is purely diagonal when the generators are off-diagonal, pushing the
// trace-comparison deviation from quadratic to cubic order.)
inline double algebra_norm(const AlgebraElement& m) { return std::abs(m.c) + std::abs(m.d); }

inline AlgebraElement algebra_scale(const AlgebraElement& m, double t) {
  return {m.c * t, m.d * t};
}

inline AlgebraElement algebra_add(const AlgebraElement& x, const AlgebraElement& y) {
  return {x.c + y.c, x.d + y.d};
}

inline AlgebraElement algebra_sub(const AlgebraElement& x, const AlgebraElement& y) {
  return {x.c - y.c, x.d - y.d};
}

// exp(t M) in closed form: M^2 = (|c|^2 - d^2) I, so the exponential is
// ch(t, q) I + sc(t, q) t M with hyperbolic/trigonometric branches on the sign
// of q = |c|^2 - d^2 and a series for the parabolic neighborhood.
inline SU11Element algebra_exp(const AlgebraElement& m, double t) {
  const double q = std::norm(m.c) - m.d * m.d;
  const double z = t * t * q;
  double ch, sc;
  if (std::abs(z) < 1e-8) {
    ch = 1.0 + z / 2.0 + z * z / 24.0;
    sc = 1.0 + z / 6.0 + z * z / 120.0;
  } else if (q > 0.0) {
    const double u = t * std::sqrt(q);
    ch = std::cosh(u);
    sc = std::sinh(u) / u;
  } else {
    const double u = t * std::sqrt(-q);
    ch = std::cos(u);
    sc = std::sin(u) / u;
  }
  return {cplx{ch, m.d * t * sc}, m.c * t * sc};
}

// Principal logarithm, the inverse of algebra_exp.  Undefined on the branch
// cut Re(a) <= -1 (elliptic rotations by pi and beyond).
inline AlgebraElement algebra_log(const SU11Element& g) {
  const double ch = g.a.real();
  if (ch <= -1.0 + 1e-12)
    throw std::runtime_error("algebra_log: principal logarithm undefined (Re(a) <= -1)");
  double s;  // the factor with b = c s and Im(a) = d s
  if (ch >= 1.0) {
    const double u = std::acosh(ch);
    s = u < 1e-4 ? 1.0 + u * u / 6.0 : std::sinh(u) / u;
  } else {
    const double u = std::acos(ch);
    s = u < 1e-4 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
  }
  return {g.b / s, g.a.imag() / s};
}

inline double group_distance(const SU11Element& g, const SU11Element& h) {
  return algebra_norm(algebra_log(su11_mul(su11_inverse(g), h)));
}

// ---------------------------------------------------------------------------
// Evolution.
// ---------------------------------------------------------------------------

enum class Convention { left, right };

struct GroupCurve {
  Convention convention = Convention::left;
  std::vector<double> times;        // n+1 sample times
  std::vector<SU11Element> points;  // gamma at each time, gamma(t_0) = I
  std::vector<AlgebraElement> steps;  // n per-interval constant generators
};

// Piecewise-constant propagation of gamma' = gamma M (left) or gamma' = M gamma
// (right) with M_j = [[0, c_j], [conj(c_j), 0]], c_j = e^{-2 pi i k t_j} f_j.
inline GroupCurve nlft_evolve(const SampledFunction& f, double k,
                              Convention convention = Convention::left) {
  if (f.domain.periodic) throw std::invalid_argument("nlft_evolve: compact domain required");
  const std::size_t n = f.grid_count();
  const double dx = f.dx();
  GroupCurve curve;
  curve.convention = convention;
  curve.times.reserve(n + 1);
  curve.points.reserve(n + 1);
  curve.steps.reserve(n);
  curve.times.push_back(f.domain.left);
  curve.points.push_back(SU11Element{});
  for (std::size_t j = 0; j < n; ++j) {
    const double t = f.x(j);
    const cplx c = std::polar(1.0, -2.0 * M_PI * k * t) * f.samples[j];
    const AlgebraElement m{c, 0.0};
    curve.steps.push_back(m);
    const SU11Element e = algebra_exp(m, dx);
    const SU11Element& prev = curve.points.back();
    curve.points.push_back(convention == Convention::left ? su11_mul(prev, e)
                                                          : su11_mul(e, prev));
    curve.times.push_back(t + dx);
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Traces and lengths.
// ---------------------------------------------------------------------------

struct LeftTrace {
  std::vector<double> times;                 // n+1
  std::vector<AlgebraElement> increments;    // n, exactly dt_j * M_j
  std::vector<AlgebraElement> cumulative;    // n+1, running sums from zero
};

// gamma_l(t) = int gamma^{-1} gamma'; on each step the integrand is the
// constant M_j, so the increments are exactly dt_j * M_j.
inline LeftTrace left_trace(const GroupCurve& curve) {
  if (curve.convention != Convention::left)
    throw std::invalid_argument("left_trace: curve uses the right convention");
  LeftTrace tr;
  tr.times = curve.times;
  tr.cumulative.push_back(AlgebraElement{});
  for (std::size_t j = 0; j < curve.steps.size(); ++j) {
    const double dt = curve.times[j + 1] - curve.times[j];
    tr.increments.push_back(algebra_scale(curve.steps[j], dt));
    tr.cumulative.push_back(algebra_add(tr.cumulative.back(), tr.increments.back()));
  }
  return tr;
}

// |gamma| = sum dt_j ||M_j||.
inline double curve_length(const GroupCurve& curve) {
  double acc = 0.0;
  for (std::size_t j = 0; j < curve.steps.size(); ++j)
    acc += (curve.times[j + 1] - curve.times[j]) * algebra_norm(curve.steps[j]);
  return acc;
}

// |gamma_l| = sum ||increments||; equals curve_length as a machine identity
// when the time steps are powers of two (scaling by dt is then exact).
inline double trace_length(const LeftTrace& tr) {
  double acc = 0.0;
  for (const AlgebraElement& inc : tr.increments) acc += algebra_norm(inc);
  return acc;
}

// ---------------------------------------------------------------------------
// Variation and bisection.
// ---------------------------------------------------------------------------

inline double curve_variation(const GroupCurve& curve, const VariationParams& vp) {
  const std::vector<SU11Element>& p = curve.points;
  return metric_variation(
      p.size(), [&p](std::size_t i, std::size_t j) { return group_distance(p[i], p[j]); }, vp);
}

inline double trace_variation(const LeftTrace& tr, const VariationParams& vp) {
  const std::vector<AlgebraElement>& c = tr.cumulative;
  return metric_variation(
      c.size(), [&c](std::size_t i, std::size_t j) { return algebra_norm(algebra_sub(c[j], c[i])); },
      vp);
}

struct Subdivision {
  std::size_t index = 0;  // split sample; left keeps [0..index], right [index..n]
  double time = 0.0;
  double whole_variation = 0.0;
  double left_variation = 0.0;
  double right_variation = 0.0;
  double max_increment = 0.0;  // largest consecutive distance, the slack unit
  GroupCurve left, right;
};

// Split at the last sample whose prefix variation stays at or below
// 2^{-1/r} of the whole.  The left bound holds by construction; the exact
// continuum split point may fall between samples, so the right half can exceed
// the bound by at most one increment's distance.
template <typename Dist>
inline Subdivision subdivide_points(std::size_t count, Dist dist, const VariationParams& vp) {
  if (count < 3) throw std::invalid_argument("subdivide: need at least 3 samples");
  if (vp.is_infinite()) throw std::invalid_argument("subdivide: finite r required");
  // One DP pass gives every prefix variation: best[j] = max over chains ending
  // at j of sum of dist^r; the prefix [0..m] variation is max_{j<=m} best[j].
  detail::PowR pw(vp.r);
  std::vector<double> best(count, 0.0);
  std::vector<double> prefix(count, 0.0);
  double run = 0.0;
  for (std::size_t j = 1; j < count; ++j) {
    double b = 0.0;
    for (std::size_t i = 0; i < j; ++i) b = std::max(b, best[i] + pw(dist(i, j)));
    best[j] = b;
    run = std::max(run, b);
    prefix[j] = run;
  }
  const double whole = std::pow(prefix[count - 1], 1.0 / vp.r);
  if (!(whole > 0.0)) throw std::invalid_argument("subdivide: zero variation");
  const double target = std::pow(2.0, -1.0 / vp.r) * whole;
  const double target_pow = pw(target);
  std::size_t m = 0;
  for (std::size_t j = 0; j + 1 < count; ++j)
    if (prefix[j] <= target_pow * (1.0 + 1e-12)) m = j;
  Subdivision out;
  out.index = m;
  out.whole_variation = whole;
  out.left_variation = std::pow(prefix[m], 1.0 / vp.r);
  double mx = 0.0;
  for (std::size_t j = 0; j + 1 < count; ++j) mx = std::max(mx, dist(j, j + 1));
  out.max_increment = mx;
  return out;
}

inline Subdivision subdivide_curve(const GroupCurve& curve, double r) {
  const std::vector<SU11Element>& p = curve.points;
  VariationParams vp(r);
  Subdivision out = subdivide_points(
      p.size(), [&p](std::size_t i, std::size_t j) { return group_distance(p[i], p[j]); }, vp);
  const std::size_t m = out.index;
  out.time = curve.times[m];
  auto slice = [&curve](std::size_t lo, std::size_t hi) {
    GroupCurve part;
    part.convention = curve.convention;
    part.times.assign(curve.times.begin() + static_cast<long>(lo),
                      curve.times.begin() + static_cast<long>(hi) + 1);
    part.points.assign(curve.points.begin() + static_cast<long>(lo),
                       curve.points.begin() + static_cast<long>(hi) + 1);
    part.steps.assign(curve.steps.begin() + static_cast<long>(lo),
                      curve.steps.begin() + static_cast<long>(hi));
    return part;
  };
  out.left = slice(0, m);
  out.right = slice(m, curve.points.size() - 1);
  out.left_variation = m > 0 ? curve_variation(out.left, vp) : 0.0;
  out.right_variation = curve_variation(out.right, vp);
  return out;
}

// ---------------------------------------------------------------------------
// Trace comparison: Delta(eps) = | ||gamma||_{V^r} - ||gamma_l||_{V^r} |
// against ||gamma_l||_{V^r}, expected quadratic in the small regime.
// ---------------------------------------------------------------------------

struct TraceComparisonRow {
  double amplitude = 0.0;
  double trace_var = 0.0;
  double curve_var = 0.0;
  double delta = 0.0;
};

struct TraceComparisonResult {
  std::vector<TraceComparisonRow> rows;
  LinearFit fit;  // slope of log delta vs log trace_var
};

inline TraceComparisonResult trace_comparison_experiment(double r,
                                                         const std::vector<double>& amplitudes,
                                                         const std::vector<unsigned>& seeds,
                                                         std::size_t grid = 64) {
  VariationParams vp(r);
  TraceComparisonResult out;
  std::vector<double> xs, ys;
  for (double eps : amplitudes) {
    for (unsigned seed : seeds) {
      Rng rng(seed);
      SampledFunction f = SampledFunction::zeros(Domain::segment(-1.0, 1.0), grid);
      for (cplx& v : f.samples) v = eps * rng.cnormal();
      GroupCurve curve = nlft_evolve(f, 0.0);
      LeftTrace tr = left_trace(curve);
      TraceComparisonRow row;
      row.amplitude = eps;
      row.trace_var = trace_variation(tr, vp);
      row.curve_var = curve_variation(curve, vp);
      row.delta = std::abs(row.curve_var - row.trace_var);
      out.rows.push_back(row);
      if (row.delta > 0.0 && row.trace_var > 0.0) {
        xs.push_back(std::log(row.trace_var));
        ys.push_back(std::log(row.delta));
      }
    }
  }
  if (xs.size() >= 2) out.fit = linear_fit(xs, ys);
  return out;
}

}  // namespace vnlab
