#pragma once

// r-variation norms of finite sequences and metric-space-valued curves:
//   V^r(a) = sup over increasing index chains n_0 < ... < n_K of
//            (sum_l |a_{n_l} - a_{n_{l-1}}|^r)^{1/r}.
// Computed exactly by dynamic programming over the O(N^2) increment graph,
// with an exhaustive oracle for small instances and the Hoelder-dual
// linearization realizing the value as a pairing.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace vnlab {

struct VariationParams {
  double r = 2.0;  // kInf encodes r = infinity explicitly

  VariationParams() = default;
  explicit VariationParams(double rr) : r(rr) {
    if (!(rr >= 1.0)) throw std::invalid_argument("VariationParams: r >= 1 required");
  }
  static VariationParams infinite() { return VariationParams(kInf); }
  bool is_infinite() const { return r == kInf; }
  double conjugate() const {  // r' with 1/r + 1/r' = 1
    if (r == 1.0) return kInf;
    return r / (r - 1.0);
  }
};

struct IndexedSequence {
  std::vector<cplx> values;
  std::vector<long long> indices;

  IndexedSequence() = default;
  explicit IndexedSequence(std::vector<cplx> v) : values(std::move(v)) {
    if (values.empty()) throw std::invalid_argument("IndexedSequence: non-empty required");
    indices.resize(values.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<long long>(i);
  }
  IndexedSequence(std::vector<cplx> v, std::vector<long long> idx)
      : values(std::move(v)), indices(std::move(idx)) {
    if (values.empty() || values.size() != indices.size())
      throw std::invalid_argument("IndexedSequence: values/indices mismatch");
    for (std::size_t i = 1; i < indices.size(); ++i)
      if (indices[i] <= indices[i - 1])
        throw std::invalid_argument("IndexedSequence: indices must increase strictly");
  }
};

namespace detail {

// |t|^r with fast paths for the exponents the experiments actually use.
struct PowR {
  enum Mode { kOne, kTwo, kInt, kGen } mode;
  double r;
  int n;
  explicit PowR(double rr) : r(rr) {
    double ri = std::round(rr);
    if (rr == 1.0)
      mode = kOne;
    else if (rr == 2.0)
      mode = kTwo;
    else if (ri == rr && rr > 0.0 && rr <= 16.0)
      mode = kInt, n = static_cast<int>(ri);
    else
      mode = kGen;
  }
  double operator()(double t) const {
    switch (mode) {
      case kOne:
        return t;
      case kTwo:
        return t * t;
      case kInt: {
        double acc = 1.0, base = t;
        int e = n;
        while (e) {
          if (e & 1) acc *= base;
          base *= base;
          e >>= 1;
        }
        return acc;
      }
      default:
        return std::pow(t, r);
    }
  }
};

// Shared DP core: dist(i,j) gives the increment weight for i < j.
template <class Dist>
double variation_dp(std::size_t n, const Dist& dist, const VariationParams& vp) {
  if (n < 2) return 0.0;
  if (vp.is_infinite()) {
    double m = 0.0;
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) m = std::max(m, dist(i, j));
    return m;
  }
  PowR pw(vp.r);
  std::vector<double> best(n, 0.0);
  double total = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    double bj = 0.0;
    for (std::size_t i = 0; i < j; ++i) {
      double cand = best[i] + pw(dist(i, j));
      if (cand > bj) bj = cand;
    }
    best[j] = bj;
    if (bj > total) total = bj;
  }
  return std::pow(total, 1.0 / vp.r);
}

}  // namespace detail

inline double variation_norm(const IndexedSequence& seq, const VariationParams& vp) {
  const std::vector<cplx>& a = seq.values;
  return detail::variation_dp(
      a.size(), [&](std::size_t i, std::size_t j) { return std::abs(a[j] - a[i]); }, vp);
}

inline double variation_norm(const std::vector<cplx>& values, const VariationParams& vp) {
  return detail::variation_dp(
      values.size(), [&](std::size_t i, std::size_t j) { return std::abs(values[j] - values[i]); },
      vp);
}

// Exhaustive test oracle: every one of the 2^N subsequences.
inline double variation_norm_bruteforce(const IndexedSequence& seq, const VariationParams& vp) {
  const std::size_t n = seq.values.size();
  if (n > 20) throw std::invalid_argument("variation_norm_bruteforce: length > 20");
  if (n < 2) return 0.0;
  detail::PowR pw(vp.is_infinite() ? 1.0 : vp.r);
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) < 2) continue;
    double acc = 0.0;
    bool have_prev = false;
    cplx prev;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      if (have_prev) {
        double d = std::abs(seq.values[i] - prev);
        acc = vp.is_infinite() ? std::max(acc, d) : acc + pw(d);
      }
      prev = seq.values[i];
      have_prev = true;
    }
    best = std::max(best, acc);
  }
  return vp.is_infinite() ? best : std::pow(best, 1.0 / vp.r);
}

template <class Dist>
double metric_variation(std::size_t num_points, const Dist& dist, const VariationParams& vp) {
  return detail::variation_dp(num_points, dist, vp);
}

// ---------------------------------------------------------------------------
// Fast path for real-valued sequences: the optimum only ever uses local
// extrema (interior points of monotone runs can be merged away because
// t -> t^r is superadditive for r >= 1, and deleting chain points never
// increases the value), so the DP runs on the pruned extrema list.  Property
// tests pin this against the unpruned DP.
// ---------------------------------------------------------------------------

inline void extrema_prune(const std::vector<double>& a, std::vector<double>& out) {
  out.clear();
  for (double v : a) {
    if (!out.empty() && v == out.back()) continue;
    out.push_back(v);
  }
  if (out.size() < 3) return;
  std::size_t w = 1;
  for (std::size_t i = 1; i + 1 < out.size(); ++i) {
    double lo = out[w - 1];
    bool up_in = out[i] > lo;
    bool up_out = out[i + 1] > out[i];
    if (up_in != up_out) out[w++] = out[i];
  }
  out[w++] = out.back();
  out.resize(w);
}

inline double variation_norm_real(const std::vector<double>& a, const VariationParams& vp) {
  static thread_local std::vector<double> buf;
  extrema_prune(a, buf);
  return detail::variation_dp(
      buf.size(), [&](std::size_t i, std::size_t j) { return std::abs(buf[j] - buf[i]); }, vp);
}

// ---------------------------------------------------------------------------
// Hoelder-dual linearization: the argmax chain plus coefficients
//   a_k = conj(sgn D_k) |D_k|^{r-1} / (sum_l |D_l|^r)^{1/r'}
// so that sum_k D_k a_k = V^r(seq) and sum_k |a_k|^{r'} = 1.
// ---------------------------------------------------------------------------

struct DualLinearization {
  std::vector<long long> partition;  // chain expressed in the sequence's indices
  std::vector<cplx> coefficients;    // a_1 .. a_K
  double value = 0.0;                // the realized V^r
};

inline DualLinearization dual_linearization(const IndexedSequence& seq, const VariationParams& vp) {
  if (vp.is_infinite() || vp.r <= 1.0)
    throw std::invalid_argument("dual_linearization: 1 < r < infinity required");
  const std::vector<cplx>& a = seq.values;
  const std::size_t n = a.size();
  detail::PowR pw(vp.r);

  // Suffix DP: g[i] = best chain weight starting at i; minpts[i] = fewest
  // points among weight-optimal chains from i (ties broken toward fewer
  // points, then lexicographically smallest chain, per the contract).
  std::vector<double> g(n, 0.0);
  std::vector<std::size_t> minpts(n, 1);
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) {
      double cand = pw(std::abs(a[j] - a[ii])) + g[j];
      if (cand > g[ii] || (cand == g[ii] && g[ii] > 0.0 && minpts[j] + 1 < minpts[ii])) {
        g[ii] = cand;
        minpts[ii] = minpts[j] + 1;
      }
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total = std::max(total, g[i]);
  if (total <= 0.0) throw std::invalid_argument("dual_linearization: zero variation");

  std::size_t best_pts = n + 1;
  for (std::size_t i = 0; i < n; ++i)
    if (g[i] == total) best_pts = std::min(best_pts, minpts[i]);
  std::size_t cur = 0;
  while (!(g[cur] == total && minpts[cur] == best_pts)) ++cur;

  DualLinearization out;
  out.partition.push_back(seq.indices[cur]);
  std::vector<cplx> chain_vals{a[cur]};
  while (minpts[cur] > 1) {
    std::size_t nxt = cur;
    for (std::size_t j = cur + 1; j < n; ++j) {
      if (pw(std::abs(a[j] - a[cur])) + g[j] == g[cur] && minpts[j] == minpts[cur] - 1) {
        nxt = j;
        break;
      }
    }
    if (nxt == cur) throw std::logic_error("dual_linearization: chain reconstruction failed");
    cur = nxt;
    out.partition.push_back(seq.indices[cur]);
    chain_vals.push_back(a[cur]);
  }

  double sum_r = 0.0;
  for (std::size_t k = 1; k < chain_vals.size(); ++k)
    sum_r += pw(std::abs(chain_vals[k] - chain_vals[k - 1]));
  const double rp = vp.conjugate();
  const double denom = std::pow(sum_r, 1.0 / rp);
  for (std::size_t k = 1; k < chain_vals.size(); ++k) {
    cplx d = chain_vals[k] - chain_vals[k - 1];
    double m = std::abs(d);
    cplx sgn = d / m;
    out.coefficients.push_back(std::conj(sgn) * std::pow(m, vp.r - 1.0) / denom);
  }
  out.value = std::pow(sum_r, 1.0 / vp.r);
  return out;
}

}  // namespace vnlab
