#pragma once

// Frequency-side machinery: the smooth transition bump, maximal dyadic
// partitions of a frequency window, wave packets with compactly supported
// transforms, multitile classes, separation splitting, and the linearized
// model operator.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "fourier.hpp"
#include "grid.hpp"
#include "variation.hpp"

namespace vnlab {

// ---------------------------------------------------------------------------
// Smooth transition and the window multipliers.
// ---------------------------------------------------------------------------

// Smooth monotone 0-to-1 transition across [-1/100, 1/100], flat to infinite
// order at both plateaus (so square roots of differences stay smooth).
inline double nu(double x) {
  auto e = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double t = (x + 0.01) / 0.02;
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = e(t), b = e(1.0 - t);
  return a / (a + b);
}

// nu_i(eta) = nu(2^{-i}(eta + 1/2)) - nu(eta - 1/2); supported in
// [-13/25, 51/100] for i in {-1, 0, 1}.
inline double nu_i(int i, double eta) {
  return nu(std::ldexp(eta + 0.5, -i)) - nu(eta - 0.5);
}

// phi_{omega,i}(xi) = nu_i((xi - c(omega)) / |omega|) for omega = [lo, hi).
inline double phi_window(double lo, double hi, int i, double xi) {
  const double len = hi - lo;
  return nu_i(i, (xi - 0.5 * (lo + hi)) / len);
}

inline double phi_window(const DyadicInterval& omega, int i, double xi) {
  return phi_window(omega.lower(), omega.upper(), i, xi);
}

// ---------------------------------------------------------------------------
// Maximal dyadic partition of (xi0, xi1).
// ---------------------------------------------------------------------------

struct PartitionInterval {
  DyadicInterval J;
  int i = 0;  // left-adjacent partition neighbor has size 2^i |J|
};

struct PartitionResult {
  std::vector<PartitionInterval> intervals;  // sorted left to right
  double dropped_length = 0.0;  // untiled length at the two truncated ends
};

namespace detail {

inline bool partition_predicate(const DyadicInterval& J, double xi0, double xi1) {
  const double l = J.lower(), u = J.upper(), len = J.length();
  return l > xi0 && u < xi1 && (l - xi0) >= len && (xi1 - u) >= len;
}

inline void partition_recurse(const DyadicInterval& J, double xi0, double xi1, double cutoff,
                              std::vector<DyadicInterval>& out) {
  if (J.upper() <= xi0 || J.lower() >= xi1) return;
  if (J.length() < cutoff) return;  // truncated tower tail
  if (partition_predicate(J, xi0, xi1)) {
    out.push_back(J);  // parent failed, so J is maximal
    return;
  }
  auto [l, r] = dyadic_children(J);
  partition_recurse(l, xi0, xi1, cutoff, out);
  partition_recurse(r, xi0, xi1, cutoff, out);
}

inline bool is_dyadic_point(double x, int scale_lo, int scale_hi) {
  for (int s = scale_hi; s >= scale_lo; --s) {
    const double y = std::ldexp(x, -s);
    if (std::abs(y) > 9e15) continue;  // beyond integer resolution of double
    if (y == std::floor(y)) return true;
  }
  return false;
}

}  // namespace detail

// Maximal dyadic J inside (xi0, xi1) with dist(J, xi0) >= |J| and
// dist(J, xi1) >= |J|, truncated to |J| >= 2^{-depth_cap} (xi1 - xi0); each J
// is tagged with i(J) from its left-adjacent neighbor (the truncated leftmost
// interval continues the shrinking tower, so it is tagged -1).
inline PartitionResult maximal_partition(double xi0, double xi1, int depth_cap) {
  if (!(xi0 < xi1)) throw std::invalid_argument("maximal_partition: xi0 < xi1 required");
  if (depth_cap < 3) throw std::invalid_argument("maximal_partition: depth_cap >= 3 required");
  const double len = xi1 - xi0;
  const int s_top = static_cast<int>(std::ceil(std::log2(len))) + 1;
  const double cutoff = std::ldexp(len, -depth_cap);
  const int s_cut = static_cast<int>(std::floor(std::log2(cutoff)));
  if (detail::is_dyadic_point(xi0, s_cut - 2, s_top) ||
      detail::is_dyadic_point(xi1, s_cut - 2, s_top))
    throw std::invalid_argument("maximal_partition: window endpoint is a dyadic endpoint");
  std::vector<DyadicInterval> found;
  const long long k_lo = static_cast<long long>(std::floor(std::ldexp(xi0, -s_top)));
  const long long k_hi = static_cast<long long>(std::floor(std::ldexp(xi1, -s_top)));
  for (long long k = k_lo; k <= k_hi; ++k)
    detail::partition_recurse(DyadicInterval{s_top, k}, xi0, xi1, cutoff, found);
  std::sort(found.begin(), found.end(),
            [](const DyadicInterval& a, const DyadicInterval& b) { return a.lower() < b.lower(); });
  PartitionResult out;
  for (std::size_t idx = 0; idx < found.size(); ++idx) {
    int i = -1;  // leftmost: the dropped tower neighbor below it has half size
    if (idx > 0) {
      const DyadicInterval& prev = found[idx - 1];
      if (prev.upper() != found[idx].lower())
        throw std::runtime_error("maximal_partition: non-adjacent members");
      i = prev.scale - found[idx].scale;
      if (i < -1 || i > 1) throw std::runtime_error("maximal_partition: neighbor ratio out of range");
    }
    out.intervals.push_back({found[idx], i});
  }
  if (!found.empty())
    out.dropped_length = (found.front().lower() - xi0) + (xi1 - found.back().upper());
  else
    out.dropped_length = len;
  return out;
}

// Nudge a frequency off the dyadic endpoints relevant at the given scales.
inline double snap_from_dyadic(double x, int scale_lo, int scale_hi) {
  double y = x;
  while (detail::is_dyadic_point(y, scale_lo, scale_hi))
    y += std::ldexp(1.0, scale_lo - 20) * (1.0 + std::abs(x));
  return y;
}

// ---------------------------------------------------------------------------
// Rho classes.
// ---------------------------------------------------------------------------

struct RhoIndex {
  int cls = 1;       // 1, 2, or 3
  int m = 1, n = 1;  // each in {1..4}
  bool left_side = true;

  bool operator==(const RhoIndex&) const = default;
};

// The ten admissible classes.
inline const std::vector<RhoIndex>& rho_classes() {
  static const std::vector<RhoIndex> R = {
      {1, 2, 1, true}, {1, 2, 2, true}, {1, 3, 1, true},  {1, 3, 2, true},  {2, 1, 1, true},
      {2, 1, 1, false}, {2, 2, 1, false}, {3, 4, 1, true}, {3, 3, 1, false}, {3, 4, 2, true}};
  return R;
}

// Membership of J in the class rho for the window (xi0, xi1).
inline bool rho_member(const DyadicInterval& J, double xi0, double xi1, const RhoIndex& rho) {
  const double l = J.lower(), u = J.upper(), len = J.length();
  if (!(l > xi0 && u < xi1)) return false;
  if (J.is_left_child() != rho.left_side) return false;
  const double mlo = l - (rho.m + 1) * len, mhi = u - (rho.m + 1) * len;  // J - (m+1)|J|
  const double nlo = l + (rho.n + 1) * len, nhi = u + (rho.n + 1) * len;  // J + (n+1)|J|
  switch (rho.cls) {
    case 1:
      return xi0 >= mlo && xi0 < mhi && xi1 >= nlo && xi1 < nhi;
    case 2:
      return xi0 >= mlo && xi0 < mhi && (xi1 - u) >= rho.n * len;
    case 3:
      return (l - xi0) > rho.m * len && xi1 >= nlo && xi1 < nhi;
    default:
      throw std::invalid_argument("rho_member: class must be 1, 2, or 3");
  }
}

// The unique class of a partition member; throws if the ten classes fail to
// be a disjoint cover at this J.
inline RhoIndex classify_rho(const DyadicInterval& J, double xi0, double xi1) {
  const RhoIndex* hit = nullptr;
  for (const RhoIndex& rho : rho_classes()) {
    if (rho_member(J, xi0, xi1, rho)) {
      if (hit != nullptr) throw std::runtime_error("classify_rho: classes overlap");
      hit = &rho;
    }
  }
  if (hit == nullptr) throw std::runtime_error("classify_rho: no class matched");
  return *hit;
}

// Forced left-neighbor size exponent per class: every partition member of a
// given class has the same |J'|/|J| ratio.  (Verified against maximal
// partitions in the test suite; left-region classes sit in the shrinking
// tower, right-region classes in the growing one.)
inline int i_rho(const RhoIndex& rho) {
  struct Entry {
    RhoIndex rho;
    int i;
  };
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    t.push_back({{1, 2, 1, true}, 0});
    t.push_back({{1, 2, 2, true}, 0});
    t.push_back({{1, 3, 1, true}, 0});
    t.push_back({{1, 3, 2, true}, 0});
    t.push_back({{2, 1, 1, true}, -1});
    t.push_back({{2, 1, 1, false}, -1});
    t.push_back({{2, 2, 1, false}, 0});
    t.push_back({{3, 4, 1, true}, 1});
    t.push_back({{3, 3, 1, false}, 0});
    t.push_back({{3, 4, 2, true}, 1});
    return t;
  }();
  for (const Entry& e : table)
    if (e.rho == rho) return e.i;
  throw std::invalid_argument("i_rho: not one of the ten classes");
}

// ---------------------------------------------------------------------------
// Multitiles.
// ---------------------------------------------------------------------------

inline constexpr double kC3 = 11.0 / 10.0;
inline constexpr double kC2 = 2.0;
inline constexpr double kC1 = 12.0;

// Frequency interval [lo, hi), possibly half-infinite.
struct FreqInterval {
  double lo = 0.0, hi = 0.0;

  bool contains(double x) const { return x >= lo && x < hi; }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool disjoint(const FreqInterval& o) const { return hi <= o.lo || o.hi <= lo; }
  bool subset_of(const FreqInterval& o) const { return lo >= o.lo && hi <= o.hi; }
};

// Dilation about the center for finite intervals; half-infinite intervals are
// fixed by dilation (their "center" is at infinity).
inline FreqInterval dilate(const FreqInterval& w, double c) {
  if (!w.finite()) return w;
  const double mid = 0.5 * (w.lo + w.hi), half = 0.5 * (w.hi - w.lo) * c;
  return {mid - half, mid + half};
}

inline FreqInterval to_freq(const DyadicInterval& d) { return {d.lower(), d.upper()}; }

struct Tile {
  DyadicInterval I;
  DyadicInterval omega;
};

struct Multitile {
  DyadicInterval I;
  DyadicInterval omega_u;
  FreqInterval omega_l, omega_h;
  RhoIndex rho;
};

// omega_l / omega_h placement from (omega_u, rho); accepts any
// (class, m, n, side) with class in {1,2,3} and m, n in {1..4}.
inline Multitile build_multitile(const DyadicInterval& I, const DyadicInterval& omega_u,
                                 const RhoIndex& rho) {
  if (rho.cls < 1 || rho.cls > 3 || rho.m < 1 || rho.m > 4 || rho.n < 1 || rho.n > 4)
    throw std::invalid_argument("build_multitile: rho out of range");
  if (I.length() * omega_u.length() != 0.5)
    throw std::invalid_argument("build_multitile: |I| |omega_u| must be 1/2");
  if (omega_u.is_left_child() != rho.left_side)
    throw std::invalid_argument("build_multitile: omega_u is not the rho-side child");
  const double a = omega_u.lower(), b = omega_u.upper(), len = omega_u.length();
  Multitile p;
  p.I = I;
  p.omega_u = omega_u;
  p.rho = rho;
  switch (rho.cls) {
    case 1:
      p.omega_l = {a - (rho.m + 1) * len, b - (rho.m + 1) * len};
      p.omega_h = {a + (rho.n + 1) * len, b + (rho.n + 1) * len};
      break;
    case 2:
      p.omega_l = {a - (rho.m + 1) * len, b - (rho.m + 1) * len};
      p.omega_h = {a + (rho.n + 1) * len, kInf};
      break;
    case 3:
      p.omega_l = {-kInf, b - (rho.m + 1) * len};
      p.omega_h = {a + (rho.n + 1) * len, b + (rho.n + 1) * len};
      break;
  }
  return p;
}

// Frequency reflection P -> P~: omega_u negates, omega_l and omega_h swap
// (negated), classes 2 and 3 exchange with (m, n) swapped, and the side child
// flips.  An involution.
inline Multitile reflect(const Multitile& p) {
  Multitile q;
  q.I = p.I;
  q.omega_u = DyadicInterval{p.omega_u.scale, -(p.omega_u.index + 1)};
  q.omega_l = {-p.omega_h.hi, -p.omega_h.lo};
  q.omega_h = {-p.omega_l.hi, -p.omega_l.lo};
  q.rho = p.rho;
  q.rho.left_side = !p.rho.left_side;
  if (p.rho.cls == 2) q.rho.cls = 3;
  if (p.rho.cls == 3) q.rho.cls = 2;
  std::swap(q.rho.m, q.rho.n);
  return q;
}

// The constants block for 1- and 2-index multitiles; a 3-index is checked
// through its reflection.
inline bool constant_block_ok(const Multitile& p) {
  if (p.rho.cls == 3) return constant_block_ok(reflect(p));
  const FreqInterval wu = to_freq(p.omega_u);
  const FreqInterval c2u = dilate(wu, kC2), c2l = dilate(p.omega_l, kC2);
  return c2u.disjoint(c2l) && c2u.disjoint(p.omega_h) && c2l.subset_of(dilate(wu, kC1)) &&
         c2u.subset_of(dilate(p.omega_l, kC1));
}

// ---------------------------------------------------------------------------
// Separation split: scale residues mod 5 ((C2-C3)/(2C1) = 0.0375 >= 2^{-5}),
// translation residues mod 13 (so equal-length omega_u in one class with
// overlapping C1-dilates must coincide).
// ---------------------------------------------------------------------------

inline std::vector<std::vector<Multitile>> separation_split(const std::vector<Multitile>& tiles) {
  std::map<std::pair<int, long long>, std::vector<Multitile>> classes;
  for (const Multitile& p : tiles) {
    const int s = ((p.omega_u.scale % 5) + 5) % 5;
    const long long t = ((p.omega_u.index % 13) + 13) % 13;
    classes[{s, t}].push_back(p);
  }
  std::vector<std::vector<Multitile>> out;
  for (auto& [key, group] : classes) out.push_back(std::move(group));
  return out;
}

inline bool separation_ok(const std::vector<Multitile>& group) {
  for (const Multitile& p : group) {
    for (const Multitile& q : group) {
      if (q.omega_u.length() < p.omega_u.length() &&
          !(q.omega_u.length() <= (kC2 - kC3) / (2.0 * kC1) * p.omega_u.length()))
        return false;
      if (p.omega_u.length() == q.omega_u.length() &&
          !dilate(to_freq(p.omega_u), kC1).disjoint(dilate(to_freq(q.omega_u), kC1)) &&
          !(p.omega_u == q.omega_u))
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Discrete frequency transform on a compact grid [-L, L) with n samples: the
// dual lattice is xi_m = (m - n/2) / (2L), and the pair below is an exact
// bijection (discrete orthogonality), so spectral definitions of wave packets
// reconstruct exactly.
// ---------------------------------------------------------------------------

inline std::vector<double> dual_grid(const SampledFunction& f) {
  const std::size_t n = f.grid_count();
  const double len = f.domain.length();
  std::vector<double> xi(n);
  for (std::size_t m = 0; m < n; ++m)
    xi[m] = (static_cast<double>(m) - static_cast<double>(n) / 2.0) / len;
  return xi;
}

inline std::vector<cplx> to_frequency(const SampledFunction& f) {
  const std::size_t n = f.grid_count();
  if (!is_power_of_two(n) || f.domain.periodic)
    throw std::invalid_argument("to_frequency: compact power-of-two grid required");
  std::vector<cplx> a = f.samples;
  detail::fft(a, false);
  std::vector<cplx> spec(n);
  const double dx = f.dx();
  const long long half = static_cast<long long>(n) / 2;
  for (std::size_t m = 0; m < n; ++m) {
    const long long q = static_cast<long long>(m) - half;  // xi index
    const std::size_t k = static_cast<std::size_t>(((q % static_cast<long long>(n)) +
                                                    static_cast<long long>(n)) %
                                                   static_cast<long long>(n));
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;  // e^{-2 pi i xi_q (-L)}
    spec[m] = sign * dx * a[k];
  }
  return spec;
}

inline SampledFunction from_frequency(const Domain& domain, const std::vector<cplx>& spec) {
  const std::size_t n = spec.size();
  if (!is_power_of_two(n) || domain.periodic)
    throw std::invalid_argument("from_frequency: compact power-of-two grid required");
  const double len = domain.length();
  std::vector<cplx> a(n);
  const long long half = static_cast<long long>(n) / 2;
  for (std::size_t m = 0; m < n; ++m) {
    const long long q = static_cast<long long>(m) - half;
    const std::size_t k = static_cast<std::size_t>(((q % static_cast<long long>(n)) +
                                                    static_cast<long long>(n)) %
                                                   static_cast<long long>(n));
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    a[k] = sign * spec[m];
  }
  detail::fft(a, true);  // divides by n
  SampledFunction out = SampledFunction::zeros(domain, n);
  const double dxi_n = static_cast<double>(n) / len;  // 1/(2L) * n
  for (std::size_t j = 0; j < n; ++j) out.samples[j] = a[j] * dxi_n;
  return out;
}

// ---------------------------------------------------------------------------
// Wave packets.
// ---------------------------------------------------------------------------

// phi_P = sqrt(|I|) F^{-1}[sqrt(phi_{omega_u, i(rho)})] (. - c(I)), realized
// spectrally on the dual lattice.
inline SampledFunction wave_packet(const Multitile& p, const Domain& domain, std::size_t n) {
  const FreqInterval support = dilate(to_freq(p.omega_u), kC3);
  const double band = static_cast<double>(n) / (2.0 * domain.length());
  if (!(std::max(std::abs(support.lo), std::abs(support.hi)) < band))
    throw std::invalid_argument("wave_packet: grid band limit too small for C3 omega_u");
  SampledFunction probe = SampledFunction::zeros(domain, n);
  const std::vector<double> xi = dual_grid(probe);
  const int i = i_rho(p.rho);
  const double root_len = std::sqrt(p.I.length());
  const double cI = p.I.center();
  std::vector<cplx> spec(n, cplx{0.0, 0.0});
  for (std::size_t m = 0; m < n; ++m) {
    const double w = phi_window(p.omega_u, i, xi[m]);
    if (w <= 0.0) continue;
    spec[m] = root_len * std::sqrt(w) * std::polar(1.0, -2.0 * M_PI * cI * xi[m]);
  }
  return from_frequency(domain, spec);
}

// Relative L2 error of sum_I <f, phi_{I x J}> phihat_{I x J} against
// fhat phi_J, summing I of length 1/(2|J|) whose centers cover the domain
// extended by `radius` intervals on both sides.
inline double reconstruct_check(const DyadicInterval& J, int i, const SampledFunction& f,
                                long long radius) {
  const std::size_t n = f.grid_count();
  const std::vector<cplx> fhat = to_frequency(f);
  SampledFunction probe = SampledFunction::zeros(f.domain, n);
  const std::vector<double> xi = dual_grid(probe);
  const double Lp = 1.0 / (2.0 * J.length());
  const double dxi = 1.0 / f.domain.length();
  // Precompute sqrt(phi_J) on the lattice.
  std::vector<double> root(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    const double w = phi_window(J, i, xi[m]);
    if (w > 0.0) root[m] = std::sqrt(w);
  }
  // Distinct packet centers repeat with the grid period, so the I sum must
  // cover the essential support of f extended by `radius` intervals per side
  // without wrapping onto itself.
  double fmax = 0.0;
  for (const cplx& v : f.samples) fmax = std::max(fmax, std::abs(v));
  double x_lo = f.domain.right, x_hi = f.domain.left;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(f.samples[j]) > 1e-13 * fmax) {
      x_lo = std::min(x_lo, f.x(j));
      x_hi = std::max(x_hi, f.x(j));
    }
  }
  if (!(x_lo <= x_hi)) return 0.0;  // f identically zero
  long long k_lo = static_cast<long long>(std::floor(x_lo / Lp)) - radius;
  long long k_hi = static_cast<long long>(std::ceil(x_hi / Lp)) + radius;
  const long long period = static_cast<long long>(std::llround(f.domain.length() / Lp));
  if (k_hi - k_lo > period) {
    // Every distinct center is already requested; clamp to one period so no
    // packet is counted twice.
    k_lo = static_cast<long long>(std::floor(0.5 * (x_lo + x_hi) / Lp)) - period / 2;
    k_hi = k_lo + period;
  }
  std::vector<cplx> acc(n, cplx{0.0, 0.0});
  const double root_len = std::sqrt(Lp);
  for (long long k = k_lo; k < k_hi; ++k) {
    const double cI = (static_cast<double>(k) + 0.5) * Lp;
    cplx coef{0.0, 0.0};  // <fhat, phihat> * dxi
    for (std::size_t m = 0; m < n; ++m) {
      if (root[m] == 0.0) continue;
      const cplx ph = root_len * root[m] * std::polar(1.0, -2.0 * M_PI * cI * xi[m]);
      coef += fhat[m] * std::conj(ph);
    }
    coef *= dxi;
    for (std::size_t m = 0; m < n; ++m) {
      if (root[m] == 0.0) continue;
      acc[m] += coef * root_len * root[m] * std::polar(1.0, -2.0 * M_PI * cI * xi[m]);
    }
  }
  double err = 0.0, ref = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const cplx target = fhat[m] * (root[m] * root[m]);
    err += std::norm(acc[m] - target);
    ref += std::norm(target);
  }
  return ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);
}

// ---------------------------------------------------------------------------
// Linearization data and the model operator.
// ---------------------------------------------------------------------------

struct LinearizationData {
  std::size_t K = 0;
  std::vector<std::vector<double>> xi;  // per grid point: xi_0 < ... < xi_K
  std::vector<std::vector<cplx>> a;     // per grid point: a_1 .. a_K
};

// Checks strict increase of xi rows and unit r'-mass of the coefficients.
inline void validate_linearization(const LinearizationData& lin, double r_conj) {
  if (lin.xi.size() != lin.a.size())
    throw std::invalid_argument("linearization: row count mismatch");
  for (std::size_t j = 0; j < lin.xi.size(); ++j) {
    if (lin.xi[j].size() != lin.K + 1 || lin.a[j].size() != lin.K)
      throw std::invalid_argument("linearization: row length mismatch");
    for (std::size_t k = 1; k < lin.xi[j].size(); ++k)
      if (!(lin.xi[j][k] > lin.xi[j][k - 1]))
        throw std::invalid_argument("linearization: xi rows must increase strictly");
    double mass = 0.0;
    for (const cplx& c : lin.a[j]) mass += std::pow(std::abs(c), r_conj);
    if (std::abs(mass - 1.0) > 1e-10)
      throw std::invalid_argument("linearization: coefficient mass must be 1");
  }
}

// a_P(x): the unique k with xi_{k-1}(x) in omega_l and xi_k(x) in omega_h;
// zero when no k matches; error if two match.
inline cplx linearization_weight(const Multitile& p, const LinearizationData& lin,
                                 std::size_t grid_index) {
  const std::vector<double>& xi = lin.xi[grid_index];
  const std::vector<cplx>& a = lin.a[grid_index];
  cplx hit{0.0, 0.0};
  bool found = false;
  for (std::size_t k = 1; k <= lin.K; ++k) {
    if (p.omega_l.contains(xi[k - 1]) && p.omega_h.contains(xi[k])) {
      if (found) throw std::runtime_error("linearization_weight: multiple k matched one tile");
      hit = a[k - 1];
      found = true;
    }
  }
  return hit;
}

// S[f](x) = sum_P <f, phi_P> phi_P(x) a_P(x), restricted to E if given.
inline SampledFunction model_operator(const std::vector<Multitile>& tiles,
                                      const SampledFunction& f, const LinearizationData& lin,
                                      const SampledFunction* E = nullptr) {
  const std::size_t n = f.grid_count();
  if (lin.xi.size() != n) throw std::invalid_argument("model_operator: linearization grid mismatch");
  SampledFunction out = SampledFunction::zeros(f.domain, n);
  for (const Multitile& p : tiles) {
    const SampledFunction phi = wave_packet(p, f.domain, n);
    const cplx coef = inner(f, phi);
    for (std::size_t j = 0; j < n; ++j) {
      if (E != nullptr && E->samples[j] == cplx{0.0, 0.0}) continue;
      const cplx w = linearization_weight(p, lin, j);
      if (w != cplx{0.0, 0.0}) out.samples[j] += coef * phi.samples[j] * w;
    }
  }
  return out;
}

}  // namespace vnlab
