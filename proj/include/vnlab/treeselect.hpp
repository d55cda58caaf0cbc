#pragma once

// Tree structures over multitile collections: energy and density functionals
// computed by exact candidate-top enumeration, greedy increment loops that
// peel off high-energy / high-density trees, an alternating decomposition
// into controlled levels, and supporting utilities (dyadic BMO of a counting
// function, the dyadic maximal function, and a per-tree norm probe).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "timefreq.hpp"
#include "variation.hpp"

namespace vnlab {

enum class TreeKind { any, l_overlapping, l_lacunary, l_plus, l_minus };

// A tree: a subset of a tile collection (by index), a dyadic top interval
// containing every member's time interval, and a top frequency on the
// admissible lattice.  The window of half-width (C2-1)/(4|I_top|) around the
// top frequency must sit inside every member's frequency hull.
struct Tree {
  std::vector<std::size_t> tile_ids;
  DyadicInterval top_interval;
  double top_frequency = 0.0;
  TreeKind kind = TreeKind::any;
};

struct SelectionReport {
  std::vector<Tree> trees;
  std::vector<std::size_t> residual;  // indices into the input collection
  double sum_top_lengths = 0.0;
  int iterations = 0;
  bool top_tiles_disjoint = true;  // density selection: tops pairwise disjoint
};

// Convex hull of the C2-dilates of the upper and lower frequency intervals.
inline FreqInterval frequency_hull(const Multitile& p) {
  const FreqInterval a = dilate(to_freq(p.omega_u), kC2);
  const FreqInterval b = dilate(p.omega_l, kC2);
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline double top_half_width(const DyadicInterval& top) {
  return (kC2 - 1.0) / (4.0 * top.length());
}

// Tree membership: time containment plus window containment in the hull.
inline bool tile_in_tree(const Multitile& p, const DyadicInterval& top, double xi) {
  if (!top.contains(p.I)) return false;
  const double d = top_half_width(top);
  return FreqInterval{xi - d, xi + d}.subset_of(frequency_hull(p));
}

// Lower-frequency overlap: the top frequency lies in the C2-dilated lower
// interval (the defining property of the trees the energy sup ranges over).
inline bool tile_overlapping(const Multitile& p, double xi) {
  return dilate(p.omega_l, kC2).contains(xi);
}

// Tree selection operates on collections whose lower frequency intervals are
// finite (1- and 2-index classes); 3-index collections are reduced to these
// by the reflection symmetry before selection.
inline void require_finite_lower(const std::vector<Multitile>& tiles) {
  for (const Multitile& p : tiles)
    if (!std::isfinite(p.omega_l.lo))
      throw std::invalid_argument(
          "tree selection requires finite lower intervals; reflect 3-index tiles first");
}

// Smallest integer M with every tile contained in [-2^M, 2^M]^2.
inline int bounding_exponent(const std::vector<Multitile>& tiles) {
  double m = 1.0;
  for (const Multitile& p : tiles) {
    m = std::max({m, std::abs(p.I.lower()), std::abs(p.I.upper()),
                  std::abs(p.omega_u.lower()), std::abs(p.omega_u.upper())});
    m = std::max(m, static_cast<double>(1LL << std::max(0, p.I.scale)));
  }
  int M = 0;
  while (std::ldexp(1.0, M) < m) ++M;
  return M;
}

namespace detail {

struct TopCandidate {
  DyadicInterval I;
  double xi = 0.0;
};

// Candidate tops.  Top intervals are the dyadic ancestors of tile time
// intervals up to the bounding scale.  Top frequencies live on the lattice of
// step 2^{-M-10} capped at C1*2^{M+10}; membership predicates are piecewise
// constant in the top frequency, so it suffices to take lattice points
// adjacent to every predicate breakpoint (hull edges shifted by the window
// half-width, and dilated lower-interval edges).
inline std::vector<TopCandidate> enumerate_tops(const std::vector<Multitile>& tiles) {
  std::vector<TopCandidate> out;
  if (tiles.empty()) return out;
  const int M = bounding_exponent(tiles);
  const double step = std::ldexp(1.0, -M - 10);
  const double cap = kC1 * std::ldexp(1.0, M + 10);

  std::set<std::pair<int, long long>> seen;
  std::vector<DyadicInterval> tops;
  for (const Multitile& p : tiles) {
    DyadicInterval a = p.I;
    while (true) {
      if (seen.insert({a.scale, a.index}).second) tops.push_back(a);
      if (a.scale >= M) break;
      a = a.parent();
    }
  }

  for (const DyadicInterval& top : tops) {
    const double d = top_half_width(top);
    std::vector<double> cand;
    auto push_near = [&](double b) {
      if (!std::isfinite(b)) return;
      const double k = std::floor(b / step);
      for (int o = -1; o <= 1; ++o) {
        const double eta = (k + o) * step;
        if (std::abs(eta) <= cap) cand.push_back(eta);
      }
    };
    for (const Multitile& p : tiles) {
      const FreqInterval l2 = dilate(p.omega_l, kC2);
      push_near(l2.lo);
      push_near(l2.hi);
      const FreqInterval h = frequency_hull(p);
      push_near(h.lo + d);
      push_near(h.hi - d);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (double xi : cand) out.push_back({top, xi});
  }
  return out;
}

}  // namespace detail

// Coefficients <f, phi_P> for every tile, against f's grid.
inline std::vector<cplx> packet_coefficients(const std::vector<Multitile>& tiles,
                                             const SampledFunction& f) {
  std::vector<cplx> c;
  c.reserve(tiles.size());
  for (const Multitile& p : tiles)
    c.push_back(inner(f, wave_packet(p, f.domain, f.grid_count())));
  return c;
}

// Energy: sup over candidate tops of the root-mean coefficient mass of the
// maximal overlapping tree at that top (all summands nonnegative, so the
// optimal tree at a fixed top includes every qualifying tile).
inline double energy(const std::vector<Multitile>& tiles, const SampledFunction& f) {
  if (tiles.empty()) return 0.0;
  require_finite_lower(tiles);
  const std::vector<cplx> coef = packet_coefficients(tiles, f);
  double best = 0.0;
  for (const detail::TopCandidate& t : detail::enumerate_tops(tiles)) {
    double s = 0.0;
    for (std::size_t i = 0; i < tiles.size(); ++i)
      if (tile_overlapping(tiles[i], t.xi) && tile_in_tree(tiles[i], t.I, t.xi))
        s += std::norm(coef[i]);
    best = std::max(best, s / t.I.length());
  }
  return std::sqrt(best);
}

namespace detail {

// Per-grid-point integrand pieces for the density functional: the row ladder
// values xi_{k-1}(x) with weights |a_k(x)|^{r'}, restricted by the set E.
struct DensityRows {
  std::vector<std::vector<std::pair<double, double>>> rows;  // (xi_{k-1}, weight)
  const SampledFunction* E = nullptr;
};

inline DensityRows density_rows(const SampledFunction& E, const LinearizationData& lin,
                                double r_conj) {
  const std::size_t n = E.grid_count();
  if (lin.xi.size() != n) throw std::invalid_argument("density: linearization grid mismatch");
  DensityRows out;
  out.E = &E;
  out.rows.assign(n, {});
  for (std::size_t j = 0; j < n; ++j) {
    if (E.samples[j] == cplx{0.0, 0.0}) continue;
    for (std::size_t k = 1; k <= lin.K; ++k) {
      const double w = std::pow(std::abs(lin.a[j][k - 1]), r_conj);
      if (w > 0.0) out.rows[j].emplace_back(lin.xi[j][k - 1], w);
    }
  }
  return out;
}

// Raw density integral for one top: the weighted mass of ladder points that
// fall inside the top window, integrated against the decaying weight.
inline double density_integral(const DensityRows& rows, const DyadicInterval& top, double xi) {
  const SampledFunction& E = *rows.E;
  const double L = top.length(), c = top.center(), d = top_half_width(top);
  const double lo = xi - d, hi = xi + d;
  double acc = 0.0;
  const std::size_t n = E.grid_count();
  for (std::size_t j = 0; j < n; ++j) {
    if (rows.rows[j].empty()) continue;
    double mass = 0.0;
    for (const auto& [x, w] : rows.rows[j])
      if (x >= lo && x < hi) mass += w;
    if (mass == 0.0) continue;
    const double u = 1.0 + std::abs(E.x(j) - c) / L;
    acc += mass / (u * u * u * u);
  }
  return acc * E.dx() / L;
}

// Density integrals for every candidate top at once.  Tops sharing a top
// interval see the same weighted ladder points; a ladder point at x counts
// for window positions xi in (x - d, x + d], so one sorted event list with
// prefix sums answers all windows of the group by binary search.
inline std::vector<double> density_values(const DensityRows& rows,
                                          const std::vector<TopCandidate>& tops) {
  std::vector<double> val(tops.size(), 0.0);
  const SampledFunction& E = *rows.E;
  const std::size_t n = E.grid_count();
  std::size_t g = 0;
  while (g < tops.size()) {
    std::size_t h = g;
    while (h < tops.size() && tops[h].I == tops[g].I) ++h;
    const DyadicInterval top = tops[g].I;
    const double L = top.length(), c = top.center(), d = top_half_width(top);
    std::vector<std::pair<double, double>> starts, ends;  // (key, weight)
    for (std::size_t j = 0; j < n; ++j) {
      if (rows.rows[j].empty()) continue;
      const double u = 1.0 + std::abs(E.x(j) - c) / L;
      const double wj = 1.0 / (u * u * u * u);
      for (const auto& [x, w] : rows.rows[j]) {
        starts.emplace_back(x - d, w * wj);
        ends.emplace_back(x + d, w * wj);
      }
    }
    auto prepare = [](std::vector<std::pair<double, double>>& ev) {
      std::sort(ev.begin(), ev.end());
      double run = 0.0;
      for (auto& [k, w] : ev) {
        run += w;
        w = run;  // prefix sum of weights with key <= k
      }
    };
    prepare(starts);
    prepare(ends);
    auto mass_below = [](const std::vector<std::pair<double, double>>& ev, double xi) {
      // total weight of events with key strictly below xi
      std::size_t lo = 0, hi = ev.size();
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (ev[mid].first < xi)
          lo = mid + 1;
        else
          hi = mid;
      }
      return lo == 0 ? 0.0 : ev[lo - 1].second;
    };
    for (std::size_t t = g; t < h; ++t) {
      const double mass = mass_below(starts, tops[t].xi) - mass_below(ends, tops[t].xi);
      val[t] = std::max(0.0, mass) * E.dx() / L;
    }
    g = h;
  }
  return val;
}

}  // namespace detail

// Density: sup over candidate tops admitting a nonempty tree of the weighted
// set-mass integral, to the conjugate-exponent root.
inline double density(const std::vector<Multitile>& tiles, const SampledFunction& E,
                      const LinearizationData& lin, double r) {
  if (tiles.empty()) return 0.0;
  require_finite_lower(tiles);
  const double rc = VariationParams(r).conjugate();
  const detail::DensityRows rows = detail::density_rows(E, lin, rc);
  const std::vector<detail::TopCandidate> tops = detail::enumerate_tops(tiles);
  const std::vector<double> val = detail::density_values(rows, tops);
  double best = 0.0;
  for (std::size_t t = 0; t < tops.size(); ++t) {
    if (val[t] <= best) continue;
    for (const Multitile& p : tiles)
      if (tile_in_tree(p, tops[t].I, tops[t].xi)) {
        best = val[t];
        break;
      }
  }
  return std::pow(best, 1.0 / rc);
}

// Greedy energy selection: while the residual energy exceeds half the
// threshold, take the qualifying overlapping tree with maximal top frequency
// (ties: larger top interval, then smaller top center), then remove the
// maximal tree with the same top data.  Selected top frequencies are
// nonincreasing; this is asserted.
inline SelectionReport energy_increment(const std::vector<Multitile>& tiles,
                                        const SampledFunction& f, double threshold) {
  SelectionReport rep;
  const std::size_t n = tiles.size();
  std::vector<bool> alive(n, true);
  if (n == 0) return rep;
  require_finite_lower(tiles);
  const std::vector<cplx> coef = packet_coefficients(tiles, f);
  const std::vector<detail::TopCandidate> tops = detail::enumerate_tops(tiles);

  // Per-top member lists, fixed for the whole loop.
  std::vector<std::vector<std::size_t>> mem_any(tops.size()), mem_ov(tops.size());
  for (std::size_t t = 0; t < tops.size(); ++t)
    for (std::size_t i = 0; i < n; ++i)
      if (tile_in_tree(tiles[i], tops[t].I, tops[t].xi)) {
        mem_any[t].push_back(i);
        if (tile_overlapping(tiles[i], tops[t].xi)) mem_ov[t].push_back(i);
      }

  double prev_xi = std::numeric_limits<double>::infinity();
  while (true) {
    // Residual energy and the best qualifying top in one sweep.
    double best_sq = 0.0;
    std::ptrdiff_t pick = -1;
    for (std::size_t t = 0; t < tops.size(); ++t) {
      double s = 0.0;
      for (std::size_t i : mem_ov[t])
        if (alive[i]) s += std::norm(coef[i]);
      const double mean = s / tops[t].I.length();
      best_sq = std::max(best_sq, mean);
      if (mean >= threshold * threshold / 4.0) {
        if (pick < 0) {
          pick = static_cast<std::ptrdiff_t>(t);
          continue;
        }
        const detail::TopCandidate& a = tops[t];
        const detail::TopCandidate& b = tops[static_cast<std::size_t>(pick)];
        if (a.xi > b.xi ||
            (a.xi == b.xi && (a.I.scale > b.I.scale ||
                              (a.I.scale == b.I.scale && a.I.center() < b.I.center()))))
          pick = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (std::sqrt(best_sq) <= threshold / 2.0 || pick < 0) break;
    const detail::TopCandidate& s = tops[static_cast<std::size_t>(pick)];
    if (s.xi > prev_xi)
      throw std::logic_error("energy_increment: top frequencies must be nonincreasing");
    prev_xi = s.xi;
    Tree tr;
    tr.top_interval = s.I;
    tr.top_frequency = s.xi;
    tr.kind = TreeKind::any;
    for (std::size_t i : mem_any[static_cast<std::size_t>(pick)])
      if (alive[i]) {
        tr.tile_ids.push_back(i);
        alive[i] = false;
      }
    rep.sum_top_lengths += tr.top_interval.length();
    rep.trees.push_back(std::move(tr));
    ++rep.iterations;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) rep.residual.push_back(i);
  return rep;
}

// Greedy density selection: while the residual density exceeds half the
// threshold, take a qualifying top with maximal top-interval length (ties:
// smaller top frequency, then smaller top center) and remove the maximal
// trees at the top frequency and at its two half-window shifts.  The tops of
// the primary trees are pairwise disjoint as rectangles; this is recorded.
inline SelectionReport density_increment(const std::vector<Multitile>& tiles,
                                         const SampledFunction& E, const LinearizationData& lin,
                                         double r, double threshold) {
  SelectionReport rep;
  const std::size_t n = tiles.size();
  if (n == 0) return rep;
  require_finite_lower(tiles);
  const double rc = VariationParams(r).conjugate();
  const detail::DensityRows rows = detail::density_rows(E, lin, rc);
  const std::vector<detail::TopCandidate> tops = detail::enumerate_tops(tiles);

  // Density integrals do not depend on the residual; compute them once.
  const std::vector<double> value = detail::density_values(rows, tops);
  std::vector<std::vector<std::size_t>> mem(tops.size());
  for (std::size_t t = 0; t < tops.size(); ++t)
    for (std::size_t i = 0; i < n; ++i)
      if (tile_in_tree(tiles[i], tops[t].I, tops[t].xi)) mem[t].push_back(i);

  std::vector<bool> alive(n, true);
  struct TopRect {
    double x0, x1, f0, f1;
  };
  std::vector<TopRect> chosen;
  const double cond = std::pow(threshold / 2.0, rc);
  while (true) {
    double best = 0.0;
    std::ptrdiff_t pick = -1;
    for (std::size_t t = 0; t < tops.size(); ++t) {
      bool nonempty = false;
      for (std::size_t i : mem[t])
        if (alive[i]) {
          nonempty = true;
          break;
        }
      if (!nonempty) continue;
      best = std::max(best, value[t]);
      if (value[t] > cond) {
        if (pick < 0) {
          pick = static_cast<std::ptrdiff_t>(t);
          continue;
        }
        const detail::TopCandidate& a = tops[t];
        const detail::TopCandidate& b = tops[static_cast<std::size_t>(pick)];
        if (a.I.scale > b.I.scale ||
            (a.I.scale == b.I.scale &&
             (a.xi < b.xi || (a.xi == b.xi && a.I.center() < b.I.center()))))
          pick = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (std::pow(best, 1.0 / rc) <= threshold / 2.0 || pick < 0) break;
    const detail::TopCandidate& s = tops[static_cast<std::size_t>(pick)];
    const double d = top_half_width(s.I);
    const TopRect rect{s.I.lower(), s.I.upper(), s.xi - d, s.xi + d};
    for (const TopRect& o : chosen)
      if (rect.x0 < o.x1 && o.x0 < rect.x1 && rect.f0 < o.f1 && o.f0 < rect.f1)
        rep.top_tiles_disjoint = false;
    chosen.push_back(rect);
    const double shift = (kC2 - 1.0) / (2.0 * s.I.length());
    const double freqs[3] = {s.xi, s.xi + shift, s.xi - shift};
    const TreeKind kinds[3] = {TreeKind::any, TreeKind::l_plus, TreeKind::l_minus};
    for (int v = 0; v < 3; ++v) {
      Tree tr;
      tr.top_interval = s.I;
      tr.top_frequency = freqs[v];
      tr.kind = kinds[v];
      for (std::size_t i = 0; i < n; ++i)
        if (alive[i] && tile_in_tree(tiles[i], s.I, freqs[v])) {
          tr.tile_ids.push_back(i);
          alive[i] = false;
        }
      rep.sum_top_lengths += tr.top_interval.length();
      rep.trees.push_back(std::move(tr));
    }
    ++rep.iterations;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) rep.residual.push_back(i);
  return rep;
}

// Alternating decomposition.  Level j applies the energy selection at
// C0*2^{-j/2}*sqrt(|F|) and the density selection at C0*2^{-j/r'}; C0 is
// self-calibrated so level 0 covers the initial energy and density.  When
// the density threshold reaches the floor, every remaining tile is emitted
// as a singleton tree at the first admissible candidate top.
inline std::map<int, std::vector<Tree>> full_decomposition(const std::vector<Multitile>& tiles,
                                                           const SampledFunction& f,
                                                           const SampledFunction& E,
                                                           const LinearizationData& lin,
                                                           double r) {
  std::map<int, std::vector<Tree>> out;
  if (tiles.empty()) return out;
  const double rc = VariationParams(r).conjugate();
  double fmeas = 0.0;
  for (const cplx& v : f.samples)
    if (std::abs(v) > 0.0) fmeas += f.dx();
  const double root_f = std::sqrt(std::max(fmeas, f.dx()));

  const double e0 = energy(tiles, f);
  const double d0 = density(tiles, E, lin, r);
  const double c0 = std::max({1.0, e0 / root_f, d0});

  std::vector<Multitile> rem = tiles;
  std::vector<std::size_t> rem_ids(tiles.size());
  for (std::size_t i = 0; i < tiles.size(); ++i) rem_ids[i] = i;

  for (int j = 0; !rem.empty(); ++j) {
    const double ej = c0 * std::pow(2.0, -0.5 * j) * root_f;
    const double mj = c0 * std::pow(2.0, -static_cast<double>(j) / rc);
    std::vector<Tree>& level = out[j];

    SelectionReport er = energy_increment(rem, f, ej);
    for (Tree& t : er.trees) {
      for (std::size_t& id : t.tile_ids) id = rem_ids[id];
      level.push_back(std::move(t));
    }
    std::vector<Multitile> rem2;
    std::vector<std::size_t> ids2;
    for (std::size_t i : er.residual) {
      rem2.push_back(rem[i]);
      ids2.push_back(rem_ids[i]);
    }

    SelectionReport dr = density_increment(rem2, E, lin, r, mj);
    for (Tree& t : dr.trees) {
      for (std::size_t& id : t.tile_ids) id = ids2[id];
      level.push_back(std::move(t));
    }
    std::vector<Multitile> rem3;
    std::vector<std::size_t> ids3;
    for (std::size_t i : dr.residual) {
      rem3.push_back(rem2[i]);
      ids3.push_back(ids2[i]);
    }
    rem = std::move(rem3);
    rem_ids = std::move(ids3);

    if (mj < 1e-9 && !rem.empty()) {
      // Sweep leftovers (tiles invisible to both functionals) as singletons.
      for (std::size_t i = 0; i < rem.size(); ++i) {
        std::vector<Multitile> one{rem[i]};
        Tree tr;
        tr.kind = TreeKind::any;
        tr.tile_ids = {rem_ids[i]};
        bool placed = false;
        for (const detail::TopCandidate& t : detail::enumerate_tops(one))
          if (tile_in_tree(rem[i], t.I, t.xi)) {
            tr.top_interval = t.I;
            tr.top_frequency = t.xi;
            placed = true;
            break;
          }
        if (!placed) throw std::runtime_error("full_decomposition: tile admits no top");
        level.push_back(std::move(tr));
      }
      rem.clear();
      rem_ids.clear();
    }
    if (level.empty()) out.erase(j);
  }
  return out;
}

// Dyadic BMO norm of the tree-counting function x -> #{trees whose dilated
// top interval contains x}, evaluated on the grid of `ref`, divided by the
// scale factor 2^{2*ell} / threshold^2.
inline double bmo_check(const std::vector<Tree>& trees, int ell, const SampledFunction& ref,
                        double threshold) {
  const std::size_t n = ref.grid_count();
  if (!is_power_of_two(n)) throw std::invalid_argument("bmo_check: power-of-two grid required");
  std::vector<double> count(n, 0.0);
  for (const Tree& t : trees) {
    const double c = t.top_interval.center();
    const double half = 0.5 * std::ldexp(t.top_interval.length(), ell);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = ref.x(j);
      if (x >= c - half && x < c + half) count[j] += 1.0;
    }
  }
  double bmo = 0.0;
  for (std::size_t block = 1; block <= n; block <<= 1) {
    for (std::size_t start = 0; start < n; start += block) {
      double mean = 0.0;
      for (std::size_t j = start; j < start + block; ++j) mean += count[j];
      mean /= static_cast<double>(block);
      double osc = 0.0;
      for (std::size_t j = start; j < start + block; ++j) osc += std::abs(count[j] - mean);
      bmo = std::max(bmo, osc / static_cast<double>(block));
    }
  }
  return bmo * threshold * threshold / std::ldexp(1.0, 2 * ell);
}

// Maximal dyadic average: at each grid point, the largest mean of |f| over
// grid-aligned dyadic blocks containing the point (including the singleton).
inline SampledFunction dyadic_maximal(const SampledFunction& f) {
  const std::size_t n = f.grid_count();
  if (!is_power_of_two(n))
    throw std::invalid_argument("dyadic_maximal: power-of-two grid required");
  SampledFunction out = SampledFunction::zeros(f.domain, n);
  std::vector<double> level(n);
  for (std::size_t j = 0; j < n; ++j) level[j] = std::abs(f.samples[j]);
  std::vector<double> best = level;
  for (std::size_t block = 2; block <= n; block <<= 1) {
    for (std::size_t start = 0; start < n; start += block) {
      double mean = 0.0;
      for (std::size_t j = start; j < start + block; ++j) mean += std::abs(f.samples[j]);
      mean /= static_cast<double>(block);
      for (std::size_t j = start; j < start + block; ++j) best[j] = std::max(best[j], mean);
    }
  }
  for (std::size_t j = 0; j < n; ++j) out.samples[j] = best[j];
  return out;
}

struct TreeEstimateResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// Single-tree norm probe: the q-norm of the restricted model operator on the
// tree's tiles against the product of its energy, its density to the
// exponent min(1, r'/q), and the top length to the power 1/q.
inline TreeEstimateResult tree_estimate_probe(const Tree& tree,
                                              const std::vector<Multitile>& tiles,
                                              const SampledFunction& f, const SampledFunction& E,
                                              const LinearizationData& lin, double q, double r) {
  TreeEstimateResult res;
  std::vector<Multitile> sub;
  for (std::size_t id : tree.tile_ids) sub.push_back(tiles.at(id));
  if (sub.empty()) return res;
  res.lhs = lp_norm(model_operator(sub, f, lin, &E), q);
  const double rc = VariationParams(r).conjugate();
  const double en = energy(sub, f);
  const double de = density(sub, E, lin, r);
  res.rhs = en * std::pow(de, std::min(1.0, rc / q)) *
            std::pow(tree.top_interval.length(), 1.0 / q);
  res.ratio = res.rhs > 0.0 ? res.lhs / res.rhs : 0.0;
  return res;
}

}  // namespace vnlab
