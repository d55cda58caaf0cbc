#pragma once

// Variational Menshov-Paley-Zygmund norm of the partial Fourier integral and
// the L^p-mass halving recursion on compact grids.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fourier.hpp"
#include "grid.hpp"
#include "variation.hpp"

namespace vnlab {

// Cell masses |f(x_j)|^p dx over the half-open cell range [lo, hi).
namespace detail {

inline std::vector<double> cell_masses(const SampledFunction& f, double p, std::size_t lo,
                                       std::size_t hi) {
  if (!(lo < hi) || hi > f.grid_count())
    throw std::invalid_argument("cell_masses: bad cell range");
  std::vector<double> m(hi - lo);
  const double dx = f.dx();
  for (std::size_t j = lo; j < hi; ++j) m[j - lo] = std::pow(std::abs(f.samples[j]), p) * dx;
  return m;
}

}  // namespace detail

// Smallest cell boundary at which the cumulative |f|^p mass over [lo, hi)
// first reaches half the total; returns the cell index of the boundary
// (lo < split < hi), so the left part is [lo, split).  Ties go left.
inline std::size_t halving_cell(const SampledFunction& f, double p, std::size_t lo,
                                std::size_t hi) {
  std::vector<double> m = detail::cell_masses(f, p, lo, hi);
  double total = 0.0;
  for (double v : m) total += v;
  if (!(total > 0.0)) throw std::invalid_argument("halving_cell: f vanishes on the interval");
  double cum = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    cum += m[j];
    if (cum >= total / 2.0) {
      std::size_t split = lo + j + 1;
      if (split >= hi) split = hi - 1;  // keep both parts nonempty
      if (split <= lo) split = lo + 1;
      return split;
    }
  }
  return hi - 1;
}

// The halving point as a coordinate: the grid position of the halving cell
// boundary within [lo, hi).
inline double halving_point(const SampledFunction& f, double p, std::size_t lo, std::size_t hi) {
  return f.domain.left + static_cast<double>(halving_cell(f, p, lo, hi)) * f.dx();
}

inline double halving_point(const SampledFunction& f, double p) {
  return halving_point(f, p, 0, f.grid_count());
}

struct HalvingNode {
  std::size_t lo = 0, hi = 0;  // cell range [lo, hi)
  double mass = 0.0;           // |f|^p mass of the range
  int left = -1, right = -1;   // child node indices, -1 at leaves
};

struct HalvingTree {
  std::vector<HalvingNode> nodes;  // node 0 is the root
  int depth = 0;
  double cell_mass_bound = 0.0;  // largest single-cell mass, the tolerance unit
};

// Recursive bisection at the L^p-mass halving point, depth levels deep; the
// root covers the support of f (smallest cell range containing all nonzero
// samples).
inline HalvingTree halving_tree(const SampledFunction& f, double p, int depth) {
  const std::size_t n = f.grid_count();
  if (depth < 0) throw std::invalid_argument("halving_tree: negative depth");
  if ((1u << depth) > n) throw std::invalid_argument("halving_tree: depth exceeds log2(grid)");
  std::size_t lo = n, hi = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (f.samples[j] != cplx{0.0, 0.0}) {
      lo = std::min(lo, j);
      hi = std::max(hi, j + 1);
    }
  }
  if (lo >= hi) throw std::invalid_argument("halving_tree: f is identically zero");
  HalvingTree tree;
  tree.depth = depth;
  std::vector<double> mass = detail::cell_masses(f, p, 0, n);
  for (double v : mass) tree.cell_mass_bound = std::max(tree.cell_mass_bound, v);
  auto range_mass = [&mass](std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t j = a; j < b; ++j) acc += mass[j];
    return acc;
  };
  tree.nodes.push_back({lo, hi, range_mass(lo, hi), -1, -1});
  // Breadth-first: split every node of the current level.
  std::vector<int> level{0};
  for (int d = 0; d < depth; ++d) {
    std::vector<int> next;
    for (int id : level) {
      std::size_t a = tree.nodes[static_cast<std::size_t>(id)].lo;
      std::size_t b = tree.nodes[static_cast<std::size_t>(id)].hi;
      if (b - a < 2) throw std::runtime_error("halving_tree: interval too small to split");
      std::size_t split = halving_cell(f, p, a, b);
      int li = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({a, split, range_mass(a, split), -1, -1});
      int ri = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({split, b, range_mass(split, b), -1, -1});
      tree.nodes[static_cast<std::size_t>(id)].left = li;
      tree.nodes[static_cast<std::size_t>(id)].right = ri;
      next.push_back(li);
      next.push_back(ri);
    }
    level = std::move(next);
  }
  return tree;
}

inline std::vector<const HalvingNode*> halving_leaves(const HalvingTree& tree) {
  std::vector<const HalvingNode*> out;
  for (const HalvingNode& n : tree.nodes)
    if (n.left < 0) out.push_back(&n);
  return out;
}

// ---------------------------------------------------------------------------
// || C[f] ||_{L^{p'}_xi(V^r_x)}: per dual-grid row the V^r in x of the
// cumulative Fourier integral, then the l^{p'} norm over xi weighted by the
// dual grid step.
// ---------------------------------------------------------------------------

struct VmpzResult {
  double value = 0.0;
  double ratio = 0.0;               // value / ||f||_p
  std::vector<double> xi;           // dual grid
  std::vector<double> row_variation;  // V^r per xi row
};

inline VmpzResult vmpz_norm(const SampledFunction& f, double p, double r,
                            double xi_offset = 0.0) {
  if (!(p >= 1.0 && p < 2.0)) throw std::invalid_argument("vmpz_norm: 1 <= p < 2 required");
  VariationParams vp(r);
  const double pp = p / (p - 1.0);
  PartialIntegralMatrix m = mpz_partial_integral(f, xi_offset);
  const std::size_t rows = m.xi.size();
  const double dxi = rows > 1 ? m.xi[1] - m.xi[0] : 1.0;
  VmpzResult out;
  out.xi = m.xi;
  out.row_variation.resize(rows);
  double acc = 0.0;
  std::vector<cplx> row(m.cols);
  for (std::size_t q = 0; q < rows; ++q) {
    for (std::size_t c = 0; c < m.cols; ++c) row[c] = m.at(q, c);
    double v = variation_norm(row, vp);
    out.row_variation[q] = v;
    acc += std::pow(v, pp) * dxi;
  }
  out.value = std::pow(acc, 1.0 / pp);
  const double fn = lp_norm(f, p);
  out.ratio = fn > 0.0 ? out.value / fn : 0.0;
  return out;
}

}  // namespace vnlab
