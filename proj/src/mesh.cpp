#include "dphase/mesh.hpp"

#include <cmath>
#include <stdexcept>

#include "dphase/errors.hpp"
#include "dphase/parallel.hpp"

namespace dphase {

namespace {

struct Interval {
  double lo, hi;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

bool touching(const Interval& a, const Interval& b) {
  return a.hi >= b.lo && b.hi >= a.lo;
}

void emit(std::vector<PairEntry>& out, int ci, int cj, const Interval& a,
          const Interval& b) {
  PairEntry e;
  e.ci = ci;
  e.cj = cj;
  if (a.mid() <= b.mid()) {
    e.x = a.mid();
    e.y = b.mid();
    e.wx = a.width();
    e.wy = b.width();
  } else {
    e.x = b.mid();
    e.y = a.mid();
    e.wx = b.width();
    e.wy = a.width();
  }
  e.w = e.wx * e.wy;
  e.r = e.y - e.x;
  out.push_back(e);
}

// Adjacent (corner-sharing) pair: split both halves, recurse only on the
// sub-pair that still touches; at depth 0 fall back to the midpoint rule,
// which stays finite because the midpoints are distinct.
void refine_adjacent(std::vector<PairEntry>& out, int ci, int cj, Interval a,
                     Interval b, int depth) {
  if (depth <= 0) {
    emit(out, ci, cj, a, b);
    return;
  }
  Interval a1{a.lo, a.mid()}, a2{a.mid(), a.hi};
  Interval b1{b.lo, b.mid()}, b2{b.mid(), b.hi};
  for (const Interval& pa : {a1, a2})
    for (const Interval& pb : {b1, b2}) {
      if (touching(pa, pb))
        refine_adjacent(out, ci, cj, pa, pb, depth - 1);
      else
        emit(out, ci, cj, pa, pb);
    }
}

// Self pair: the finest-level diagonal subcells are dropped entirely (the
// discrete principal-value excision); off-diagonal sub-pairs are handled as
// adjacent pairs.
void refine_self(std::vector<PairEntry>& out, int ci, Interval c, int depth) {
  if (depth <= 0) return;
  Interval a{c.lo, c.mid()}, b{c.mid(), c.hi};
  refine_self(out, ci, a, depth - 1);
  refine_self(out, ci, b, depth - 1);
  refine_adjacent(out, ci, ci, a, b, depth - 1);
}

}  // namespace

Mesh Mesh::build(const MeshSpec& spec) {
  if (!(spec.a < spec.b)) throw std::invalid_argument("mesh: need a < b");
  if (!(spec.collar > 0.0))
    throw std::invalid_argument("mesh: collar width must be positive");
  if (spec.n_interior < 4)
    throw std::invalid_argument("mesh: need at least 4 interior cells");
  if (spec.n_collar < 2)
    throw std::invalid_argument("mesh: need at least 2 collar cells per side");
  if (spec.diag_depth < 0 || spec.diag_depth > 12)
    throw std::invalid_argument("mesh: diagonal refinement depth out of range");

  Mesh mesh;
  mesh.spec_ = spec;

  auto add_cells = [&](double lo, double hi, int n, Region region) {
    for (int k = 0; k < n; ++k) {
      Cell c;
      c.lo = lo + (hi - lo) * k / n;
      c.hi = (k + 1 == n) ? hi : lo + (hi - lo) * (k + 1) / n;
      c.mid = 0.5 * (c.lo + c.hi);
      c.width = c.hi - c.lo;
      c.region = region;
      mesh.cells_.push_back(c);
    }
  };
  add_cells(spec.a - spec.collar, spec.a, spec.n_collar, Region::exterior);
  add_cells(spec.a, spec.b, spec.n_interior, Region::interior);
  add_cells(spec.b, spec.b + spec.collar, spec.n_collar, Region::exterior);

  const int n = static_cast<int>(mesh.cells_.size());
  for (int i = 0; i < n; ++i) {
    const Cell& a = mesh.cells_[i];
    for (int j = i; j < n; ++j) {
      const Cell& b = mesh.cells_[j];
      if (a.region == Region::exterior && b.region == Region::exterior)
        continue;  // the pair domain excludes exterior x exterior
      Interval ia{a.lo, a.hi}, ib{b.lo, b.hi};
      if (i == j)
        refine_self(mesh.pairs_, i, ia, spec.diag_depth);
      else if (j == i + 1)
        refine_adjacent(mesh.pairs_, i, j, ia, ib, spec.diag_depth);
      else
        emit(mesh.pairs_, i, j, ia, ib);
    }
  }
  return mesh;
}

std::vector<double> Mesh::nodes() const {
  std::vector<double> out(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) out[i] = cells_[i].mid;
  return out;
}

std::vector<double> Mesh::grid_lines() const {
  std::vector<double> out;
  out.reserve(cells_.size() + 1);
  out.push_back(cells_.front().lo);
  for (const Cell& c : cells_) out.push_back(c.hi);
  return out;
}

double pair_quadrature(const Mesh& mesh, const PairKernel& kernel) {
  const auto& entries = mesh.pair_table();
  return chunked_sum(entries.size(), [&](std::size_t i) {
    const PairEntry& e = entries[i];
    double forward = kernel(e.x, e.y, e.ci, e.cj);
    double backward = kernel(e.y, e.x, e.cj, e.ci);
    double v = e.w * (forward + backward);
    if (!std::isfinite(v))
      throw NumericError("pair quadrature: non-finite kernel value", e.x, e.y);
    return v;
  });
}

}  // namespace dphase
