#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dphase/fields.hpp"

namespace dphase {

enum class Region { interior, exterior };

struct Cell {
  double lo, hi;
  double mid, width;
  Region region;
};

struct MeshSpec {
  double a = 0.0, b = 1.0;   // Omega = (a, b)
  double collar = 1.0;       // exterior collar width on each side
  int n_interior = 16;
  int n_collar = 8;
  int diag_depth = 4;        // recursive splitting depth near the diagonal
};

// One quadrature node pair of the truncated double integral. Each entry
// stands for the unordered pair {x, y}; sweeps account for both orientations,
// which share the weight w (the product of the two subcell widths).
struct PairEntry {
  std::int32_t ci, cj;  // owning top-level cells, ci <= cj
  double x, y;          // subcell midpoints, x < y
  double wx, wy;        // subcell widths
  double w;             // wx * wy
  double r;             // y - x
};

// Uniform 1-D mesh on Omega plus a truncated exterior collar on both sides,
// with the pair-quadrature table over the admissible region (every pair of
// cells except exterior-exterior ones). Unknowns live at cell midpoints, one
// value per cell (piecewise-constant representation).
class Mesh {
 public:
  static Mesh build(const MeshSpec& spec);

  const MeshSpec& spec() const { return spec_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t n_cells() const { return cells_.size(); }
  std::size_t interior_count() const { return static_cast<std::size_t>(spec_.n_interior); }

  // Midpoints, where grid-function values live.
  std::vector<double> nodes() const;
  // All cell boundary coordinates from a - collar to b + collar.
  std::vector<double> grid_lines() const;

  Box box() const { return {spec_.a - spec_.collar, spec_.b + spec_.collar}; }
  Box omega() const { return {spec_.a, spec_.b}; }

  const std::vector<PairEntry>& pair_table() const { return pairs_; }

  bool is_interior(std::size_t cell) const {
    return cells_[cell].region == Region::interior;
  }

 private:
  MeshSpec spec_;
  std::vector<Cell> cells_;
  std::vector<PairEntry> pairs_;
};

// Kernel callback: value at (x, y), with the owning cells of both points.
using PairKernel = std::function<double(double x, double y, int cx, int cy)>;

// Double integral of the kernel over the truncated admissible pair region,
// excising the diagonal at the finest refinement level. Both orientations of
// each entry are evaluated, so a swap of the kernel arguments cannot change
// the value. Throws NumericError (with the point) on a non-finite sample.
double pair_quadrature(const Mesh& mesh, const PairKernel& kernel);

}  // namespace dphase
