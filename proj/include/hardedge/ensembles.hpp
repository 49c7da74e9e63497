#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include "hardedge/atoms.hpp"
#include "hardedge/matrix.hpp"
#include "hardedge/rng.hpp"

namespace hardedge {

/// Entry (i, j) (zero-based) drawn from its own atom.
struct GridPlan {
  std::string name;
  Field field;
  std::function<AtomDistribution(std::size_t row, std::size_t col)> atom_at;
};

/// Sparse-signed grid with c = (i + j) mod period, one-based indices:
/// the entry is 0 w.p. 1 - 2^{-c} and +-2^{c/2} w.p. 2^{-(c+1)} each.
/// Periods 3 and 4 give the "grid3" and "grid4" ensembles.
GridPlan sparse_signed_grid(int period);

using EntryPlan = std::variant<AtomDistribution, GridPlan>;

struct EnsembleSpec {
  std::size_t rows = 0;
  std::size_t cols = 0;
  EntryPlan plan = AtomDistribution::real_gaussian();
  /// n - m for a rectangular (n - l) x n ensemble.
  std::size_t dummy_rows = 0;

  Field field() const;
  /// Checks m <= n, m + l == n when l > 0, and field consistency of grids.
  void validate() const;
  std::string plan_name() const;
  std::string atom_name() const;
};

EnsembleSpec square_ensemble(std::size_t n, AtomDistribution atom);

struct MatrixSample {
  Matrix matrix;
  EnsembleSpec spec;
  RngStream rng;
};

/// Draws every entry independently. Entry (i, j) uses draw index i * n + j
/// of the stream, so the result does not depend on traversal order.
MatrixSample sample_matrix(const EnsembleSpec& spec, const RngStream& rng);

}  // namespace hardedge
