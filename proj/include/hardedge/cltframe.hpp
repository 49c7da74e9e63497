#pragma once

#include <cstddef>
#include <vector>

#include "hardedge/atoms.hpp"
#include "hardedge/matrix.hpp"
#include "hardedge/rng.hpp"

namespace hardedge {

/// Vectors v_1..v_n in F^N, stored as the columns of an N x n matrix.
struct TightFrame {
  std::size_t ambient = 0;  // N
  std::size_t size = 0;     // n
  Field field = Field::Real;
  ComplexMatrix vectors;
  double max_norm = 0.0;
};

/// Wraps the columns of `vectors` as a frame and records max_j |v_j|.
/// Real frames must have zero imaginary parts.
TightFrame make_frame(ComplexMatrix vectors, Field field);

struct FrameCheck {
  double residual = 0.0;   // ||sum_j v_j v_j* - I_N||_F
  double trace_gap = 0.0;  // |sum_j |v_j|^2 - N|
  bool holds = false;      // both <= 1e-8
};
FrameCheck check_tight_frame(const TightFrame& frame);

/// e_1..e_N.
TightFrame standard_basis_frame(std::size_t ambient, Field field);

/// Columns of an N x n matrix with orthonormal rows (the rows of Q* from a
/// thin QR of an n x N gaussian matrix). Requires n >= N >= 1.
TightFrame random_tight_frame(std::size_t size, std::size_t ambient, Field field, const RngStream& rng);

/// S = a_1 v_1 + ... + a_n v_n with a_j from draw j of the stream.
/// The atom's field must match the frame's.
ComplexVector frame_sample(const TightFrame& frame, const AtomDistribution& atom, const RngStream& rng);

struct FrameDistanceReport {
  std::size_t trials = 0;
  /// Two-sample KS distance per real coordinate (Re then Im for complex).
  std::vector<double> coordinate_ks;
  /// Largest joint-CDF gap over coordinate pairs on a 20 x 20 pooled-quantile grid.
  double pairwise_joint = 0.0;
  /// max(coordinate_ks, pairwise_joint).
  double statistic = 0.0;
  /// Bonferroni-corrected two-sample KS critical value at the 1% level over
  /// all tested statistics; the band for two equidistributed samples.
  double noise_band = 0.0;
};

/// Compares `trials` draws of S against `trials` draws of the gaussian vector
/// G with covariance I_N. Trial t draws S from rng.child(t) and G from
/// rng.child(t).child(1). Throws std::invalid_argument if trials < 100.
FrameDistanceReport be_frame_distance(const TightFrame& frame, const AtomDistribution& atom,
                                      std::size_t trials, const RngStream& rng);

struct ConcentrationReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t trials = 0;
  double tail_frequency = 0.0;   // fraction with | |pi_V X| - sqrt d | >= sqrt(d) / 2
  double mean_square = 0.0;      // mean of |pi_V X|^2
  double standard_error = 0.0;   // of mean_square
  bool mean_within_band = false; // |mean_square - d| <= 3 SE
  double median_mean_gap = 0.0;  // of |pi_V X|
};

/// Projects X = (a_1, ..., a_n) onto one random d-dimensional subspace V
/// (drawn from rng's sequential source) over `trials` draws of X
/// (trial t from rng.child(t)). The atom must have a sup bound; 1 <= d <= n.
ConcentrationReport projection_concentration(const AtomDistribution& atom, std::size_t n, std::size_t d,
                                             std::size_t trials, const RngStream& rng);

}  // namespace hardedge
