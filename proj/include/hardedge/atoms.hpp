#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "hardedge/rng.hpp"
#include "hardedge/types.hpp"

namespace hardedge {

/// A normalized scalar random variable: mean zero, variance one, and for the
/// complex field real and imaginary parts of variance 1/2 each, uncorrelated.
///
/// Built-in kinds are the real and complex gaussians, the symmetric Bernoulli
/// variable, the sparse signed variable (0 with probability 1-p, +-p^{-1/2}
/// with probability p/2 each), and truncated-renormalized versions of these.
class AtomDistribution {
 public:
  struct RealGaussian {};
  struct ComplexGaussian {};
  struct Bernoulli {};
  struct SparseSigned {
    double p;
  };
  /// Conditioned on |a| <= bound, then mapped by x -> whitening * (x - center).
  /// The whitening acts on (Re, Im) as a real 2x2 matrix.
  struct Truncated {
    std::shared_ptr<const AtomDistribution> base;
    double bound;
    Complex center;
    double whitening[2][2];
  };
  using Kind = std::variant<RealGaussian, ComplexGaussian, Bernoulli, SparseSigned, Truncated>;

  static AtomDistribution real_gaussian();
  static AtomDistribution complex_gaussian();
  static AtomDistribution bernoulli();
  /// Requires 0 < p <= 1.
  static AtomDistribution sparse_signed(double p);

  Field field() const { return field_; }
  const Kind& kind() const { return kind_; }
  /// Almost-sure bound on |a|, if the law is bounded.
  std::optional<double> sup_bound() const { return sup_bound_; }
  /// E|a|^3, analytic for the built-in kinds.
  double third_moment() const { return third_moment_; }
  /// Short name, matching the CLI atom vocabulary where one exists.
  std::string name() const;

  /// One draw. Real atoms return a value with zero imaginary part.
  Complex sample(DrawSource& source) const;
  double sample_real(DrawSource& source) const { return sample(source).real(); }

 private:
  AtomDistribution(Field field, Kind kind, std::optional<double> sup_bound, double third_moment);

  friend AtomDistribution truncate_renormalize(const AtomDistribution& dist, double bound);

  Field field_;
  Kind kind_;
  std::optional<double> sup_bound_;
  double third_moment_;
};

/// Draw one scalar from the stream's first draw slot.
Complex sample_atom(const AtomDistribution& dist, const RngStream& rng);

/// Condition on |a| <= bound, recenter and rescale back to a normalized atom.
///
/// Conditioned moments are exact for the discrete kinds and computed by
/// adaptive quadrature for the gaussians. If the support already lies within
/// the bound the input is returned unchanged.
///
/// Throws DegenerateDistributionError if the conditioned law has zero
/// variance, std::invalid_argument if P(|a| <= bound) <= 0.9.
AtomDistribution truncate_renormalize(const AtomDistribution& dist, double bound);

struct MomentEstimate {
  double value;
  double standard_error;
};

/// Monte Carlo estimate of E|a|^k, 1 <= k <= 8.
MomentEstimate empirical_moment(const AtomDistribution& dist, int k, std::size_t n_samples,
                                const RngStream& rng);

/// Parses "bernoulli", "rgauss", "cgauss", "sparse:<p>" and
/// "trunc:<base>:<bound>".
AtomDistribution atom_from_name(const std::string& name);

}  // namespace hardedge
