#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hardedge {

enum class Field { Real, Complex };

using Complex = std::complex<double>;

std::string_view to_string(Field field);
Field field_from_string(std::string_view text);

/// Matrix is singular to working precision (or below the declared threshold).
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative kernel did not converge within its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A column set that was required to be independent is not.
class RankDeficiencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A distribution would collapse to a point mass.
class DegenerateDistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hardedge
