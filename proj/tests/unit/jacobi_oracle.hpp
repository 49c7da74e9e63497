#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "hardedge/matrix.hpp"

// Cyclic Jacobi eigenvalue iteration for real symmetric matrices. Independent
// of the library's SVD; used as a test oracle only.
inline std::vector<double> jacobi_eigenvalues(hardedge::RealMatrix a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Singular values from the Jacobi eigenvalues of A*A (complex matrices via
// their real 2n x 2n embedding, whose eigenvalues come in pairs).
inline std::vector<double> oracle_singular_values(const hardedge::Matrix& a) {
  const hardedge::ComplexMatrix c = a.as_complex();
  const hardedge::ComplexMatrix gram = c.cols() <= c.rows() ? (c.adjoint() * c).eval() : (c * c.adjoint()).eval();
  const Eigen::Index k = gram.rows();
  std::vector<double> eig;
  if (a.field() == hardedge::Field::Real) {
    eig = jacobi_eigenvalues(gram.real());
  } else {
    hardedge::RealMatrix embed(2 * k, 2 * k);
    embed << gram.real(), -gram.imag(), gram.imag(), gram.real();
    const std::vector<double> doubled = jacobi_eigenvalues(embed);
    for (std::size_t i = 0; i < doubled.size(); i += 2) eig.push_back(doubled[i]);
  }
  std::vector<double> out;
  for (double e : eig) out.push_back(std::sqrt(std::max(e, 0.0)));
  return out;
}
