#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hardedge {

/// Outcome of a randomized verification suite. Instance t draws everything
/// from the stream (seed, t); fields alternate real/complex by instance.
struct SuiteReport {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// Largest residual (or least slack) seen, in the suite's own units.
  double worst_residual = 0.0;
  std::map<std::string, double> metrics;
  bool passed = false;
};

/// Projection identities: BB* = M^{-1}M^{-*} and sigma_j(B) sigma_{s-j+1}(M) = 1,
/// n <= 30, s <= 8.
SuiteReport projection_suite(std::size_t instances, std::uint64_t seed);
/// d_i |R_i| = 1, n <= 30.
SuiteReport distance_suite(std::size_t instances, std::uint64_t seed);
/// d_j >= |pi(X_j)| / (1 + sum_{i<=L} |pi(X_i)| / d_i), n <= 12.
SuiteReport correlation_suite(std::size_t instances, std::uint64_t seed);
/// Exhaustive second-moment bound on `instances` matrices with n <= 6, then
/// 200 repetitions at n = 100, s = 10 against the Chebyshev band
/// |estimate^2 - truth^2| <= 5 sqrt((n / s) sum_k |R_k|^4) (pass rate >= 0.96).
SuiteReport sampling_suite(std::size_t instances, std::uint64_t seed);
/// Two-sample KS between s sigma_s(M_{s,n})^2 and n sigma_n^2 for real
/// gaussian n = 100, s = 10; passes at <= 0.08.
SuiteReport pipeline_suite(std::size_t trials, std::uint64_t seed);

/// Eigenvalue form on self-adjoint pairs plus the Gram form on general pairs, n <= 12.
SuiteReport hoffman_wielandt_suite(std::size_t instances, std::uint64_t seed);
SuiteReport weyl_suite(std::size_t instances, std::uint64_t seed);
SuiteReport interlacing_suite(std::size_t instances, std::uint64_t seed);

/// Names accepted by run_suite: projection, distance, correlation, sampling,
/// pipeline, hoffman-wielandt, weyl, interlacing.
SuiteReport run_suite(const std::string& name, std::size_t instances, std::uint64_t seed);
std::vector<std::string> suite_names();

}  // namespace hardedge
