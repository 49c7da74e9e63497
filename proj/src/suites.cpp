#include "hardedge/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hardedge/ecdf.hpp"
#include "hardedge/ensembles.hpp"
#include "hardedge/parallel.hpp"
#include "hardedge/reduction.hpp"
#include "hardedge/spectral.hpp"

namespace hardedge {

namespace {

Field field_of(std::size_t t) { return t % 2 == 0 ? Field::Real : Field::Complex; }

AtomDistribution gaussian(Field field) {
  return field == Field::Real ? AtomDistribution::real_gaussian() : AtomDistribution::complex_gaussian();
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Field field, const RngStream& rng) {
  // Ensembles are wide; a tall gaussian matrix is the adjoint of a wide one.
  if (rows > cols) return sample_matrix(EnsembleSpec{cols, rows, gaussian(field), 0}, rng).matrix.adjoint();
  return sample_matrix(EnsembleSpec{rows, cols, gaussian(field), 0}, rng).matrix;
}

Matrix self_adjoint(const Matrix& g) {
  return g.visit([](const auto& m) { return Matrix(((m + m.adjoint()) * 0.5).eval()); });
}

// Uniform integer in [lo, hi].
std::size_t uniform_between(DrawSource& source, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(source.below(hi - lo + 1));
}

SuiteReport start(std::string name, std::size_t instances) {
  SuiteReport report;
  report.name = std::move(name);
  report.instances = instances;
  return report;
}

SuiteReport finish(SuiteReport report, double tolerance) {
  report.passed = report.failures == 0 && report.worst_residual <= tolerance;
  return report;
}

SuiteReport inequality_suite(const std::string& name, std::size_t instances, std::uint64_t seed,
                             const std::function<InequalityReport(std::size_t, const RngStream&)>& check) {
  SuiteReport report = start(name, instances);
  report.worst_residual = -std::numeric_limits<double>::infinity();
  const auto outcomes = parallel_map(instances, default_worker_count(),
                                     [&](std::size_t t) { return check(t, RngStream{seed, t}); });
  for (const InequalityReport& r : outcomes) {
    if (!r.holds) ++report.failures;
    report.worst_residual = std::max(report.worst_residual, r.lhs - r.rhs);
  }
  if (instances == 0) report.worst_residual = 0.0;
  report.metrics["max_excess"] = report.worst_residual;
  report.passed = report.failures == 0;
  return report;
}

}  // namespace

SuiteReport projection_suite(std::size_t instances, std::uint64_t seed) {
  SuiteReport report = start("projection", instances);
  struct Residuals {
    double gram, singular, orthonormality, complement;
    bool certified;
  };
  const auto outcomes = parallel_map(instances, default_worker_count(), [&](std::size_t t) {
    const RngStream rng{seed, t};
    DrawSource dims = rng.child(0).sequential();
    const std::size_t n = uniform_between(dims, 1, 30);
    const std::size_t s = uniform_between(dims, 1, std::min<std::size_t>(8, n));
    const ProjectionWitness w = build_projection(gaussian_matrix(n, n, field_of(t), rng), s);
    return Residuals{w.gram_residual, w.singular_residual, w.orthonormality_residual, w.complement_residual,
                     w.certified};
  });
  double gram = 0.0, singular = 0.0, ortho = 0.0, complement = 0.0;
  for (const Residuals& r : outcomes) {
    if (!r.certified) ++report.failures;
    gram = std::max(gram, r.gram);
    singular = std::max(singular, r.singular);
    ortho = std::max(ortho, r.orthonormality);
    complement = std::max(complement, r.complement);
  }
  report.metrics = {{"max_gram_residual", gram},
                    {"max_singular_residual", singular},
                    {"max_orthonormality_residual", ortho},
                    {"max_complement_residual", complement}};
  report.worst_residual = std::max(gram, singular);
  return finish(report, 1e-8);
}

SuiteReport distance_suite(std::size_t instances, std::uint64_t seed) {
  SuiteReport report = start("distance", instances);
  const auto gaps = parallel_map(instances, default_worker_count(), [&](std::size_t t) {
    const RngStream rng{seed, t};
    DrawSource dims = rng.child(0).sequential();
    const std::size_t n = uniform_between(dims, 1, 30);
    return distances_to_hyperplanes(gaussian_matrix(n, n, field_of(t), rng)).max_relative_gap;
  });
  for (double g : gaps) {
    if (!(g <= 1e-8)) ++report.failures;
    report.worst_residual = std::max(report.worst_residual, g);
  }
  report.metrics["max_relative_gap"] = report.worst_residual;
  return finish(report, 1e-8);
}

SuiteReport correlation_suite(std::size_t instances, std::uint64_t seed) {
  return inequality_suite("correlation", instances, seed, [](std::size_t t, const RngStream& rng) {
    DrawSource dims = rng.child(0).sequential();
    const std::size_t n = uniform_between(dims, 2, 12);
    const std::size_t big_l = uniform_between(dims, 1, n - 1);
    const std::size_t j = uniform_between(dims, big_l + 1, n);
    const CorrelationReport r = correlation_bound_check(gaussian_matrix(n, n, field_of(t), rng), big_l, j);
    // As lhs <= rhs: bound <= distance.
    return InequalityReport{"correlation", r.holds, r.bound, r.distance};
  });
}

SuiteReport sampling_suite(std::size_t instances, std::uint64_t seed) {
  SuiteReport report = start("sampling", instances);
  struct Exhaustive {
    bool holds;
    double ratio;
    double formula_gap;
  };
  const auto exhaustive = parallel_map(instances, default_worker_count(), [&](std::size_t t) {
    const RngStream rng{seed, t};
    DrawSource dims = rng.child(0).sequential();
    const std::size_t n = uniform_between(dims, 2, 6);
    const std::size_t s = uniform_between(dims, 1, n);
    const Matrix g = invert(gaussian_matrix(n, n, field_of(t), rng));
    const SecondMomentCheck check = sampling_second_moment_oracle(g, s);
    const double exact = sampling_second_moment_exact(g, s);
    const double gap = std::abs(check.lhs - exact) / std::max(std::abs(exact), 1e-300);
    return Exhaustive{check.holds && check.exhaustive, check.lhs / check.rhs, gap};
  });
  double worst_ratio = 0.0, worst_formula = 0.0;
  for (const Exhaustive& e : exhaustive) {
    if (!e.holds) ++report.failures;
    worst_ratio = std::max(worst_ratio, e.ratio);
    worst_formula = std::max(worst_formula, e.formula_gap);
  }

  constexpr std::size_t kRepetitions = 200;
  constexpr std::size_t kN = 100;
  constexpr std::size_t kS = 10;
  const auto within = parallel_map(kRepetitions, default_worker_count(), [&](std::size_t t) {
    const RngStream rng = RngStream{seed, t}.child(1);
    const Matrix a = gaussian_matrix(kN, kN, Field::Real, rng);
    const SamplingEstimate e = sampling_estimator(a, kS, rng.child(0));
    const double band = 5.0 * std::sqrt(static_cast<double>(kN) / kS * e.row_fourth_moment);
    return std::abs(e.estimate * e.estimate - e.truth * e.truth) <= band ? 1 : 0;
  });
  const double pass_rate =
      static_cast<double>(std::accumulate(within.begin(), within.end(), 0)) / static_cast<double>(kRepetitions);

  report.metrics = {{"max_lhs_over_rhs", worst_ratio},
                    {"max_closed_form_gap", worst_formula},
                    {"chebyshev_pass_rate", pass_rate}};
  report.worst_residual = worst_ratio;
  report.passed = report.failures == 0 && worst_formula <= 1e-8 && pass_rate >= 0.96;
  return report;
}

SuiteReport pipeline_suite(std::size_t trials, std::uint64_t seed) {
  constexpr std::size_t kN = 100;
  constexpr std::size_t kS = 10;
  if (trials == 0) throw std::invalid_argument("pipeline_suite: trials must be positive");
  SuiteReport report = start("pipeline", trials);
  struct Pair {
    double projected, full;
  };
  const auto values = parallel_map(trials, default_worker_count(), [&](std::size_t t) {
    const RngStream rng{seed, t};
    const double projected = pipeline_sigma_statistic(gaussian_matrix(kN, kN, Field::Real, rng.child(0)), kS);
    const double full = hard_edge_statistic(gaussian_matrix(kN, kN, Field::Real, rng.child(1)), 1)[0];
    return Pair{projected, full};
  });
  std::vector<double> projected, full;
  for (const Pair& p : values) {
    projected.push_back(p.projected);
    full.push_back(p.full);
  }
  const double ks = ks_distance(EmpiricalCDF(projected), EmpiricalCDF(full));
  report.metrics["ks"] = ks;
  report.worst_residual = ks;
  report.passed = ks <= 0.08;
  return report;
}

SuiteReport hoffman_wielandt_suite(std::size_t instances, std::uint64_t seed) {
  return inequality_suite("hoffman-wielandt", instances, seed, [](std::size_t t, const RngStream& rng) {
    DrawSource dims = rng.child(0).sequential();
    const std::size_t n = uniform_between(dims, 1, 12);
    const Field field = field_of(t);
    const Matrix m = self_adjoint(gaussian_matrix(n, n, field, rng.child(1)));
    const Matrix m_prime = self_adjoint(gaussian_matrix(n, n, field, rng.child(2)));
    const InequalityReport eig = check_hoffman_wielandt(m, m_prime);
    const std::size_t rows = uniform_between(dims, 1, 12);
    const InequalityReport gram = check_hoffman_wielandt_gram(gaussian_matrix(rows, n, field, rng.child(3)),
                                                               gaussian_matrix(rows, n, field, rng.child(4)));
    InequalityReport out = eig.lhs - eig.rhs >= gram.lhs - gram.rhs ? eig : gram;
    out.holds = eig.holds && gram.holds;
    return out;
  });
}

SuiteReport weyl_suite(std::size_t instances, std::uint64_t seed) {
  return inequality_suite("weyl", instances, seed, [](std::size_t t, const RngStream& rng) {
    DrawSource dims = rng.child(0).sequential();
    const std::size_t m = uniform_between(dims, 1, 12);
    const std::size_t n = uniform_between(dims, 1, 12);
    const Field field = field_of(t);
    const Matrix a = gaussian_matrix(m, n, field, rng.child(1));
    // Alternate small and order-one perturbations.
    const double scale = t % 4 < 2 ? 1e-3 : 1.0;
    const Matrix e = gaussian_matrix(m, n, field, rng.child(2));
    const Matrix b = e.visit([&](const auto& x) { return Matrix((x * scale).eval()); });
    return check_weyl(a, a - b);
  });
}

SuiteReport interlacing_suite(std::size_t instances, std::uint64_t seed) {
  return inequality_suite("interlacing", instances, seed, [](std::size_t t, const RngStream& rng) {
    DrawSource dims = rng.child(0).sequential();
    const std::size_t m = uniform_between(dims, 1, 12);
    const std::size_t n = uniform_between(dims, 1, 12);
    const std::size_t r = uniform_between(dims, 1, m);
    std::vector<std::size_t> rows(m);
    std::iota(rows.begin(), rows.end(), 0);
    for (std::size_t i = 0; i < r; ++i) std::swap(rows[i], rows[i + dims.below(m - i)]);
    rows.resize(r);
    return check_interlacing(gaussian_matrix(m, n, field_of(t), rng.child(1)), rows);
  });
}

std::vector<std::string> suite_names() {
  return {"projection", "distance", "correlation", "sampling", "pipeline", "hoffman-wielandt", "weyl", "interlacing"};
}

SuiteReport run_suite(const std::string& name, std::size_t instances, std::uint64_t seed) {
  if (name == "projection") return projection_suite(instances, seed);
  if (name == "distance") return distance_suite(instances, seed);
  if (name == "correlation") return correlation_suite(instances, seed);
  if (name == "sampling") return sampling_suite(instances, seed);
  if (name == "pipeline") return pipeline_suite(instances, seed);
  if (name == "hoffman-wielandt") return hoffman_wielandt_suite(instances, seed);
  if (name == "weyl") return weyl_suite(instances, seed);
  if (name == "interlacing") return interlacing_suite(instances, seed);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace hardedge
