#include <doctest.h>

#include <cmath>

#include "hardedge/ensembles.hpp"

using namespace hardedge;

TEST_CASE("iid Bernoulli entries are signs") {
  const Matrix a = sample_matrix(square_ensemble(2, AtomDistribution::bernoulli()), RngStream{5, 0}).matrix;
  REQUIRE(a.field() == Field::Real);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(a.at(i, j).real()) == 1.0);
  }
}

TEST_CASE("sampling is deterministic and layout independent") {
  const EnsembleSpec spec{3, 5, AtomDistribution::complex_gaussian(), 0};
  const RngStream rng{42, 7};
  const MatrixSample first = sample_matrix(spec, rng);
  const MatrixSample second = sample_matrix(spec, RngStream{42, 7});
  CHECK(first.matrix == second.matrix);
  CHECK(first.rng == rng);
  CHECK(first.matrix.field() == Field::Complex);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      DrawSource source = rng.draw(i * 5 + j);
      CHECK(first.matrix.at(i, j) == AtomDistribution::complex_gaussian().sample(source));
    }
  }
  CHECK_FALSE(sample_matrix(spec, RngStream{42, 8}).matrix == first.matrix);
}

TEST_CASE("sparse-signed grids follow c = i + j mod period with one-based indices") {
  for (int period : {3, 4}) {
    const GridPlan plan = sparse_signed_grid(period);
    CHECK(plan.name == "grid" + std::to_string(period));
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        const int c = static_cast<int>((i + 1 + j + 1) % static_cast<std::size_t>(period));
        const auto& kind = plan.atom_at(i, j).kind();
        REQUIRE(std::holds_alternative<AtomDistribution::SparseSigned>(kind));
        CHECK(std::get<AtomDistribution::SparseSigned>(kind).p == doctest::Approx(std::pow(0.5, c)));
      }
    }
  }
  const EnsembleSpec spec{30, 30, sparse_signed_grid(3), 0};
  const Matrix a = sample_matrix(spec, RngStream{3, 0}).matrix;
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t j = 0; j < 30; ++j) {
      const int c = static_cast<int>((i + j + 2) % 3);
      const double v = a.at(i, j).real();
      CHECK((v == 0.0 || std::abs(std::abs(v) - std::pow(2.0, 0.5 * c)) < 1e-12));
      if (c == 0) CHECK(std::abs(v) == 1.0);
    }
  }
  CHECK(spec.plan_name() == "grid3");
}

TEST_CASE("ensemble validation") {
  CHECK_THROWS(EnsembleSpec{4, 3, AtomDistribution::bernoulli(), 0}.validate());
  CHECK_THROWS(EnsembleSpec{0, 3, AtomDistribution::bernoulli(), 0}.validate());
  CHECK_THROWS(EnsembleSpec{2, 5, AtomDistribution::bernoulli(), 2}.validate());
  CHECK_NOTHROW(EnsembleSpec{3, 5, AtomDistribution::bernoulli(), 2}.validate());
  GridPlan mixed{"mixed", Field::Real, [](std::size_t i, std::size_t) {
                   return i == 0 ? AtomDistribution::real_gaussian() : AtomDistribution::complex_gaussian();
                 }};
  CHECK_THROWS(EnsembleSpec{2, 2, mixed, 0}.validate());
  CHECK(square_ensemble(4, AtomDistribution::bernoulli()).atom_name() == "bernoulli");
}
