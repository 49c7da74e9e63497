#include <doctest.h>

#include <cmath>

#include "hardedge/cltframe.hpp"
#include "hardedge/ecdf.hpp"

using namespace hardedge;

TEST_CASE("tight frame checks") {
  for (Field field : {Field::Real, Field::Complex}) {
    const TightFrame basis = standard_basis_frame(4, field);
    CHECK(basis.size == 4);
    CHECK(basis.max_norm == doctest::Approx(1.0));
    CHECK(check_tight_frame(basis).holds);
  }
  ComplexMatrix scaled = ComplexMatrix::Identity(3, 3) * 1.1;
  const FrameCheck bad = check_tight_frame(make_frame(scaled, Field::Real));
  CHECK_FALSE(bad.holds);
  CHECK(bad.trace_gap == doctest::Approx(3 * 0.21));
  ComplexMatrix imaginary = ComplexMatrix::Identity(2, 2) * Complex(0, 1);
  CHECK_THROWS(make_frame(imaginary, Field::Real));
  CHECK_NOTHROW(make_frame(imaginary, Field::Complex));
}

TEST_CASE("random tight frames") {
  for (Field field : {Field::Real, Field::Complex}) {
    const TightFrame frame = random_tight_frame(100, 4, field, RngStream{1, 0});
    CHECK(frame.ambient == 4);
    CHECK(frame.size == 100);
    CHECK(check_tight_frame(frame).holds);
    CHECK(frame.max_norm <= 1.0);
    // Typical vectors have norm near sqrt(N / n) = 0.2.
    CHECK(frame.max_norm < 0.6);
    if (field == Field::Real) CHECK(frame.vectors.imag().norm() == 0.0);
  }
  CHECK_THROWS(random_tight_frame(3, 4, Field::Real, RngStream{}));
  CHECK_THROWS(random_tight_frame(3, 0, Field::Real, RngStream{}));
}

TEST_CASE("frame samples") {
  const TightFrame frame = random_tight_frame(50, 3, Field::Real, RngStream{2, 0});
  double sum_norms = 0;
  for (Eigen::Index j = 0; j < frame.vectors.cols(); ++j) sum_norms += frame.vectors.col(j).norm();
  for (std::uint64_t t = 0; t < 50; ++t) {
    const ComplexVector s = frame_sample(frame, AtomDistribution::bernoulli(), RngStream{3, t});
    CHECK(s.size() == 3);
    CHECK(s.norm() <= sum_norms + 1e-12);
  }
  const TightFrame basis = standard_basis_frame(3, Field::Real);
  const ComplexVector e = frame_sample(basis, AtomDistribution::real_gaussian(), RngStream{4, 0});
  for (Eigen::Index i = 0; i < 3; ++i) {
    DrawSource source = RngStream{4, 0}.draw(static_cast<std::uint64_t>(i));
    CHECK(e(i) == AtomDistribution::real_gaussian().sample(source));
  }
  CHECK_THROWS(frame_sample(frame, AtomDistribution::complex_gaussian(), RngStream{}));

  // Covariance of S matches the identity.
  const std::size_t trials = 4000;
  RealMatrix second = RealMatrix::Zero(3, 3);
  RealMatrix fourth = RealMatrix::Zero(3, 3);
  for (std::size_t t = 0; t < trials; ++t) {
    const RealVector s = frame_sample(frame, AtomDistribution::bernoulli(), RngStream{5, t}).real();
    const RealMatrix outer = s * s.transpose();
    second += outer;
    fourth += outer.cwiseProduct(outer);
  }
  second /= static_cast<double>(trials);
  fourth /= static_cast<double>(trials);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      const double se = std::sqrt((fourth(i, j) - second(i, j) * second(i, j)) / static_cast<double>(trials));
      CHECK(std::abs(second(i, j) - target) <= 5 * se);
    }
  }
}

TEST_CASE("distance to the gaussian") {
  const TightFrame identity = standard_basis_frame(3, Field::Real);
  CHECK_THROWS(be_frame_distance(identity, AtomDistribution::bernoulli(), 99, RngStream{}));

  const FrameDistanceReport atomic = be_frame_distance(identity, AtomDistribution::bernoulli(), 2000, RngStream{6, 0});
  CHECK(atomic.coordinate_ks.size() == 3);
  CHECK(atomic.statistic >= 0.3);

  const TightFrame spread = random_tight_frame(200, 3, Field::Real, RngStream{7, 0});
  const FrameDistanceReport baseline =
      be_frame_distance(spread, AtomDistribution::real_gaussian(), 2000, RngStream{8, 0});
  CHECK(baseline.statistic <= baseline.noise_band);
  CHECK(baseline.noise_band == doctest::Approx(ks_critical_value(0.01 / 6, 2000, 2000)));

  const TightFrame complex = random_tight_frame(100, 2, Field::Complex, RngStream{9, 0});
  const FrameDistanceReport c = be_frame_distance(complex, AtomDistribution::complex_gaussian(), 1000, RngStream{10, 0});
  CHECK(c.coordinate_ks.size() == 4);
  CHECK(c.statistic <= c.noise_band);
}

TEST_CASE("statistic decreases as the frame spreads") {
  std::vector<double> max_norms, statistics;
  for (std::size_t n : {3, 6, 12, 50, 200}) {
    const TightFrame frame = random_tight_frame(n, 3, Field::Real, RngStream{11, n});
    max_norms.push_back(frame.max_norm);
    statistics.push_back(be_frame_distance(frame, AtomDistribution::bernoulli(), 2000, RngStream{12, n}).statistic);
  }
  CHECK(spearman_correlation(max_norms, statistics) > 0.0);
}

TEST_CASE("projection concentration") {
  const AtomDistribution bounded = truncate_renormalize(AtomDistribution::real_gaussian(), 4.0);
  const ConcentrationReport r = projection_concentration(bounded, 100, 25, 2000, RngStream{13, 0});
  CHECK(r.tail_frequency <= 0.01);
  CHECK(r.mean_within_band);
  CHECK(std::abs(r.mean_square - 25) <= 3 * r.standard_error + 1e-12);

  // d = n projects onto everything, so |pi X|^2 = |X|^2.
  const ConcentrationReport full = projection_concentration(AtomDistribution::bernoulli(), 30, 30, 200, RngStream{14, 0});
  CHECK(full.mean_square == doctest::Approx(30.0));
  CHECK(full.tail_frequency == 0.0);

  CHECK_THROWS(projection_concentration(AtomDistribution::real_gaussian(), 10, 5, 100, RngStream{}));
  CHECK_THROWS(projection_concentration(AtomDistribution::bernoulli(), 10, 0, 100, RngStream{}));
  CHECK_THROWS(projection_concentration(AtomDistribution::bernoulli(), 10, 11, 100, RngStream{}));
}
