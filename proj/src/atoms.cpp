#include "hardedge/atoms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "hardedge/quadrature.hpp"

namespace hardedge {

namespace {

// Beyond this radius the gaussian tail mass is below 1e-300.
constexpr double kGaussianCutoff = 40.0;
constexpr double kDegenerateVariance = 1e-14;
constexpr int kMaxRejections = 100000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string format_number(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

using Support = std::vector<std::pair<Complex, double>>;

std::optional<Support> discrete_support(const AtomDistribution& dist) {
  return std::visit(
      Overloaded{[](const AtomDistribution::Bernoulli&) -> std::optional<Support> {
                   return Support{{Complex(1.0), 0.5}, {Complex(-1.0), 0.5}};
                 },
                 [](const AtomDistribution::SparseSigned& s) -> std::optional<Support> {
                   const double height = 1.0 / std::sqrt(s.p);
                   Support support{{Complex(height), 0.5 * s.p}, {Complex(-height), 0.5 * s.p}};
                   if (s.p < 1.0) support.emplace_back(Complex(0.0), 1.0 - s.p);
                   return support;
                 },
                 [](const auto&) -> std::optional<Support> { return std::nullopt; }},
      dist.kind());
}

// Moments of the law conditioned on |a| <= bound.
struct ConditionedMoments {
  double mass = 0.0;
  Complex mean{0.0, 0.0};
  double cov_rr = 0.0;
  double cov_ri = 0.0;
  double cov_ii = 0.0;
  // E[|a|^3 | |a| <= bound]; only meaningful for centered isotropic laws.
  double abs3 = 0.0;
};

ConditionedMoments discrete_moments(const Support& support, double bound) {
  ConditionedMoments m;
  for (const auto& [x, p] : support) {
    if (std::abs(x) > bound) continue;
    m.mass += p;
    m.mean += p * x;
  }
  if (m.mass <= 0.0) return m;
  m.mean /= m.mass;
  for (const auto& [x, p] : support) {
    if (std::abs(x) > bound) continue;
    const Complex d = x - m.mean;
    m.cov_rr += p * d.real() * d.real();
    m.cov_ri += p * d.real() * d.imag();
    m.cov_ii += p * d.imag() * d.imag();
  }
  m.cov_rr /= m.mass;
  m.cov_ri /= m.mass;
  m.cov_ii /= m.mass;
  return m;
}

ConditionedMoments real_gaussian_moments(double bound) {
  const double upper = std::min(bound, kGaussianCutoff);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto moment = [&](int power) {
    auto integrand = [&](double x) { return std::pow(x, power) * norm * std::exp(-0.5 * x * x); };
    return 2.0 * quadrature::gauss_kronrod(integrand, 0.0, upper).value;
  };
  ConditionedMoments m;
  m.mass = moment(0);
  if (m.mass <= 0.0) return m;
  m.cov_rr = moment(2) / m.mass;
  m.abs3 = moment(3) / m.mass;
  return m;
}

ConditionedMoments complex_gaussian_moments(double bound) {
  // |z| has density 2 r exp(-r^2) for the C-normalized gaussian.
  const double upper = std::min(bound, kGaussianCutoff);
  auto moment = [&](int power) {
    auto integrand = [&](double r) { return std::pow(r, power) * 2.0 * r * std::exp(-r * r); };
    return quadrature::gauss_kronrod(integrand, 0.0, upper).value;
  };
  ConditionedMoments m;
  m.mass = moment(0);
  if (m.mass <= 0.0) return m;
  const double second = moment(2) / m.mass;
  m.cov_rr = 0.5 * second;
  m.cov_ii = 0.5 * second;
  m.abs3 = moment(3) / m.mass;
  return m;
}

Complex apply_whitening(const double (&w)[2][2], Complex x) {
  return {w[0][0] * x.real() + w[0][1] * x.imag(), w[1][0] * x.real() + w[1][1] * x.imag()};
}

}  // namespace

AtomDistribution::AtomDistribution(Field field, Kind kind, std::optional<double> sup_bound,
                                   double third_moment)
    : field_(field), kind_(std::move(kind)), sup_bound_(sup_bound), third_moment_(third_moment) {}

AtomDistribution AtomDistribution::real_gaussian() {
  return {Field::Real, RealGaussian{}, std::nullopt, 2.0 * std::sqrt(2.0 / std::numbers::pi)};
}

AtomDistribution AtomDistribution::complex_gaussian() {
  // E|z|^3 = Gamma(5/2) since |z|^2 ~ Exp(1).
  return {Field::Complex, ComplexGaussian{}, std::nullopt, 0.75 * std::sqrt(std::numbers::pi)};
}

AtomDistribution AtomDistribution::bernoulli() {
  return {Field::Real, Bernoulli{}, 1.0, 1.0};
}

AtomDistribution AtomDistribution::sparse_signed(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("sparse_signed: p must lie in (0, 1]");
  return {Field::Real, SparseSigned{p}, 1.0 / std::sqrt(p), 1.0 / std::sqrt(p)};
}

std::string AtomDistribution::name() const {
  return std::visit(Overloaded{[](const RealGaussian&) -> std::string { return "rgauss"; },
                               [](const ComplexGaussian&) -> std::string { return "cgauss"; },
                               [](const Bernoulli&) -> std::string { return "bernoulli"; },
                               [](const SparseSigned& s) { return "sparse:" + format_number(s.p); },
                               [](const Truncated& t) {
                                 return "trunc:" + t.base->name() + ":" + format_number(t.bound);
                               }},
                    kind_);
}

Complex AtomDistribution::sample(DrawSource& source) const {
  return std::visit(
      Overloaded{[&](const RealGaussian&) { return Complex(source.normal(), 0.0); },
                 [&](const ComplexGaussian&) {
                   const double re = source.normal();
                   const double im = source.normal();
                   return Complex(re, im) * std::numbers::sqrt2 * 0.5;
                 },
                 [&](const Bernoulli&) {
                   return Complex((source.next_u64() >> 63) != 0 ? 1.0 : -1.0, 0.0);
                 },
                 [&](const SparseSigned& s) {
                   const double u = source.uniform();
                   if (u >= s.p) return Complex(0.0, 0.0);
                   const double height = 1.0 / std::sqrt(s.p);
                   return Complex(u < 0.5 * s.p ? height : -height, 0.0);
                 },
                 [&](const Truncated& t) {
                   for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
                     const Complex x = t.base->sample(source);
                     if (std::abs(x) <= t.bound) return apply_whitening(t.whitening, x - t.center);
                   }
                   throw std::runtime_error("truncated atom: rejection sampler exhausted");
                 }},
      kind_);
}

Complex sample_atom(const AtomDistribution& dist, const RngStream& rng) {
  DrawSource source = rng.draw(0);
  return dist.sample(source);
}

AtomDistribution truncate_renormalize(const AtomDistribution& dist, double bound) {
  if (!(bound > 0.0)) throw DegenerateDistributionError("truncation bound must be positive");
  if (dist.sup_bound() && *dist.sup_bound() <= bound) return dist;
  if (std::holds_alternative<AtomDistribution::Truncated>(dist.kind())) {
    throw std::invalid_argument("truncate_renormalize: nested truncation below the current bound");
  }

  const std::optional<Support> support = discrete_support(dist);
  ConditionedMoments m;
  if (support) {
    m = discrete_moments(*support, bound);
  } else if (std::holds_alternative<AtomDistribution::RealGaussian>(dist.kind())) {
    m = real_gaussian_moments(bound);
  } else {
    m = complex_gaussian_moments(bound);
  }

  AtomDistribution::Truncated truncated{std::make_shared<const AtomDistribution>(dist), bound,
                                        m.mean, {{0.0, 0.0}, {0.0, 0.0}}};
  double op_norm = 0.0;
  if (dist.field() == Field::Real) {
    if (m.mass <= 0.0 || m.cov_rr <= kDegenerateVariance) {
      throw DegenerateDistributionError("truncate_renormalize: conditioned law is degenerate");
    }
    op_norm = 1.0 / std::sqrt(m.cov_rr);
    truncated.whitening[0][0] = op_norm;
  } else {
    // Symmetric inverse square root of the 2x2 covariance, scaled to variance 1/2.
    const double trace = m.cov_rr + m.cov_ii;
    const double det = m.cov_rr * m.cov_ii - m.cov_ri * m.cov_ri;
    const double gap = std::sqrt(std::max(0.0, 0.25 * trace * trace - det));
    const double lambda_hi = 0.5 * trace + gap;
    const double lambda_lo = 0.5 * trace - gap;
    if (m.mass <= 0.0 || lambda_lo <= kDegenerateVariance) {
      throw DegenerateDistributionError("truncate_renormalize: conditioned law is degenerate");
    }
    double ux = 1.0, uy = 0.0;
    if (std::abs(m.cov_ri) > 0.0) {
      ux = m.cov_ri;
      uy = lambda_hi - m.cov_rr;
      const double len = std::hypot(ux, uy);
      ux /= len;
      uy /= len;
    } else if (m.cov_ii > m.cov_rr) {
      ux = 0.0;
      uy = 1.0;
    }
    const double a = std::sqrt(0.5 / lambda_hi);
    const double b = std::sqrt(0.5 / lambda_lo);
    // W = a u u^T + b v v^T with v orthogonal to u.
    truncated.whitening[0][0] = a * ux * ux + b * uy * uy;
    truncated.whitening[0][1] = (a - b) * ux * uy;
    truncated.whitening[1][0] = (a - b) * ux * uy;
    truncated.whitening[1][1] = a * uy * uy + b * ux * ux;
    op_norm = std::max(a, b);
  }
  if (m.mass <= 0.9) {
    throw std::invalid_argument("truncate_renormalize: P(|a| <= bound) must exceed 0.9");
  }

  double third = 0.0;
  if (support) {
    for (const auto& [x, p] : *support) {
      if (std::abs(x) > bound) continue;
      third += p * std::pow(std::abs(apply_whitening(truncated.whitening, x - m.mean)), 3);
    }
    third /= m.mass;
  } else {
    // Gaussian bases are centered and isotropic, so the whitening is a scalar.
    third = m.abs3 * std::pow(truncated.whitening[0][0], 3);
  }

  const double sup = op_norm * (bound + std::abs(m.mean));
  return AtomDistribution(dist.field(), std::move(truncated), sup, third);
}

MomentEstimate empirical_moment(const AtomDistribution& dist, int k, std::size_t n_samples,
                                const RngStream& rng) {
  if (k < 1 || k > 8) throw std::invalid_argument("empirical_moment: k must lie in [1, 8]");
  if (n_samples < 2) throw std::invalid_argument("empirical_moment: need at least two samples");
  DrawSource source = rng.sequential();
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double x = std::pow(std::abs(dist.sample(source)), k);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  const double variance = m2 / static_cast<double>(n_samples - 1);
  return {mean, std::sqrt(variance / static_cast<double>(n_samples))};
}

AtomDistribution atom_from_name(const std::string& name) {
  if (name == "bernoulli") return AtomDistribution::bernoulli();
  if (name == "rgauss") return AtomDistribution::real_gaussian();
  if (name == "cgauss") return AtomDistribution::complex_gaussian();
  if (name.rfind("sparse:", 0) == 0) {
    return AtomDistribution::sparse_signed(std::stod(name.substr(7)));
  }
  if (name.rfind("trunc:", 0) == 0) {
    const auto split = name.rfind(':');
    if (split <= 6) throw std::invalid_argument("atom name: expected trunc:<base>:<bound>");
    return truncate_renormalize(atom_from_name(name.substr(6, split - 6)),
                                std::stod(name.substr(split + 1)));
  }
  throw std::invalid_argument("unknown atom: " + name);
}

}  // namespace hardedge
