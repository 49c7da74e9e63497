#include "hardedge/limitlaws.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "hardedge/quadrature.hpp"
#include "hardedge/spectral.hpp"

namespace hardedge {

namespace {

constexpr int kBesselNodes = 512;
constexpr double kKernelDiagonalBand = 1e-4;

void require_nonnegative(double t, const char* what) {
  if (!(t >= 0.0)) throw std::invalid_argument(std::string(what) + ": argument must be >= 0");
}

double kernel_diagonal(double x) {
  const double r = std::sqrt(x);
  const double j0 = bessel_j(0, r);
  const double j1 = bessel_j(1, r);
  return 0.25 * (j0 * j0 + j1 * j1);
}

}  // namespace

double edelman_real_cdf(double t) {
  require_nonnegative(t, "edelman_real_cdf");
  return -std::expm1(-0.5 * t - std::sqrt(t));
}

double edelman_real_cdf_quadrature(double t) {
  require_nonnegative(t, "edelman_real_cdf_quadrature");
  // x = u^2 turns the density into (1 + u) exp(-(u^2/2 + u)) du.
  auto integrand = [](double u) { return (1.0 + u) * std::exp(-(0.5 * u * u + u)); };
  return quadrature::gauss_kronrod(integrand, 0.0, std::sqrt(t), 1e-14).value;
}

double edelman_complex_cdf(double t) {
  require_nonnegative(t, "edelman_complex_cdf");
  return -std::expm1(-t);
}

double edelman_complex_cdf_quadrature(double t) {
  require_nonnegative(t, "edelman_complex_cdf_quadrature");
  return quadrature::gauss_kronrod([](double x) { return std::exp(-x); }, 0.0, t, 1e-14).value;
}

double sqrt_scale_cdf(const LimitLaw& law, double x) {
  require_nonnegative(x, "sqrt_scale_cdf");
  return law.cdf(x * x);
}

TaylorCheck st_taylor_check(double x) {
  if (!(x >= 0.0 && x <= 0.5)) throw std::invalid_argument("st_taylor_check: x must lie in [0, 0.5]");
  TaylorCheck check;
  check.exact = -std::expm1(-0.5 * x * x - x);
  check.approx = x - x * x * x / 3.0;
  check.below_identity = x == 0.0 ? check.exact == 0.0 : check.exact < x;
  check.within_quartic = std::abs(check.exact - check.approx) <= std::pow(x, 4);
  return check;
}

double mp_cdf(double t) {
  require_nonnegative(t, "mp_cdf");
  // x = u^2 removes the x^{-1/2} endpoint singularity: the integrand becomes 2 sqrt(4 - u^2).
  const double upper = std::sqrt(std::min(t, 4.0));
  auto integrand = [](double u) { return 2.0 * std::sqrt(std::max(0.0, 4.0 - u * u)); };
  const double value = quadrature::gauss_kronrod(integrand, 0.0, upper, 1e-13).value;
  return std::min(1.0, value / (2.0 * std::numbers::pi));
}

double mp_cdf_closed_form(double t) {
  require_nonnegative(t, "mp_cdf_closed_form");
  const double u = std::sqrt(std::min(t, 4.0));
  const double antiderivative = 0.5 * u * std::sqrt(std::max(0.0, 4.0 - u * u)) + 2.0 * std::asin(0.5 * u);
  return antiderivative / std::numbers::pi;
}

double bessel_j(int nu, double x) {
  if (nu != 0 && nu != 1) throw std::invalid_argument("bessel_j: order must be 0 or 1");
  const double period = 2.0 * std::numbers::pi;
  auto integrand_re = [&](double t) { return std::cos(nu * t - x * std::sin(t)); };
  auto integrand_im = [&](double t) { return -std::sin(nu * t - x * std::sin(t)); };
  const double re = quadrature::periodic_trapezoid(integrand_re, -std::numbers::pi, period, kBesselNodes);
  const double im = quadrature::periodic_trapezoid(integrand_im, -std::numbers::pi, period, kBesselNodes);
  if (std::abs(im) > 1e-10 * period) {
    throw std::runtime_error("bessel_j: imaginary part of the quadrature is not negligible");
  }
  return re / period;
}

double bessel_kernel(double x, double y) {
  if (!(x > 0.0 && y > 0.0)) throw std::invalid_argument("bessel_kernel: arguments must be positive");
  if (std::abs(x - y) <= kKernelDiagonalBand) return kernel_diagonal(0.5 * (x + y));
  const double rx = std::sqrt(x);
  const double ry = std::sqrt(y);
  const double numerator =
      rx * bessel_j(1, rx) * bessel_j(0, ry) - ry * bessel_j(0, rx) * bessel_j(1, ry);
  return numerator / (2.0 * (x - y));
}

RealMatrix bessel_kernel_gram(const std::vector<double>& points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  RealMatrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      gram(i, j) = bessel_kernel(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      gram(j, i) = gram(i, j);
    }
  }
  return gram;
}

double condition_law_statistic(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("condition_law_statistic: matrix must be square");
  const double kappa = condition_number(a);
  const double ratio = 2.0 * static_cast<double>(a.rows()) / kappa;
  return ratio * ratio;
}

double half_normal_cdf(double t) {
  require_nonnegative(t, "half_normal_cdf");
  return std::erf(t / std::numbers::sqrt2);
}

double complex_modulus_cdf(double t) {
  require_nonnegative(t, "complex_modulus_cdf");
  return -std::expm1(-t * t);
}

static LimitLaw unclamped_law(const std::string& name) {
  if (name == "edelman-real") {
    return {name, edelman_real_cdf,
            [](double t) {
              if (t <= 0.0) return 0.0;
              const double r = std::sqrt(t);
              return (1.0 + r) / (2.0 * r) * std::exp(-(0.5 * t + r));
            },
            "n sigma_n^2, real atoms"};
  }
  if (name == "edelman-complex") {
    return {name, edelman_complex_cdf, [](double t) { return t < 0.0 ? 0.0 : std::exp(-t); },
            "n sigma_n^2, complex atoms"};
  }
  if (name == "edelman-real-sqrt") {
    return {name, [](double x) { return edelman_real_cdf(x * x); },
            [](double x) { return x < 0.0 ? 0.0 : (1.0 + x) * std::exp(-(0.5 * x * x + x)); },
            "sqrt(n) sigma_n, real atoms"};
  }
  if (name == "edelman-complex-sqrt") {
    return {name, [](double x) { return edelman_complex_cdf(x * x); },
            [](double x) { return x < 0.0 ? 0.0 : 2.0 * x * std::exp(-x * x); },
            "sqrt(n) sigma_n, complex atoms"};
  }
  if (name == "marchenko-pastur") {
    return {name, mp_cdf,
            [](double x) {
              if (x <= 0.0 || x >= 4.0) return 0.0;
              return std::sqrt(4.0 / x - 1.0) / (2.0 * std::numbers::pi);
            },
            "sigma_i^2 / n on (0, 4]"};
  }
  if (name == "half-normal") {
    return {name, half_normal_cdf,
            [](double t) { return t < 0.0 ? 0.0 : std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * t * t); },
            "|g_R|"};
  }
  if (name == "complex-modulus") {
    return {name, complex_modulus_cdf, [](double t) { return t < 0.0 ? 0.0 : 2.0 * t * std::exp(-t * t); },
            "|g_C|"};
  }
  throw std::invalid_argument("unknown law: " + name);
}

LimitLaw law_by_name(const std::string& name) {
  LimitLaw law = unclamped_law(name);
  // Every law lives on [0, inf); its CDF is 0 to the left.
  law.cdf = [cdf = std::move(law.cdf)](double t) { return t < 0.0 ? 0.0 : cdf(t); };
  return law;
}

std::vector<std::string> law_names() {
  return {"edelman-real",     "edelman-complex", "edelman-real-sqrt", "edelman-complex-sqrt",
          "marchenko-pastur", "half-normal",     "complex-modulus"};
}

}  // namespace hardedge
