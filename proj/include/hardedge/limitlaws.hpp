#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardedge/matrix.hpp"

namespace hardedge {

/// A limiting distribution on [0, inf): CDF, optional density.
struct LimitLaw {
  std::string name;
  std::function<double(double)> cdf;
  std::optional<std::function<double(double)>> density;
  std::string support;
};

/// Limit of P(n sigma_n^2 <= t) for real normalized atoms: 1 - exp(-t/2 - sqrt t).
double edelman_real_cdf(double t);
/// The same law by quadrature of (1 + sqrt x) / (2 sqrt x) exp(-(x/2 + sqrt x)),
/// after substituting x = u^2.
double edelman_real_cdf_quadrature(double t);
/// Exact for complex gaussian matrices and the limit for complex atoms: 1 - exp(-t).
double edelman_complex_cdf(double t);
double edelman_complex_cdf_quadrature(double t);

/// law.cdf(x^2): the CDF of sqrt(n) sigma_n when law describes n sigma_n^2.
double sqrt_scale_cdf(const LimitLaw& law, double x);

struct TaylorCheck {
  double exact;   // 1 - exp(-x^2/2 - x)
  double approx;  // x - x^3/3
  bool below_identity;
  bool within_quartic;
};
/// Compares the real hard-edge law at scale sqrt(n) sigma_n with its cubic
/// Taylor polynomial on [0, 0.5].
TaylorCheck st_taylor_check(double x);

/// Marchenko-Pastur CDF of sigma^2 / n for square matrices:
/// (1 / 2 pi) int_0^{min(t, 4)} sqrt(4 / x - 1) dx, by adaptive quadrature.
double mp_cdf(double t);
/// Closed antiderivative of the same integral (used as a cross-check).
double mp_cdf_closed_form(double t);

/// J_nu(x) for nu in {0, 1} from the integral representation
/// (1 / 2 pi) int_{-pi}^{pi} exp(-i (nu t - x sin t)) dt, trapezoid rule, 512 nodes.
double bessel_j(int nu, double x);

/// Hard-edge Bessel kernel (index 0):
/// [sqrt(x) J1(sqrt x) J0(sqrt y) - sqrt(y) J0(sqrt x) J1(sqrt y)] / (2 (x - y)),
/// extended to |x - y| <= 1e-4 by its diagonal value (J0^2 + J1^2) / 4 at the midpoint.
double bessel_kernel(double x, double y);

/// (K(t_i, t_j))_{ij} on the given points.
RealMatrix bessel_kernel_gram(const std::vector<double>& points);

/// tau(A) = (2 n / kappa(A))^2 for a square invertible A.
double condition_law_statistic(const Matrix& a);

/// Half-normal CDF P(|g_R| <= t).
double half_normal_cdf(double t);
/// P(|g_C| <= t) = 1 - exp(-t^2).
double complex_modulus_cdf(double t);

/// Names: edelman-real, edelman-complex, edelman-real-sqrt, edelman-complex-sqrt,
/// marchenko-pastur, half-normal, complex-modulus.
LimitLaw law_by_name(const std::string& name);
std::vector<std::string> law_names();

}  // namespace hardedge
