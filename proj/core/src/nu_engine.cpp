#include "pseudospin/nu_engine.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "pseudospin/errors.hpp"

namespace pseudospin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_integer(double e) { return std::isfinite(e) && e == std::round(e); }

double real_power(double base, double exponent, const char* what) {
  if (base < 0.0 && !is_integer(exponent)) {
    throw DomainError(std::string("nu_wavefunction: negative base for non-integer power of ") +
                      what);
  }
  if (base == 0.0 && exponent < 0.0) {
    throw DomainError(std::string("nu_wavefunction: zero base with negative exponent in ") + what);
  }
  return std::pow(base, exponent);
}

std::complex<double> complex_power(std::complex<double> base, double exponent) {
  return std::pow(base, exponent);
}

}  // namespace

NuDerived derive_parameters(const NuInput& in) {
  NuDerived d;
  d.a4 = 0.5 * (1.0 - in.a1);
  d.a5 = 0.5 * (in.a2 - 2.0 * in.a3);
  d.a6 = d.a5 * d.a5 + in.xi1;
  d.a7 = 2.0 * d.a4 * d.a5 - in.xi2;
  d.a8 = d.a4 * d.a4 + in.xi3;
  d.a9 = in.a3 * d.a7 + in.a3 * in.a3 * d.a8 + d.a6;
  d.valid = d.a8 >= 0.0 && d.a9 >= 0.0;
  if (!d.valid) {
    d.sqrt_a8 = d.sqrt_a9 = kNaN;
    d.a10 = d.a11 = d.a12 = d.a13 = kNaN;
    return d;
  }
  d.sqrt_a8 = std::sqrt(d.a8);
  d.sqrt_a9 = std::sqrt(d.a9);
  const double root_sum = d.sqrt_a9 + in.a3 * d.sqrt_a8;
  d.a10 = in.a1 + 2.0 * d.a4 + 2.0 * d.sqrt_a8;
  d.a11 = in.a2 - 2.0 * d.a5 + 2.0 * root_sum;
  d.a12 = d.a4 + d.sqrt_a8;
  d.a13 = d.a5 - root_sum;
  return d;
}

KRoots k_roots(const NuInput& input) {
  const NuDerived d = derive_parameters(input);
  const double centre = -(d.a7 + 2.0 * input.a3 * d.a8);
  const std::complex<double> root = 2.0 * std::sqrt(std::complex<double>(d.a8 * d.a9, 0.0));
  return {centre + root, centre - root};
}

double tau_slope(const NuDerived& derived, double a3) {
  if (!derived.valid) throw PreconditionError("tau_slope: derived parameters are not valid");
  return -2.0 * a3 - 2.0 * (derived.sqrt_a9 + a3 * derived.sqrt_a8);
}

NuPolynomials nu_polynomials(const NuInput& input) {
  const NuDerived d = derive_parameters(input);
  if (!d.valid) throw InvalidBranchError("nu_polynomials: a8 < 0 or a9 < 0");
  NuPolynomials p;
  p.k = -(d.a7 + 2.0 * input.a3 * d.a8) - 2.0 * d.sqrt_a8 * d.sqrt_a9;
  p.pi0 = d.a4 + d.sqrt_a8;
  p.pi1 = d.a5 - (d.sqrt_a9 + input.a3 * d.sqrt_a8);
  p.tau0 = input.a1 + 2.0 * p.pi0;
  p.tau1 = -input.a2 + 2.0 * p.pi1;
  p.lambda = p.k + p.pi1;
  p.sigma2 = -2.0 * input.a3;
  return p;
}

double lambda_n(const NuPolynomials& poly, int n) {
  return -n * poly.tau1 - 0.5 * n * (n - 1.0) * poly.sigma2;
}

std::optional<double> try_quantization_residual(const NuInput& in, int n) {
  if (n < 0) throw PreconditionError("quantization_residual: negative n");
  const NuDerived d = derive_parameters(in);
  if (!d.valid) return std::nullopt;
  const double two_n1 = 2.0 * n + 1.0;
  return in.a2 * n - two_n1 * d.a5 + two_n1 * (d.sqrt_a9 + in.a3 * d.sqrt_a8) +
         n * (n - 1.0) * in.a3 + d.a7 + 2.0 * in.a3 * d.a8 + 2.0 * d.sqrt_a8 * d.sqrt_a9;
}

double quantization_residual(const NuInput& input, int n) {
  const auto r = try_quantization_residual(input, n);
  if (!r) throw InvalidBranchError("quantization_residual: a8 < 0 or a9 < 0, no real bound state");
  return *r;
}

NuSolution::NuSolution(const NuInput& input, int n)
    : input_(input), derived_(derive_parameters(input)), n_(n) {
  if (n < 0) throw PreconditionError("NuSolution: negative degree");
  if (!derived_.valid) throw InvalidBranchError("NuSolution: a8 < 0 or a9 < 0");
}

double NuSolution::second_index() const {
  if (laguerre_branch()) throw PreconditionError("second_index: a3 == 0 has no Jacobi index");
  return derived_.a11 / input_.a3 - derived_.a10 - 1.0;
}

double NuSolution::envelope_exponent() const {
  if (laguerre_branch()) throw PreconditionError("envelope_exponent: a3 == 0");
  return -derived_.a12 - derived_.a13 / input_.a3;
}

template <specfun::Scalar T>
void NuSolution::evaluate(T s, T s_power, T* value, T* derivative) const {
  const NuDerived& d = derived_;
  if (laguerre_branch()) {
    const T envelope = s_power * std::exp(d.a13 * s);
    const T y = d.a11 * s;
    const T poly = specfun::laguerre(n_, first_index(), y);
    if (value) *value = envelope * poly;
    if (derivative) {
      const T dpoly = specfun::laguerre_derivative(n_, first_index(), y);
      *derivative = envelope * ((d.a12 / s + d.a13) * poly + d.a11 * dpoly);
    }
    return;
  }
  const double a3 = input_.a3;
  const double p = envelope_exponent();
  const T base = 1.0 - a3 * s;
  T weight;
  if constexpr (std::is_same_v<T, double>) {
    weight = real_power(base, p, "(1 - a3 s)");
  } else {
    weight = complex_power(base, p);
  }
  const T x = 1.0 - 2.0 * a3 * s;
  const double a = first_index();
  const double b = second_index();
  const T poly = specfun::jacobi(n_, a, b, x);
  if (value) *value = s_power * weight * poly;
  if (derivative) {
    const T dpoly = specfun::jacobi_derivative(n_, a, b, x);
    *derivative = s_power * weight * ((d.a12 / s - a3 * p / base) * poly - 2.0 * a3 * dpoly);
  }
}

template <specfun::Scalar T>
T NuSolution::value(T s) const {
  T s_power;
  if constexpr (std::is_same_v<T, double>) {
    s_power = real_power(s, derived_.a12, "s");
  } else {
    s_power = complex_power(s, derived_.a12);
  }
  T v;
  evaluate<T>(s, s_power, &v, nullptr);
  return v;
}

template <specfun::Scalar T>
T NuSolution::derivative(T s) const {
  T s_power;
  if constexpr (std::is_same_v<T, double>) {
    s_power = real_power(s, derived_.a12, "s");
  } else {
    s_power = complex_power(s, derived_.a12);
  }
  T dv;
  evaluate<T>(s, s_power, nullptr, &dv);
  return dv;
}

std::complex<double> NuSolution::value_from_log(std::complex<double> log_s) const {
  const std::complex<double> s = std::exp(log_s);
  std::complex<double> v;
  evaluate<std::complex<double>>(s, std::exp(derived_.a12 * log_s), &v, nullptr);
  return v;
}

std::complex<double> NuSolution::derivative_from_log(std::complex<double> log_s) const {
  const std::complex<double> s = std::exp(log_s);
  std::complex<double> dv;
  evaluate<std::complex<double>>(s, std::exp(derived_.a12 * log_s), nullptr, &dv);
  return dv;
}

template double NuSolution::value<double>(double) const;
template std::complex<double> NuSolution::value<std::complex<double>>(std::complex<double>) const;
template double NuSolution::derivative<double>(double) const;
template std::complex<double> NuSolution::derivative<std::complex<double>>(
    std::complex<double>) const;

}  // namespace pseudospin
