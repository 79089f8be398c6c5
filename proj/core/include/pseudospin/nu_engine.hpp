#pragma once

// Parametric Nikiforov-Uvarov solver.
//
// Handles equations of the form
//
//   Psi'' + (a1 - a2 s) / (s (1 - a3 s)) Psi'
//         + (-xi1 s^2 + xi2 s - xi3) / (s (1 - a3 s))^2 Psi = 0
//
// by deriving the auxiliary parameters a4..a13, the quantization residual
// and the polynomial solution
//
//   Psi(s) = s^a12 (1 - a3 s)^(-a12 - a13/a3) P_n^(a10-1, a11/a3-a10-1)(1 - 2 a3 s)
//
// with the analytic a3 -> 0 limit  s^a12 e^(a13 s) L_n^(a10-1)(a11 s).
// The engine always takes the k root with the minus sign.

#include <complex>
#include <optional>

#include "pseudospin/specfun.hpp"

namespace pseudospin {

//! Six template coefficients of the hypergeometric-type equation.
struct NuInput {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi3 = 0.0;
};

//! Derived parameters. a10..a13 and the square roots are only meaningful
//! when `valid` (a8 >= 0 and a9 >= 0); otherwise they are NaN.
struct NuDerived {
  double a4 = 0.0;
  double a5 = 0.0;
  double a6 = 0.0;
  double a7 = 0.0;
  double a8 = 0.0;
  double a9 = 0.0;
  double a10 = 0.0;
  double a11 = 0.0;
  double a12 = 0.0;
  double a13 = 0.0;
  double sqrt_a8 = 0.0;
  double sqrt_a9 = 0.0;
  bool valid = false;
};

NuDerived derive_parameters(const NuInput& input);

//! Both roots of the square-completion condition; complex when a8*a9 < 0.
struct KRoots {
  std::complex<double> plus;
  std::complex<double> minus;
};

KRoots k_roots(const NuInput& input);

//! tau'(s) of the minus branch. Throws PreconditionError when !derived.valid.
//! Callers reject tau' >= 0.
double tau_slope(const NuDerived& derived, double a3);

//! Linear pieces of the NU construction for the minus branch:
//! pi(s) = pi0 + pi1 s, tau(s) = tau0 + tau1 s, lambda = k + pi'.
struct NuPolynomials {
  double k = 0.0;
  double pi0 = 0.0;
  double pi1 = 0.0;
  double tau0 = 0.0;
  double tau1 = 0.0;
  double lambda = 0.0;
  double sigma2 = 0.0;  // sigma''(s)
};

//! Throws InvalidBranchError when the template is invalid.
NuPolynomials nu_polynomials(const NuInput& input);

//! lambda_n = -n tau' - n(n-1) sigma''/2.
double lambda_n(const NuPolynomials& poly, int n);

//! Left side of the eigenvalue equation; bound states are its zeros.
//! Throws InvalidBranchError when a8 < 0 or a9 < 0.
double quantization_residual(const NuInput& input, int n);

//! Same as quantization_residual, but invalid templates map to nullopt.
std::optional<double> try_quantization_residual(const NuInput& input, int n);

//! Polynomial solution of degree n for a fixed template.
//!
//! Real evaluation requires s > 0 and, for a3 != 0, 1 - a3 s > 0 unless the
//! exponent is an integer; violations throw DomainError. The *_from_log
//! overloads take log(s) explicitly so the s^a12 factor can be continued
//! across the principal branch cut (used on the unit circle for the
//! PT-symmetric Rosen-Morse map).
class NuSolution {
 public:
  NuSolution(const NuInput& input, int n);

  const NuInput& input() const { return input_; }
  const NuDerived& derived() const { return derived_; }
  int degree() const { return n_; }

  bool laguerre_branch() const { return input_.a3 == 0.0; }
  //! Polynomial upper index: a10 - 1.
  double first_index() const { return derived_.a10 - 1.0; }
  //! Jacobi second index a11/a3 - a10 - 1 (a3 != 0 only).
  double second_index() const;
  //! Exponent of (1 - a3 s) in the weight factor (a3 != 0 only).
  double envelope_exponent() const;

  template <specfun::Scalar T>
  T value(T s) const;

  //! dPsi/ds.
  template <specfun::Scalar T>
  T derivative(T s) const;

  std::complex<double> value_from_log(std::complex<double> log_s) const;
  std::complex<double> derivative_from_log(std::complex<double> log_s) const;

 private:
  template <specfun::Scalar T>
  void evaluate(T s, T s_power, T* value, T* derivative) const;

  NuInput input_;
  NuDerived derived_;
  int n_;
};

//! Psi(s) for the template and degree n.
template <specfun::Scalar T>
T nu_wavefunction(const NuInput& input, int n, T s) {
  return NuSolution(input, n).value(s);
}

extern template double NuSolution::value<double>(double) const;
extern template std::complex<double> NuSolution::value<std::complex<double>>(
    std::complex<double>) const;
extern template double NuSolution::derivative<double>(double) const;
extern template std::complex<double> NuSolution::derivative<std::complex<double>>(
    std::complex<double>) const;

}  // namespace pseudospin
