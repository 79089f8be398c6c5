#pragma once

// Jacobi and generalized Laguerre polynomials for real or complex argument.
//
// Production evaluation uses the three-term recurrences. Indices may be any
// real numbers; the NU mapping routinely produces indices <= -1.

#include <complex>
#include <concepts>
#include <string>

#include "pseudospin/errors.hpp"

namespace pseudospin::specfun {

template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, std::complex<double>>;

namespace detail {

inline void require_degree(int n, const char* who) {
  if (n < 0) throw PreconditionError(std::string(who) + ": negative degree");
}

// Explicit finite sum
//   P_n^{(a,b)}(x) = sum_m (a+m+1)_{n-m} (a+b+n+1)_m / (m! (n-m)!) ((x-1)/2)^m,
// polynomial in a and b, so it stays finite where the recurrence divides by
// zero (2k+a+b = 0 or k+a+b+1 = 0).
template <Scalar T>
T jacobi_series(int n, double a, double b, T x) {
  const T y = (x - 1.0) / 2.0;
  T sum(0.0);
  T y_pow(1.0);
  double m_factorial = 1.0;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      m_factorial *= m;
      y_pow *= y;
    }
    double rising_a = 1.0;  // (a+m+1)_{n-m}
    for (int j = 0; j < n - m; ++j) rising_a *= a + m + 1 + j;
    double rising_ab = 1.0;  // (a+b+n+1)_m
    for (int j = 0; j < m; ++j) rising_ab *= a + b + n + 1 + j;
    double nm_factorial = 1.0;
    for (int j = 2; j <= n - m; ++j) nm_factorial *= j;
    sum += (rising_a * rising_ab / (m_factorial * nm_factorial)) * y_pow;
  }
  return sum;
}

}  // namespace detail

//! Jacobi polynomial P_n^{(a,b)}(x).
template <Scalar T>
T jacobi(int n, double a, double b, T x) {
  detail::require_degree(n, "jacobi");
  if (n == 0) return T(1.0);
  const double ab = a + b;
  T p_prev(1.0);
  T p = (a + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + ab;
    const double denom = 2.0 * (k + 1) * (k + ab + 1.0) * c;
    if (denom == 0.0) return detail::jacobi_series(n, a, b, x);
    const T next =
        ((c + 1.0) * ((c + 2.0) * c * x + (a * a - b * b)) * p -
         2.0 * (k + a) * (k + b) * (c + 2.0) * p_prev) /
        denom;
    p_prev = p;
    p = next;
  }
  return p;
}

//! d/dx P_n^{(a,b)}(x) = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}(x).
template <Scalar T>
T jacobi_derivative(int n, double a, double b, T x) {
  detail::require_degree(n, "jacobi_derivative");
  if (n == 0) return T(0.0);
  return 0.5 * (n + a + b + 1.0) * jacobi(n - 1, a + 1.0, b + 1.0, x);
}

//! Generalized Laguerre polynomial L_n^{(k)}(x).
template <Scalar T>
T laguerre(int n, double k, T x) {
  detail::require_degree(n, "laguerre");
  if (n == 0) return T(1.0);
  T l_prev(1.0);
  T l = 1.0 + k - x;
  for (int j = 1; j < n; ++j) {
    const T next = ((2.0 * j + 1.0 + k - x) * l - (j + k) * l_prev) / (j + 1.0);
    l_prev = l;
    l = next;
  }
  return l;
}

//! d/dx L_n^{(k)}(x) = -L_{n-1}^{(k+1)}(x).
template <Scalar T>
T laguerre_derivative(int n, double k, T x) {
  detail::require_degree(n, "laguerre_derivative");
  if (n == 0) return T(0.0);
  return -laguerre(n - 1, k + 1.0, x);
}

extern template double jacobi<double>(int, double, double, double);
extern template std::complex<double> jacobi<std::complex<double>>(int, double, double,
                                                                  std::complex<double>);
extern template double jacobi_derivative<double>(int, double, double, double);
extern template std::complex<double> jacobi_derivative<std::complex<double>>(
    int, double, double, std::complex<double>);
extern template double laguerre<double>(int, double, double);
extern template std::complex<double> laguerre<std::complex<double>>(int, double,
                                                                   std::complex<double>);
extern template double laguerre_derivative<double>(int, double, double);
extern template std::complex<double> laguerre_derivative<std::complex<double>>(
    int, double, std::complex<double>);

}  // namespace pseudospin::specfun
