#include "pseudospin/specfun.hpp"

namespace pseudospin::specfun {

template double jacobi<double>(int, double, double, double);
template std::complex<double> jacobi<std::complex<double>>(int, double, double,
                                                           std::complex<double>);
template double jacobi_derivative<double>(int, double, double, double);
template std::complex<double> jacobi_derivative<std::complex<double>>(int, double, double,
                                                                      std::complex<double>);
template double laguerre<double>(int, double, double);
template std::complex<double> laguerre<std::complex<double>>(int, double, std::complex<double>);
template double laguerre_derivative<double>(int, double, double);
template std::complex<double> laguerre_derivative<std::complex<double>>(int, double,
                                                                        std::complex<double>);

}  // namespace pseudospin::specfun
