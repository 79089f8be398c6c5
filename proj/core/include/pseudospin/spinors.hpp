#pragma once

// Radial spinor components of an accepted bound state.
//
// g(r) is the NU polynomial solution in s(r); f(r) follows from
//   (d/dr - kappa/r) g = Sigma_m f
// with g' from the chain rule and the polynomial derivative identities.
// Values are complex throughout; they are real (zero imaginary part) for
// Morse and Hulthen.

#include <complex>
#include <optional>
#include <vector>

#include "pseudospin/spectra.hpp"

namespace pseudospin {

//! Uniform grid r_i = r_min + i * spacing, i in [0, points).
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 1.0;
  int points = 4001;

  double spacing() const { return (r_max - r_min) / (points - 1); }
  double r(int i) const { return i + 1 == points ? r_max : r_min + i * spacing(); }
  std::vector<double> abscissae() const;
  //! r_min < r_max, points >= 16. Positivity is checked by the consumers
  //! that need it.
  void validate() const;
};

struct WavefunctionSample {
  double r = 0.0;
  std::complex<double> g;
  std::complex<double> f;
};

//! s(r): e^{-a(r - r0)} (Morse), e^{-r/r0} (Hulthen), -e^{-2 i alpha r} (Rosen-Morse).
std::complex<double> variable_map(const PotentialSpec& spec, double r);

//! A continuous branch of log s(r). For Rosen-Morse this is i(pi - 2 alpha r).
std::complex<double> log_variable(const PotentialSpec& spec, double r);

//! d(log s)/dr, a constant for all three maps.
std::complex<double> log_variable_slope(const PotentialSpec& spec);

//! Morse [0.1, r0 + 30/a], Hulthen [0.01 r0, 40 r0], Rosen-Morse [0.01/alpha, 2 pi/alpha].
RadialGrid default_spinor_grid(const PotentialSpec& spec, int points = 4001);

//! g and dg/dr at one radius.
struct LowerPoint {
  std::complex<double> value;
  std::complex<double> derivative;
};

//! Lower component of a fixed state; builds the NU solution once.
class LowerComponent {
 public:
  LowerComponent(const PotentialSpec& spec, const PhysicalContext& ctx, const BoundState& state);

  LowerPoint operator()(double r) const;
  std::complex<double> value(double r) const { return (*this)(r).value; }

 private:
  PotentialSpec spec_;
  NuSolution solution_;
  bool complex_;
};

std::vector<std::complex<double>> lower_component(const PotentialSpec& spec,
                                                  const PhysicalContext& ctx,
                                                  const BoundState& state, const RadialGrid& grid);

//! Throws DegenerateSigmaError when |Sigma_m| < 1e-12.
std::vector<std::complex<double>> upper_component(const PotentialSpec& spec,
                                                  const PhysicalContext& ctx,
                                                  const BoundState& state, const RadialGrid& grid);

std::vector<WavefunctionSample> spinor_samples(const PotentialSpec& spec,
                                               const PhysicalContext& ctx,
                                               const BoundState& state, const RadialGrid& grid);

//! Composite Simpson rule on a uniform grid; an even point count closes
//! with the 3/8 rule on the last three intervals. Needs at least 4 points
//! when the count is even, 3 when odd.
double simpson(const std::vector<double>& values, double spacing);

struct NormalizedSpinor {
  double scale = 1.0;  //!< multiplier applied to the input samples
  std::vector<WavefunctionSample> samples;
};

//! Scales samples so the integral of |g|^2 + |f|^2 is 1. Throws ZeroNormError.
NormalizedSpinor normalize(const std::vector<WavefunctionSample>& samples, const RadialGrid& grid);

//! Integral of |g|^2 + |f|^2 over the grid.
double norm_integral(const std::vector<WavefunctionSample>& samples, const RadialGrid& grid);

//! Strict sign changes, skipping entries with |g| < 1e-10 max|g|.
int count_nodes(const std::vector<double>& g);

std::vector<double> real_part(const std::vector<std::complex<double>>& values);

//! max |g'' + Q g| / (max|g| max|Q|) over interior points, g'' from the
//! five-point stencil and Q the coefficient of the approximated equation.
double ode_residual(const PotentialSpec& spec, const PhysicalContext& ctx, const BoundState& state,
                    const RadialGrid& grid);

//! Relative residuals of the first-order pair with five-point derivatives.
//! eq3 includes the correction [kappa(kappa-1)/r^2 - U(r)] g / Sigma_m that
//! makes it hold on the approximated equation (U the centrifugal stand-in);
//! eq3_unapproximated omits it and so measures the approximation itself.
struct DiracPairResidual {
  double eq4 = 0.0;
  double eq3 = 0.0;
  double eq3_unapproximated = 0.0;
};

DiracPairResidual dirac_pair_residual(const PotentialSpec& spec, const PhysicalContext& ctx,
                                      const BoundState& state, const RadialGrid& grid);

//! |g(r_max)| / max|g|.
double boundary_decay(const std::vector<std::complex<double>>& g);

//! Lower component in the closed forms printed for each potential, evaluated
//! directly (Laguerre form for Morse, Jacobi forms otherwise). The
//! Rosen-Morse form uses the printed radicands.
std::complex<double> printed_lower_component(const PotentialSpec& spec, const PhysicalContext& ctx,
                                             const BoundState& state, double r);

//! Upper component in the printed closed forms (Morse and Hulthen only;
//! nullopt for Rosen-Morse).
std::optional<double> printed_upper_component(const PotentialSpec& spec,
                                              const PhysicalContext& ctx, const BoundState& state,
                                              double r);

}  // namespace pseudospin
