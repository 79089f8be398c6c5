#pragma once

// Potentials, centrifugal-term approximations, and the maps from physical
// parameters to NU templates.
//
// Units: hbar = c = 1. Under exact pseudospin symmetry (V_v + V_s = C) the
// lower Dirac component obeys
//
//   g'' = [ kappa(kappa-1)/r^2 + Sigma_m (m + E) - Sigma_m V(r) ] g,
//   Sigma_m = m - E + C,  V = V_v - V_s.
//
// The solvable variants replace kappa(kappa-1)/r^2 by the Pekeris expansion
// (Morse) or the exponential form alpha^2 e^{-alpha r}/(1 - e^{-alpha r})^2
// with alpha = 1/r0 (Hulthen). The q-deformed Rosen-Morse case is only
// defined for kappa = 0.

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <variant>

#include "pseudospin/nu_engine.hpp"

namespace pseudospin {

struct PhysicalContext {
  double mass = 1.0;
  double c = 0.0;  //!< pseudospin constant V_v + V_s

  double sigma_m(double energy) const { return mass - energy + c; }
  void validate() const;
};

//! kappa(kappa-1) = l~(l~+1).
struct QuantumNumbers {
  int n = 0;
  int kappa = 0;

  int ell_tilde() const { return kappa >= 1 ? kappa - 1 : -kappa; }
  double centrifugal() const { return static_cast<double>(kappa) * (kappa - 1.0); }
};

inline double centrifugal_factor(int kappa) { return static_cast<double>(kappa) * (kappa - 1.0); }

//! gamma (D0 + D1 e^{-alpha x} + D2 e^{-2 alpha x}) ~ kappa(kappa-1)/r^2.
struct PekerisCoefficients {
  double d0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double gamma = 0.0;
};

//! Integer coefficients of D0, D1, D2 as polynomials in u = 1/alpha:
//! D_i = c[i][0] + c[i][1] u + c[i][2] u^2. Column sums are (1, 0, 0).
inline constexpr std::array<std::array<int, 3>, 3> kPekerisPolynomial{{
    {1, -3, 3},
    {0, 4, -6},
    {0, -1, 3},
}};

//! V(r) = D [e^{-2 alpha x} - 2 e^{-alpha x}], x = r/r0 - 1, alpha = a r0.
struct MorseSpec {
  double D = 1.0;
  double a = 1.0;
  double r0 = 1.0;
  //! Replaces the Taylor-matched (D0, D1, D2) in the NU mapping only; the
  //! effective equation always uses the exact match. Meant for sensitivity
  //! and fault-injection studies.
  std::optional<std::array<double, 3>> pekeris_override;

  double alpha() const { return a * r0; }
  double beta() const { return 1.0 / alpha(); }
};

//! V(r) = -V0 e^{-x} / (1 - e^{-x}), x = r/r0.
struct HulthenSpec {
  double V0 = 1.0;
  double r0 = 1.0;
};

//! V(r) = V1/(1 + q e^{-2x}) - V2 q e^{-2x}/(1 + q e^{-2x})^2, x = alpha r.
//! With pt_symmetric set, x -> i x.
struct QRosenMorseSpec {
  double V1 = 0.0;
  double V2 = 0.0;
  double q = 1.0;
  double alpha = 1.0;
  bool pt_symmetric = true;

  double delta2() const { return 1.0 / (4.0 * alpha * alpha); }
};

using PotentialSpec = std::variant<MorseSpec, HulthenSpec, QRosenMorseSpec>;

enum class PotentialKind { morse, hulthen, qrm };

PotentialKind kind_of(const PotentialSpec& spec);
std::string_view potential_id(PotentialKind kind);
std::optional<PotentialKind> parse_potential_id(std::string_view id);

//! Throws PreconditionError on non-physical parameters.
void validate(const PotentialSpec& spec);

//! Only the PT-symmetric Rosen-Morse produces complex wavefunctions.
bool is_complex(const PotentialSpec& spec);

//! Natural length: r0 for Morse and Hulthen, 1/alpha for Rosen-Morse.
double length_scale(const PotentialSpec& spec);

//! Largest |V| parameter (D, |V0|, max(|V1|,|V2|)).
double depth_scale(const PotentialSpec& spec);

//! Throws PreconditionError for kappa != 0 on the Rosen-Morse potential.
void check_kappa(const PotentialSpec& spec, int kappa);

PekerisCoefficients pekeris_coefficients(double alpha, int kappa, double r0);

//! alpha^2 e^{-alpha r} / (1 - e^{-alpha r})^2, the exponential stand-in for 1/r^2.
double approx_inverse_r2(double alpha, double r);

//! Decay rate of the potential's exponential: a (Morse), 1/r0 (Hulthen),
//! 2 alpha (Rosen-Morse).
double exponential_rate(const PotentialSpec& spec);

//! Exact 1/r^2 against its exponential stand-in at the potential's rate and,
//! for Morse, the Pekeris expansion about r0. Errors are |approx/exact - 1|.
struct InverseSquareComparison {
  double r = 0.0;
  double exact = 0.0;
  double exponential = 0.0;
  double exponential_error = 0.0;
  std::optional<double> pekeris;
  std::optional<double> pekeris_error;
};

InverseSquareComparison compare_inverse_square(const PotentialSpec& spec, double r);

//! The approximated kappa(kappa-1)/r^2 term that the solvable equation uses.
double centrifugal_term(const PotentialSpec& spec, int kappa, double r);

//! V(r); complex only for the PT-symmetric Rosen-Morse form.
std::complex<double> potential_value(const PotentialSpec& spec, double r);

//! Q(r; E) with g'' + Q g = 0 for the approximated lower-component equation,
//! written in physical form (independent of the NU template algebra).
std::complex<double> effective_coefficient(const PotentialSpec& spec, const PhysicalContext& ctx,
                                           int kappa, double energy, double r);

//! (D0, D1, D2) used by the Morse mapping: the override when set, else the
//! Taylor-matched values.
std::array<double, 3> morse_mapping_coefficients(const MorseSpec& spec, int kappa);

NuInput morse_nu_input(const MorseSpec& spec, const PhysicalContext& ctx, int kappa, double energy);
NuInput hulthen_nu_input(const HulthenSpec& spec, const PhysicalContext& ctx, int kappa,
                         double energy);
//! Template derived from the PT-symmetric form with s = -e^{-2 i alpha r}.
NuInput qrm_nu_input(const QRosenMorseSpec& spec, const PhysicalContext& ctx, double energy);
//! The Rosen-Morse template exactly as printed in the source tables
//! (xi2 without the q on V2, xi3 with the opposite sign). Kept for
//! comparison reports; it does not solve the PT-symmetric equation.
NuInput qrm_nu_input_printed(const QRosenMorseSpec& spec, const PhysicalContext& ctx,
                             double energy);

NuInput nu_input(const PotentialSpec& spec, const PhysicalContext& ctx, int kappa, double energy);

}  // namespace pseudospin
