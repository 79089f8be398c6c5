#pragma once

// Bound-state energies from the closed-form eigenvalue equations.
//
// Each potential has a specialized residual (a closed form in E) and the
// generic NU quantization residual reached through the template mapping.
// They satisfy  generic = c * specialized  with a per-potential constant c
// (see residual_proportionality). Energies are roots of the specialized
// residual, found by scan-then-bisect and certified by a sign change.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pseudospin/potentials.hpp"

namespace pseudospin {

struct BoundState {
  double energy = 0.0;
  int n = 0;
  int kappa = 0;
  double sigma_m = 0.0;
  double residual = 0.0;  //!< |specialized residual| at the accepted energy
  PotentialKind potential = PotentialKind::morse;
  bool valid_branch = false;  //!< a8, a9 >= 0 and tau' < 0 at the root

  QuantumNumbers quantum_numbers() const { return {n, kappa}; }
};

struct EnergyBracket {
  double lo = 0.0;
  double hi = 0.0;
  int samples = 2000;

  void validate() const;
};

//! One (n, kappa) cell that produced no accepted state.
struct MissingState {
  int n = 0;
  int kappa = 0;
  std::string reason;
};

struct Spectrum {
  std::vector<BoundState> states;
  std::vector<MissingState> missing;
};

//! (C - m - 10 max|V|, C + m + 10 max|V|), 2000 samples.
EnergyBracket default_bracket(const PotentialSpec& spec, const PhysicalContext& ctx);

//! Specialized closed-form residual; nullopt where a radicand is negative.
//! For Rosen-Morse this is the form consistent with the NU template
//! (generic residual divided by q).
std::optional<double> energy_residual(const PotentialSpec& spec, const PhysicalContext& ctx, int n,
                                      int kappa, double energy);

//! NU quantization residual of the mapped template; nullopt when invalid.
std::optional<double> generic_residual(const PotentialSpec& spec, const PhysicalContext& ctx, int n,
                                       int kappa, double energy);

//! c in generic = c * specialized: beta r0 (Morse), 1 (Hulthen), q (Rosen-Morse).
double residual_proportionality(const PotentialSpec& spec);

//! The Rosen-Morse eigenvalue equation exactly as printed in the source
//! tables. Not proportional to the generic residual; kept for reports.
std::optional<double> printed_qrm_residual(const QRosenMorseSpec& spec, const PhysicalContext& ctx,
                                           int n, double energy);

//! True when the template at E has a8, a9 >= 0 and tau' < 0.
bool valid_branch(const PotentialSpec& spec, const PhysicalContext& ctx, int kappa, double energy);

//! Every certified sign change of the specialized residual in the bracket,
//! before branch filtering. Roots are bisected to adjacent doubles or |dE| < tol.
std::vector<double> find_roots(const PotentialSpec& spec, const PhysicalContext& ctx, int n,
                               int kappa, const EnergyBracket& bracket, double tol);

//! Throws NoRootError when nothing survives filtering and MultipleRootsError
//! when more than one root does.
BoundState solve_energy(const PotentialSpec& spec, const PhysicalContext& ctx, int n, int kappa,
                        const EnergyBracket& bracket, double tol = 1e-12);

//! States for n in [0, n_max] and every kappa, sorted by
//! (kappa(kappa-1), n, E, kappa). Failures land in Spectrum::missing.
Spectrum enumerate_spectrum(const PotentialSpec& spec, const PhysicalContext& ctx, int n_max,
                            const std::vector<int>& kappas, const EnergyBracket& bracket,
                            double tol = 1e-12);

//! 1 - kappa, the other integer with the same kappa(kappa-1).
constexpr int doublet_partner(int kappa) { return 1 - kappa; }

}  // namespace pseudospin
