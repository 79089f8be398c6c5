#pragma once

// Numerov shooting for g'' + Q(r; E) g = 0.
//
// Independent of the NU algebra: Q is assembled from the potential and the
// same centrifugal stand-in the analytic path uses, then integrated
// outward and inward. For Numerov's scheme the Casoratian of y = (1 + h^2 Q/12) u,
//   W = y_out[i] y_in[i+1] - y_out[i+1] y_in[i],
// is the same at every index, so W(E) is a pole-free matching function
// whose zeros are the eigenvalues of the discrete problem.

#include <functional>
#include <vector>

#include "pseudospin/spectra.hpp"
#include "pseudospin/spinors.hpp"

namespace pseudospin {

enum class InnerBoundary {
  regular_origin,  //!< g ~ r^{ell+1} near r_min (r_min at or close to 0)
  forbidden,       //!< classically forbidden end, exponential seed
};

enum class CentrifugalMode {
  approximated,  //!< Pekeris (Morse) or the exponential stand-in (Hulthen)
  exact,         //!< kappa(kappa-1)/r^2, for approximation-error studies
};

enum class Direction { outward, inward };

struct EffectiveEquation {
  RadialGrid grid;
  //! Q on every grid point at the given energy.
  std::function<std::vector<double>(double energy)> coefficients;
  int ell = 0;
  InnerBoundary inner = InnerBoundary::regular_origin;
};

//! Morse: [-4/a, r0 + 60/a] with forbidden inner end (the solvable equation
//! lives on the whole line). Hulthen: [1e-3 r0, 40 r0]. 8001 points.
//! Throws PreconditionError for Rosen-Morse, which has no real oracle.
RadialGrid default_oracle_grid(const PotentialSpec& spec, int points = 8001);

//! Q(r; E) of the lower-component equation on the grid. Exact mode needs a
//! grid with r_min > 0 and uses a regular origin.
EffectiveEquation make_effective_equation(const PotentialSpec& spec, const PhysicalContext& ctx,
                                          int kappa, const RadialGrid& grid,
                                          CentrifugalMode mode = CentrifugalMode::approximated);

EffectiveEquation make_effective_equation(const PotentialSpec& spec, const PhysicalContext& ctx,
                                          int kappa);

//! Wraps a pointwise Q(r, E).
EffectiveEquation make_equation(const RadialGrid& grid, int ell, InnerBoundary inner,
                                std::function<double(double r, double energy)> q);

//! Numerov solution over the whole grid from one end. Regular-origin seeds
//! follow the Frobenius series r^{ell+1}(1 + b r + c r^2); forbidden and
//! inward seeds decay toward the boundary at the local WKB rate. Values
//! are rescaled on the fly when they exceed 1e100, so only the shape is
//! meaningful.
std::vector<double> numerov_integrate(const EffectiveEquation& eq, double energy,
                                      Direction direction);

struct MatchResult {
  double casoratian = 0.0;        //!< W, sign-faithful, scale arbitrary
  double log_derivative_jump = 0.0;  //!< |u'_out/u_out - u'_in/u_in| h at the match point
  int match_index = 0;
  int nodes = 0;
  double tail_ratio = 0.0;        //!< max end amplitude over max |u|
  std::vector<double> solution;   //!< out and in pieces joined at the match point
};

//! Matches at the outermost classically allowed point (the centre when none).
MatchResult match_solutions(const EffectiveEquation& eq, double energy);

struct OracleState {
  double energy = 0.0;
  int nodes = 0;
  double log_derivative_jump = 0.0;
  double tail_ratio = 0.0;
};

//! Every zero of W in the bracket that is a genuine bound state: Q < 0 at
//! r_max (and at r_min for a forbidden inner end) and tail_ratio < 1e-6.
//! Energies are bisected until |dE| <= tol max(1, |E|).
std::vector<OracleState> oracle_states(const EffectiveEquation& eq, const EnergyBracket& bracket,
                                       double tol = 1e-13);

//! Energy of the state with n nodes. Throws NoRootError when the bracket
//! holds no bound state and NodeCountMismatchError when none has n nodes.
double shoot_energy(const EffectiveEquation& eq, int n, const EnergyBracket& bracket,
                    double tol = 1e-13);

//! |value - reference| / |reference| (absolute when reference is 0).
double relative_difference(double value, double reference);

}  // namespace pseudospin
