// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <complex>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "pseudospin/oracle.hpp"
#include "pseudospin/specfun.hpp"
#include "pseudospin/spectra.hpp"
#include "pseudospin/spinors.hpp"
#include "reference.hpp"

namespace ps = pseudospin;
namespace sf = pseudospin::specfun;

namespace {

// Tolerances, pinned.
constexpr double kOracleAgreement = 1e-6;
constexpr double kMorseRuntimeSeconds = 10.0;
constexpr double kDoubletEnergy = 1e-12;
constexpr int kDoubletSamples = 1000;
constexpr double kResidualAgreement = 1e-9;
constexpr double kOdeResidual = 1e-6;
constexpr double kDiracPair = 1e-6;
constexpr double kNorm = 1e-8;
constexpr int kSpinorPoints = 4001;
constexpr double kRecurrence = 1e-10;
constexpr double kDerivative = 1e-7;
constexpr double kLaguerreLimit = 1e-4;
constexpr double kPekerisOracle = 1e-12;
constexpr double kCubicStability = 0.05;
constexpr double kApproxErrorTarget = 8.3e-4;
constexpr double kApproxErrorBand = 0.01;
constexpr double kOscillator = 1e-7;
constexpr double kConvergenceRatio = 16.0;
constexpr double kConvergenceBand = 0.2;

const ps::PhysicalContext kCtx{1.0, 0.0};
const ps::MorseSpec kMorse{5.0, 1.25, 0.8, std::nullopt};
const ps::HulthenSpec kHulthen{2.0, 1.0};
const ps::HulthenSpec kHulthenAttractive{-10.0, 1.0};
const ps::QRosenMorseSpec kRosenMorse{-3.0, 1.0, 0.5, 0.5, true};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Analytic and oracle spectra for one kappa, compared state by state.
struct Comparison {
  bool agree = true;
  double worst = 0.0;
  std::vector<std::string> notes;
};

Comparison compare_with_oracle(const ps::PotentialSpec& spec, int kappa, int n_max) {
  Comparison out;
  const auto bracket = ps::default_bracket(spec, kCtx);
  const auto oracle = ps::oracle_states(ps::make_effective_equation(spec, kCtx, kappa), bracket);
  for (int n = 0; n <= n_max; ++n) {
    std::optional<double> analytic;
    try {
      analytic = ps::solve_energy(spec, kCtx, n, kappa, bracket).energy;
    } catch (const ps::NoRootError&) {
    }
    std::optional<double> shot;
    for (const auto& s : oracle) {
      if (s.nodes == n) shot = s.energy;
    }
    if (analytic && shot) {
      const double d = ps::relative_difference(*analytic, *shot);
      out.worst = std::max(out.worst, d);
      out.agree = out.agree && d < kOracleAgreement;
    } else if (analytic || shot) {
      out.agree = false;
      out.notes.push_back(fmt::format("n={} kappa={} found by {} only", n, kappa,
                                      analytic ? "analytic" : "oracle"));
    } else {
      out.notes.push_back(fmt::format("n={} kappa={} absent in both", n, kappa));
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

Outcome morse_oracle_agreement() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  double worst = 0.0;
  std::vector<std::string> notes;
  for (const int kappa : {2, -1}) {
    const auto c = compare_with_oracle(kMorse, kappa, 2);
    o.pass = o.pass && c.agree;
    worst = std::max(worst, c.worst);
    notes.insert(notes.end(), c.notes.begin(), c.notes.end());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = o.pass && seconds < kMorseRuntimeSeconds;
  o.detail = fmt::format("max rel diff {:.2e}, {:.2f} s; {}", worst, seconds, join(notes));
  return o;
}

Outcome hulthen_oracle_agreement() {
  Outcome o;
  double worst = 0.0;
  std::vector<std::string> notes;
  for (const ps::HulthenSpec& spec : {kHulthen, kHulthenAttractive}) {
    for (const int kappa : {2, -1}) {
      const auto c = compare_with_oracle(spec, kappa, 3);
      o.pass = o.pass && c.agree;
      worst = std::max(worst, c.worst);
      for (const auto& note : c.notes) notes.push_back(fmt::format("V0={} {}", spec.V0, note));
    }
  }
  // Where the residual of the repulsive case is defined, and its sign there.
  const auto bracket = ps::default_bracket(kHulthen, kCtx);
  double lo = INFINITY, hi = -INFINITY, min_residual = INFINITY;
  int undefined_negative_sigma = 0, undefined_positive_sigma = 0;
  for (int i = 0; i < bracket.samples; ++i) {
    const double e = bracket.lo + (bracket.hi - bracket.lo) * i / (bracket.samples - 1.0);
    const auto r = ps::energy_residual(kHulthen, kCtx, 0, 2, e);
    if (!r) {
      ++(kCtx.sigma_m(e) < 0.0 ? undefined_negative_sigma : undefined_positive_sigma);
      continue;
    }
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    min_residual = std::min(min_residual, *r);
  }
  o.detail = fmt::format(
      "max rel diff {:.2e}; V0=2: residual defined only for Sigma_m>0 on E in [{:.4f}, {:.4f}] "
      "with min n=0 residual {:.4f} > 0, undefined at {} Sigma_m<0 and {} Sigma_m>0 samples, "
      "no states; {}",
      worst, lo, hi, min_residual, undefined_negative_sigma, undefined_positive_sigma, join(notes));
  return o;
}

Outcome doublet_degeneracy() {
  Outcome o;
  int compared = 0;
  double worst_energy = 0.0;
  const std::vector<ps::PotentialSpec> specs = {kMorse, kHulthen, kHulthenAttractive};
  for (const auto& spec : specs) {
    const auto b = ps::default_bracket(spec, kCtx);
    for (int i = 0; i < kDoubletSamples; ++i) {
      const double e = b.lo + (b.hi - b.lo) * (i + 0.5) / kDoubletSamples;
      for (const int kappa : {2, 3}) {
        const auto a = ps::energy_residual(spec, kCtx, 0, kappa, e);
        const auto p = ps::energy_residual(spec, kCtx, 0, ps::doublet_partner(kappa), e);
        ++compared;
        if (a != p) o.pass = false;
      }
    }
    const auto s = ps::enumerate_spectrum(spec, kCtx, 3, {2, -1}, b);
    for (std::size_t i = 0; i + 1 < s.states.size(); i += 2) {
      worst_energy = std::max(worst_energy, std::abs(s.states[i].energy - s.states[i + 1].energy));
    }
    if (s.states.size() % 2 != 0) o.pass = false;
  }
  o.pass = o.pass && worst_energy < kDoubletEnergy;
  o.detail = fmt::format(
      "{} residual pairs bitwise equal, max partner energy gap {:.1e}; Rosen-Morse is solved for "
      "kappa=0 only, so it has no partner",
      compared, worst_energy);
  return o;
}

Outcome generic_vs_specialized() {
  Outcome o;
  double worst = 0.0;
  const std::vector<std::pair<ps::PotentialSpec, int>> cases = {
      {kMorse, 2}, {kMorse, 0}, {kHulthen, 2}, {kHulthenAttractive, -1}, {kRosenMorse, 0}};
  for (const auto& [spec, kappa] : cases) {
    const double c = ps::residual_proportionality(spec);
    const auto b = ps::default_bracket(spec, kCtx);
    for (int i = 0; i < b.samples; ++i) {
      const double e = b.lo + (b.hi - b.lo) * i / (b.samples - 1.0);
      for (int n = 0; n < 3; ++n) {
        const auto special = ps::energy_residual(spec, kCtx, n, kappa, e);
        const auto generic = ps::generic_residual(spec, kCtx, n, kappa, e);
        if (special.has_value() != generic.has_value()) {
          o.pass = false;
          continue;
        }
        if (special) worst = std::max(worst, std::abs(*generic - c * *special));
      }
    }
  }
  o.pass = o.pass && worst < kResidualAgreement;

  // Printed closed form for Rosen-Morse versus the generic residual.
  const auto printed_survey = [] {
    const auto b = ps::default_bracket(kRosenMorse, kCtx);
    double lo = INFINITY, hi = -INFINITY, min_value = INFINITY;
    int both = 0;
    for (int i = 0; i < b.samples; ++i) {
      const double e = b.lo + (b.hi - b.lo) * i / (b.samples - 1.0);
      const auto printed = ps::printed_qrm_residual(kRosenMorse, kCtx, 0, e);
      const auto generic = ps::generic_residual(kRosenMorse, kCtx, 0, 0, e);
      both += printed && generic;
      if (!printed) continue;
      lo = std::min(lo, e);
      hi = std::max(hi, e);
      min_value = std::min(min_value, *printed);
    }
    return std::tuple{both, lo, hi, min_value};
  };
  const auto first = printed_survey();
  o.pass = o.pass && first == printed_survey();
  const auto [both, lo, hi, min_value] = first;
  o.detail = fmt::format(
      "Morse c=1/a, Hulthen c=1, Rosen-Morse derived form c=q; max |generic - c*specialized| "
      "{:.1e}; printed Rosen-Morse form is real only on E in [{:.4f}, {:.4f}], jointly defined "
      "with the generic residual at {} energies, minimum {:.4f} > 0 there, so it is not "
      "proportional and yields no states (reproducible)",
      worst, lo, hi, both, min_value);
  return o;
}

Outcome spinor_certification() {
  Outcome o;
  int certified = 0;
  double worst_ode = 0.0, worst_pair = 0.0, worst_norm = 0.0, worst_drift = 0.0;
  std::vector<std::string> failures;
  const std::vector<ps::PotentialSpec> specs = {kMorse, kHulthen, kHulthenAttractive};
  for (const auto& spec : specs) {
    const auto spectrum =
        ps::enumerate_spectrum(spec, kCtx, 3, {2, -1, 0}, ps::default_bracket(spec, kCtx));
    for (const auto& state : spectrum.states) {
      ++certified;
      const auto grid = ps::default_spinor_grid(spec, kSpinorPoints);
      const auto samples = ps::spinor_samples(spec, kCtx, state, grid);
      std::vector<std::complex<double>> g;
      for (const auto& s : samples) g.push_back(s.g);
      const int nodes = ps::count_nodes(ps::real_part(g));
      const double ode = ps::ode_residual(spec, kCtx, state, grid);
      const auto pair = ps::dirac_pair_residual(spec, kCtx, state, grid);
      const auto normalized = ps::normalize(samples, grid);
      const double norm_error = std::abs(ps::norm_integral(normalized.samples, grid) - 1.0);
      // Quadrature drift: the same scale re-measured on a grid twice as fine.
      const ps::RadialGrid fine{grid.r_min, grid.r_max, 2 * grid.points - 1};
      auto fine_samples = ps::spinor_samples(spec, kCtx, state, fine);
      for (auto& s : fine_samples) {
        s.g *= normalized.scale;
        s.f *= normalized.scale;
      }
      worst_drift = std::max(worst_drift, std::abs(ps::norm_integral(fine_samples, fine) - 1.0));
      worst_ode = std::max(worst_ode, ode);
      worst_pair = std::max({worst_pair, pair.eq3, pair.eq4});
      worst_norm = std::max(worst_norm, norm_error);
      if (nodes != state.n || ode >= kOdeResidual || pair.eq3 >= kDiracPair ||
          pair.eq4 >= kDiracPair || norm_error >= kNorm) {
        failures.push_back(fmt::format("{} n={} kappa={} (nodes {}, ODE {:.1e}, pair {:.1e}/{:.1e}, "
                                       "norm {:.1e})",
                                       ps::potential_id(state.potential), state.n, state.kappa,
                                       nodes, ode, pair.eq3, pair.eq4, norm_error));
      }
    }
  }
  o.pass = failures.empty() && certified > 0;
  o.detail = fmt::format(
      "{} states; max ODE residual {:.1e}, max Dirac pair residual {:.1e}, max norm error {:.1e} "
      "(quadrature drift at doubled resolution {:.1e}){}",
      certified, worst_ode, worst_pair, worst_norm, worst_drift,
      failures.empty() ? "" : "; failing: " + join(failures));
  return o;
}

Outcome special_functions() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> degree(0, 12);
  std::uniform_real_distribution<double> index(-0.9, 5.0);
  std::uniform_real_distribution<double> arg(-1.0, 1.0);
  double worst_rec = 0.0, worst_der = 0.0, worst_lim = 0.0;
  for (int t = 0; t < 5000; ++t) {
    const int n = degree(rng);
    const double a = index(rng), b = index(rng), x = arg(rng);
    const auto ref = reference::jacobi_binomial(n, a, b, x);
    worst_rec = std::max(worst_rec, std::abs(sf::jacobi(n, a, b, x) - ref.value) / ref.scale);
    const double xl = 10.0 * (x + 1.0);
    const auto lref = reference::laguerre_sum(n, a, xl);
    worst_rec = std::max(worst_rec, std::abs(sf::laguerre(n, a, xl) - lref.value) / lref.scale);
    if (t % 10 == 0) {
      const double xi = 0.95 * x;
      const double fd = reference::richardson_derivative(
          [&](double y) { return sf::jacobi(n, a, b, y); }, xi, 0.02);
      worst_der = std::max(worst_der, std::abs(sf::jacobi_derivative(n, a, b, xi) - fd) /
                                          std::max(1.0, std::abs(fd)));
      const double lfd = reference::richardson_derivative(
          [&](double y) { return sf::laguerre(n, a, y); }, xl + 0.1, 0.05);
      worst_der = std::max(worst_der, std::abs(sf::laguerre_derivative(n, a, xl + 0.1) - lfd) /
                                          std::max(1.0, std::abs(lfd)));
    }
  }
  // Integer indices: P_n^{(a,b)}(1) = C(n+a, n) is an exactly representable integer.
  bool endpoints_exact = true;
  for (int n = 0; n <= 10; ++n) {
    for (int a = 0; a <= 3; ++a) {
      endpoints_exact = endpoints_exact &&
                        sf::jacobi(n, a, 2.0, 1.0) == std::round(reference::binomial(n + a, n));
    }
    endpoints_exact = endpoints_exact && sf::laguerre(n, 0.0, 0.0) == 1.0;
  }
  for (int n = 0; n <= 6; ++n) {
    for (const double a : {-0.5, 0.0, 2.0}) {
      for (const double x : {0.2, 1.0, 3.0}) {
        const double limit = sf::laguerre(n, a, x);
        const double big = 1e6;
        worst_lim = std::max(worst_lim,
                             std::abs(sf::jacobi(n, a, big, 1.0 - 2.0 * x / big) - limit) /
                                 reference::laguerre_sum(n, a, x).scale);
      }
    }
  }
  o.pass = worst_rec < kRecurrence && endpoints_exact && worst_der < kDerivative &&
           worst_lim < kLaguerreLimit;
  o.detail = fmt::format(
      "recurrence vs sum {:.1e}, endpoints exact: {}, derivatives vs finite differences {:.1e}, "
      "Laguerre limit at b=1e6 {:.1e}",
      worst_rec, endpoints_exact ? "yes" : "no", worst_der, worst_lim);
  return o;
}

Outcome pekeris_correctness() {
  Outcome o;
  bool symbolic = true;
  for (int j = 0; j < 3; ++j) {
    int column = 0;
    for (int i = 0; i < 3; ++i) column += ps::kPekerisPolynomial[i][j];
    symbolic = symbolic && column == (j == 0 ? 1 : 0);
  }
  double worst_drift = 0.0;
  for (const double alpha : {1.0, 2.0, 5.0}) {
    const auto p = ps::pekeris_coefficients(alpha, 2, 1.0);
    const auto k = [&](double x) {
      const double e = std::exp(-alpha * x);
      return (1.0 / ((1.0 + x) * (1.0 + x)) - (p.d0 + p.d1 * e + p.d2 * e * e)) / (x * x * x);
    };
    for (double x = 1e-2; x > 2e-3; x /= 2.0) {
      worst_drift = std::max(worst_drift, std::abs(k(x / 2.0) - k(x)) / std::abs(k(x / 2.0)));
    }
  }
  const auto p = ps::pekeris_coefficients(2.0, 2, 1.0);
  const auto ref = reference::pekeris_by_taylor_system(2.0);
  const double oracle_gap = std::max(
      {std::abs(p.d0 - ref(0)), std::abs(p.d1 - ref(1)), std::abs(p.d2 - ref(2))});
  o.pass = symbolic && worst_drift < kCubicStability && oracle_gap < kPekerisOracle;
  o.detail = fmt::format(
      "coefficient polynomials sum to 1 identically: {}; cubic constant drift under halving "
      "{:.1e}; alpha=2 gives ({}, {}, {}), gap to 3x3 solve {:.1e}",
      symbolic ? "yes" : "no", worst_drift, p.d0, p.d1, p.d2, oracle_gap);
  return o;
}

Outcome approximation_quality() {
  Outcome o;
  const auto relative_error = [](double ar) {
    return std::abs(1.0 - ps::approx_inverse_r2(1.0, ar) * ar * ar);
  };
  const double first = relative_error(0.1);
  const double second = relative_error(0.1);
  bool monotone = true;
  double previous = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double e = relative_error(i / 100.0);
    monotone = monotone && e > previous;
    previous = e;
  }
  o.pass = first == second &&
           std::abs(first - kApproxErrorTarget) < kApproxErrorBand * kApproxErrorTarget &&
           monotone;
  o.detail = fmt::format("relative error at alpha r=0.1 is {:.6e} (repeat identical: {}); "
                         "monotone on 100 points of (0,1]: {}",
                         first, first == second ? "yes" : "no", monotone ? "yes" : "no");
  return o;
}

Outcome numerov_self_test() {
  Outcome o;
  const auto oscillator = [](int ell, const ps::RadialGrid& grid) {
    return ps::make_equation(grid, ell, ps::InnerBoundary::regular_origin,
                             [ell](double r, double e) {
                               return 2.0 * e - r * r - ell * (ell + 1.0) / (r * r);
                             });
  };
  double worst = 0.0;
  for (int ell = 0; ell <= 2; ++ell) {
    const auto eq = oscillator(ell, {0.0, 10.0, 4001});
    for (int n = 0; n < 3; ++n) {
      const double e = ps::shoot_energy(eq, n, {0.5, 8.0, 300});
      worst = std::max(worst, std::abs(e - (ell + 1.5 + 2.0 * n)));
    }
  }
  const auto energy = [&](int points) {
    return ps::shoot_energy(oscillator(1, {0.0, 8.0, points}), 1, {0.5, 8.0, 200});
  };
  const double e1 = energy(201), e2 = energy(401), e3 = energy(801);
  const double ratio = (e1 - e2) / (e2 - e3);
  o.pass = worst < kOscillator &&
           std::abs(ratio - kConvergenceRatio) < kConvergenceBand * kConvergenceRatio;
  o.detail = fmt::format("oscillator max error {:.1e}; convergence ratio {:.2f}", worst, ratio);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"analytic-oracle agreement, Morse", morse_oracle_agreement},
      {"analytic-oracle agreement, Hulthen", hulthen_oracle_agreement},
      {"doublet degeneracy", doublet_degeneracy},
      {"generic vs specialized residual", generic_vs_specialized},
      {"spinor certification", spinor_certification},
      {"special functions", special_functions},
      {"Pekeris coefficients", pekeris_correctness},
      {"approximation quality", approximation_quality},
      {"Numerov self-test", numerov_self_test},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    fmt::print("AC{} {} {}: {}\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
