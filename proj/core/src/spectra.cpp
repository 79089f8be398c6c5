#include "pseudospin/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>

#include "pseudospin/errors.hpp"

namespace pseudospin {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

std::optional<double> morse_residual(const MorseSpec& spec, const PhysicalContext& ctx, int n,
                                     int kappa, double energy) {
  const auto [d0, d1, d2] = morse_mapping_coefficients(spec, kappa);
  const double gamma = centrifugal_factor(kappa) / (spec.r0 * spec.r0);
  const double sigma = ctx.sigma_m(energy);
  const double outer = gamma * d2 - spec.D * sigma;
  const double inner = gamma * d0 + sigma * (ctx.mass + energy);
  if (outer < 0.0 || inner < 0.0) return std::nullopt;
  const double beta_r0 = spec.beta() * spec.r0;
  return (2.0 * n + 1.0) * std::sqrt(outer) + beta_r0 * (gamma * d1 + 2.0 * spec.D * sigma) +
         2.0 * beta_r0 * std::sqrt(inner * outer);
}

std::optional<double> hulthen_residual(const HulthenSpec& spec, const PhysicalContext& ctx, int n,
                                       int kappa, double energy) {
  const double sigma = ctx.sigma_m(energy);
  const double radicand = sigma * (ctx.mass + energy);
  if (radicand < 0.0) return std::nullopt;
  const double kk = centrifugal_factor(kappa);
  const double w = std::sqrt(4.0 * kk + 1.0);
  return spec.r0 * std::sqrt(radicand) * (2.0 * n + 1.0 + w) + (n + 0.5) * w + n * (n + 1.0) + kk +
         spec.r0 * spec.r0 * sigma * spec.V0 + 0.5;
}

std::optional<double> qrm_residual(const QRosenMorseSpec& spec, const PhysicalContext& ctx, int n,
                                   double energy) {
  const double sigma = ctx.sigma_m(energy);
  const double d2 = spec.delta2();
  const double xi3 = d2 * sigma * (spec.V1 - ctx.mass - energy);
  const double w2 = 1.0 + 4.0 * d2 * sigma * spec.V2;
  if (xi3 < 0.0 || w2 < 0.0) return std::nullopt;
  const double root3 = std::sqrt(xi3);
  const double w = std::sqrt(w2);
  const double q_sign = spec.q > 0.0 ? 1.0 : -1.0;
  return n * (n + 1.0) + 0.5 + d2 * sigma * (spec.V1 + spec.V2) + (2.0 * n + 1.0) * root3 +
         q_sign * w * (n + 0.5 + root3);
}

// Shrinks [a, b] around a sign change of f to adjacent doubles. Returns the
// endpoint with the smaller |f|, or nullopt if f becomes undefined inside.
template <class F>
std::optional<double> bisect(F&& f, double a, double b, double fa) {
  double lo = a;
  double hi = b;
  double flo = fa;
  double fhi = std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < 200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const auto fm = f(mid);
    if (!fm) return std::nullopt;
    if (*fm == 0.0) return mid;
    if (sign_of(*fm) == sign_of(flo)) {
      lo = mid;
      flo = *fm;
    } else {
      hi = mid;
      fhi = *fm;
    }
  }
  if (std::isnan(fhi)) {
    const auto fb = f(hi);
    if (!fb) return lo;
    fhi = *fb;
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

// Finds the edge of the defined region between a defined point and an
// undefined one; returns the last defined abscissa found.
template <class F>
double domain_edge(F&& f, double defined, double undefined) {
  for (int it = 0; it < 200; ++it) {
    const double mid = defined + 0.5 * (undefined - defined);
    if (mid == defined || mid == undefined) break;
    if (f(mid)) {
      defined = mid;
    } else {
      undefined = mid;
    }
  }
  return defined;
}

}  // namespace

void EnergyBracket::validate() const {
  if (!(lo < hi)) throw PreconditionError("energy bracket requires lo < hi");
  if (samples < 2) throw PreconditionError("energy bracket requires at least 2 samples");
}

EnergyBracket default_bracket(const PotentialSpec& spec, const PhysicalContext& ctx) {
  const double span = 10.0 * depth_scale(spec);
  return {ctx.c - ctx.mass - span, ctx.c + ctx.mass + span, 2000};
}

std::optional<double> energy_residual(const PotentialSpec& spec, const PhysicalContext& ctx, int n,
                                      int kappa, double energy) {
  if (n < 0) throw PreconditionError("energy_residual: negative n");
  check_kappa(spec, kappa);
  return std::visit(
      Overloaded{
          [&](const MorseSpec& m) { return morse_residual(m, ctx, n, kappa, energy); },
          [&](const HulthenSpec& h) { return hulthen_residual(h, ctx, n, kappa, energy); },
          [&](const QRosenMorseSpec& q) { return qrm_residual(q, ctx, n, energy); },
      },
      spec);
}

std::optional<double> generic_residual(const PotentialSpec& spec, const PhysicalContext& ctx, int n,
                                       int kappa, double energy) {
  return try_quantization_residual(nu_input(spec, ctx, kappa, energy), n);
}

double residual_proportionality(const PotentialSpec& spec) {
  return std::visit(Overloaded{
                        [](const MorseSpec& m) { return m.beta() * m.r0; },
                        [](const HulthenSpec&) { return 1.0; },
                        [](const QRosenMorseSpec& q) { return q.q; },
                    },
                    spec);
}

std::optional<double> printed_qrm_residual(const QRosenMorseSpec& spec, const PhysicalContext& ctx,
                                           int n, double energy) {
  if (n < 0) throw PreconditionError("printed_qrm_residual: negative n");
  const double sigma = ctx.sigma_m(energy);
  const double outer = sigma * (ctx.mass + energy - spec.V1);
  const double w2 = 1.0 - 4.0 * spec.V2 * sigma / spec.q;
  if (outer < 0.0 || w2 < 0.0) return std::nullopt;
  const double delta = std::sqrt(spec.delta2());
  const double w = std::sqrt(w2);
  return 2.0 * delta * std::sqrt(outer) * (2.0 * n + 1.0 + 0.5 * w) + (n + 0.5) * w +
         n * (n + 1.0) + 0.5 - spec.delta2() * sigma * (spec.V1 + spec.V2) / spec.q;
}

bool valid_branch(const PotentialSpec& spec, const PhysicalContext& ctx, int kappa, double energy) {
  const NuInput input = nu_input(spec, ctx, kappa, energy);
  const NuDerived derived = derive_parameters(input);
  return derived.valid && tau_slope(derived, input.a3) < 0.0;
}

std::vector<double> find_roots(const PotentialSpec& spec, const PhysicalContext& ctx, int n,
                               int kappa, const EnergyBracket& bracket, double tol) {
  bracket.validate();
  if (!(tol > 0.0)) throw PreconditionError("find_roots: tol must be positive");
  auto f = [&](double e) { return energy_residual(spec, ctx, n, kappa, e); };

  const int count = bracket.samples;
  const double step = (bracket.hi - bracket.lo) / (count - 1);
  std::vector<double> energies(count);
  std::vector<std::optional<double>> values(count);
  for (int i = 0; i < count; ++i) {
    energies[i] = i + 1 == count ? bracket.hi : bracket.lo + i * step;
    values[i] = f(energies[i]);
  }

  std::vector<double> roots;
  auto try_bracket = [&](double a, double b, double fa, double fb) {
    if (sign_of(fa) * sign_of(fb) >= 0) return;
    if (auto root = bisect(f, a, b, fa)) roots.push_back(*root);
  };

  for (int i = 0; i + 1 < count; ++i) {
    const auto& va = values[i];
    const auto& vb = values[i + 1];
    if (va && *va == 0.0) {
      roots.push_back(energies[i]);
      continue;
    }
    if (va && vb) {
      try_bracket(energies[i], energies[i + 1], *va, *vb);
    } else if (va && !vb) {
      const double edge = domain_edge(f, energies[i], energies[i + 1]);
      if (const auto fe = f(edge)) try_bracket(energies[i], edge, *va, *fe);
    } else if (!va && vb) {
      const double edge = domain_edge(f, energies[i + 1], energies[i]);
      if (const auto fe = f(edge)) try_bracket(edge, energies[i + 1], *fe, *vb);
    }
  }
  if (values.back() && *values.back() == 0.0) roots.push_back(energies.back());

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [tol](double x, double y) { return std::abs(x - y) < tol; }),
              roots.end());
  return roots;
}

BoundState solve_energy(const PotentialSpec& spec, const PhysicalContext& ctx, int n, int kappa,
                        const EnergyBracket& bracket, double tol) {
  validate(spec);
  ctx.validate();
  check_kappa(spec, kappa);
  if (n < 0) throw PreconditionError("solve_energy: negative n");

  std::vector<BoundState> accepted;
  for (const double e : find_roots(spec, ctx, n, kappa, bracket, tol)) {
    const auto r = energy_residual(spec, ctx, n, kappa, e);
    if (!r || std::abs(*r) > tol) continue;
    if (!valid_branch(spec, ctx, kappa, e)) continue;
    BoundState s;
    s.energy = e;
    s.n = n;
    s.kappa = kappa;
    s.sigma_m = ctx.sigma_m(e);
    s.residual = std::abs(*r);
    s.potential = kind_of(spec);
    s.valid_branch = true;
    accepted.push_back(s);
  }
  if (accepted.empty()) {
    throw NoRootError("no certified root for n=" + std::to_string(n) +
                      ", kappa=" + std::to_string(kappa) + " in the energy bracket");
  }
  if (accepted.size() > 1) {
    std::vector<double> energies;
    for (const auto& s : accepted) energies.push_back(s.energy);
    throw MultipleRootsError("several certified roots for n=" + std::to_string(n) +
                                 ", kappa=" + std::to_string(kappa),
                             std::move(energies));
  }
  return accepted.front();
}

Spectrum enumerate_spectrum(const PotentialSpec& spec, const PhysicalContext& ctx, int n_max,
                            const std::vector<int>& kappas, const EnergyBracket& bracket,
                            double tol) {
  if (n_max < 0) throw PreconditionError("enumerate_spectrum: negative n_max");
  validate(spec);
  ctx.validate();
  Spectrum out;
  for (const int kappa : kappas) {
    for (int n = 0; n <= n_max; ++n) {
      try {
        out.states.push_back(solve_energy(spec, ctx, n, kappa, bracket, tol));
      } catch (const NoRootError& e) {
        out.missing.push_back({n, kappa, e.what()});
      } catch (const MultipleRootsError& e) {
        out.missing.push_back({n, kappa, e.what()});
      } catch (const PreconditionError& e) {
        out.missing.push_back({n, kappa, e.what()});
      }
    }
  }
  std::sort(out.states.begin(), out.states.end(), [](const BoundState& x, const BoundState& y) {
    return std::make_tuple(centrifugal_factor(x.kappa), x.n, x.energy, x.kappa) <
           std::make_tuple(centrifugal_factor(y.kappa), y.n, y.energy, y.kappa);
  });
  return out;
}

}  // namespace pseudospin
