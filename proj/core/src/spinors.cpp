#include "pseudospin/spinors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>
#include <utility>

#include "pseudospin/errors.hpp"

namespace pseudospin {

namespace {

using cplx = std::complex<double>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kSigmaFloor = 1e-12;

void require_positive_grid(const RadialGrid& grid, const char* who) {
  grid.validate();
  if (!(grid.r_min > 0.0)) throw PreconditionError(std::string(who) + ": grid must start at r > 0");
}

void require_sigma(double sigma) {
  if (std::abs(sigma) < kSigmaFloor) {
    throw DegenerateSigmaError("Sigma_m = m - E + C vanishes; upper component undefined");
  }
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

// Five-point central differences at index i (2 <= i <= size - 3).
cplx first_derivative(const std::vector<cplx>& v, std::size_t i, double h) {
  return (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
}

cplx second_derivative(const std::vector<cplx>& v, std::size_t i, double h) {
  return (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / (12.0 * h * h);
}

}  // namespace

std::vector<double> RadialGrid::abscissae() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = r(i);
  return out;
}

void RadialGrid::validate() const {
  if (!std::isfinite(r_min) || !std::isfinite(r_max) || !(r_min < r_max)) {
    throw PreconditionError("radial grid requires finite r_min < r_max");
  }
  if (points < 16) throw PreconditionError("radial grid requires at least 16 points");
}

std::complex<double> log_variable(const PotentialSpec& spec, double r) {
  return std::visit(Overloaded{
                        [r](const MorseSpec& m) { return cplx(-m.a * (r - m.r0), 0.0); },
                        [r](const HulthenSpec& h) { return cplx(-r / h.r0, 0.0); },
                        [r](const QRosenMorseSpec& q) {
                          if (!q.pt_symmetric) return cplx(std::log(q.q) - 2.0 * q.alpha * r, 0.0);
                          return cplx(0.0, std::numbers::pi - 2.0 * q.alpha * r);
                        },
                    },
                    spec);
}

std::complex<double> variable_map(const PotentialSpec& spec, double r) {
  if (const auto* q = std::get_if<QRosenMorseSpec>(&spec); q && q->pt_symmetric) {
    return -std::exp(cplx(0.0, -2.0 * q->alpha * r));
  }
  return std::exp(log_variable(spec, r));
}

std::complex<double> log_variable_slope(const PotentialSpec& spec) {
  return std::visit(Overloaded{
                        [](const MorseSpec& m) { return cplx(-m.a, 0.0); },
                        [](const HulthenSpec& h) { return cplx(-1.0 / h.r0, 0.0); },
                        [](const QRosenMorseSpec& q) {
                          return q.pt_symmetric ? cplx(0.0, -2.0 * q.alpha)
                                                : cplx(-2.0 * q.alpha, 0.0);
                        },
                    },
                    spec);
}

RadialGrid default_spinor_grid(const PotentialSpec& spec, int points) {
  return std::visit(
      Overloaded{
          [points](const MorseSpec& m) { return RadialGrid{0.1, m.r0 + 30.0 / m.a, points}; },
          [points](const HulthenSpec& h) { return RadialGrid{0.01 * h.r0, 40.0 * h.r0, points}; },
          [points](const QRosenMorseSpec& q) {
            return RadialGrid{0.01 / q.alpha, 2.0 * std::numbers::pi / q.alpha, points};
          },
      },
      spec);
}

LowerComponent::LowerComponent(const PotentialSpec& spec, const PhysicalContext& ctx,
                               const BoundState& state)
    : spec_(spec),
      solution_(nu_input(spec, ctx, state.kappa, state.energy), state.n),
      complex_(is_complex(spec)) {}

LowerPoint LowerComponent::operator()(double r) const {
  const cplx slope = log_variable_slope(spec_);
  if (complex_) {
    const cplx log_s = log_variable(spec_, r);
    return {solution_.value_from_log(log_s),
            solution_.derivative_from_log(log_s) * slope * std::exp(log_s)};
  }
  const double s = std::exp(log_variable(spec_, r).real());
  if (s == 0.0) return {0.0, 0.0};
  return {solution_.value(s), solution_.derivative(s) * slope.real() * s};
}

std::vector<std::complex<double>> lower_component(const PotentialSpec& spec,
                                                  const PhysicalContext& ctx,
                                                  const BoundState& state, const RadialGrid& grid) {
  require_positive_grid(grid, "lower_component");
  const LowerComponent g(spec, ctx, state);
  std::vector<cplx> out(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) out[static_cast<std::size_t>(i)] = g.value(grid.r(i));
  return out;
}

std::vector<std::complex<double>> upper_component(const PotentialSpec& spec,
                                                  const PhysicalContext& ctx,
                                                  const BoundState& state, const RadialGrid& grid) {
  std::vector<cplx> out;
  for (const auto& sample : spinor_samples(spec, ctx, state, grid)) out.push_back(sample.f);
  return out;
}

std::vector<WavefunctionSample> spinor_samples(const PotentialSpec& spec,
                                               const PhysicalContext& ctx,
                                               const BoundState& state, const RadialGrid& grid) {
  require_positive_grid(grid, "spinor_samples");
  const double sigma = ctx.sigma_m(state.energy);
  require_sigma(sigma);
  const LowerComponent g(spec, ctx, state);
  std::vector<WavefunctionSample> out(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) {
    const double r = grid.r(i);
    const LowerPoint p = g(r);
    out[static_cast<std::size_t>(i)] = {r, p.value,
                                        (p.derivative - (state.kappa / r) * p.value) / sigma};
  }
  return out;
}

double simpson(const std::vector<double>& values, double spacing) {
  const std::size_t n = values.size();
  if (n < 3 || (n % 2 == 0 && n < 4)) throw PreconditionError("simpson: too few points");
  auto composite = [&](std::size_t count) {
    double sum = values[0] + values[count - 1];
    for (std::size_t i = 1; i + 1 < count; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
    return sum * spacing / 3.0;
  };
  if (n % 2 == 1) return composite(n);
  const std::size_t head = n - 3;  // odd number of points
  const double tail = 3.0 * spacing / 8.0 *
                      (values[n - 4] + 3.0 * values[n - 3] + 3.0 * values[n - 2] + values[n - 1]);
  return (head >= 3 ? composite(head) : 0.0) + tail;
}

double norm_integral(const std::vector<WavefunctionSample>& samples, const RadialGrid& grid) {
  if (samples.size() != static_cast<std::size_t>(grid.points)) {
    throw PreconditionError("norm_integral: sample count does not match the grid");
  }
  std::vector<double> density(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    density[i] = std::norm(samples[i].g) + std::norm(samples[i].f);
  }
  return simpson(density, grid.spacing());
}

NormalizedSpinor normalize(const std::vector<WavefunctionSample>& samples, const RadialGrid& grid) {
  const double integral = norm_integral(samples, grid);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw ZeroNormError("normalize: vanishing or non-finite norm");
  }
  NormalizedSpinor out;
  out.scale = 1.0 / std::sqrt(integral);
  out.samples = samples;
  for (auto& s : out.samples) {
    s.g *= out.scale;
    s.f *= out.scale;
  }
  return out;
}

int count_nodes(const std::vector<double>& g) {
  double peak = 0.0;
  for (const double v : g) peak = std::max(peak, std::abs(v));
  const double floor = 1e-10 * peak;
  int nodes = 0;
  int last = 0;
  for (const double v : g) {
    if (std::abs(v) < floor || v == 0.0) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++nodes;
    last = sign;
  }
  return nodes;
}

std::vector<double> real_part(const std::vector<std::complex<double>>& values) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](cplx v) { return v.real(); });
  return out;
}

double ode_residual(const PotentialSpec& spec, const PhysicalContext& ctx, const BoundState& state,
                    const RadialGrid& grid) {
  const std::vector<cplx> g = lower_component(spec, ctx, state, grid);
  const double h = grid.spacing();
  double worst = 0.0;
  double q_max = 0.0;
  for (int i = 0; i < grid.points; ++i) {
    const cplx q = effective_coefficient(spec, ctx, state.kappa, state.energy, grid.r(i));
    q_max = std::max(q_max, std::abs(q));
    const auto k = static_cast<std::size_t>(i);
    if (i >= 2 && i + 2 < grid.points) {
      worst = std::max(worst, std::abs(second_derivative(g, k, h) + q * g[k]));
    }
  }
  const double g_max = max_abs(g);
  if (!(g_max > 0.0) || !(q_max > 0.0)) throw ZeroNormError("ode_residual: degenerate scale");
  return worst / (g_max * q_max);
}

DiracPairResidual dirac_pair_residual(const PotentialSpec& spec, const PhysicalContext& ctx,
                                      const BoundState& state, const RadialGrid& grid) {
  require_positive_grid(grid, "dirac_pair_residual");
  const double sigma = ctx.sigma_m(state.energy);
  require_sigma(sigma);
  const double kk = centrifugal_factor(state.kappa);
  const LowerComponent lower(spec, ctx, state);
  auto spinor = [&](double r) {
    const LowerPoint p = lower(r);
    return std::pair<cplx, cplx>{p.value, (p.derivative - (state.kappa / r) * p.value) / sigma};
  };

  double eq4 = 0.0, eq3 = 0.0, eq3_raw = 0.0;
  double scale4 = 0.0, scale3 = 0.0;
  for (int i = 2; i + 2 < grid.points; ++i) {
    const double r = grid.r(i);
    // Five-point stencil with a step resolved against the 1/r terms.
    const double step = std::min(grid.spacing(), 0.01 * r);
    std::vector<cplx> g(5), f(5);
    for (int k = 0; k < 5; ++k) {
      std::tie(g[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(k)]) =
          spinor(r + (k - 2) * step);
    }
    const cplx dg = first_derivative(g, 2, step);
    const cplx df = first_derivative(f, 2, step);
    const cplx kg = (state.kappa / r) * g[2];
    const cplx kf = (state.kappa / r) * f[2];
    const cplx coupling = (ctx.mass + state.energy - potential_value(spec, r)) * g[2];
    const cplx closure = (kk / (r * r) - centrifugal_term(spec, state.kappa, r)) * g[2] / sigma;

    eq4 = std::max(eq4, std::abs(dg - kg - sigma * f[2]));
    scale4 = std::max({scale4, std::abs(dg), std::abs(kg), std::abs(sigma * f[2])});

    const cplx raw = df + kf - coupling;
    eq3_raw = std::max(eq3_raw, std::abs(raw));
    eq3 = std::max(eq3, std::abs(raw + closure));
    scale3 = std::max({scale3, std::abs(df), std::abs(kf), std::abs(coupling)});
  }
  if (!(scale4 > 0.0) || !(scale3 > 0.0)) throw ZeroNormError("dirac_pair_residual: zero spinor");
  return {eq4 / scale4, eq3 / scale3, eq3_raw / scale3};
}

double boundary_decay(const std::vector<std::complex<double>>& g) {
  if (g.empty()) throw PreconditionError("boundary_decay: no samples");
  const double peak = max_abs(g);
  if (!(peak > 0.0)) throw ZeroNormError("boundary_decay: zero samples");
  return std::abs(g.back()) / peak;
}

std::complex<double> printed_lower_component(const PotentialSpec& spec, const PhysicalContext& ctx,
                                             const BoundState& state, double r) {
  const double sigma = ctx.sigma_m(state.energy);
  const double me = ctx.mass + state.energy;
  const int n = state.n;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return std::visit(
      Overloaded{
          [&](const MorseSpec& m) -> cplx {
            const auto [d0, d1, d2] = morse_mapping_coefficients(m, state.kappa);
            (void)d1;
            const double gamma = centrifugal_factor(state.kappa) / (m.r0 * m.r0);
            const double br0 = m.beta() * m.r0;
            const double inner = gamma * d0 + sigma * me;
            const double outer = gamma * d2 - m.D * sigma;
            if (inner < 0.0 || outer < 0.0) return {nan, nan};
            const double power = br0 * std::sqrt(inner);
            const double decay = br0 * std::sqrt(outer);
            const double s = std::exp(-m.a * (r - m.r0));
            return std::pow(s, power) * std::exp(-decay * s) *
                   specfun::laguerre(n, 2.0 * power, 2.0 * decay * s);
          },
          [&](const HulthenSpec& hs) -> cplx {
            const double radicand = sigma * me;
            if (radicand < 0.0) return {nan, nan};
            const double power = hs.r0 * std::sqrt(radicand);
            const double w = std::sqrt(4.0 * centrifugal_factor(state.kappa) + 1.0);
            const double s = std::exp(-r / hs.r0);
            return std::pow(s, power) * std::pow(1.0 - s, 0.5 * (1.0 + w)) *
                   specfun::jacobi(n, 2.0 * power, w, 1.0 - 2.0 * s);
          },
          [&](const QRosenMorseSpec& q) -> cplx {
            const double radicand = sigma * (me - q.V1);
            const double w2 = 1.0 - 4.0 * q.V2 * sigma / q.q;
            if (radicand < 0.0 || w2 < 0.0) return {nan, nan};
            const double power = std::sqrt(q.delta2()) * std::sqrt(radicand);
            const double w = std::sqrt(w2);
            const cplx log_s = log_variable(spec, r);
            const cplx s = std::exp(log_s);
            return std::exp(power * log_s) * std::pow(1.0 - q.q * s, 0.5 * (1.0 + w)) *
                   specfun::jacobi(n, 2.0 * power, w, 1.0 - 2.0 * q.q * s);
          },
      },
      spec);
}

std::optional<double> printed_upper_component(const PotentialSpec& spec,
                                              const PhysicalContext& ctx, const BoundState& state,
                                              double r) {
  const double sigma = ctx.sigma_m(state.energy);
  require_sigma(sigma);
  const double me = ctx.mass + state.energy;
  const int n = state.n;
  const double kappa = state.kappa;
  return std::visit(
      Overloaded{
          [&](const MorseSpec& m) -> std::optional<double> {
            const auto [d0, d1, d2] = morse_mapping_coefficients(m, state.kappa);
            (void)d1;
            const double gamma = centrifugal_factor(state.kappa) / (m.r0 * m.r0);
            const double br0 = m.beta() * m.r0;
            const double inner = gamma * d0 + sigma * me;
            const double outer = gamma * d2 - m.D * sigma;
            if (inner < 0.0 || outer < 0.0) return std::nullopt;
            const double power = br0 * std::sqrt(inner);
            const double decay = br0 * std::sqrt(outer);
            const double s = std::exp(-m.a * (r - m.r0));
            const double y = 2.0 * decay * s;
            const double lag = specfun::laguerre(n, 2.0 * power, y);
            const double lag_lower = n > 0 ? specfun::laguerre(n - 1, 1.0 + 2.0 * power, y) : 0.0;
            const double envelope = std::pow(s, power) * std::exp(-decay * s);
            return (m.a / sigma) * envelope *
                   (decay * s * (lag + lag_lower) -
                    (power + kappa / (m.a * m.r0 - std::log(s))) * lag);
          },
          [&](const HulthenSpec& hs) -> std::optional<double> {
            const double radicand = sigma * me;
            if (radicand < 0.0) return std::nullopt;
            const double power = hs.r0 * std::sqrt(radicand);
            const double w = std::sqrt(4.0 * centrifugal_factor(state.kappa) + 1.0);
            const double exponent = 0.5 * (1.0 + w);
            const double s = std::exp(-r / hs.r0);
            const double x = 1.0 - 2.0 * s;
            const double jac = specfun::jacobi(n, 2.0 * power, w, x);
            const double jac_lower =
                n > 0 ? specfun::jacobi(n - 1, 1.0 + 2.0 * power, 1.0 + w, x) : 0.0;
            const double envelope = std::pow(s, power) * std::pow(1.0 - s, exponent);
            return envelope / (hs.r0 * sigma) *
                   ((-power + exponent * s / (1.0 - s) + kappa / std::log(s)) * jac +
                    (n + 2.0 * power + w + 1.0) * s * jac_lower);
          },
          [](const QRosenMorseSpec&) -> std::optional<double> { return std::nullopt; },
      },
      spec);
}

}  // namespace pseudospin
