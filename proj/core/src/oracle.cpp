#include "pseudospin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "pseudospin/errors.hpp"

namespace pseudospin {

namespace {

constexpr double kOverflow = 1e100;
constexpr double kTailLimit = 1e-6;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Frobenius seed r^{ell+1}(1 + b r + c r^2). With p(r) = r^2 Q + ell(ell+1)
// = q_{-1} r + q_0 r^2 + ..., the two leading coefficients are estimated
// from the first two positive abscissae. Returns lim_{r->0} Q u, which the
// first Numerov step needs when the grid starts at the origin: q_{-1} for
// ell = 0, -2 for ell = 1, zero above.
double regular_seed(const std::vector<double>& q, const RadialGrid& grid, int ell, double& u0,
                    double& u1) {
  const double l1 = ell + 1.0;
  const double ll = ell * (ell + 1.0);
  int first = grid.r(0) > 0.0 ? 0 : 1;
  const double ra = grid.r(first);
  const double rb = grid.r(first + 1);
  const double pa = (ra * ra * q[static_cast<std::size_t>(first)] + ll) / ra;
  const double pb = (rb * rb * q[static_cast<std::size_t>(first + 1)] + ll) / rb;
  const double q0 = (pb - pa) / (rb - ra);
  const double qm1 = pa - q0 * ra;
  const double b = -qm1 / (2.0 * l1);
  const double c = -(b * qm1 + q0) / (4.0 * ell + 6.0);
  auto series = [&](double r) {
    if (r <= 0.0) return 0.0;
    return std::pow(r, l1) * (1.0 + r * (b + r * c));
  };
  u0 = series(grid.r(0));
  u1 = series(grid.r(1));
  if (ell == 0) return qm1;
  return ell == 1 ? -2.0 : 0.0;
}

// Numerov from `start` toward `stop` (inclusive) in steps of +1 or -1.
std::vector<double> integrate(const std::vector<double>& q, const RadialGrid& grid, int ell,
                              InnerBoundary inner, Direction direction, int stop) {
  const int n = grid.points;
  const double h = grid.spacing();
  const double h2 = h * h / 12.0;
  std::vector<double> u(static_cast<std::size_t>(n), 0.0);
  const int step = direction == Direction::outward ? 1 : -1;
  const int i0 = direction == Direction::outward ? 0 : n - 1;
  const int i1 = i0 + step;
  auto at = [](auto& v, int i) -> auto& { return v[static_cast<std::size_t>(i)]; };

  // Q u at r = 0, where Q itself is singular.
  double origin_qu = 0.0;
  if (direction == Direction::outward && inner == InnerBoundary::regular_origin) {
    const double limit = regular_seed(q, grid, ell, at(u, i0), at(u, i1));
    if (grid.r(0) <= 0.0) origin_qu = limit;
  } else {
    const double local = 0.5 * (at(q, i0) + at(q, i1));
    const double k = local < 0.0 ? std::sqrt(-local) : 0.0;
    at(u, i0) = 1.0;
    at(u, i1) = std::exp(k * h);
  }

  auto f = [&](int i) { return 1.0 + h2 * at(q, i); };
  for (int i = i1; i != stop; i += step) {
    const int prev = i - step;
    const int next = i + step;
    double rhs = (12.0 - 10.0 * f(i)) * at(u, i);
    if (at(u, prev) != 0.0) {
      rhs -= f(prev) * at(u, prev);
    } else if (prev == i0) {
      rhs -= h2 * origin_qu;
    }
    at(u, next) = rhs / f(next);
    if (std::abs(at(u, next)) > kOverflow) {
      for (int j = i0; j != next + step; j += step) at(u, j) /= kOverflow;
    }
  }
  return u;
}

int match_point(const std::vector<double>& q) {
  const int n = static_cast<int>(q.size());
  int m = -1;
  for (int i = n - 1; i >= 0; --i) {
    if (q[static_cast<std::size_t>(i)] > 0.0) {
      m = i;
      break;
    }
  }
  if (m < 0) m = n / 2;
  return std::clamp(m, 1, n - 3);
}

double positive_scale(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? s : 1.0;
}

}  // namespace

RadialGrid default_oracle_grid(const PotentialSpec& spec, int points) {
  return std::visit(
      Overloaded{
          [points](const MorseSpec& m) { return RadialGrid{-4.0 / m.a, m.r0 + 60.0 / m.a, points}; },
          [points](const HulthenSpec& h) { return RadialGrid{1e-3 * h.r0, 40.0 * h.r0, points}; },
          [](const QRosenMorseSpec&) -> RadialGrid {
            throw PreconditionError("no shooting oracle for the complex Rosen-Morse potential");
          },
      },
      spec);
}

EffectiveEquation make_effective_equation(const PotentialSpec& spec, const PhysicalContext& ctx,
                                          int kappa, const RadialGrid& grid,
                                          CentrifugalMode mode) {
  validate(spec);
  ctx.validate();
  grid.validate();
  if (is_complex(spec) || std::holds_alternative<QRosenMorseSpec>(spec)) {
    throw PreconditionError("no shooting oracle for the Rosen-Morse potential");
  }
  const bool exact = mode == CentrifugalMode::exact;
  if (exact && !(grid.r_min > 0.0)) {
    throw PreconditionError("exact centrifugal mode needs a grid with r_min > 0");
  }
  const double kk = centrifugal_factor(kappa);
  auto centrifugal = std::make_shared<std::vector<double>>();
  auto potential = std::make_shared<std::vector<double>>();
  centrifugal->reserve(static_cast<std::size_t>(grid.points));
  potential->reserve(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) {
    const double r = grid.r(i);
    centrifugal->push_back(exact ? kk / (r * r) : centrifugal_term(spec, kappa, r));
    potential->push_back(potential_value(spec, r).real());
  }

  EffectiveEquation eq;
  eq.grid = grid;
  eq.ell = QuantumNumbers{0, kappa}.ell_tilde();
  eq.inner = std::holds_alternative<MorseSpec>(spec) && !exact ? InnerBoundary::forbidden
                                                               : InnerBoundary::regular_origin;
  eq.coefficients = [ctx, centrifugal, potential](double energy) {
    const double sigma = ctx.sigma_m(energy);
    const double binding = sigma * (ctx.mass + energy);
    std::vector<double> q(centrifugal->size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = -(*centrifugal)[i] - binding + sigma * (*potential)[i];
    }
    return q;
  };
  return eq;
}

EffectiveEquation make_effective_equation(const PotentialSpec& spec, const PhysicalContext& ctx,
                                          int kappa) {
  return make_effective_equation(spec, ctx, kappa, default_oracle_grid(spec));
}

EffectiveEquation make_equation(const RadialGrid& grid, int ell, InnerBoundary inner,
                                std::function<double(double, double)> q) {
  grid.validate();
  EffectiveEquation eq;
  eq.grid = grid;
  eq.ell = ell;
  eq.inner = inner;
  eq.coefficients = [grid, q = std::move(q)](double energy) {
    std::vector<double> out(static_cast<std::size_t>(grid.points));
    for (int i = 0; i < grid.points; ++i) out[static_cast<std::size_t>(i)] = q(grid.r(i), energy);
    return out;
  };
  return eq;
}

std::vector<double> numerov_integrate(const EffectiveEquation& eq, double energy,
                                      Direction direction) {
  eq.grid.validate();
  const std::vector<double> q = eq.coefficients(energy);
  const int stop = direction == Direction::outward ? eq.grid.points - 1 : 0;
  return integrate(q, eq.grid, eq.ell, eq.inner, direction, stop);
}

MatchResult match_solutions(const EffectiveEquation& eq, double energy) {
  const std::vector<double> q = eq.coefficients(energy);
  const int n = eq.grid.points;
  const double h2 = eq.grid.spacing() * eq.grid.spacing() / 12.0;
  const int m = match_point(q);
  std::vector<double> out = integrate(q, eq.grid, eq.ell, eq.inner, Direction::outward, m + 1);
  std::vector<double> in = integrate(q, eq.grid, eq.ell, eq.inner, Direction::inward, m);
  const auto mi = static_cast<std::size_t>(m);

  const double so = positive_scale(out[mi], out[mi + 1]);
  const double si = positive_scale(in[mi], in[mi + 1]);
  const double fm = 1.0 + h2 * q[mi];
  const double fm1 = 1.0 + h2 * q[mi + 1];
  const double yo0 = fm * out[mi] / so;
  const double yo1 = fm1 * out[mi + 1] / so;
  const double yi0 = fm * in[mi] / si;
  const double yi1 = fm1 * in[mi + 1] / si;

  MatchResult res;
  res.match_index = m;
  res.casoratian = yo0 * yi1 - yo1 * yi0;
  res.log_derivative_jump = std::abs(res.casoratian / (yo0 * yi0));

  const double join = in[mi] != 0.0 ? out[mi] / in[mi] : 0.0;
  res.solution.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    res.solution[k] = i <= m ? out[k] : in[k] * join;
  }
  double peak = 0.0;
  for (const double v : res.solution) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (double& v : res.solution) v /= peak;
  }
  res.nodes = count_nodes(res.solution);
  double tail = std::abs(res.solution.back());
  if (eq.inner == InnerBoundary::forbidden) tail = std::max(tail, std::abs(res.solution.front()));
  res.tail_ratio = tail;
  return res;
}

std::vector<OracleState> oracle_states(const EffectiveEquation& eq, const EnergyBracket& bracket,
                                       double tol) {
  bracket.validate();
  if (!(tol > 0.0)) throw PreconditionError("oracle_states: tol must be positive");
  auto w = [&](double e) { return match_solutions(eq, e).casoratian; };
  // Zeros of W where the outer end is classically allowed are box states
  // of the finite grid, not bound states.
  auto closed = [&](double e) {
    const std::vector<double> q = eq.coefficients(e);
    return q.back() < 0.0 && (eq.inner != InnerBoundary::forbidden || q.front() < 0.0);
  };
  const int count = bracket.samples;
  const double step = (bracket.hi - bracket.lo) / (count - 1);

  std::vector<OracleState> states;
  double e_prev = bracket.lo;
  double w_prev = w(e_prev);
  for (int i = 1; i < count; ++i) {
    const double e = i + 1 == count ? bracket.hi : bracket.lo + i * step;
    const double w_cur = w(e);
    if (((w_prev < 0.0) != (w_cur < 0.0) || w_cur == 0.0) && (closed(e_prev) || closed(e))) {
      double lo = e_prev, hi = e, w_lo = w_prev;
      while (hi - lo > tol * std::max(1.0, std::abs(lo))) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        const double w_mid = w(mid);
        if ((w_mid < 0.0) == (w_lo < 0.0) && w_mid != 0.0) {
          lo = mid;
          w_lo = w_mid;
        } else {
          hi = mid;
        }
      }
      const double root = lo + 0.5 * (hi - lo);
      const std::vector<double> q = eq.coefficients(root);
      const bool outer_closed = q.back() < 0.0;
      const bool inner_closed = eq.inner != InnerBoundary::forbidden || q.front() < 0.0;
      const MatchResult match = match_solutions(eq, root);
      if (outer_closed && inner_closed && match.tail_ratio < kTailLimit) {
        states.push_back({root, match.nodes, match.log_derivative_jump, match.tail_ratio});
      }
    }
    e_prev = e;
    w_prev = w_cur;
  }
  return states;
}

double shoot_energy(const EffectiveEquation& eq, int n, const EnergyBracket& bracket, double tol) {
  if (n < 0) throw PreconditionError("shoot_energy: negative n");
  const std::vector<OracleState> states = oracle_states(eq, bracket, tol);
  if (states.empty()) throw NoRootError("shoot_energy: no bound state in the bracket");
  std::vector<double> matches;
  for (const auto& s : states) {
    if (s.nodes == n) matches.push_back(s.energy);
  }
  if (matches.size() != 1) {
    throw NodeCountMismatchError("shoot_energy: " + std::to_string(matches.size()) +
                                 " bound states with " + std::to_string(n) + " nodes among " +
                                 std::to_string(states.size()));
  }
  return matches.front();
}

double relative_difference(double value, double reference) {
  const double diff = std::abs(value - reference);
  return reference != 0.0 ? diff / std::abs(reference) : diff;
}

}  // namespace pseudospin
