#include "pseudospin/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pseudospin/errors.hpp"

namespace pseudospin {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_pt(const QRosenMorseSpec& spec) {
  if (!spec.pt_symmetric) {
    throw PreconditionError("Rosen-Morse NU mapping is defined for the PT-symmetric form only");
  }
}

}  // namespace

void PhysicalContext::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw PreconditionError("mass must be positive");
  if (!std::isfinite(c)) throw PreconditionError("pseudospin constant C must be finite");
}

PotentialKind kind_of(const PotentialSpec& spec) {
  return std::visit(Overloaded{
                        [](const MorseSpec&) { return PotentialKind::morse; },
                        [](const HulthenSpec&) { return PotentialKind::hulthen; },
                        [](const QRosenMorseSpec&) { return PotentialKind::qrm; },
                    },
                    spec);
}

std::string_view potential_id(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::morse:
      return "morse";
    case PotentialKind::hulthen:
      return "hulthen";
    case PotentialKind::qrm:
      return "qrm";
  }
  return "unknown";
}

std::optional<PotentialKind> parse_potential_id(std::string_view id) {
  if (id == "morse") return PotentialKind::morse;
  if (id == "hulthen") return PotentialKind::hulthen;
  if (id == "qrm") return PotentialKind::qrm;
  return std::nullopt;
}

void validate(const PotentialSpec& spec) {
  std::visit(Overloaded{
                 [](const MorseSpec& m) {
                   if (!(m.D > 0.0)) throw PreconditionError("Morse: D must be positive");
                   if (!(m.a > 0.0)) throw PreconditionError("Morse: a must be positive");
                   if (!(m.r0 > 0.0)) throw PreconditionError("Morse: r0 must be positive");
                 },
                 [](const HulthenSpec& h) {
                   if (!(h.r0 > 0.0)) throw PreconditionError("Hulthen: r0 must be positive");
                   if (!std::isfinite(h.V0)) throw PreconditionError("Hulthen: V0 must be finite");
                 },
                 [](const QRosenMorseSpec& q) {
                   if (q.q == 0.0 || !std::isfinite(q.q)) {
                     throw PreconditionError("Rosen-Morse: q must be nonzero");
                   }
                   if (!(q.alpha > 0.0)) throw PreconditionError("Rosen-Morse: alpha must be positive");
                 },
             },
             spec);
}

bool is_complex(const PotentialSpec& spec) {
  const auto* q = std::get_if<QRosenMorseSpec>(&spec);
  return q != nullptr && q->pt_symmetric;
}

double length_scale(const PotentialSpec& spec) {
  return std::visit(Overloaded{
                        [](const MorseSpec& m) { return m.r0; },
                        [](const HulthenSpec& h) { return h.r0; },
                        [](const QRosenMorseSpec& q) { return 1.0 / q.alpha; },
                    },
                    spec);
}

double depth_scale(const PotentialSpec& spec) {
  return std::visit(Overloaded{
                        [](const MorseSpec& m) { return std::abs(m.D); },
                        [](const HulthenSpec& h) { return std::abs(h.V0); },
                        [](const QRosenMorseSpec& q) { return std::max(std::abs(q.V1), std::abs(q.V2)); },
                    },
                    spec);
}

void check_kappa(const PotentialSpec& spec, int kappa) {
  if (std::holds_alternative<QRosenMorseSpec>(spec) && kappa != 0) {
    throw PreconditionError("Rosen-Morse potential is solved for kappa = 0 only");
  }
}

PekerisCoefficients pekeris_coefficients(double alpha, int kappa, double r0) {
  if (!(alpha > 0.0)) throw PreconditionError("pekeris_coefficients: alpha must be positive");
  if (!(r0 > 0.0)) throw PreconditionError("pekeris_coefficients: r0 must be positive");
  const double u = 1.0 / alpha;
  auto eval = [u](const std::array<int, 3>& c) { return c[0] + u * (c[1] + u * c[2]); };
  PekerisCoefficients p;
  p.d0 = eval(kPekerisPolynomial[0]);
  p.d1 = eval(kPekerisPolynomial[1]);
  p.d2 = eval(kPekerisPolynomial[2]);
  p.gamma = centrifugal_factor(kappa) / (r0 * r0);
  return p;
}

double approx_inverse_r2(double alpha, double r) {
  if (!(alpha > 0.0)) throw PreconditionError("approx_inverse_r2: alpha must be positive");
  if (!(r > 0.0)) throw PreconditionError("approx_inverse_r2: r must be positive");
  const double y = alpha * r;
  const double denom = -std::expm1(-y);  // 1 - e^{-y}
  return alpha * alpha * std::exp(-y) / (denom * denom);
}

double exponential_rate(const PotentialSpec& spec) {
  return std::visit(Overloaded{
                        [](const MorseSpec& m) { return m.a; },
                        [](const HulthenSpec& h) { return 1.0 / h.r0; },
                        [](const QRosenMorseSpec& q) { return 2.0 * q.alpha; },
                    },
                    spec);
}

InverseSquareComparison compare_inverse_square(const PotentialSpec& spec, double r) {
  validate(spec);
  if (!(r > 0.0)) throw PreconditionError("compare_inverse_square: r must be positive");
  InverseSquareComparison c;
  c.r = r;
  c.exact = 1.0 / (r * r);
  c.exponential = approx_inverse_r2(exponential_rate(spec), r);
  c.exponential_error = std::abs(c.exponential / c.exact - 1.0);
  if (const auto* m = std::get_if<MorseSpec>(&spec)) {
    const PekerisCoefficients p = pekeris_coefficients(m->alpha(), 0, m->r0);
    const double e = std::exp(-m->a * (r - m->r0));
    c.pekeris = (p.d0 + e * (p.d1 + e * p.d2)) / (m->r0 * m->r0);
    c.pekeris_error = std::abs(*c.pekeris / c.exact - 1.0);
  }
  return c;
}

double centrifugal_term(const PotentialSpec& spec, int kappa, double r) {
  check_kappa(spec, kappa);
  const double kk = centrifugal_factor(kappa);
  if (kk == 0.0) return 0.0;
  return std::visit(Overloaded{
                        [&](const MorseSpec& m) {
                          const PekerisCoefficients p = pekeris_coefficients(m.alpha(), kappa, m.r0);
                          const double e = std::exp(-m.a * (r - m.r0));
                          return p.gamma * (p.d0 + e * (p.d1 + e * p.d2));
                        },
                        [&](const HulthenSpec& h) { return kk * approx_inverse_r2(1.0 / h.r0, r); },
                        [](const QRosenMorseSpec&) { return 0.0; },
                    },
                    spec);
}

std::complex<double> potential_value(const PotentialSpec& spec, double r) {
  return std::visit(
      Overloaded{
          [&](const MorseSpec& m) -> std::complex<double> {
            const double e = std::exp(-m.a * (r - m.r0));
            return m.D * (e * e - 2.0 * e);
          },
          [&](const HulthenSpec& h) -> std::complex<double> {
            if (!(r > 0.0)) throw PreconditionError("Hulthen potential requires r > 0");
            return -h.V0 / std::expm1(r / h.r0);
          },
          [&](const QRosenMorseSpec& q) -> std::complex<double> {
            const std::complex<double> e =
                q.pt_symmetric ? std::exp(std::complex<double>(0.0, -2.0 * q.alpha * r))
                               : std::complex<double>(std::exp(-2.0 * q.alpha * r), 0.0);
            const std::complex<double> denom = 1.0 + q.q * e;
            return q.V1 / denom - q.V2 * q.q * e / (denom * denom);
          },
      },
      spec);
}

std::complex<double> effective_coefficient(const PotentialSpec& spec, const PhysicalContext& ctx,
                                           int kappa, double energy, double r) {
  const double sigma = ctx.sigma_m(energy);
  return -(centrifugal_term(spec, kappa, r) + sigma * (ctx.mass + energy) -
           sigma * potential_value(spec, r));
}

std::array<double, 3> morse_mapping_coefficients(const MorseSpec& spec, int kappa) {
  if (spec.pekeris_override) return *spec.pekeris_override;
  const PekerisCoefficients p = pekeris_coefficients(spec.alpha(), kappa, spec.r0);
  return {p.d0, p.d1, p.d2};
}

NuInput morse_nu_input(const MorseSpec& spec, const PhysicalContext& ctx, int kappa,
                       double energy) {
  const auto [d0, d1, d2] = morse_mapping_coefficients(spec, kappa);
  const double gamma = centrifugal_factor(kappa) / (spec.r0 * spec.r0);
  const double sigma = ctx.sigma_m(energy);
  const double r0sq = spec.r0 * spec.r0;
  const double a1sq = r0sq * (gamma * d0 + sigma * (ctx.mass + energy));
  const double a2sq = r0sq * (gamma * d1 + 2.0 * spec.D * sigma);
  const double a3sq = r0sq * (spec.D * sigma - gamma * d2);
  const double beta2 = spec.beta() * spec.beta();
  return {1.0, 0.0, 0.0, -a3sq * beta2, -a2sq * beta2, a1sq * beta2};
}

NuInput hulthen_nu_input(const HulthenSpec& spec, const PhysicalContext& ctx, int kappa,
                         double energy) {
  const double sigma = ctx.sigma_m(energy);
  const double r0sq = spec.r0 * spec.r0;
  const double me = ctx.mass + energy;
  return {1.0,
          1.0,
          1.0,
          r0sq * sigma * (me - spec.V0),
          r0sq * sigma * (2.0 * me - spec.V0) - centrifugal_factor(kappa),
          r0sq * sigma * me};
}

NuInput qrm_nu_input(const QRosenMorseSpec& spec, const PhysicalContext& ctx, double energy) {
  require_pt(spec);
  const double sigma = ctx.sigma_m(energy);
  const double d2 = spec.delta2();
  const double q = spec.q;
  const double me = ctx.mass + energy;
  return {1.0,
          q,
          q,
          -d2 * q * q * sigma * me,
          -d2 * sigma * (2.0 * q * me - q * spec.V1 + q * spec.V2),
          d2 * sigma * (spec.V1 - me)};
}

NuInput qrm_nu_input_printed(const QRosenMorseSpec& spec, const PhysicalContext& ctx,
                             double energy) {
  require_pt(spec);
  const double sigma = ctx.sigma_m(energy);
  const double d2 = spec.delta2();
  const double q = spec.q;
  const double me = ctx.mass + energy;
  return {1.0,
          q,
          q,
          -d2 * q * q * sigma * me,
          d2 * sigma * (2.0 * q * me - q * spec.V1 + spec.V2),
          d2 * sigma * (me - spec.V1)};
}

NuInput nu_input(const PotentialSpec& spec, const PhysicalContext& ctx, int kappa, double energy) {
  check_kappa(spec, kappa);
  return std::visit(Overloaded{
                        [&](const MorseSpec& m) { return morse_nu_input(m, ctx, kappa, energy); },
                        [&](const HulthenSpec& h) { return hulthen_nu_input(h, ctx, kappa, energy); },
                        [&](const QRosenMorseSpec& q) { return qrm_nu_input(q, ctx, energy); },
                    },
                    spec);
}

}  // namespace pseudospin
