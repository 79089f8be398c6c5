#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>
#include <json.hpp>
#include <spdlog/logger.h>
#include <spdlog/sinks/ostream_sink.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string_view>

#include "pseudospin/errors.hpp"
#include "pseudospin/oracle.hpp"
#include "pseudospin/potentials.hpp"
#include "pseudospin/spectra.hpp"
#include "pseudospin/spinors.hpp"

namespace pseudospin::cli {

namespace {

using Json = nlohmann::ordered_json;

// Mandatory-check tolerances of the validation report.
constexpr double kResidualAgreement = 1e-9;
constexpr double kOdeResidual = 1e-6;
constexpr double kDiracPair = 1e-6;
constexpr double kNorm = 1e-8;
constexpr double kOracleAgreement = 1e-6;

// Raised for anything the user must fix; maps to kUsage.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string potential = "morse";
  double mass = 1.0;
  double C = 0.0;
  double D = 5.0;
  double a = 1.25;
  double r0 = 0.8;
  double V0 = -10.0;
  double V1 = -3.0;
  double V2 = 1.0;
  double q = 0.5;
  double alpha = 0.5;
  bool pt_symmetric = true;
  int n_max = 1;
  int n = 0;
  std::vector<std::string> kappa;
  std::string bracket;
  double tol = 1e-12;
  std::string grid;
  bool oracle = false;
  std::string out;
  double pekeris_d1_scale = 1.0;
};

struct RunConfig {
  PotentialSpec spec;
  PhysicalContext ctx;
  int n_max = 0;
  int n = 0;
  std::vector<int> kappas;
  EnergyBracket bracket;
  double tol = 1e-12;
  std::optional<RadialGrid> grid;
  bool oracle = false;
};

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", what, text));
  }
  return value;
}

int parse_integer(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", what, text));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Each entry is a comma-separated list; empty entries contribute nothing.
std::vector<int> parse_kappas(const std::vector<std::string>& entries) {
  std::vector<int> kappas;
  for (const auto& entry : entries) {
    for (auto piece : split(entry, ',')) {
      while (!piece.empty() && (piece.front() == ' ' || piece.front() == '[')) piece.remove_prefix(1);
      while (!piece.empty() && (piece.back() == ' ' || piece.back() == ']')) piece.remove_suffix(1);
      if (!piece.empty()) kappas.push_back(parse_integer(piece, "--kappa"));
    }
  }
  return kappas;
}

EnergyBracket parse_bracket(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError("--bracket expects LO:HI");
  EnergyBracket b;
  b.lo = parse_number(parts[0], "--bracket");
  b.hi = parse_number(parts[1], "--bracket");
  return b;
}

RadialGrid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("--grid expects RMIN:RMAX:N");
  return {parse_number(parts[0], "--grid"), parse_number(parts[1], "--grid"),
          parse_integer(parts[2], "--grid")};
}

struct PotentialFlags {
  CLI::Option* D;
  CLI::Option* a;
  CLI::Option* r0;
  CLI::Option* V0;
  CLI::Option* V1;
  CLI::Option* V2;
  CLI::Option* q;
  CLI::Option* alpha;
  CLI::Option* pt;
  CLI::Option* pekeris;
};

void reject_foreign(std::initializer_list<CLI::Option*> options, std::string_view potential) {
  for (auto* o : options) {
    if (o->count() > 0) {
      throw ConfigError(fmt::format("{} does not apply to --potential {}", o->get_name(), potential));
    }
  }
}

RunConfig build_config(const Flags& f, const PotentialFlags& set) {
  RunConfig c;
  const auto kind = parse_potential_id(f.potential);
  if (!kind) throw ConfigError(fmt::format("unknown potential '{}'", f.potential));
  switch (*kind) {
    case PotentialKind::morse: {
      reject_foreign({set.V0, set.V1, set.V2, set.q, set.alpha, set.pt}, f.potential);
      MorseSpec m{f.D, f.a, f.r0, std::nullopt};
      if (set.pekeris->count() > 0) {
        if (!(m.a > 0.0 && m.r0 > 0.0)) throw ConfigError("Morse requires a > 0 and r0 > 0");
        const auto p = pekeris_coefficients(m.alpha(), 0, m.r0);
        m.pekeris_override = std::array<double, 3>{p.d0, p.d1 * f.pekeris_d1_scale, p.d2};
      }
      c.spec = m;
      break;
    }
    case PotentialKind::hulthen:
      reject_foreign({set.D, set.a, set.V1, set.V2, set.q, set.alpha, set.pt, set.pekeris},
                     f.potential);
      c.spec = HulthenSpec{f.V0, set.r0->count() > 0 ? f.r0 : 1.0};
      break;
    case PotentialKind::qrm:
      reject_foreign({set.D, set.a, set.r0, set.V0, set.pekeris}, f.potential);
      c.spec = QRosenMorseSpec{f.V1, f.V2, f.q, f.alpha, f.pt_symmetric};
      break;
  }
  c.ctx = {f.mass, f.C};
  c.n_max = f.n_max;
  c.n = f.n;
  if (f.kappa.empty()) {
    c.kappas = *kind == PotentialKind::qrm ? std::vector<int>{0} : std::vector<int>{2, -1};
  } else {
    c.kappas = parse_kappas(f.kappa);
  }
  c.tol = f.tol;
  c.oracle = f.oracle;
  if (c.n_max < 0 || c.n < 0) throw ConfigError("quantum numbers must be non-negative");
  if (!(c.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (c.oracle && *kind == PotentialKind::qrm) {
    throw ConfigError("--oracle is unavailable for the complex Rosen-Morse potential");
  }
  try {
    validate(c.spec);
    c.ctx.validate();
    for (const int k : c.kappas) check_kappa(c.spec, k);
    c.bracket = f.bracket.empty() ? default_bracket(c.spec, c.ctx) : parse_bracket(f.bracket);
    c.bracket.validate();
    if (!f.grid.empty()) {
      c.grid = parse_grid(f.grid);
      c.grid->validate();
    }
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

// Round-trip digits; negative zero prints as 0.
std::string number(double v) { return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v); }

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : ""; }

bool is_real(const RunConfig& c) { return !is_complex(c.spec); }

std::vector<OracleState> oracle_for(const RunConfig& c, int kappa) {
  return oracle_states(make_effective_equation(c.spec, c.ctx, kappa), c.bracket);
}

std::optional<double> oracle_energy(const std::vector<OracleState>& states, int n) {
  for (const auto& s : states) {
    if (s.nodes == n) return s.energy;
  }
  return std::nullopt;
}

RadialGrid spinor_grid(const RunConfig& c) {
  return c.grid ? *c.grid : default_spinor_grid(c.spec);
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, spdlog::logger& log) {
  const auto spectrum = enumerate_spectrum(c.spec, c.ctx, c.n_max, c.kappas, c.bracket, c.tol);
  std::vector<std::pair<int, std::vector<OracleState>>> oracle;
  if (c.oracle) {
    for (const int k : c.kappas) {
      if (std::none_of(oracle.begin(), oracle.end(), [k](const auto& p) { return p.first == k; })) {
        oracle.emplace_back(k, oracle_for(c, k));
      }
    }
  }
  fmt::print(out, "potential_id,n,kappa,ell_tilde,E,sigma_m,residual,oracle_E,rel_diff\n");
  for (const auto& s : spectrum.states) {
    std::optional<double> shot;
    std::optional<double> rel;
    for (const auto& [k, states] : oracle) {
      if (k == s.kappa) shot = oracle_energy(states, s.n);
    }
    if (shot) rel = relative_difference(s.energy, *shot);
    fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", potential_id(s.potential), s.n, s.kappa,
               QuantumNumbers{s.n, s.kappa}.ell_tilde(), number(s.energy), number(s.sigma_m),
               number(s.residual), optional_number(shot), optional_number(rel));
  }
  for (const auto& m : spectrum.missing) {
    log.warn("missing state n={} kappa={}: {}", m.n, m.kappa, m.reason);
  }
  return spectrum.missing.empty() ? kOk : kMissingState;
}

int cmd_wavefunction(const RunConfig& c, std::ostream& out, spdlog::logger& log) {
  if (c.kappas.size() != 1) throw ConfigError("wavefunction needs exactly one --kappa");
  const int kappa = c.kappas.front();
  BoundState state;
  try {
    state = solve_energy(c.spec, c.ctx, c.n, kappa, c.bracket, c.tol);
  } catch (const NoRootError& e) {
    log.error("no state n={} kappa={}: {}", c.n, kappa, e.what());
    return kMissingState;
  } catch (const MultipleRootsError& e) {
    log.error("ambiguous state n={} kappa={}: {}", c.n, kappa, e.what());
    return kMissingState;
  }
  const auto grid = spinor_grid(c);
  auto samples = spinor_samples(c.spec, c.ctx, state, grid);
  std::string norm = "n/a";
  std::string nodes = "n/a";
  if (is_real(c)) {
    samples = normalize(samples, grid).samples;
    norm = number(norm_integral(samples, grid));
    std::vector<std::complex<double>> g;
    g.reserve(samples.size());
    for (const auto& s : samples) g.push_back(s.g);
    nodes = std::to_string(count_nodes(real_part(g)));
  }
  fmt::print(out, "# potential={} n={} kappa={}\n", potential_id(state.potential), state.n,
             state.kappa);
  fmt::print(out, "# E={} norm={} node_count={}\n", number(state.energy), norm, nodes);
  fmt::print(out, "r,Re g,Im g,Re f,Im f\n");
  for (const auto& s : samples) {
    fmt::print(out, "{},{},{},{},{}\n", number(s.r), number(s.g.real()), number(s.g.imag()),
               number(s.f.real()), number(s.f.imag()));
  }
  return kOk;
}

int cmd_approx_error(const RunConfig& c, std::ostream& out) {
  RadialGrid grid;
  if (c.grid) {
    grid = *c.grid;
  } else {
    // Rows at alpha r = 0.01, 0.02, ..., 2.
    const double rate = exponential_rate(c.spec);
    grid = {0.01 / rate, 2.0 / rate, 200};
  }
  if (!(grid.r_min > 0.0)) throw ConfigError("approx-error needs a grid with RMIN > 0");
  fmt::print(out, "r,exact,exponential,exponential_rel_error,pekeris,pekeris_rel_error\n");
  for (int i = 0; i < grid.points; ++i) {
    const auto row = compare_inverse_square(c.spec, grid.r(i));
    fmt::print(out, "{},{},{},{},{},{}\n", number(row.r), number(row.exact), number(row.exponential),
               number(row.exponential_error), optional_number(row.pekeris),
               optional_number(row.pekeris_error));
  }
  return kOk;
}

std::string state_label(const BoundState& s) { return fmt::format("n={} kappa={}", s.n, s.kappa); }

Json check(std::string name, bool mandatory, bool pass) {
  Json j;
  j["name"] = std::move(name);
  j["mandatory"] = mandatory;
  j["pass"] = pass;
  return j;
}

Json residual_agreement(const RunConfig& c) {
  const double factor = residual_proportionality(c.spec);
  double worst = 0.0;
  int compared = 0;
  int domain_mismatches = 0;
  for (const int k : c.kappas) {
    for (int i = 0; i < c.bracket.samples; ++i) {
      const double e = c.bracket.lo + (c.bracket.hi - c.bracket.lo) * i / (c.bracket.samples - 1.0);
      for (int n = 0; n <= c.n_max; ++n) {
        const auto special = energy_residual(c.spec, c.ctx, n, k, e);
        const auto generic = generic_residual(c.spec, c.ctx, n, k, e);
        if (special.has_value() != generic.has_value()) {
          ++domain_mismatches;
        } else if (special) {
          ++compared;
          worst = std::max(worst, std::abs(*generic - factor * *special));
        }
      }
    }
  }
  auto j = check("generic_vs_specialized_residual", true,
                 domain_mismatches == 0 && worst < kResidualAgreement);
  j["proportionality"] = factor;
  j["compared"] = compared;
  j["domain_mismatches"] = domain_mismatches;
  j["max_abs_difference"] = worst;
  j["tolerance"] = kResidualAgreement;
  return j;
}

Json doublet_identity(const RunConfig& c) {
  if (!is_real(c) || std::holds_alternative<QRosenMorseSpec>(c.spec)) {
    auto j = check("doublet_identity", false, true);
    j["detail"] = "not applicable: only kappa = 0 is solved";
    return j;
  }
  int compared = 0;
  int unequal = 0;
  for (const int k : c.kappas) {
    for (int i = 0; i < c.bracket.samples; ++i) {
      const double e = c.bracket.lo + (c.bracket.hi - c.bracket.lo) * i / (c.bracket.samples - 1.0);
      for (int n = 0; n <= c.n_max; ++n) {
        ++compared;
        if (energy_residual(c.spec, c.ctx, n, k, e) !=
            energy_residual(c.spec, c.ctx, n, doublet_partner(k), e)) {
          ++unequal;
        }
      }
    }
  }
  auto j = check("doublet_identity", true, unequal == 0);
  j["compared"] = compared;
  j["unequal"] = unequal;
  return j;
}

double relative_gap(const std::vector<std::complex<double>>& a,
                    const std::vector<std::complex<double>>& b, int& undefined) {
  double scale = 0.0;
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(std::abs(b[i]))) {
      ++undefined;
      continue;
    }
    scale = std::max(scale, std::abs(a[i]));
    gap = std::max(gap, std::abs(a[i] - b[i]));
  }
  return scale > 0.0 ? gap / scale : gap;
}

Json printed_forms(const RunConfig& c, const std::vector<BoundState>& states,
                   const RadialGrid& grid) {
  Json rows = Json::array();
  for (const auto& s : states) {
    const auto lower = lower_component(c.spec, c.ctx, s, grid);
    std::vector<std::complex<double>> printed_lower;
    std::vector<std::complex<double>> printed_upper;
    bool has_upper = true;
    for (int i = 0; i < grid.points; ++i) {
      printed_lower.push_back(printed_lower_component(c.spec, c.ctx, s, grid.r(i)));
      const auto f = printed_upper_component(c.spec, c.ctx, s, grid.r(i));
      has_upper = has_upper && f.has_value();
      printed_upper.emplace_back(f.value_or(NAN));
    }
    Json row;
    row["state"] = state_label(s);
    int undefined_lower = 0;
    const double gap = relative_gap(lower, printed_lower, undefined_lower);
    row["lower_relative_gap"] = undefined_lower < grid.points ? Json(gap) : Json(nullptr);
    row["lower_undefined_points"] = undefined_lower;
    if (has_upper) {
      int undefined_upper = 0;
      row["upper_relative_gap"] =
          relative_gap(upper_component(c.spec, c.ctx, s, grid), printed_upper, undefined_upper);
    } else {
      row["upper_relative_gap"] = nullptr;
    }
    rows.push_back(row);
  }
  auto j = check("printed_closed_forms", false, true);
  j["states"] = rows;
  return j;
}

Json printed_rosen_morse_residual(const RunConfig& c) {
  const auto& spec = std::get<QRosenMorseSpec>(c.spec);
  int jointly_defined = 0;
  int printed_defined = 0;
  double lo = INFINITY;
  double hi = -INFINITY;
  double min_value = INFINITY;
  for (int i = 0; i < c.bracket.samples; ++i) {
    const double e = c.bracket.lo + (c.bracket.hi - c.bracket.lo) * i / (c.bracket.samples - 1.0);
    const auto printed = printed_qrm_residual(spec, c.ctx, 0, e);
    const auto generic = generic_residual(c.spec, c.ctx, 0, 0, e);
    if (!printed) continue;
    ++printed_defined;
    jointly_defined += generic.has_value();
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    min_value = std::min(min_value, *printed);
  }
  auto j = check("printed_rosen_morse_eigenvalue_equation", false, true);
  j["proportional_to_generic"] = false;
  j["printed_defined_samples"] = printed_defined;
  j["jointly_defined_samples"] = jointly_defined;
  if (printed_defined > 0) {
    j["printed_domain"] = {lo, hi};
    j["printed_minimum_n0"] = min_value;
  }
  j["detail"] =
      "the printed closed form is real only where the generic residual is not, so no constant "
      "relates them; the derived form equals q times the generic residual";
  return j;
}

void per_state_checks(const RunConfig& c, const std::vector<BoundState>& states,
                      const RadialGrid& grid, Json& checks) {
  double worst_ode = 0.0, worst_pair = 0.0, worst_norm = 0.0;
  Json ode_fail = Json::array(), pair_fail = Json::array(), node_fail = Json::array(),
       norm_fail = Json::array();
  for (const auto& s : states) {
    const double ode = ode_residual(c.spec, c.ctx, s, grid);
    const auto pair = dirac_pair_residual(c.spec, c.ctx, s, grid);
    worst_ode = std::max(worst_ode, ode);
    worst_pair = std::max({worst_pair, pair.eq3, pair.eq4});
    if (!(ode < kOdeResidual)) ode_fail.push_back(state_label(s));
    if (!(pair.eq3 < kDiracPair && pair.eq4 < kDiracPair)) pair_fail.push_back(state_label(s));
    if (!is_real(c)) continue;
    const auto samples = spinor_samples(c.spec, c.ctx, s, grid);
    std::vector<std::complex<double>> g;
    for (const auto& p : samples) g.push_back(p.g);
    if (count_nodes(real_part(g)) != s.n) node_fail.push_back(state_label(s));
    const double norm_error =
        std::abs(norm_integral(normalize(samples, grid).samples, grid) - 1.0);
    worst_norm = std::max(worst_norm, norm_error);
    if (!(norm_error < kNorm)) norm_fail.push_back(state_label(s));
  }
  auto ode = check("ode_residual", true, ode_fail.empty());
  ode["max"] = worst_ode;
  ode["tolerance"] = kOdeResidual;
  ode["failing"] = ode_fail;
  checks.push_back(ode);
  auto pair = check("dirac_pair_residual", true, pair_fail.empty());
  pair["max"] = worst_pair;
  pair["tolerance"] = kDiracPair;
  pair["failing"] = pair_fail;
  checks.push_back(pair);
  if (is_real(c)) {
    auto nodes = check("node_count", true, node_fail.empty());
    nodes["failing"] = node_fail;
    checks.push_back(nodes);
    auto norm = check("normalization", true, norm_fail.empty());
    norm["max_error"] = worst_norm;
    norm["tolerance"] = kNorm;
    norm["failing"] = norm_fail;
    checks.push_back(norm);
  }
}

Json oracle_agreement(const RunConfig& c, const std::vector<BoundState>& states) {
  double worst = 0.0;
  Json disagreements = Json::array();
  for (const int k : c.kappas) {
    const auto shot = oracle_for(c, k);
    for (int n = 0; n <= c.n_max; ++n) {
      std::optional<double> analytic;
      for (const auto& s : states) {
        if (s.kappa == k && s.n == n) analytic = s.energy;
      }
      const auto oracle = oracle_energy(shot, n);
      if (analytic && oracle) {
        const double d = relative_difference(*analytic, *oracle);
        worst = std::max(worst, d);
        if (!(d < kOracleAgreement)) disagreements.push_back(fmt::format("n={} kappa={}", n, k));
      } else if (analytic || oracle) {
        disagreements.push_back(
            fmt::format("n={} kappa={} found by {} only", n, k, analytic ? "analytic" : "oracle"));
      }
    }
  }
  auto j = check("oracle_agreement", true, disagreements.empty());
  j["max_relative_difference"] = worst;
  j["tolerance"] = kOracleAgreement;
  j["disagreements"] = disagreements;
  return j;
}

int cmd_validate(const RunConfig& c, std::ostream& out, spdlog::logger& log) {
  Json report;
  report["potential"] = potential_id(kind_of(c.spec));
  report["kappas"] = c.kappas;
  report["n_max"] = c.n_max;
  report["bracket"] = {c.bracket.lo, c.bracket.hi};

  const auto spectrum = enumerate_spectrum(c.spec, c.ctx, c.n_max, c.kappas, c.bracket, c.tol);
  Json states = Json::array();
  for (const auto& s : spectrum.states) {
    states.push_back({{"n", s.n}, {"kappa", s.kappa}, {"E", s.energy}, {"residual", s.residual}});
  }
  Json missing = Json::array();
  for (const auto& m : spectrum.missing) {
    missing.push_back({{"n", m.n}, {"kappa", m.kappa}, {"reason", m.reason}});
  }
  report["states"] = states;
  report["missing"] = missing;

  const auto grid = spinor_grid(c);
  Json checks = Json::array();
  checks.push_back(residual_agreement(c));
  checks.push_back(doublet_identity(c));
  per_state_checks(c, spectrum.states, grid, checks);
  if (is_real(c)) checks.push_back(oracle_agreement(c, spectrum.states));
  checks.push_back(printed_forms(c, spectrum.states, grid));
  if (std::holds_alternative<QRosenMorseSpec>(c.spec)) {
    checks.push_back(printed_rosen_morse_residual(c));
  }
  bool pass = true;
  for (const auto& j : checks) {
    if (j["mandatory"].get<bool>() && !j["pass"].get<bool>()) {
      pass = false;
      log.warn("mandatory check failed: {}", j["name"].get<std::string>());
    }
  }
  report["checks"] = checks;
  report["pass"] = pass;
  out << report.dump(2) << '\n';
  return pass ? kOk : kFailure;
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  sink->set_pattern("pseudospin: %l: %v");
  auto log = std::make_shared<spdlog::logger>("pseudospin", sink);
  log->set_level(spdlog::level::warn);
  if (const char* level = std::getenv("PSEUDOSPIN_LOG")) {
    log->set_level(spdlog::level::from_str(level));
  }
  return log;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);
  Flags f;
  CLI::App app{"Bound states of the pseudospin-symmetric Dirac equation", "pseudospin"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  app.add_option("--potential", f.potential, "morse | hulthen | qrm");
  app.add_option("--mass", f.mass, "Dirac mass m");
  app.add_option("--C", f.C, "pseudospin constant C = V_v + V_s");
  PotentialFlags set{};
  set.D = app.add_option("--D", f.D, "Morse depth");
  set.a = app.add_option("--a", f.a, "Morse range parameter");
  set.r0 = app.add_option("--r0", f.r0, "Morse equilibrium radius or Hulthen screening length");
  set.V0 = app.add_option("--V0", f.V0, "Hulthen strength");
  set.V1 = app.add_option("--V1", f.V1, "Rosen-Morse V1");
  set.V2 = app.add_option("--V2", f.V2, "Rosen-Morse V2");
  set.q = app.add_option("--q", f.q, "Rosen-Morse deformation q");
  set.alpha = app.add_option("--alpha", f.alpha, "Rosen-Morse inverse range");
  set.pt = app.add_option("--pt-symmetric", f.pt_symmetric, "Rosen-Morse with x -> i x");
  set.pekeris = app.add_option("--pekeris-d1-scale", f.pekeris_d1_scale,
                               "multiplies the Morse D1 used by the solver (fault injection)");
  app.add_option("--n-max", f.n_max, "largest radial quantum number");
  app.add_option("--n", f.n, "radial quantum number for wavefunction");
  app.add_option("--kappa", f.kappa, "kappa values, repeatable or comma-separated")
      ->allow_extra_args(false);
  app.add_option("--bracket", f.bracket, "energy window LO:HI");
  app.add_option("--tol", f.tol, "root tolerance");
  app.add_option("--grid", f.grid, "radial grid RMIN:RMAX:N");
  app.add_flag("--oracle", f.oracle, "compare with the shooting oracle");
  app.add_option("--out", f.out, "write the artifact to PATH instead of stdout");

  auto* spectrum = app.add_subcommand("spectrum", "table of bound states")->fallthrough();
  auto* wavefunction = app.add_subcommand("wavefunction", "samples of one spinor")->fallthrough();
  auto* validate_cmd = app.add_subcommand("validate", "cross-check report")->fallthrough();
  auto* approx = app.add_subcommand("approx-error", "1/r^2 approximation errors")->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "pseudospin: {}\n", e.what());
    return kUsage;
  }

  try {
    const RunConfig config = build_config(f, set);
    std::ofstream file;
    if (!f.out.empty()) {
      file.open(f.out);
      if (!file) throw ConfigError(fmt::format("cannot open '{}' for writing", f.out));
    }
    std::ostream& sink = f.out.empty() ? out : file;
    log->debug("potential {} with {} kappa values", f.potential, config.kappas.size());
    if (spectrum->parsed()) return cmd_spectrum(config, sink, *log);
    if (wavefunction->parsed()) return cmd_wavefunction(config, sink, *log);
    if (validate_cmd->parsed()) return cmd_validate(config, sink, *log);
    if (approx->parsed()) return cmd_approx_error(config, sink);
    return kUsage;
  } catch (const ConfigError& e) {
    fmt::print(err, "pseudospin: {}\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    log->error("{}", e.what());
    return kFailure;
  }
}

}  // namespace pseudospin::cli
