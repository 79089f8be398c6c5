#include "cli.hpp"

#include <fmt/core.h>
#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pseudospin/oracle.hpp"

namespace ps = pseudospin;
namespace cli = pseudospin::cli;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Data rows keyed by header name; comment lines skipped.
std::vector<std::map<std::string, std::string>> table(const std::string& csv) {
  std::vector<std::map<std::string, std::string>> rows;
  std::vector<std::string> header;
  for (const auto& line : lines(csv)) {
    if (line.empty() || line.front() == '#') continue;
    if (header.empty()) {
      header = fields(line);
      continue;
    }
    const auto values = fields(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = i < values.size() ? values[i] : "";
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

constexpr const char* kSpectrumHeader =
    "potential_id,n,kappa,ell_tilde,E,sigma_m,residual,oracle_E,rel_diff";

TEST(CliSpectrum, EmptyKappaListGivesHeaderOnly) {
  const auto run = invoke({"spectrum", "--kappa", ""});
  EXPECT_EQ(run.code, cli::kOk);
  EXPECT_EQ(run.out, std::string(kSpectrumHeader) + "\n");
}

TEST(CliSpectrum, MorseOracleColumnAgrees) {
  const auto run = invoke({"spectrum", "--potential", "morse", "--D", "5", "--a", "1.25", "--r0",
                           "0.8", "--kappa", "2", "--kappa", "-1", "--n-max", "1", "--oracle"});
  ASSERT_EQ(run.code, cli::kOk) << run.err;
  const auto rows = table(run.out);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) {
    ASSERT_FALSE(row.at("rel_diff").empty());
    EXPECT_LT(std::stod(row.at("rel_diff")), 1e-6);
  }
}

TEST(CliSpectrum, DoubletRowsPairWithEqualEnergies) {
  const auto run = invoke({"spectrum", "--potential", "hulthen", "--kappa", "2,-1", "--n-max", "2"});
  ASSERT_EQ(run.code, cli::kOk) << run.err;
  const auto rows = table(run.out);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    EXPECT_EQ(rows[i].at("E"), rows[i + 1].at("E"));
    EXPECT_EQ(rows[i].at("n"), rows[i + 1].at("n"));
    EXPECT_EQ(rows[i].at("ell_tilde"), "1");
  }
}

TEST(CliSpectrum, MissingStateExitCode) {
  // Morse with these parameters holds two levels per kappa.
  const auto run = invoke({"spectrum", "--kappa", "2", "--n-max", "2"});
  EXPECT_EQ(run.code, cli::kMissingState);
  EXPECT_EQ(table(run.out).size(), 2u);
  EXPECT_NE(run.err.find("n=2"), std::string::npos);
}

TEST(CliSpectrum, OutputIsDeterministic) {
  const std::vector<std::string> args = {"spectrum", "--potential", "qrm", "--n-max", "1"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(CliSpectrum, WritesToOutPath) {
  const auto path = std::filesystem::temp_directory_path() / "pseudospin_cli_out.csv";
  std::filesystem::remove(path);
  const auto run = invoke({"spectrum", "--n-max", "0", "--out", path.string()});
  ASSERT_EQ(run.code, cli::kOk);
  EXPECT_TRUE(run.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kSpectrumHeader);
  std::filesystem::remove(path);
}

TEST(CliConfig, FileValuesAndFlagPrecedence) {
  const auto path = temp_file("pseudospin_cli.conf",
                              "# Hulthen sample\npotential = hulthen\nV0 = -10\nkappa = 2\n"
                              "n-max = 0\n");
  const auto from_file = invoke({"spectrum", "--config", path.string()});
  ASSERT_EQ(from_file.code, cli::kOk) << from_file.err;
  ASSERT_EQ(table(from_file.out).size(), 1u);
  EXPECT_EQ(table(from_file.out)[0].at("potential_id"), "hulthen");
  const auto overridden = invoke({"spectrum", "--config", path.string(), "--n-max", "2"});
  ASSERT_EQ(overridden.code, cli::kOk) << overridden.err;
  EXPECT_EQ(table(overridden.out).size(), 3u);
  std::filesystem::remove(path);
}

TEST(CliConfig, UnknownKeyRejected) {
  const auto path = temp_file("pseudospin_cli_bad.conf", "potential = morse\nwidth = 3\n");
  EXPECT_EQ(invoke({"spectrum", "--config", path.string()}).code, cli::kUsage);
  std::filesystem::remove(path);
}

TEST(CliConfig, UsageErrors) {
  EXPECT_EQ(invoke({}).code, cli::kUsage);
  EXPECT_EQ(invoke({"spectrum", "--potential", "nowhere"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"spectrum", "--V0", "3"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"spectrum", "--bracket", "1:0"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"spectrum", "--bracket", "1"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"spectrum", "--kappa", "x"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"spectrum", "--potential", "qrm", "--kappa", "2"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"spectrum", "--potential", "qrm", "--oracle"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"spectrum", "--D", "-1"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"wavefunction", "--grid", "0:1:5"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"wavefunction"}).code, cli::kUsage);  // two default kappas
  EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
}

TEST(CliWavefunction, GroundStateHeader) {
  const auto run = invoke({"wavefunction", "--n", "0", "--kappa", "2"});
  ASSERT_EQ(run.code, cli::kOk) << run.err;
  const auto text = lines(run.out);
  ASSERT_GE(text.size(), 3u);
  EXPECT_NE(text[1].find("node_count=0"), std::string::npos);
  EXPECT_EQ(text[2], "r,Re g,Im g,Re f,Im f");
  EXPECT_EQ(table(run.out).size(), 4001u);
  for (const auto& row : table(run.out)) {
    EXPECT_EQ(row.at("Im g"), "0");
    EXPECT_EQ(row.at("Im f"), "0");
  }
}

TEST(CliWavefunction, MorseFirstExcitedMatchesOracle) {
  const ps::MorseSpec spec{5.0, 1.25, 0.8, std::nullopt};
  const ps::PhysicalContext ctx{1.0, 0.0};
  const auto grid = ps::default_oracle_grid(spec);
  // Spinors need r > 0; the oracle grid starts inside the wall, so the CLI
  // samples its tail from index 500 (r = 0.05).
  constexpr int kFirst = 500;
  const auto run = invoke({"wavefunction", "--n", "1", "--kappa", "2", "--grid",
                           fmt::format("{:.17g}:{:.17g}:{}", grid.r(kFirst), grid.r_max,
                                       grid.points - kFirst)});
  ASSERT_EQ(run.code, cli::kOk) << run.err;
  const auto rows = table(run.out);
  ASSERT_EQ(rows.size(), static_cast<std::size_t>(grid.points - kFirst));

  const auto eq = ps::make_effective_equation(spec, ctx, 2, grid);
  const auto full =
      ps::match_solutions(eq, ps::shoot_energy(eq, 1, ps::default_bracket(spec, ctx))).solution;
  const std::vector<double> oracle(full.begin() + kFirst, full.end());
  std::vector<double> g;
  for (const auto& row : rows) g.push_back(std::stod(row.at("Re g")));
  const auto peak = static_cast<std::size_t>(
      std::max_element(g.begin(), g.end(), [](double x, double y) { return std::abs(x) < std::abs(y); }) -
      g.begin());
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(g[i] / g[peak] - oracle[i] / oracle[peak]));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(CliWavefunction, RosenMorseIsComplexWithoutNodeCount) {
  const auto run = invoke({"wavefunction", "--potential", "qrm", "--kappa", "0", "--grid", "0.1:5:101"});
  ASSERT_EQ(run.code, cli::kOk) << run.err;
  EXPECT_NE(lines(run.out)[1].find("node_count=n/a"), std::string::npos);
  const auto rows = table(run.out);
  EXPECT_TRUE(std::any_of(rows.begin(), rows.end(),
                          [](const auto& row) { return std::stod(row.at("Im g")) != 0.0; }));
}

TEST(CliWavefunction, MissingStateExitCode) {
  EXPECT_EQ(invoke({"wavefunction", "--n", "5", "--kappa", "2"}).code, cli::kMissingState);
}

nlohmann::json check_named(const nlohmann::json& report, const std::string& name) {
  for (const auto& c : report.at("checks")) {
    if (c.at("name") == name) return c;
  }
  return nullptr;
}

TEST(CliValidate, DefaultMorsePasses) {
  const auto run = invoke({"validate"});
  ASSERT_EQ(run.code, cli::kOk) << run.out << run.err;
  const auto report = nlohmann::json::parse(run.out);
  EXPECT_TRUE(report.at("pass").get<bool>());
  for (const char* name : {"generic_vs_specialized_residual", "doublet_identity", "ode_residual",
                           "dirac_pair_residual", "node_count", "normalization",
                           "oracle_agreement"}) {
    const auto c = check_named(report, name);
    ASSERT_FALSE(c.is_null()) << name;
    EXPECT_TRUE(c.at("mandatory").get<bool>()) << name;
    EXPECT_TRUE(c.at("pass").get<bool>()) << name;
  }
}

TEST(CliValidate, CorruptedPekerisFails) {
  const auto run = invoke({"validate", "--pekeris-d1-scale", "1.1"});
  EXPECT_EQ(run.code, cli::kFailure);
  const auto report = nlohmann::json::parse(run.out);
  EXPECT_FALSE(report.at("pass").get<bool>());
  EXPECT_FALSE(check_named(report, "ode_residual").at("pass").get<bool>());
}

TEST(CliValidate, RosenMorseReportsPrintedEquationFinding) {
  const auto run = invoke({"validate", "--potential", "qrm"});
  ASSERT_EQ(run.code, cli::kOk) << run.out << run.err;
  const auto report = nlohmann::json::parse(run.out);
  const auto finding = check_named(report, "printed_rosen_morse_eigenvalue_equation");
  ASSERT_FALSE(finding.is_null());
  EXPECT_FALSE(finding.at("proportional_to_generic").get<bool>());
  EXPECT_EQ(finding.at("jointly_defined_samples").get<int>(), 0);
  EXPECT_DOUBLE_EQ(check_named(report, "generic_vs_specialized_residual").at("proportionality"),
                   0.5);
}

TEST(CliApproxError, TenthOfRangeRow) {
  const auto run = invoke({"approx-error", "--potential", "hulthen"});
  ASSERT_EQ(run.code, cli::kOk);
  const auto rows = table(run.out);
  ASSERT_EQ(rows.size(), 200u);
  const auto& row = rows[9];
  EXPECT_NEAR(std::stod(row.at("r")), 0.1, 1e-15);
  EXPECT_NEAR(std::stod(row.at("exponential_rel_error")), 8.3e-4, 0.01 * 8.3e-4);
  EXPECT_TRUE(row.at("pekeris").empty());
}

TEST(CliApproxError, PekerisExactAtEquilibriumAndGrowsAway) {
  const auto run = invoke({"approx-error", "--grid", "0.5:1.1:61"});
  ASSERT_EQ(run.code, cli::kOk);
  const auto rows = table(run.out);
  ASSERT_EQ(rows.size(), 61u);
  const std::size_t at_r0 = 30;  // r = 0.8
  EXPECT_NEAR(std::stod(rows[at_r0].at("r")), 0.8, 1e-14);
  EXPECT_LT(std::stod(rows[at_r0].at("pekeris_rel_error")), 1e-12);
  for (std::size_t i = at_r0; i + 1 < rows.size(); ++i) {
    EXPECT_LT(std::stod(rows[i].at("pekeris_rel_error")), std::stod(rows[i + 1].at("pekeris_rel_error")));
  }
  for (std::size_t i = at_r0; i > 0; --i) {
    EXPECT_LT(std::stod(rows[i].at("pekeris_rel_error")), std::stod(rows[i - 1].at("pekeris_rel_error")));
  }
}

}  // namespace
