// ncspectra: deform, spectrum, verify, sweep, oracle.
// Exit codes: 0 success, 1 contract violation or internal error, 2 bad input.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncspectra/config.hpp"
#include "ncspectra/deformation.hpp"
#include "ncspectra/error.hpp"
#include "ncspectra/pipeline.hpp"
#include "ncspectra/report.hpp"
#include "ncspectra/verify.hpp"

namespace {

using namespace ncspectra;

constexpr int kExitOk = 0;
constexpr int kExitContract = 1;
constexpr int kExitConfig = 2;

// Raw flag text, applied through the same path as config-file settings so
// both spellings validate identically.
struct Flags {
  std::string config_path;
  std::map<std::string, std::string> settings;
  bool no_timestamp = false;
};

void add_common(CLI::App& cmd, Flags& flags) {
  cmd.add_option("--config", flags.config_path, "key = value file; flags override it");
  for (const auto& [key, help] : std::vector<std::pair<std::string, std::string>>{
           {"family", "even|inverse"},
           {"a", "coefficient a"},
           {"b", "coefficient b"},
           {"c", "coefficient c (even family)"},
           {"theta", "real or comma list"},
           {"m", "int or comma list"},
           {"n", "even-power level"},
           {"degree", "inverse-power polynomial degree (1..3)"},
           {"mode", "paper|rederived"},
           {"oracle", "on|off"},
           {"format", "json|csv"},
           {"out", "output path (default stdout)"},
       }) {
    cmd.add_option_function<std::string>(
        "--" + key, [&flags, key](const std::string& v) { flags.settings[key] = v; }, help);
  }
  cmd.add_flag("--no-timestamp", flags.no_timestamp, "omit the generated header");
}

RunConfig resolve(const Flags& flags) {
  RunConfig config;
  if (!flags.config_path.empty()) config = load_config_file(flags.config_path);
  for (const auto& [key, value] : flags.settings) apply_setting(config, key, value);
  if (flags.no_timestamp) config.timestamp = false;
  config.validate();
  return config;
}

std::optional<std::string> stamp(const RunConfig& config) {
  if (!config.timestamp) return std::nullopt;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return std::string(buf);
}

void emit(const RunConfig& config, const std::string& text) {
  if (config.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(config.out, std::ios::binary);
  if (!os) throw Error(ErrorCode::ConfigError, "cannot write '" + config.out + "'");
  os << text;
}

std::string render(const RunConfig& config, Report report) {
  report.generated = stamp(config);
  return config.format == OutputFormat::Json ? to_json(report) : to_csv(report);
}

int cmd_deform(const RunConfig& config) {
  std::vector<DeformedRadialProblem> problems;
  for (const double theta : config.theta) {
    for (const int m : config.m) problems.push_back(deform(config.potential(), {theta, m}));
  }
  const auto generated = stamp(config);
  emit(config, config.format == OutputFormat::Json ? problems_to_json(problems, generated)
                                                   : problems_to_csv(problems, generated));
  return kExitOk;
}

int cmd_verify(const RunConfig& config) {
  const auto outcome = run_verify(config);
  emit(config, render(config, outcome.report));
  if (!outcome.contract_ok) {
    std::cerr << "ncspectra: rederived mode failed its residual contract\n";
    return kExitContract;
  }
  return kExitOk;
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidFamily:
    case ErrorCode::UnsupportedDegree:
    case ErrorCode::SingularAttraction:
    case ErrorCode::NonConfining:
    case ErrorCode::InvalidGrid:
    case ErrorCode::OracleUnavailable:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of deformed central potentials with an independent numerical oracle"};
  app.require_subcommand(1);

  Flags flags;
  auto* deform_cmd = app.add_subcommand("deform", "print the deformed radial problem");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "closed-form levels with oracle checks");
  auto* verify_cmd = app.add_subcommand("verify", "convention ledger arbitrated by the oracle");
  auto* sweep_cmd = app.add_subcommand("sweep", "theta sweep with splitting fits");
  auto* oracle_cmd = app.add_subcommand("oracle", "numerical levels 0..n");
  for (auto* cmd : {deform_cmd, spectrum_cmd, verify_cmd, sweep_cmd, oracle_cmd}) {
    add_common(*cmd, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const RunConfig config = resolve(flags);
    if (deform_cmd->parsed()) return cmd_deform(config);
    if (verify_cmd->parsed()) return cmd_verify(config);
    if (spectrum_cmd->parsed()) emit(config, render(config, run_spectrum(config)));
    if (sweep_cmd->parsed()) emit(config, render(config, run_sweep(config)));
    if (oracle_cmd->parsed()) emit(config, render(config, run_oracle(config)));
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "ncspectra: " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitConfig : kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "ncspectra: internal error: " << e.what() << "\n";
    return kExitContract;
  }
}
