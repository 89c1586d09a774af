// Command-line front end: spectrum, dynamics, sweep and verify, emitting CSV
// (9 significant digits) or JSON ({"meta", "rows", ...}, round-trip exact).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "spinrotor/entanglement.hpp"

namespace spinrotor::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class OutputFormat { csv, json };

enum ExitStatus : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

struct RunConfig {
  ModelParams params;
  OutputFormat format = OutputFormat::csv;
  std::string output;  // empty writes to stdout
  std::uint64_t seed = 42;

  // spectrum
  int m_min = -10;
  int m_max = 10;

  // dynamics
  int m = 4;
  std::string amplitudes;
  double t_max = 10.0;
  int steps = 2001;
  bool extrema = false;

  // sweep
  std::vector<int> m_list{2, 4, 8};

  // verify
  std::string scenario = "all";
  int sectors = 5;
  double threshold = 1e-9;

  nlohmann::json to_json() const;
};

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CommandOutput {
  Table table;
  nlohmann::json extra = nlohmann::json::object();  // extra top-level JSON keys
  int status = kSuccess;
};

CommandOutput cmd_spectrum(const RunConfig& config);
CommandOutput cmd_dynamics(const RunConfig& config, std::ostream& warnings);
CommandOutput cmd_sweep(const RunConfig& config);
CommandOutput cmd_verify(const RunConfig& config);

// Lines of `m re(c) im(c) [re(up) im(up) re(down) im(down)]`, `#` starts a
// comment. Spinors and amplitudes are renormalized; a warning is written when
// the amplitude norm was off by more than 1e-9.
SuperposedState parse_amplitudes(std::istream& in, std::ostream& warnings);

std::string render_csv(const Table& table);
nlohmann::json render_json(const Table& table, const nlohmann::json& meta,
                           const nlohmann::json& extra);
std::string format_csv_number(double x);

// Full command-line entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinrotor::cli
