#include "spinrotor/cli.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "spinrotor/kernels.hpp"
#include "spinrotor/model.hpp"
#include "spinrotor/scenarios.hpp"

namespace spinrotor::cli {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

json cell_to_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

std::string cell_to_csv(const Cell& c) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_csv_number(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

json summary_json(const DynamicsSummary& s) {
  return {{"purity_min", s.purity_min},
          {"t_first_min", s.t_first_min},
          {"entropy_max", s.entropy_max},
          {"entropy_min", s.entropy_min}};
}

const char* kind_name(ExtremumKind k) {
  return k == ExtremumKind::purity_min ? "purity_min" : "purity_max";
}

SuperposedState dynamics_initial_state(const RunConfig& config, std::ostream& warnings) {
  if (config.amplitudes.empty()) {
    require(config.m != 0, "dynamics --m must be nonzero for the two-sector state");
    return SuperposedState::two_sector(config.m);
  }
  std::ifstream in(config.amplitudes);
  require(static_cast<bool>(in), "cannot open amplitudes file '" + config.amplitudes + "'");
  return parse_amplitudes(in, warnings);
}

}  // namespace

std::string format_csv_number(double x) { return fmt::format("{:.9g}", x); }

json RunConfig::to_json() const {
  return {{"inertia", params.inertia},
          {"delta", params.delta},
          {"coupling", params.coupling},
          {"norm_tol", params.norm_tol},
          {"format", format == OutputFormat::csv ? "csv" : "json"},
          {"output", output},
          {"seed", seed},
          {"m_min", m_min},
          {"m_max", m_max},
          {"m", m},
          {"amplitudes", amplitudes},
          {"t_max", t_max},
          {"steps", steps},
          {"extrema", extrema},
          {"m_list", m_list},
          {"scenario", scenario},
          {"sectors", sectors},
          {"threshold", threshold}};
}

SuperposedState parse_amplitudes(std::istream& in, std::ostream& warnings) {
  std::vector<SectorEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long m = 0;
    if (!(fields >> m)) {
      std::string rest;
      std::istringstream probe(line);
      require(!(probe >> rest), "amplitudes line " + std::to_string(line_no) +
                                    ": expected an integer sector index");
      continue;
    }
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        require(used == token.size(), "");
      } catch (const std::exception&) {
        throw std::invalid_argument("amplitudes line " + std::to_string(line_no) +
                                    ": bad number '" + token + "'");
      }
    }
    require(values.size() == 2 || values.size() == 6,
            "amplitudes line " + std::to_string(line_no) +
                ": expected `m re im` or `m re im re_up im_up re_down im_down`");
    require(m >= -(1LL << 20) && m <= (1LL << 20),
            "amplitudes line " + std::to_string(line_no) + ": sector index out of range");

    SectorEntry e{SectorIndex{static_cast<int>(m)}, cplx{values[0], values[1]},
                  Spinor::spin_up()};
    if (values.size() == 6) {
      e.spinor = {cplx{values[2], values[3]}, cplx{values[4], values[5]}};
      const double n = std::sqrt(e.spinor.norm_sq());
      require(n > 0.0 && std::isfinite(n),
              "amplitudes line " + std::to_string(line_no) + ": zero spinor");
      e.spinor.up /= n;
      e.spinor.down /= n;
    }
    entries.push_back(e);
  }
  require(!entries.empty(), "amplitudes file lists no sectors");

  double total = 0.0;
  for (const auto& e : entries) total += std::norm(e.amplitude);
  require(total > 0.0 && std::isfinite(total), "amplitudes cannot be normalized");
  if (std::abs(total - 1.0) > 1e-9) {
    warnings << "warning: amplitudes renormalized (sum |c|^2 was "
             << format_csv_number(total) << ")\n";
  }
  const double scale = 1.0 / std::sqrt(total);
  for (auto& e : entries) e.amplitude *= scale;
  return SuperposedState(std::move(entries));
}

CommandOutput cmd_spectrum(const RunConfig& config) {
  config.params.validate();
  require(config.m_min <= config.m_max, "spectrum needs --m-min <= --m-max");

  CommandOutput out;
  out.table.columns = {"m", "eps_minus", "eps_plus", "omega", "theta", "lambda"};
  for (int m = config.m_min; m <= config.m_max; ++m) {
    const auto s = sector_spectrum(config.params, SectorIndex{m});
    out.table.rows.push_back(
        {std::int64_t{m}, s.eps_minus, s.eps_plus, s.omega, s.theta, s.lambda});
  }
  return out;
}

CommandOutput cmd_dynamics(const RunConfig& config, std::ostream& warnings) {
  config.params.validate();
  const TimeGrid grid(config.t_max, config.steps);
  const SuperposedState initial = dynamics_initial_state(config, warnings);

  const auto series = dynamics_series(config.params, initial, grid);
  const auto extrema = locate_extrema(config.params, initial, series);
  const auto summary = summarize(series, extrema);

  CommandOutput out;
  json extrema_json = json::array();
  for (const auto& e : extrema) {
    extrema_json.push_back(
        {{"kind", kind_name(e.kind)}, {"t", e.t}, {"purity", e.purity}, {"entropy", e.entropy}});
  }
  out.extra["summary"] = summary_json(summary);
  out.extra["extrema"] = extrema_json;

  if (config.extrema) {
    out.table.columns = {"kind", "t", "purity", "entropy"};
    for (const auto& e : extrema) {
      out.table.rows.push_back({std::string(kind_name(e.kind)), e.t, e.purity, e.entropy});
    }
    return out;
  }

  const bool with_overlap = initial.is_opposite_pair_spin_up();
  if (with_overlap) {
    out.table.columns = {"t", "K_re", "K_im", "K_abs", "purity", "entropy", "rotor_coherence"};
  } else {
    out.table.columns = {"t", "purity", "entropy", "rotor_coherence"};
  }
  for (const auto& s : series) {
    if (with_overlap) {
      out.table.rows.push_back({s.t, s.overlap->value.real(), s.overlap->value.imag(),
                                s.overlap->magnitude, s.purity, s.entropy, s.rotor_coherence});
    } else {
      out.table.rows.push_back({s.t, s.purity, s.entropy, s.rotor_coherence});
    }
  }
  return out;
}

CommandOutput cmd_sweep(const RunConfig& config) {
  config.params.validate();
  require(!config.m_list.empty(), "sweep needs a non-empty --m-list");

  CommandOutput out;
  out.table.columns = {"eta", "m", "omega", "t_first_min", "purity_min", "entropy_max"};
  for (int m : config.m_list) {
    const auto spec = sector_spectrum(config.params, SectorIndex{m});
    const auto minimum = min_purity_over_period(config.params, SectorIndex{m});
    // Qubit with purity P has eigenvalues (1 +- sqrt(2P - 1)) / 2.
    const double k = std::sqrt(std::max(0.0, 2.0 * minimum.purity_min - 1.0));
    const std::array<double, 2> schmidt{0.5 * (1.0 + k), 0.5 * (1.0 - k)};
    const double eta = spec.lambda / config.params.delta;
    out.table.rows.push_back({eta, std::int64_t{m}, spec.omega, minimum.t_min,
                              minimum.purity_min, entropy_of(schmidt)});
  }
  return out;
}

CommandOutput cmd_verify(const RunConfig& config) {
  config.params.validate();
  require(config.threshold > 0.0, "verify --threshold must be positive");
  const TimeGrid grid(config.t_max, config.steps);
  const auto t = grid.points();

  std::vector<std::string> names;
  if (config.scenario == "all") {
    names = scenario_names();
  } else {
    names = {config.scenario};
  }

  ScenarioOptions options;
  options.seed = config.seed;
  options.sectors = config.sectors;

  CommandOutput out;
  out.table.columns = {"scenario",     "grid_points",  "state_dev",         "overlap_dev",
                       "purity_dev",   "entropy_dev",  "spectrum_dev",      "schmidt_dev",
                       "conservation_dev", "max_dev",  "min_purity_analytic", "min_purity_oracle",
                       "pass"};
  bool all_pass = true;
  for (const auto& name : names) {
    const auto scenario = make_scenario(name, config.params, options);
    const auto r = oracle::verify_against_analytic(scenario, t);
    const bool pass = r.passed(config.threshold);
    all_pass = all_pass && pass;
    out.table.rows.push_back({r.scenario, static_cast<std::int64_t>(r.grid_points), r.state,
                              r.overlap, r.purity, r.entropy, r.spectrum, r.schmidt,
                              r.conservation, r.max_deviation(), r.min_purity_analytic,
                              r.min_purity_oracle, pass});
  }
  out.extra["pass"] = all_pass;
  out.status = all_pass ? kSuccess : kVerificationFailure;
  return out;
}

std::string render_csv(const Table& table) {
  std::string s;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) s += ',';
    s += table.columns[i];
  }
  s += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += cell_to_csv(row[i]);
    }
    s += '\n';
  }
  return s;
}

json render_json(const Table& table, const json& meta, const json& extra) {
  json doc = json::object();
  doc["meta"] = meta;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_to_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  for (const auto& [key, value] : extra.items()) doc[key] = value;
  return doc;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string format = "csv";

  CLI::App app{"Spin-1/2 coupled to a planar quantum rotor: spectra, entangling dynamics, "
               "and oracle cross-checks"};
  app.set_config("--config", "", "TOML or INI file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--inertia", config.params.inertia, "Moment of inertia I");
  app.add_option("--delta", config.params.delta, "Transverse splitting Delta");
  app.add_option("--coupling", config.params.coupling, "Spin-rotation coupling g");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", config.output, "Output path (default stdout)");
  app.add_option("--seed", config.seed, "Seed for randomized scenarios");

  auto* spectrum = app.add_subcommand("spectrum", "Sector energies, precession frequency, tilt");
  spectrum->add_option("--m-min", config.m_min);
  spectrum->add_option("--m-max", config.m_max);

  auto* dynamics = app.add_subcommand("dynamics", "Purity, entropy and overlap time series");
  dynamics->add_option("--m", config.m, "Sector of the equal +-m superposition");
  dynamics->add_option("--amplitudes", config.amplitudes, "File with a general sector list");
  dynamics->add_option("--t-max", config.t_max);
  dynamics->add_option("--steps", config.steps);
  dynamics->add_flag("--extrema", config.extrema, "Emit refined purity extrema instead");

  auto* sweep = app.add_subcommand("sweep", "Closed-form purity minima per sector");
  sweep->add_option("--m-list", config.m_list)->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Compare closed forms against brute force");
  verify->add_option("--scenario", config.scenario, "Scenario name or 'all'");
  verify->add_option("--sectors", config.sectors, "Sector count for random-multisector");
  verify->add_option("--t-max", config.t_max);
  verify->add_option("--steps", config.steps);
  verify->add_option("--threshold", config.threshold);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  config.format = format == "json" ? OutputFormat::json : OutputFormat::csv;

  std::string command;
  CommandOutput result;
  try {
    if (spectrum->parsed()) {
      command = "spectrum";
      result = cmd_spectrum(config);
    } else if (dynamics->parsed()) {
      command = "dynamics";
      result = cmd_dynamics(config, err);
    } else if (sweep->parsed()) {
      command = "sweep";
      result = cmd_sweep(config);
    } else {
      command = "verify";
      result = cmd_verify(config);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }

  std::string text;
  if (config.format == OutputFormat::csv) {
    text = render_csv(result.table);
  } else {
    const json meta = {{"tool", "spinrotor"},
                       {"version", kToolVersion},
                       {"command", command},
                       {"config", config.to_json()}};
    text = render_json(result.table, meta, result.extra).dump(2) + '\n';
  }

  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << config.output << "'\n";
      return kUsageError;
    }
    file << text;
  }
  return result.status;
}

}  // namespace spinrotor::cli
