#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jcwave/models.hpp"
#include "jcwave/observables.hpp"
#include "jcwave/propagator.hpp"
#include "jcwave/states.hpp"
#include "jcwave/timeseries.hpp"

namespace jcwave {

/// One propagation inside a scenario.
///   rabi, jc, jc_interaction  split-operator run of that model
///   adiabatic                 rabi model on the decoupled adiabatic curves
///   jc_exact                  number-basis JC solution at the record times
enum class RunKind { rabi, jc, jc_interaction, adiabatic, jc_exact };

const char* to_string(RunKind kind) noexcept;
RunKind parse_run_kind(std::string_view name);

struct Scenario {
  std::string name = "scenario";
  /// Omega and g0; the model field is set per run.
  ModelParams params{Model::jc, 1.0, 0.0};
  FieldStateSpec field = FieldStateSpec::fock(0);
  AtomStateSpec atom = AtomStateSpec::excited();
  std::size_t n_points = 2048;
  double q_max = 40.0;
  PropagatorConfig propagator{1e-3, 10.0, 10, Scheme::vkv};
  std::vector<RunKind> runs{RunKind::jc};

  /// Twin adiabatic propagation alongside rabi runs; adds fidelity and h_cor columns.
  bool fidelity = false;
  bool spectrum = false;
  bool revival = false;
  /// Adiabatic and diabatic curves on the grid.
  bool curves = false;
  /// Classical trajectories from the initial coherent amplitude, both sheets.
  bool classical = false;
  std::vector<double> qfunc_times;
  std::size_t qfunc_points = 201;
  /// Half-width of the alpha lattice; 0 selects the default for the field state.
  double qfunc_radius = 0.0;
  std::vector<double> snapshot_times;
  std::vector<double> contour_energies;
  double fit_half_width = 10.0;

  std::vector<double> sweep_g0;
  std::vector<double> sweep_omega;

  bool has_sweep() const noexcept { return !sweep_g0.empty() || !sweep_omega.empty(); }
  ModelParams params_for(RunKind kind) const;
  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Parses the INI-style configuration. Syntax errors, unknown keys and unparsable
/// values raise ParseError; the result is validated and raises ConfigError.
Scenario parse_scenario(std::string_view text);

/// Shortened copy for smoke tests: t_final at most 2, sweep axes cut to two values.
Scenario quick_variant(const Scenario& scenario);

struct WaveSnapshot {
  double t = 0.0;
  std::vector<double> abs_up;
  std::vector<double> abs_down;
};

struct SimulationResult {
  RunKind kind = RunKind::jc;
  TimeSeries series;
  std::vector<QFunctionFrame> qframes;
  std::vector<WaveSnapshot> snapshots;
  /// Set when the run stopped early; the series holds the records up to that point.
  std::optional<std::string> failure;
};

/// Runs one propagation of the scenario. Numerical blow-ups are caught and reported
/// through SimulationResult::failure.
SimulationResult simulate(const Scenario& scenario, RunKind kind);

struct SweepRow {
  double g0 = 0.0;
  double omega = 0.0;
  double t = 0.0;
  double fidelity = 0.0;
};

/// Fidelity surface over the sweep axes; rows ordered omega, then g0, then t.
/// Points run on up to `workers` threads. Throws NumericalBlowup if any point fails.
std::vector<SweepRow> run_sweep(const Scenario& scenario, unsigned workers = 1);

/// FNV-1a 64-bit hash of the configuration text.
std::uint64_t config_hash(std::string_view text) noexcept;

struct RunOptions {
  unsigned workers = 1;
  bool dt_check = false;
  bool sweep = false;
};

struct RunReport {
  std::vector<std::filesystem::path> files;
  std::uint64_t hash = 0;
  std::optional<std::string> failure;
};

/// Executes the scenario and writes every output plus manifest.txt into `dir`.
/// A failed run still writes what it has and marks the manifest FAILED.
RunReport run_to_directory(const Scenario& scenario, std::string_view config_text,
                           const std::filesystem::path& dir, const RunOptions& options);

/// Full-precision number formatting used by every CSV writer.
std::string format_number(double value);
void write_timeseries_csv(const std::filesystem::path& path, const TimeSeries& series);

struct PresetPanel {
  /// Subdirectory for multi-panel presets; empty for single-panel ones.
  std::string subdir;
  std::string config;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
std::vector<PresetPanel> preset(std::string_view name);

}  // namespace jcwave
