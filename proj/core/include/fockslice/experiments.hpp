#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fockslice/lindblad.hpp"
#include "fockslice/observables.hpp"

namespace fockslice {

enum class ScenarioKind {
  FockProtection,          // engineered absorption + thermal, target |M>
  SuperpositionProtection, // engineered sliced + thermal, target dark state
  ConfinementDemo,         // unitary evolution, leakage bookkeeping
  EliminationCheck,        // bipartite vs effective side-by-side
};

std::string to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

struct TauGridSpec {
  int count = 400;
  double max = 1.0;
  double min = 1e-5;            // first sample of the log grid
  std::string spacing = "log";  // "log" | "linear"
  std::vector<double> build() const;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::FockProtection;
  int M = 5;              // target Fock level / slice index
  double omega = 1.2e6;   // Rabi frequency Omega (Hz)
  double kappa = 4e6;     // qubit decay (Hz)
  double gamma0 = 10.0;   // bare vibrational decay (Hz)
  double nbar = 0.01;
  double omega_bar_3 = 1.0;            // superposition runs only
  std::optional<int> dim_override;     // truncation override
  std::string interaction = "ub";      // confinement demo: "ub" | "sliced"
  TauGridSpec tau_grid;
  std::string label;  // output file stem; defaults from kind and M

  // Parses and validates; unknown keys are rejected with a field-level
  // message.
  static ScenarioConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  // Effective truncation. Defaults: 2M+3 for Fock protection (where the
  // absorption cascade above M makes the number statistics truncation-
  // sensitive; this cutoff sits where the exact sideband coupling dies out),
  // M+8 for superposition runs, M+16 for confinement demos.
  int dim() const;
  RateSet rates() const;
  std::string stem() const;
};

struct Trajectory {
  std::vector<ObservableRecord> records;
  ScenarioConfig config;
  double wall_ms = 0.0;
  nlohmann::json extra;  // kind-specific results (e.g. trace distances)

  // Plateau statistics: mean over tau in [0.05, 0.5], after the engineered
  // rise and before the slow drain out of the protected window.
  static constexpr double kPlateauLo = 0.05;
  static constexpr double kPlateauHi = 0.5;
  double plateau_fidelity() const;
  double steady_q() const;
};

Trajectory run_scenario(const ScenarioConfig& cfg);

// CSV with the fixed column set
//   tau,fidelity,mandel_q,mean_n,purity,trace_error,leakage,top_level_population
// at full precision.
void write_csv(const Trajectory& t, std::ostream& os);
nlohmann::json summary_json(const Trajectory& t);

// The four published protection runs, as built-in configs (the same content
// is checked in under configs/).
std::vector<ScenarioConfig> fig1_scenarios();

// --- Validation -----------------------------------------------------------------

struct ValidationEntry {
  std::string name;
  double measured = 0.0;
  double budget = 0.0;   // pass iff measured <= budget (unless informational)
  bool informational = false;  // recorded, not asserted
  bool pass = true;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

// Aggregates the module invariants: dark-state norms, stationarity,
// confinement, decoupling, series consistency, thermal closed form,
// vectorization consistency, integrator cross-check, rate consistency, and
// the adiabatic-elimination oracle.
ValidationReport run_validation_suite();

// Steady-state summary of the scenario's Liouvillian (fock/superposition
// kinds only).
nlohmann::json steady_report(const ScenarioConfig& cfg);

// Assemble the dimensionless (gamma-scaled) generator for a protection
// scenario. Exposed for the steady/acceptance paths.
Liouvillian scenario_liouvillian(const ScenarioConfig& cfg);
State scenario_target(const ScenarioConfig& cfg);

}  // namespace fockslice
