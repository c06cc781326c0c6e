// Command-line front end: scenario runs, the four published protection
// scenarios, steady-state reports, the validation suite, and parameter
// sweeps. Output directory resolution: --out flag, then FOCKSLICE_OUT_DIR,
// then ./out.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fockslice/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fockslice;

namespace {

fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("FOCKSLICE_OUT_DIR")) {
    if (*env) return env;
  }
  return "out";
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return ScenarioConfig::from_json(j);
}

void emit(const Trajectory& t, const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path csv = dir / (t.config.stem() + ".csv");
  {
    std::ofstream os(csv);
    if (!os) throw std::runtime_error("cannot write " + csv.string());
    write_csv(t, os);
  }
  const fs::path js = dir / (t.config.stem() + ".json");
  {
    std::ofstream os(js);
    if (!os) throw std::runtime_error("cannot write " + js.string());
    os << summary_json(t).dump(2) << "\n";
  }
  std::cout << t.config.stem() << ": plateau fidelity " << t.plateau_fidelity()
            << ", steady Q " << t.steady_q() << " (" << csv.string() << ")\n";
}

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) v.push_back(std::stod(item));
  }
  if (v.empty()) throw std::runtime_error("--values: empty list");
  return v;
}

void apply_param(ScenarioConfig& c, const std::string& name, double v) {
  if (name == "omega") c.omega = v;
  else if (name == "omega_bar_3") c.omega_bar_3 = v;
  else if (name == "kappa") c.kappa = v;
  else if (name == "nbar") c.nbar = v;
  else if (name == "gamma0") c.gamma0 = v;
  else throw std::runtime_error("sweep: unknown parameter '" + name + "'");
}

std::string value_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  std::string s = buf;
  for (char& ch : s) {
    if (ch == '.' || ch == '+' || ch == '-') ch = '_';
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fock-subspace confinement and reservoir-protection simulator"};
  app.require_subcommand(1);

  std::string out_flag;
  app.add_option("--out", out_flag, "output directory (overrides FOCKSLICE_OUT_DIR)");

  std::string run_config;
  auto* run = app.add_subcommand("run", "run one scenario from a JSON config");
  run->add_option("config", run_config, "config file")->required();

  auto* fig1 = app.add_subcommand("fig1", "run the four published protection scenarios");

  std::string steady_config;
  auto* steady = app.add_subcommand("steady", "steady-state report for a scenario");
  steady->add_option("config", steady_config, "config file")->required();

  auto* validate = app.add_subcommand("validate", "run the validation suite");

  std::string sweep_config, sweep_param, sweep_values;
  auto* sweep = app.add_subcommand("sweep", "re-run a scenario over parameter values");
  sweep->add_option("config", sweep_config, "config file")->required();
  sweep->add_option("--param", sweep_param, "parameter name")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();

  CLI11_PARSE(app, argc, argv);
  const fs::path out_dir = resolve_out_dir(out_flag);

  try {
    if (*run) {
      emit(run_scenario(load_config(run_config)), out_dir);
    } else if (*fig1) {
      for (const auto& cfg : fig1_scenarios()) {
        emit(run_scenario(cfg), out_dir);
      }
    } else if (*steady) {
      const json rep = steady_report(load_config(steady_config));
      fs::create_directories(out_dir);
      const fs::path js =
          out_dir / (load_config(steady_config).stem() + "_steady.json");
      std::ofstream os(js);
      os << rep.dump(2) << "\n";
      std::cout << rep.dump(2) << "\n";
    } else if (*validate) {
      const ValidationReport rep = run_validation_suite();
      for (const auto& e : rep.entries) {
        std::cout << (e.pass ? "PASS" : "FAIL") << "  " << e.name
                  << "  measured=" << e.measured << " budget=" << e.budget
                  << (e.informational ? "  (informational)" : "") << "\n";
      }
      fs::create_directories(out_dir);
      std::ofstream os(out_dir / "validation.json");
      os << rep.to_json().dump(2) << "\n";
      if (!rep.all_pass()) return 1;
    } else if (*sweep) {
      const ScenarioConfig base = load_config(sweep_config);
      for (double v : parse_values(sweep_values)) {
        ScenarioConfig c = base;
        apply_param(c, sweep_param, v);
        c.label = base.stem() + "_" + sweep_param + "_" + value_tag(v);
        emit(run_scenario(c), out_dir);
      }
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
