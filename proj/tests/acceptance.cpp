// End-to-end acceptance gate. Each numbered criterion prints exactly one
// PASS/FAIL line with the measured values; the process exits with the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "fockslice/experiments.hpp"

using namespace fockslice;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("CRITERION %d: %s  %s\n", id, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct ProtectionRun {
  EvolveResult ev;
  std::vector<double> grid;
  double plateau_f = 0.0;
  double steady_q_val = 0.0;
  double max_trace_err = 0.0;
  double min_eig = 0.0;
  double wall_s = 0.0;
};

ProtectionRun run_protection(const ScenarioConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ProtectionRun out;
  const Liouvillian L = scenario_liouvillian(cfg);
  const State target = scenario_target(cfg);
  out.grid = cfg.tau_grid.build();
  out.ev = evolve(State::thermal(cfg.dim(), cfg.nbar), L, out.grid);
  double fsum = 0.0, qsum = 0.0;
  int n = 0;
  out.min_eig = 0.0;
  for (size_t i = 0; i < out.grid.size(); ++i) {
    out.max_trace_err = std::max(out.max_trace_err, out.ev.trace_error[i]);
    out.min_eig = std::min(out.min_eig, out.ev.min_eigenvalue[i]);
    if (out.grid[i] >= Trajectory::kPlateauLo &&
        out.grid[i] <= Trajectory::kPlateauHi) {
      fsum += fidelity(out.ev.states[i], target);
      qsum += mandel_q(out.ev.states[i]);
      ++n;
    }
  }
  out.plateau_f = fsum / n;
  out.steady_q_val = qsum / n;
  out.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
                   .count();
  return out;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

}  // namespace

int main() {
  const auto figs = fig1_scenarios();

  // 1. Fock protection M=5: plateau F = 0.98 +- 0.03, Q = -0.88 +- 0.04
  const ProtectionRun m5 = run_protection(figs[0]);
  report(1,
         std::abs(m5.plateau_f - 0.98) <= 0.03 &&
             std::abs(m5.steady_q_val + 0.88) <= 0.04 && m5.wall_s <= 60.0,
         fmt("Fock protection M=5: plateau F=%.4f (0.98+-0.03), Q=%.4f "
             "(-0.88+-0.04), %.1f s (<=60)",
             m5.plateau_f, m5.steady_q_val, m5.wall_s));

  // 2. Fock protection M=10: plateau F = 0.98 +- 0.03, Q = -0.77 +- 0.05
  const ProtectionRun m10 = run_protection(figs[1]);
  report(2,
         std::abs(m10.plateau_f - 0.98) <= 0.03 &&
             std::abs(m10.steady_q_val + 0.77) <= 0.05 && m10.wall_s <= 120.0,
         fmt("Fock protection M=10: plateau F=%.4f (0.98+-0.03), Q=%.4f "
             "(-0.77+-0.05), %.1f s (<=120)",
             m10.plateau_f, m10.steady_q_val, m10.wall_s));

  // 3. Superposition protection M=4 and M=9: plateau F = 0.90 +- 0.05 at
  //    omega_bar_3 = 1; otherwise a scan over [0.5, 2] must contain a value
  //    meeting it, and the report says which.
  {
    const ProtectionRun s4 = run_protection(figs[2]);
    const ProtectionRun s9 = run_protection(figs[3]);
    auto in_band = [](double f) { return std::abs(f - 0.90) <= 0.05; };
    bool pass = in_band(s4.plateau_f) && in_band(s9.plateau_f);
    std::string detail =
        fmt("Superposition protection: plateau F(M=4)=%.4f, F(M=9)=%.4f "
            "(target 0.90+-0.05 at omega_bar_3=1)",
            s4.plateau_f, s9.plateau_f);
    if (!pass) {
      // one-parameter scan over the asymmetry of the dark state
      detail += "; scan over omega_bar_3 in [0.5,2]:";
      bool scan_hit = false;
      for (double ob3 : {0.5, 0.75, 1.25, 1.5, 1.75, 2.0}) {
        ScenarioConfig c4 = figs[2];
        c4.omega_bar_3 = ob3;
        c4.tau_grid.count = 150;
        ScenarioConfig c9 = figs[3];
        c9.omega_bar_3 = ob3;
        c9.tau_grid.count = 150;
        const double f4 = run_protection(c4).plateau_f;
        const double f9 = run_protection(c9).plateau_f;
        detail += fmt(" [ob3=%.2f F4=%.4f F9=%.4f]", ob3, f4, f9);
        if (in_band(f4) && in_band(f9)) {
          scan_hit = true;
          detail += " <- meets the band";
          pass = true;
          break;
        }
      }
      if (!scan_hit) {
        detail +=
            "; no omega_bar_3 in [0.5,2] reaches the 0.90 band (the "
            "engineered dissipator holds the dark state near unit fidelity)";
      }
    }
    report(3, pass, detail);
  }

  // 4. Engineered-to-thermal rate ratio within 15% of 1e4 at the four
  //    published parameter sets.
  {
    bool pass = true;
    std::string detail = "rate ratios vs 1e4:";
    for (const auto& cfg : figs) {
      const RateSet r = cfg.rates();
      const double ratio = r.drive / r.gamma;
      pass = pass && std::abs(ratio / 1e4 - 1.0) <= 0.15;
      detail += fmt(" %s=%.0f", cfg.stem().c_str(), ratio);
    }
    report(4, pass, detail);
  }

  // 5. Confinement suite: leakage < 1e-10 over >= 50 characteristic periods.
  {
    bool pass = true;
    std::string detail = "max leakage:";
    auto confine = [&](int N, const char* kind) {
      ScenarioConfig c;
      c.kind = ScenarioKind::ConfinementDemo;
      c.M = N;
      c.omega = 1e6;
      c.interaction = kind;
      c.tau_grid.count = 201;
      const Trajectory t = run_scenario(c);
      double worst = 0.0;
      for (const auto& r : t.records) worst = std::max(worst, r.leakage);
      pass = pass && worst < 1e-10;
      detail += fmt(" %s(N=%d)=%.1e", kind, N, worst);
    };
    for (int N : {3, 5, 10}) confine(N, "ub");
    for (int N : {2, 4, 9}) confine(N, "sliced");
    report(5, pass, detail);
  }

  // 6. Dark-state suite: annihilation norms < 1e-12 and stationarity
  //    residuals < 1e-12 * rate.
  {
    bool pass = true;
    double worst_norm = 0.0;
    for (int N : {2, 4, 9}) {
      for (double ob3 : {0.5, 1.0, 2.0}) {
        const Index d = N + 6;
        const auto p = SlicedParams::make(N, ob3, 1.0);
        worst_norm = std::max(
            worst_norm,
            (build_sliced_B(p, d) * dark_state(N, ob3, d).vector()).norm());
      }
    }
    pass = pass && worst_norm < 1e-12;

    const Liouvillian la = engineered_absorption(5, 1.2e6, 4e6, 13);
    const double res_fock =
        max_abs(la.apply(State::fock(13, 5).rho())) / la.terms[0].rate;
    const Liouvillian ls =
        engineered_sliced(SlicedParams::make(4, 1.0, 5.9e5), 4e6, 12);
    const double res_dark =
        max_abs(ls.apply(dark_state(4, 1.0, 12).rho())) / ls.terms[0].rate;
    pass = pass && res_fock < 1e-12 && res_dark < 1e-12;
    report(6, pass,
           fmt("dark-state suite: max ||B psi||=%.1e (<1e-12), stationarity "
               "residuals %.1e / %.1e (<1e-12 rate)",
               worst_norm, res_fock, res_dark));
  }

  // 7. Oracle equivalence on the M=5 scenario: steady state vs long-time
  //    evolve, and both integrators against each other, all to 1e-6.
  {
    const ScenarioConfig cfg = figs[0];
    const Liouvillian L = scenario_liouvillian(cfg);
    const State target = scenario_target(cfg);
    const Matrix seed = target.rho();
    const SteadyStateResult ss = steady_state(L, &seed);
    // the slowest relaxation mode of the absorber cascade is O(0.06/gamma),
    // so the endpoint sits at tau = 500
    const EvolveResult longrun = evolve(State::thermal(cfg.dim(), cfg.nbar), L,
                                        log_tau_grid(30, 1.0, 500.0));
    const double td_ss = trace_distance(ss.state.rho(), longrun.states.back());

    const auto grid = log_tau_grid(100, 1e-5, 1.0);
    const State rho0 = State::thermal(cfg.dim(), cfg.nbar);
    const EvolveResult a = evolve(rho0, L, grid);
    EvolveOptions o;
    o.method = Integrator::TrBdf2;
    const EvolveResult b = evolve(rho0, L, grid, o);
    double td_int = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
      td_int = std::max(td_int, trace_distance(a.states[i], b.states[i]));
    }
    report(7, td_ss <= 1e-6 && td_int <= 1e-6,
           fmt("oracle equivalence M=5: steady-vs-evolve TD=%.2e, "
               "integrator-vs-integrator TD=%.2e (both <=1e-6)",
               td_ss, td_int));
  }

  // 8. Adiabatic elimination: the kappa-resolved bipartite run approaches the
  //    effective model as kappa grows at fixed engineered rate (Omega scaled
  //    with sqrt(kappa)). Monotone decrease asserted; absolute values
  //    recorded, not asserted.
  {
    std::vector<double> tds;
    std::string detail = "elimination max TD:";
    for (double kappa : {4e6, 1.26e7, 4e7}) {
      ScenarioConfig c;
      c.kind = ScenarioKind::EliminationCheck;
      c.M = 5;
      c.kappa = kappa;
      c.omega = 1.2e6 * std::sqrt(kappa / 4e6);
      c.dim_override = 11;
      c.tau_grid.count = 40;
      c.tau_grid.max = 0.316;
      const Trajectory t = run_scenario(c);
      const double td = t.extra.at("max_trace_distance").get<double>();
      tds.push_back(td);
      detail += fmt(" [kappa=%.2e TD=%.4f]", kappa, td);
    }
    const bool pass = tds[0] > tds[1] && tds[1] > tds[2];
    report(8, pass, detail + " (monotone decrease required)");
  }

  // 9. Numerical hygiene: trace error <= 1e-8 and min eigenvalue >= -1e-8 on
  //    every protection run above; thermal relaxation matches the closed form
  //    to 1e-6.
  {
    const double max_te = std::max(m5.max_trace_err, m10.max_trace_err);
    const double min_eig = std::min(m5.min_eig, m10.min_eig);

    const Index d = 20;
    const double nbar = 0.01;
    const Liouvillian lt = thermal_liouvillian(1.0, nbar, d);
    const auto grid = log_tau_grid(50, 1e-3, 5.0);
    const EvolveResult ev = evolve(State::fock(d, 0), lt, grid);
    double worst = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
      const double expect = nbar * (1.0 - std::exp(-grid[i]));
      worst = std::max(worst, std::abs(mean_n(ev.states[i]) - expect));
    }
    report(9, max_te <= 1e-8 && min_eig >= -1e-8 && worst <= 1e-6,
           fmt("hygiene: max trace error %.1e (<=1e-8), min eigenvalue %.1e "
               "(>=-1e-8), thermal closed-form deviation %.1e (<=1e-6)",
               max_te, min_eig, worst));
  }

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
