#pragma once

namespace fockslice {

// Numerical budgets used across the library. All values are absolute unless
// the member name says otherwise.
struct Tolerances {
  // State construction
  double state_trace = 1e-10;        // |Tr rho - 1|
  double state_hermiticity = 1e-12;  // ||rho - rho^dag||_max
  double state_min_eig = -1e-10;     // smallest eigenvalue of rho

  // Operator algebra / builders
  double hamiltonian_hermiticity_rel = 1e-12;  // ||H - H^dag||_max / ||H||_max
  double tensor_round_trip = 1e-14;

  // Confinement and dark states
  double confinement_leakage = 1e-10;
  double dark_state_norm = 1e-12;
  double stationarity_rel = 1e-12;  // ||L rho||_max relative to the rate

  // Liouvillian / integration
  double vectorize_consistency = 1e-12;
  double evolve_rtol = 1e-8;
  double evolve_atol = 1e-12;
  double trace_drift = 1e-6;           // hard failure threshold during evolve
  double trace_error_budget = 1e-8;    // per-step reporting budget
  double positivity_budget = -1e-8;    // min eigenvalue budget per step
  double integrator_cross_check = 1e-6;
  double steady_state_residual_rel = 1e-6;  // vs ||L||
  double steady_state_vs_evolve = 1e-6;     // trace distance
  double closed_form_mean_n = 1e-6;
  int max_vectorize_dim = 80;  // dense superoperator memory guard
};

// Library-wide defaults. The values above are the contract every test and
// acceptance criterion is pinned to.
const Tolerances& tol();

}  // namespace fockslice
