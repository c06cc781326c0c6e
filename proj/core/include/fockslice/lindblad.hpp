#pragma once

#include <optional>
#include <vector>

#include "fockslice/hamiltonians.hpp"
#include "fockslice/operators.hpp"

namespace fockslice {

// One dissipation channel in standard form:
//   (rate/2) (2 C rho C^dag - C^dag C rho - rho C^dag C)
struct LindbladTerm {
  Matrix collapse;
  double rate = 0.0;  // >= 0, Hz or dimensionless after scaling
};

// Generator of rho_dot = -i [H, rho] + sum of dissipators. Immutable by
// convention once assembled.
struct Liouvillian {
  Matrix hamiltonian;  // zero-size matrix means H = 0
  std::vector<LindbladTerm> terms;
  Index dim = 0;

  // Direct (non-vectorized) action on a density matrix.
  Matrix apply(const Matrix& rho) const;
  // Multiply H and every rate by s (e.g. 1/gamma to go dimensionless).
  Liouvillian scaled(double s) const;
  // Rough magnitude of the generator, used for relative thresholds.
  double norm_scale() const;
};

Liouvillian operator+(const Liouvillian& a, const Liouvillian& b);

// Derived rate bookkeeping for one protection run. gamma and the engineered
// rate are always recomputed from the primary inputs, never set directly.
struct RateSet {
  double gamma0 = 10.0;
  double kappa = 4e6;
  double nbar = 0.01;
  double gamma = 0.0;  // gamma0 (1+M)^0.7   (Hz)
  double drive = 0.0;  // Gamma = 4 chi^2/kappa or Gamma~ = 4 Omega^2/kappa (Hz)

  static RateSet fock(int M, double omega, double kappa, double gamma0, double nbar);
  static RateSet sliced(int M, double omega, double kappa, double gamma0, double nbar);
};

// Thermal environment: {a, (1+nbar) gamma} and {a^dag, nbar gamma}.
Liouvillian thermal_liouvillian(double gamma, double nbar, Index dim);

// Engineered absorption: single collapse C = A^dag(eta), rate
// Gamma = 4 chi^2 / kappa, with eta^2 = 2/N. Mode space only.
Liouvillian engineered_absorption(int N, double omega, double kappa, Index dim);

// Engineered sliced dissipator: collapse C = B, rate Gamma~ = 4 Omega^2/kappa.
Liouvillian engineered_sliced(const SlicedParams& p, double kappa, Index dim);

// kappa-resolved bipartite model used as the adiabatic-elimination oracle:
// H = h_int on qubit (x) mode, qubit decay {sigma_- (x) 1, kappa} plus the
// thermal channels on the mode. Initial qubit state |g> by convention
// (chosen by the caller when building rho0).
Liouvillian full_bipartite_liouvillian(const Matrix& h_int, double kappa,
                                       double gamma, double nbar);

// Dense superoperator, column-stacking convention:
//   vec(A X B) = (B^T kron A) vec(X).
// Refuses dim > max_dim (memory guard; throws std::runtime_error).
Matrix vectorize(const Liouvillian& L, int max_dim = tol().max_vectorize_dim);

// --- Time evolution -----------------------------------------------------------

enum class Integrator {
  SuperopExp,  // scaling-and-squaring matrix exponential per grid interval
  TrBdf2,      // adaptive L-stable TR-BDF2 with step-doubling error control
};

struct EvolveOptions {
  Integrator method = Integrator::SuperopExp;
  double rtol = tol().evolve_rtol;
  double atol = tol().evolve_atol;
};

struct EvolveResult {
  std::vector<double> tau;
  std::vector<Matrix> states;
  std::vector<double> trace_error;     // |Tr rho - 1| per step
  std::vector<double> min_eigenvalue;  // smallest eigenvalue of herm. part
};

// Propagate rho0 through the (time-independent) Liouvillian on an ascending
// tau grid. Rates must already be in the grid's time unit (we use tau =
// gamma t throughout). Throws on trace drift beyond tol().trace_drift.
EvolveResult evolve(const State& rho0, const Liouvillian& L,
                    const std::vector<double>& tau_grid,
                    const EvolveOptions& opts = {});

// --- Steady states --------------------------------------------------------------

struct SteadyStateResult {
  State state;
  int degeneracy = 1;    // # of near-zero modes of the generator
  double residual = 0.0; // |lambda_min| / ||L||
};

// Null vector of the vectorized generator with smallest-magnitude
// eigenvalue, Hermitized and trace-normalized. If several eigenvalues sit in
// the near-zero band the one with the largest overlap with `seed` wins (when
// given). Throws when the smallest magnitude exceeds
// tol().steady_state_residual_rel * ||L||.
SteadyStateResult steady_state(const Liouvillian& L,
                               const Matrix* seed = nullptr);

// --- Grids ----------------------------------------------------------------------

// Quasi-logarithmic grid from tau_min to tau_max: uniform steps within each
// octave, step doubling between octaves. This keeps the exponential
// propagator path down to one scaling-and-squaring call plus one squaring
// per octave.
std::vector<double> log_tau_grid(int count, double tau_min, double tau_max);
std::vector<double> linear_tau_grid(int count, double tau_max);

}  // namespace fockslice
