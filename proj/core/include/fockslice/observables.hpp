#pragma once

#include "fockslice/operators.hpp"

namespace fockslice {

// Fidelity to a PURE target: <psi| rho |psi>. Mixed targets are rejected
// (only pure targets appear in the protection protocols).
double fidelity(const Matrix& rho, const State& target);

// Mandel Q = (<n^2> - <n>^2) / <n> - 1. For <n> < 1e-12 returns NaN: the
// vacuum has no defined Q and a quiet 0 would misread as Poissonian.
double mandel_q(const Matrix& rho);

double mean_n(const Matrix& rho);
double variance_n(const Matrix& rho);
double purity(const Matrix& rho);

// 1 - sum_{n=lo}^{hi} <n|rho|n>.
double leakage(const Matrix& rho, Index lo, Index hi);

// (1/2) Tr |rho1 - rho2|.
double trace_distance(const Matrix& rho1, const Matrix& rho2);

// Per-step diagnostic record emitted by scenario runs.
struct ObservableRecord {
  double tau = 0.0;
  double fidelity = 0.0;
  double mandel_q = 0.0;  // NaN for vacuum
  double mean_n = 0.0;
  double variance_n = 0.0;
  double purity = 0.0;
  double trace_error = 0.0;
  double leakage = 0.0;   // out of the protected subspace
  double top_level_population = 0.0;
};

}  // namespace fockslice
