#include "fockslice/observables.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fockslice {

double fidelity(const Matrix& rho, const State& target) {
  if (rho.rows() != target.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  if (!target.is_pure()) {
    throw std::invalid_argument(
        "fidelity: only pure targets are supported (Tr |psi><psi| rho)");
  }
  const Vector& psi = target.vector();
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

double mean_n(const Matrix& rho) {
  double m = 0.0;
  for (Index n = 0; n < rho.rows(); ++n) m += n * rho(n, n).real();
  return m;
}

double variance_n(const Matrix& rho) {
  double m = 0.0, m2 = 0.0;
  for (Index n = 0; n < rho.rows(); ++n) {
    const double p = rho(n, n).real();
    m += n * p;
    m2 += double(n) * double(n) * p;
  }
  return m2 - m * m;
}

double mandel_q(const Matrix& rho) {
  const double m = mean_n(rho);
  if (m < 1e-12) return std::numeric_limits<double>::quiet_NaN();
  return variance_n(rho) / m - 1.0;
}

double purity(const Matrix& rho) {
  return (rho * rho).trace().real();
}

double leakage(const Matrix& rho, Index lo, Index hi) {
  if (lo < 0 || hi < lo || hi >= rho.rows()) {
    throw std::invalid_argument("leakage: window out of range");
  }
  double inside = 0.0;
  for (Index n = lo; n <= hi; ++n) inside += rho(n, n).real();
  return 1.0 - inside;
}

double trace_distance(const Matrix& rho1, const Matrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  Matrix d = rho1 - rho2;
  d = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace fockslice
