#include "fockslice/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fockslice {

const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

Matrix annihilation(Index dim) {
  if (dim < 2) {
    throw std::invalid_argument("annihilation: dim must be >= 2, got " +
                                std::to_string(dim));
  }
  Matrix a = Matrix::Zero(dim, dim);
  for (Index n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

Matrix creation(Index dim) { return annihilation(dim).adjoint(); }

Matrix number_op(Index dim) {
  if (dim < 2) {
    throw std::invalid_argument("number_op: dim must be >= 2");
  }
  Matrix n = Matrix::Zero(dim, dim);
  for (Index k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Matrix identity(Index dim) { return Matrix::Identity(dim, dim); }

Matrix sigma_plus() {
  Matrix s = Matrix::Zero(2, 2);
  s(1, 0) = 1.0;  // |e><g| on basis (|g>, |e>)
  return s;
}

Matrix sigma_minus() { return sigma_plus().adjoint(); }

Matrix sigma_x() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  return s;
}

Matrix adjoint(const Matrix& x) { return x.adjoint(); }

Matrix mul(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.rows()) {
    throw std::invalid_argument("mul: shape mismatch " +
                                std::to_string(x.cols()) + " vs " +
                                std::to_string(y.rows()));
  }
  return x * y;
}

Matrix add(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw std::invalid_argument("add: shape mismatch");
  }
  return x + y;
}

Matrix tensor_qubit_mode(const Matrix& qubit, const Matrix& mode) {
  if (qubit.rows() != 2 || qubit.cols() != 2) {
    throw std::invalid_argument("tensor_qubit_mode: qubit factor must be 2x2");
  }
  const Index d = mode.rows();
  if (mode.cols() != d) {
    throw std::invalid_argument("tensor_qubit_mode: mode factor must be square");
  }
  Matrix out(2 * d, 2 * d);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      out.block(i * d, j * d, d, d) = qubit(i, j) * mode;
    }
  }
  return out;
}

Matrix partial_trace_qubit(const Matrix& rho) {
  const Index d2 = rho.rows();
  if (rho.cols() != d2 || d2 % 2 != 0) {
    throw std::invalid_argument(
        "partial_trace_qubit: need a square matrix of even dimension");
  }
  const Index d = d2 / 2;
  return rho.block(0, 0, d, d) + rho.block(d, d, d, d);
}

double max_abs(const Matrix& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

// --- State -----------------------------------------------------------------

State::State(Matrix rho, Vector psi, bool pure)
    : rho_(std::move(rho)), psi_(std::move(psi)), has_vector_(pure) {}

const Vector& State::vector() const {
  if (!has_vector_) {
    throw std::logic_error("State::vector: state is not pure");
  }
  return psi_;
}

State State::pure(const Vector& psi) {
  const double n = psi.norm();
  if (psi.size() < 2 || std::abs(n - 1.0) > 1e-10) {
    throw std::invalid_argument("State::pure: vector must be unit norm, dim >= 2");
  }
  Vector v = psi / n;
  return State(v * v.adjoint(), v, true);
}

State State::density(const Matrix& rho) {
  const Index d = rho.rows();
  if (d < 2 || rho.cols() != d) {
    throw std::invalid_argument("State::density: need a square matrix, dim >= 2");
  }
  const auto& t = tol();
  if (std::abs(rho.trace().real() - 1.0) > t.state_trace ||
      std::abs(rho.trace().imag()) > t.state_trace) {
    throw std::invalid_argument("State::density: trace must be 1 within 1e-10");
  }
  if (max_abs(rho - rho.adjoint()) > t.state_hermiticity) {
    throw std::invalid_argument("State::density: not Hermitian within 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < t.state_min_eig) {
    throw std::invalid_argument("State::density: not positive semidefinite");
  }
  return State(0.5 * (rho + rho.adjoint()), Vector(), false);
}

State State::fock(Index dim, Index n) {
  if (n < 0 || n >= dim) {
    throw std::invalid_argument("State::fock: level out of range");
  }
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return State::pure(v);
}

State State::thermal(Index dim, double nbar) {
  if (nbar < 0) throw std::invalid_argument("State::thermal: nbar must be >= 0");
  Matrix rho = Matrix::Zero(dim, dim);
  double z = 0.0;
  double p = 1.0 / (1.0 + nbar);
  const double r = nbar / (1.0 + nbar);
  for (Index n = 0; n < dim; ++n) {
    rho(n, n) = p;
    z += p;
    p *= r;
  }
  rho /= z;  // renormalize the truncated tail
  return State(rho, Vector(), false);
}

State partial_trace_qubit(const State& s) {
  return State::density(partial_trace_qubit(s.rho()));
}

}  // namespace fockslice
