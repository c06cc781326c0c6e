#pragma once

#include <Eigen/Dense>
#include <complex>

#include "fockslice/tolerances.hpp"

namespace fockslice {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// --- Truncated Fock-space ladder algebra (dense) ---------------------------
//
// All operators are plain dense complex matrices. Composition uses Eigen's
// arithmetic; the helpers below only add dimension checks and the domain
// constructors.

// Annihilation operator: <n-1|a|n> = sqrt(n). Throws for dim < 2.
Matrix annihilation(Index dim);
Matrix creation(Index dim);
// Number operator a^dag a = diag(0, 1, ..., dim-1).
Matrix number_op(Index dim);
Matrix identity(Index dim);

// Qubit operators on the basis (|g>, |e>): sigma_plus = |e><g|.
Matrix sigma_plus();
Matrix sigma_minus();
Matrix sigma_x();

Matrix adjoint(const Matrix& x);

// Checked product/sum; throws std::invalid_argument on shape mismatch.
Matrix mul(const Matrix& x, const Matrix& y);
Matrix add(const Matrix& x, const Matrix& y);

// Tensor-ordering convention, fixed globally: the QUBIT factor always comes
// FIRST, i.e. tensor_qubit_mode(Q, M) = kron(Q, M) and a composite index
// reads i = q * dim_mode + n. Every bipartite routine in the library
// (partial_trace_qubit, the bipartite Liouvillian, the Hamiltonian builders)
// assumes this layout.
Matrix tensor_qubit_mode(const Matrix& qubit, const Matrix& mode);

// Trace out the qubit factor of a qubit (x) mode matrix. Throws on odd dim.
Matrix partial_trace_qubit(const Matrix& rho);

// --- States -----------------------------------------------------------------

// A validated quantum state. Stored as a density matrix; pure states keep
// their vector alongside. Immutable after construction.
class State {
 public:
  static State pure(const Vector& psi);
  static State density(const Matrix& rho);
  static State fock(Index dim, Index n);
  static State thermal(Index dim, double nbar);

  Index dim() const { return rho_.rows(); }
  const Matrix& rho() const { return rho_; }
  bool is_pure() const { return has_vector_; }
  // Only valid when is_pure().
  const Vector& vector() const;

 private:
  State(Matrix rho, Vector psi, bool pure);
  Matrix rho_;
  Vector psi_;
  bool has_vector_;
};

State partial_trace_qubit(const State& s);

// max-norm of a matrix, used for relative tolerances
double max_abs(const Matrix& x);

}  // namespace fockslice
