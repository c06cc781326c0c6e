#include "fockslice/lindblad.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fockslice {

namespace {

bool has_hamiltonian(const Liouvillian& L) {
  return L.hamiltonian.size() > 0;
}

Matrix vec_to_mat(const Vector& v, Index d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Vector mat_to_vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

double min_eig_herm(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

Matrix Liouvillian::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(dim, dim);
  if (has_hamiltonian(*this)) {
    out -= Complex(0.0, 1.0) * (hamiltonian * rho - rho * hamiltonian);
  }
  for (const auto& t : terms) {
    const Matrix& c = t.collapse;
    const Matrix cdc = c.adjoint() * c;
    out += t.rate * (c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc));
  }
  return out;
}

Liouvillian Liouvillian::scaled(double s) const {
  Liouvillian out = *this;
  if (has_hamiltonian(out)) out.hamiltonian *= s;
  for (auto& t : out.terms) t.rate *= s;
  return out;
}

double Liouvillian::norm_scale() const {
  double scale = 0.0;
  if (has_hamiltonian(*this)) scale += max_abs(hamiltonian);
  for (const auto& t : terms) {
    const double c2 = t.collapse.squaredNorm();  // Frobenius^2 ~ ||C^dag C||
    scale += t.rate * c2;
  }
  return scale;
}

Liouvillian operator+(const Liouvillian& a, const Liouvillian& b) {
  if (a.dim != b.dim) {
    throw std::invalid_argument("Liouvillian+: dimension mismatch");
  }
  Liouvillian out;
  out.dim = a.dim;
  if (a.hamiltonian.size() > 0 && b.hamiltonian.size() > 0) {
    out.hamiltonian = a.hamiltonian + b.hamiltonian;
  } else if (a.hamiltonian.size() > 0) {
    out.hamiltonian = a.hamiltonian;
  } else if (b.hamiltonian.size() > 0) {
    out.hamiltonian = b.hamiltonian;
  }
  out.terms = a.terms;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

RateSet RateSet::fock(int M, double omega, double kappa, double gamma0,
                      double nbar) {
  RateSet r;
  r.gamma0 = gamma0;
  r.kappa = kappa;
  r.nbar = nbar;
  r.gamma = gamma0 * std::pow(1.0 + M, 0.7);
  const double x = chi(std::sqrt(2.0 / M), omega);
  r.drive = 4.0 * x * x / kappa;
  return r;
}

RateSet RateSet::sliced(int M, double omega, double kappa, double gamma0,
                        double nbar) {
  RateSet r;
  r.gamma0 = gamma0;
  r.kappa = kappa;
  r.nbar = nbar;
  r.gamma = gamma0 * std::pow(1.0 + M, 0.7);
  r.drive = 4.0 * omega * omega / kappa;
  return r;
}

Liouvillian thermal_liouvillian(double gamma, double nbar, Index dim) {
  if (gamma < 0 || nbar < 0) {
    throw std::invalid_argument("thermal_liouvillian: rates must be >= 0");
  }
  Liouvillian L;
  L.dim = dim;
  L.terms.push_back({annihilation(dim), (1.0 + nbar) * gamma});
  L.terms.push_back({creation(dim), nbar * gamma});
  return L;
}

Liouvillian engineered_absorption(int N, double omega, double kappa, Index dim) {
  if (N < 1) throw std::invalid_argument("engineered_absorption: N >= 1");
  const double eta = std::sqrt(2.0 / N);
  const double x = chi(eta, omega);
  Liouvillian L;
  L.dim = dim;
  L.terms.push_back({Matrix(coupling_A(eta, dim).adjoint()), 4.0 * x * x / kappa});
  return L;
}

Liouvillian engineered_sliced(const SlicedParams& p, double kappa, Index dim) {
  Liouvillian L;
  L.dim = dim;
  L.terms.push_back(
      {build_sliced_B(p, dim), 4.0 * p.omega_scale * p.omega_scale / kappa});
  return L;
}

Liouvillian full_bipartite_liouvillian(const Matrix& h_int, double kappa,
                                       double gamma, double nbar) {
  const Index d2 = h_int.rows();
  if (h_int.cols() != d2 || d2 % 2 != 0) {
    throw std::invalid_argument(
        "full_bipartite_liouvillian: interaction must live on qubit (x) mode");
  }
  const Index d = d2 / 2;
  Liouvillian L;
  L.dim = d2;
  L.hamiltonian = h_int;
  L.terms.push_back({tensor_qubit_mode(sigma_minus(), identity(d)), kappa});
  L.terms.push_back({tensor_qubit_mode(identity(2), annihilation(d)),
                     (1.0 + nbar) * gamma});
  L.terms.push_back({tensor_qubit_mode(identity(2), creation(d)), nbar * gamma});
  return L;
}

Matrix vectorize(const Liouvillian& L, int max_dim) {
  const Index d = L.dim;
  if (d > max_dim) {
    throw std::runtime_error(
        "vectorize: dim " + std::to_string(d) + " exceeds the dense "
        "superoperator budget (" + std::to_string(max_dim) + ")");
  }
  const Index d2 = d * d;
  Matrix S = Matrix::Zero(d2, d2);
  auto kron = [d, d2](const Matrix& a, const Matrix& b) {
    Matrix out(d2, d2);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        out.block(i * d, j * d, d, d) = a(i, j) * b;
      }
    }
    return out;
  };
  const Matrix I = identity(d);
  if (L.hamiltonian.size() > 0) {
    const Matrix& H = L.hamiltonian;
    S -= Complex(0, 1) * (kron(I, H) - kron(H.transpose(), I));
  }
  for (const auto& t : L.terms) {
    const Matrix& c = t.collapse;
    const Matrix cdc = c.adjoint() * c;
    S += t.rate * (kron(c.conjugate(), c) - 0.5 * kron(I, cdc) -
                   0.5 * kron(cdc.transpose(), I));
  }
  return S;
}

std::vector<double> log_tau_grid(int count, double tau_min, double tau_max) {
  if (count < 2 || !(tau_min > 0) || !(tau_max > tau_min)) {
    throw std::invalid_argument("log_tau_grid: bad grid spec");
  }
  const int octaves = std::max(1, static_cast<int>(
      std::ceil(std::log2(tau_max / tau_min))));
  const int per_octave = std::max(1, (count - 1 + octaves - 1) / octaves);
  std::vector<double> g;
  g.reserve(static_cast<size_t>(per_octave) * octaves + 1);
  g.push_back(tau_min);
  double lo = tau_min;
  for (int k = 0; k < octaves; ++k) {
    double hi = std::min(lo * 2.0, tau_max);
    const double h = (hi - lo) / per_octave;
    for (int i = 1; i <= per_octave; ++i) g.push_back(lo + i * h);
    lo = hi;
    if (lo >= tau_max) break;
  }
  if (g.back() < tau_max) g.push_back(tau_max);
  return g;
}

std::vector<double> linear_tau_grid(int count, double tau_max) {
  if (count < 2 || !(tau_max > 0)) {
    throw std::invalid_argument("linear_tau_grid: bad grid spec");
  }
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = tau_max * double(i) / (count - 1);
  return g;
}

// --- Integrators ---------------------------------------------------------------

namespace {

// Exponential path. Interval propagators are cached; when an interval is
// exactly twice a cached one the propagator is obtained by squaring, so the
// octave-uniform log grid costs one Pade/scaling-squaring call total.
struct ExpPropagator {
  const Matrix& S;
  std::vector<std::pair<double, Matrix>> cache;

  explicit ExpPropagator(const Matrix& superop) : S(superop) {}

  const Matrix& get(double dt) {
    constexpr double kRel = 1e-13;
    for (const auto& [h, p] : cache) {
      if (std::abs(h - dt) <= kRel * dt) return p;
    }
    for (const auto& [h, p] : cache) {
      if (std::abs(2.0 * h - dt) <= kRel * dt) {
        Matrix sq = p * p;
        cache.emplace_back(dt, std::move(sq));
        return cache.back().second;
      }
    }
    cache.emplace_back(dt, Matrix((S * dt).exp()));
    return cache.back().second;
  }
};

// One TR-BDF2 macro-step of size h from v; both implicit stages share the
// same system matrix I - (1 - 1/sqrt(2)) h S.
struct TrBdf2Stepper {
  const Matrix& S;
  double lu_h = -1.0;
  Eigen::PartialPivLU<Matrix> lu;

  explicit TrBdf2Stepper(const Matrix& superop) : S(superop) {}

  void factor(double h) {
    if (h == lu_h) return;
    const Index n = S.rows();
    const double c = 1.0 - 1.0 / std::sqrt(2.0);  // = g/2 = (1-g)/(2-g)
    lu.compute(Matrix::Identity(n, n) - (c * h) * S);
    lu_h = h;
  }

  Vector step(const Vector& v, double h) {
    factor(h);
    const double c = 1.0 - 1.0 / std::sqrt(2.0);
    const double a1 = (std::sqrt(2.0) + 1.0) / 2.0;   // 1/(g(2-g))
    const double a2 = 1.0 - a1;                        // -(1-g)^2/(g(2-g))
    const Vector y1 = lu.solve(v + (c * h) * (S * v));
    return lu.solve(a1 * y1 + a2 * v);
  }
};

Vector trbdf2_integrate(const Matrix& S, Vector v, double t0, double t1,
                        double rtol, double atol) {
  TrBdf2Stepper full(S), half(S);
  double t = t0;
  double h = std::max((t1 - t0) * 1e-3, 1e-12);
  int rejects_in_a_row = 0;
  while (t < t1) {
    h = std::min(h, t1 - t);
    const Vector y_full = full.step(v, h);
    const Vector y_h1 = half.step(v, 0.5 * h);
    const Vector y_h2 = half.step(y_h1, 0.5 * h);
    const Vector diff = y_h2 - y_full;
    const double err = diff.template lpNorm<Eigen::Infinity>() / 3.0;
    const double tol_step =
        0.2 * (atol + rtol * v.template lpNorm<Eigen::Infinity>());
    if (err <= tol_step || h <= 1e-14 * (t1 - t0)) {
      // local extrapolation: the Richardson-combined value is 3rd order
      v = y_h2 + diff / 3.0;
      t += h;
      rejects_in_a_row = 0;
      const double grow =
          0.9 * std::pow(tol_step / std::max(err, 1e-300), 1.0 / 3.0);
      double factor = std::clamp(grow, 0.3, 4.0);
      // keep the LU factors warm: ignore small step-size changes
      if (factor > 1.4 || factor < 0.7) h *= factor;
    } else {
      h *= std::clamp(0.9 * std::pow(tol_step / err, 1.0 / 3.0), 0.1, 0.5);
      if (++rejects_in_a_row > 60) {
        throw std::runtime_error(
            "evolve: step-size underflow in the adaptive path (stiffness "
            "failure); use the superoperator-exponential integrator");
      }
    }
  }
  return v;
}

}  // namespace

EvolveResult evolve(const State& rho0, const Liouvillian& L,
                    const std::vector<double>& tau_grid,
                    const EvolveOptions& opts) {
  if (rho0.dim() != L.dim) {
    throw std::invalid_argument("evolve: state/Liouvillian dimension mismatch");
  }
  for (size_t i = 1; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > tau_grid[i - 1])) {
      throw std::invalid_argument("evolve: tau grid must be ascending");
    }
  }
  if (!tau_grid.empty() && tau_grid.front() < 0) {
    throw std::invalid_argument("evolve: tau grid must be nonnegative");
  }

  const Matrix S = vectorize(L);
  const Index d = L.dim;
  Vector v = mat_to_vec(rho0.rho());

  EvolveResult out;
  out.tau = tau_grid;
  out.states.reserve(tau_grid.size());
  out.trace_error.reserve(tau_grid.size());
  out.min_eigenvalue.reserve(tau_grid.size());

  ExpPropagator prop(S);
  double t_prev = 0.0;
  for (double t : tau_grid) {
    const double dt = t - t_prev;
    if (dt > 0) {
      if (opts.method == Integrator::SuperopExp) {
        v = prop.get(dt) * v;
      } else {
        v = trbdf2_integrate(S, v, t_prev, t, opts.rtol, opts.atol);
      }
    }
    t_prev = t;
    Matrix rho = vec_to_mat(v, d);
    const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (tr_err > tol().trace_drift) {
      throw std::runtime_error("evolve: trace drift " + std::to_string(tr_err) +
                               " exceeds budget; integration failure");
    }
    out.trace_error.push_back(tr_err);
    out.min_eigenvalue.push_back(min_eig_herm(rho));
    out.states.push_back(std::move(rho));
  }
  return out;
}

SteadyStateResult steady_state(const Liouvillian& L, const Matrix* seed) {
  const Matrix S = vectorize(L);
  const double scale = std::max(S.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  Eigen::ComplexEigenSolver<Matrix> es(S);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("steady_state: eigensolver failed");
  }
  const auto& vals = es.eigenvalues();
  Index best = 0;
  for (Index i = 1; i < vals.size(); ++i) {
    if (std::abs(vals(i)) < std::abs(vals(best))) best = i;
  }
  const double residual = std::abs(vals(best)) / scale;
  if (residual > tol().steady_state_residual_rel) {
    throw std::runtime_error(
        "steady_state: no zero mode (smallest |eigenvalue| / ||L|| = " +
        std::to_string(residual) + ")");
  }

  // near-zero band: well separated from the slow physical modes
  const double band = std::max(1e-8 * scale, 10.0 * std::abs(vals(best)));
  std::vector<Index> zero_modes;
  for (Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i)) <= band) zero_modes.push_back(i);
  }

  Index pick = best;
  if (seed != nullptr && zero_modes.size() > 1) {
    const Vector sv = mat_to_vec(*seed).normalized();
    double best_ov = -1.0;
    for (Index i : zero_modes) {
      const double ov = std::abs(sv.dot(es.eigenvectors().col(i).normalized()));
      if (ov > best_ov) {
        best_ov = ov;
        pick = i;
      }
    }
  }

  const Index d = L.dim;
  Matrix rho = vec_to_mat(es.eigenvectors().col(pick), d);
  rho = 0.5 * (rho + rho.adjoint());
  const double tr = rho.trace().real();
  if (std::abs(tr) < 1e-14) {
    throw std::runtime_error("steady_state: traceless zero mode");
  }
  rho /= tr;
  // clip tiny negative tails before validating
  Eigen::SelfAdjointEigenSolver<Matrix> pes(rho);
  Eigen::VectorXd ev = pes.eigenvalues().cwiseMax(0.0);
  rho = pes.eigenvectors() * ev.asDiagonal() *
        pes.eigenvectors().adjoint();
  rho /= rho.trace().real();

  SteadyStateResult r{State::density(rho), static_cast<int>(zero_modes.size()),
                      residual};
  return r;
}

}  // namespace fockslice
