#include "fockslice/hamiltonians.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace fockslice {

namespace {

std::function<void(const std::string&)>& warning_handler() {
  static std::function<void(const std::string&)> h = [](const std::string& msg) {
    std::cerr << "[fockslice] warning: " << msg << "\n";
  };
  return h;
}

void warn_large_n(const char* builder, int N) {
  if (N > 10) {
    warning_handler()(std::string(builder) +
                      ": second-order sideband form degrades for N > 10 (N=" +
                      std::to_string(N) + ")");
  }
}

// Mode-space ladder sum_{n=lo}^{hi} chi_n |n><n+1| (lowering part only).
Matrix ladder(int lo, int hi, double eta, double omega, Index dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = lo; n <= hi; ++n) {
    m(n, n + 1) = chi_n(n, eta, omega);
  }
  return m;
}

}  // namespace

void set_warning_handler(std::function<void(const std::string&)> handler) {
  warning_handler() = std::move(handler);
}

void LaserConfig::validate() const {
  if (!(eta > 0.0) || eta * eta >= 2.0) {
    throw std::invalid_argument("LaserConfig: require 0 < eta and eta^2 < 2");
  }
  if (!(omega_rabi > 0.0)) {
    throw std::invalid_argument("LaserConfig: Rabi frequency must be > 0");
  }
}

double chi(double eta, double omega) {
  return eta * (1.0 - eta * eta / 2.0) * omega;
}

double chi_n(Index n, double eta, double omega) {
  return std::sqrt(static_cast<double>(n + 1)) *
         (1.0 - eta * eta * static_cast<double>(n) / 2.0) * chi(eta, omega);
}

Matrix coupling_A(double eta, Index dim) {
  if (!(eta * eta < 2.0) || eta < 0.0) {
    throw std::invalid_argument("coupling_A: require 0 <= eta^2 < 2");
  }
  const Matrix a = annihilation(dim);
  return (identity(dim) - (eta * eta / 2.0) * number_op(dim)) * a;
}

Matrix lamb_dicke_series_h(const LaserConfig& cfg, int l_max, Index dim) {
  cfg.validate();
  if (l_max < 0) throw std::invalid_argument("lamb_dicke_series_h: l_max >= 0");
  const int k = std::abs(cfg.sideband_k);
  const double eta = cfg.eta;

  // diag factor (a^dag)^l a^l = diag(n (n-1) ... (n-l+1)); built up in place.
  Eigen::VectorXd falling = Eigen::VectorXd::Ones(dim);
  // coefficient recurrence: c_0 = (i eta)^k / k!,
  // c_{l+1} = c_l * (i eta)^2 / ((l+1)(l+k+1)) = c_l * (-eta^2)/((l+1)(l+k+1))
  Complex c = std::pow(Complex(0.0, eta), k);
  for (int j = 2; j <= k; ++j) c /= static_cast<double>(j);

  Eigen::VectorXcd diag_sum = Eigen::VectorXcd::Zero(dim);
  for (int l = 0; l <= l_max; ++l) {
    if (l > 0) {
      for (Index n = 0; n < dim; ++n) {
        falling(n) *= static_cast<double>(n) - static_cast<double>(l - 1);
      }
      c *= Complex(-eta * eta) /
           (static_cast<double>(l) * static_cast<double>(l + k));
    }
    diag_sum += c * falling.cast<Complex>();
  }

  // Mode factor: D a^k for k >= 0. For k < 0 (blue sideband) the conjugate
  // convention applies: the net-raising series is the adjoint structure
  // (a^dag)^|k| D, with the same coefficients evaluated at |k|.
  Matrix shift = identity(dim);
  const Matrix a = annihilation(dim);
  for (int j = 0; j < k; ++j) shift = shift * a;
  Matrix mode;
  if (cfg.sideband_k >= 0) {
    mode = diag_sum.asDiagonal() * shift;
  } else {
    mode = shift.adjoint() * diag_sum.asDiagonal();
  }

  const Complex pref = cfg.omega_rabi *
                       std::exp(Complex(-eta * eta / 2.0, cfg.phi));
  const Matrix half = pref * tensor_qubit_mode(sigma_plus(), mode);
  return half + half.adjoint();
}

Matrix build_ub(int N, double omega, Variant v, Index dim) {
  if (N < 1) throw std::invalid_argument("build_ub: N >= 1 required");
  if (dim < N + 2) {
    throw std::invalid_argument("build_ub: truncation too small, need dim >= N+2");
  }
  warn_large_n("build_ub", N);
  const double eta = std::sqrt(2.0 / N);
  const Matrix lad = ladder(0, N - 1, eta, omega, dim);
  const Matrix s = (v == Variant::JC) ? sigma_plus() : sigma_minus();
  const Matrix half = tensor_qubit_mode(s, lad);
  return half + half.adjoint();
}

Matrix build_lb(int N, double omega, Variant v, Index dim) {
  if (N < 1) throw std::invalid_argument("build_lb: N >= 1 required");
  if (dim < N + 4) {
    throw std::invalid_argument("build_lb: truncation too small, need dim >= N+4");
  }
  warn_large_n("build_lb", N);
  const double eta = std::sqrt(2.0 / N);
  // infinite tail truncated at dim-2; top two levels are the skirt
  const Matrix lad = ladder(N + 1, static_cast<int>(dim) - 2, eta, omega, dim);
  const Matrix s = (v == Variant::JC) ? sigma_plus() : sigma_minus();
  const Matrix half = tensor_qubit_mode(s, lad);
  return half + half.adjoint();
}

Matrix build_bichromatic(int N, double omega, Bound b, Index dim) {
  if (N < 1) throw std::invalid_argument("build_bichromatic: N >= 1 required");
  if (dim < N + 4) {
    throw std::invalid_argument("build_bichromatic: truncation too small");
  }
  warn_large_n("build_bichromatic", N);
  const double eta = std::sqrt(2.0 / N);
  const Matrix lad = (b == Bound::Upper)
                         ? ladder(0, N - 1, eta, omega, dim)
                         : ladder(N + 1, static_cast<int>(dim) - 2, eta, omega, dim);
  return tensor_qubit_mode(sigma_x(), Matrix(lad + lad.adjoint()));
}

SlicedParams SlicedParams::make(int N, double omega_bar_3, double omega_scale) {
  if (N < 2) {
    throw std::invalid_argument(
        "SlicedParams: slice index must be >= 2 (the scheme does not exist "
        "for N = 0 or 1)");
  }
  if (!(omega_bar_3 > 0.0)) {
    throw std::invalid_argument("SlicedParams: omega_bar_3 must be > 0");
  }
  if (!(omega_scale > 0.0)) {
    throw std::invalid_argument("SlicedParams: omega scale must be > 0");
  }
  warn_large_n("SlicedParams", N);
  return SlicedParams{N, omega_bar_3, omega_scale};
}

double SlicedParams::eta2(int j) const {
  const double N = slice_index;
  switch (j) {
    case 1:
    case 4: return 2.0 / (N + 1.0);
    case 2: return 2.0 / N;
    case 3: return 2.0 / (N - 1.0);
    default: throw std::invalid_argument("SlicedParams::eta2: j in 1..4");
  }
}

double SlicedParams::omega_bar(int j) const {
  const double N = slice_index;
  switch (j) {
    case 1: return (N + 1.0) * std::sqrt(N + 1.0) / (N - 1.0);
    case 2: return N * std::sqrt(N + 1.0) / (N + 1.0);
    case 3: return omega_bar_3;
    case 4: return 1.0 / omega_bar_3;
    default: throw std::invalid_argument("SlicedParams::omega_bar: j in 1..4");
  }
}

Matrix build_sliced_B(const SlicedParams& p, Index dim) {
  if (dim < p.slice_index + 4) {
    throw std::invalid_argument("build_sliced_B: need dim >= N+4");
  }
  const Matrix n = number_op(dim);
  const Matrix a = annihilation(dim);
  auto numfac = [&](int j) -> Matrix {
    return identity(dim) - (p.eta2(j) / 2.0) * n;
  };
  // operator ordering as written: N3 multiplies a from the left,
  // a^dag multiplies N4 from the left
  return p.omega_bar(1) * numfac(1) + p.omega_bar(2) * numfac(2) +
         p.omega_bar(3) * (numfac(3) * a) +
         p.omega_bar(4) * (a.adjoint() * numfac(4));
}

Matrix build_sliced_h(const SlicedParams& p, Index dim) {
  const Matrix B = build_sliced_B(p, dim);
  const Matrix half = p.omega_scale * tensor_qubit_mode(sigma_plus(), B);
  return half + half.adjoint();
}

State dark_state(int N, double omega_bar_3, Index dim) {
  if (N < 2) throw std::invalid_argument("dark_state: N >= 2 required");
  if (!(omega_bar_3 > 0.0)) {
    throw std::invalid_argument("dark_state: omega_bar_3 must be > 0");
  }
  if (dim < N + 2) throw std::invalid_argument("dark_state: need dim >= N+2");
  Vector v = Vector::Zero(dim);
  v(N) = omega_bar_3;
  v(N + 1) = 1.0;
  v /= v.norm();
  return State::pure(v);
}

}  // namespace fockslice
