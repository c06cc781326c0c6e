#pragma once

#include <functional>
#include <string>

#include "fockslice/operators.hpp"

namespace fockslice {

// --- Laser drive description -------------------------------------------------

struct LaserConfig {
  int sideband_k = 1;      // k = (omega_0 - omega) / nu; k > 0 red, k < 0 blue
  double eta = 0.0;        // Lamb-Dicke parameter, 0 < eta, eta^2 < 2
  double omega_rabi = 0.0; // Rabi frequency Omega (Hz), > 0
  double phi = 0.0;        // laser phase (radians); defaults to 0 everywhere

  void validate() const;  // throws std::invalid_argument
};

// chi = eta (1 - eta^2/2) Omega   (Hz)
double chi(double eta, double omega);
// chi_n = sqrt(n+1) (1 - eta^2 n / 2) chi(eta)   (Hz)
double chi_n(Index n, double eta, double omega);

// A(eta) = (1 - eta^2 a^dag a / 2) a  -- the number factor acts after
// lowering. Dimensionless.
Matrix coupling_A(double eta, Index dim);

// Full Lamb-Dicke sideband series on qubit (x) mode, truncated at l_max:
//   H = Omega e^{i phi - eta^2/2} sigma_+ sum_l (i eta)^{2l+k} / (l! (l+k)!)
//         (a^dag)^l a^l a^k + H.c.
// Coefficients are built by a stable term recurrence (no raw factorials).
// Convention for k < 0: the mode factor a^k is replaced by (a^dag)^{|k|}
// (blue sideband), with the same coefficient series evaluated at |k|.
Matrix lamb_dicke_series_h(const LaserConfig& cfg, int l_max, Index dim);

// --- Bounded interactions (second-order forms) --------------------------------

enum class Variant { JC, AJC };   // sigma_+ vs sigma_- paired with |n><n+1|
enum class Bound { Upper, Lower };

// Upper-bounded interaction, eta^2 = 2/N internally:
//   sum_{n=0}^{N-1} chi_n (|n><n+1| sigma_pm + H.c.)
// Requires dim >= N+2.
Matrix build_ub(int N, double omega, Variant v, Index dim);

// Lower-bounded complement: sum runs n = N+1 .. dim-2. The top two Fock
// levels are a truncation skirt standing in for the infinite tail; physics
// assertions exclude them. Requires dim >= N+4.
Matrix build_lb(int N, double omega, Variant v, Index dim);

// Bichromatic (red+blue) version: same mode ladder, sigma_x on the qubit.
Matrix build_bichromatic(int N, double omega, Bound b, Index dim);

// --- Sliced interaction --------------------------------------------------------

// Parameters of the four-tone sliced drive. Only slice_index N, the free
// ratio omega_bar_3 and the overall scale are stored; everything else is a
// derived quantity and is recomputed on access:
//   eta_1^2 = eta_4^2 = 2/(N+1),  eta_2^2 = 2/N,  eta_3^2 = 2/(N-1)
//   ob_1 = (N+1) sqrt(N+1) / (N-1),  ob_2 = N sqrt(N+1) / (N+1),
//   ob_4 = 1 / ob_3
struct SlicedParams {
  int slice_index;      // N >= 2; the scheme does not exist for N = 0, 1
  double omega_bar_3;   // > 0
  double omega_scale;   // Omega (Hz)

  static SlicedParams make(int N, double omega_bar_3, double omega_scale);

  double eta2(int j) const;       // j in 1..4
  double omega_bar(int j) const;  // j in 1..4
};

// B = ob1 N1 + ob2 N2 + ob3 N3 a + ob4 a^dag N4, with N_j = 1 - eta_j^2 n/2.
// Dimensionless; requires dim >= N+4.
Matrix build_sliced_B(const SlicedParams& p, Index dim);

// H = Omega (B sigma_+ + B^dag sigma_-) on qubit (x) mode.
Matrix build_sliced_h(const SlicedParams& p, Index dim);

// Normalized c_N |N> + c_{N+1} |N+1> with c_N / c_{N+1} = omega_bar_3.
// Phase convention: both amplitudes real and positive.
State dark_state(int N, double omega_bar_3, Index dim);

// The second-order forms degrade for N > 10; builders warn (not fail)
// through this hook. Default writes one line to stderr.
void set_warning_handler(std::function<void(const std::string&)> handler);

}  // namespace fockslice
