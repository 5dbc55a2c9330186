#pragma once

#include <array>
#include <cmath>

#include "qtherm/generator.hpp"
#include "qtherm/models.hpp"

// Test-only oracles, independent of the library's dissipator/thermo paths.
namespace oracle {

using qtherm::Complex;
using qtherm::Mat;
using qtherm::Vec;

// Right-hand sides of the two-qubit superradiant master equation for the
// components (rho00, rho11, rho22, rho33, rho12), valid for arbitrary
// Hermitian input. rho12 enters via rho12 + conj(rho12).
struct TwoQubitRhs {
  Complex d00, d11, d22, d33, d12;
};

inline TwoQubitRhs two_qubit_ode_rhs(const Mat& rho, double gamma_down, double gamma_up) {
  const Complex r00 = rho(0, 0), r11 = rho(1, 1), r22 = rho(2, 2), r33 = rho(3, 3);
  const Complex r12 = rho(1, 2), r21 = rho(2, 1);
  const double gd = gamma_down, gu = gamma_up;
  TwoQubitRhs rhs;
  rhs.d00 = gd * (r11 + r22 + r12 + r21) - 2.0 * gu * r00;
  rhs.d11 = -0.5 * (gu + gd) * (2.0 * r11 + r12 + r21) + gu * r00 + gd * r33;
  rhs.d22 = -0.5 * (gu + gd) * (2.0 * r22 + r12 + r21) + gu * r00 + gd * r33;
  rhs.d33 = gu * (r11 + r22 + r12 + r21) - 2.0 * gd * r33;
  rhs.d12 = -0.5 * (gu + gd) * (r11 + r22 + 2.0 * r12) + gu * r00 + gd * r33;
  return rhs;
}

// Gibbs populations of the two-qubit model: (1, q, q, q^2)/(1+q)^2.
inline Eigen::Vector4d two_qubit_gibbs_populations(double beta, double hbar, double omega) {
  const double q = std::exp(-beta * hbar * omega);
  const double z = (1.0 + q) * (1.0 + q);
  return Eigen::Vector4d(1.0 / z, q / z, q / z, q * q / z);
}

// Steady state actually reached from |0><0|: the dark singlet weight is
// conserved at zero, leaving the triplet-sector equilibrium.
inline Mat two_qubit_triplet_steady(double beta, double hbar, double omega) {
  const double q = std::exp(-beta * hbar * omega);
  const double z = 1.0 + q + q * q;
  Mat rho = Mat::Zero(4, 4);
  rho(0, 0) = 1.0 / z;
  rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 0.5 * q / z;
  rho(3, 3) = q * q / z;
  return rho;
}

// Rate-equation slope of the 2N plus family: dp_g = N^2(Gd p_e - Gu p_g).
inline double plus_family_dpg(int n, double gamma_down, double gamma_up, double p_g, double p_e) {
  const double n2 = static_cast<double>(n) * n;
  return n2 * (gamma_down * p_e - gamma_up * p_g);
}

// Heat current by the jump-rate sum -sum hbar*omega*gamma*Tr[L†L rho]; an
// independent route from Tr[H D[rho]].
inline double heat_current_sum_formula(const qtherm::LindbladModel& model, const Mat& rho) {
  double j = 0.0;
  for (const auto& bath : model.baths)
    for (const auto& ch : bath.channels)
      j -= model.hbar * ch.omega * ch.rate * (ch.op_dag_op * rho).trace().real();
  return j;
}

// Population of |e,j>-style projections: <v|rho|v>.
inline double expval(const Mat& rho, const Vec& v) {
  return (v.adjoint() * rho * v).value().real();
}

}  // namespace oracle
