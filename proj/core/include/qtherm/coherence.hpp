#pragma once

#include "qtherm/energy_basis.hpp"
#include "qtherm/model.hpp"

namespace qtherm {

/// X = sum_{a,omega} (hbar*omega)^2 gamma_a(omega) L†L. Hermitian, positive
/// semidefinite, commutes with H.
Mat x_operator(const LindbladModel& model);

/// C_X = max over degenerate pairs (e; j != j') of |<e,j|X|e,j'>|; zero when
/// no level is degenerate.
double c_x(const Mat& x_op, const EnergyBasis& basis);

struct CoherenceReport {
  double c_l1 = 0.0;  // C_l1(rho_bd)
  Mat x_op;
  double c_x = 0.0;
  double a_cl = 0.0;  // Tr[X rho_sd]
  double a_qm = 0.0;  // C_X * C_l1(rho_bd)
};

CoherenceReport coherence_report(const LindbladModel& model, const Mat& rho,
                                 const EnergyBasis& basis);

}  // namespace qtherm
