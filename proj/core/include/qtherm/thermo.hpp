#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtherm/coherence.hpp"
#include "qtherm/energy_basis.hpp"
#include "qtherm/model.hpp"

namespace qtherm {

/// J = Tr[H D[rho]], the energy flow from the selected bath(s) into the
/// system. Equals -sum_{a,omega} hbar*omega gamma_a(omega) Tr[L†L rho].
double heat_current(const LindbladModel& model, const Mat& rho,
                    const std::optional<std::string>& bath = std::nullopt);

struct EntropyRate {
  double value = 0.0;
  /// Set when the generator feeds eigenvalues below the support floor; the
  /// rate is then genuinely divergent rather than clipped.
  bool divergent = false;
};

/// dS/dt = -Tr[L[rho] log rho] evaluated on the support of rho (eigenvalues
/// below `floor` excluded).
EntropyRate entropy_rate(const LindbladModel& model, const Mat& rho, double floor = 1e-12);

/// Entropy production rate sigma = dS/dt - sum_a beta_a (J_a - mu_a nu_a),
/// where nu_a is the bath-a excitation current (single-quantum channels).
/// Reduces to dS/dt - sum_a beta_a J_a for mu = 0 baths.
EntropyRate entropy_production_rate(const LindbladModel& model, const Mat& rho,
                                    double floor = 1e-12);

/// Eigendecomposition of a block-diagonal state together with the jump rates
/// W^{omega,a}_{m,n} = gamma_a(omega) |<m|L|n>|^2 between its eigenstates.
struct TransitionRateTable {
  Eigen::VectorXd populations;  // p_n
  Mat eigvecs;                  // columns |n>, per-level so each is an H eigenstate
  struct ChannelRates {
    int bath = 0;
    double omega = 0.0;
    double affinity = 0.0;      // beta (hbar*omega - sign(omega) mu)
    int partner = -1;           // channel index with -omega and adjoint op
    Eigen::MatrixXd w;          // w(m, n)
  };
  std::vector<ChannelRates> channels;
};

TransitionRateTable transition_rate_table(const LindbladModel& model, const Mat& rho_bd,
                                          const EnergyBasis& basis);

/// Pauli-form entropy production sum' W p_n log(W p_n / W' p_m) over the
/// table; nonnegative by construction. Terms with both fluxes below 1e-14
/// are skipped; one-sided zero flux sets the divergence flag.
EntropyRate pauli_entropy_production(const LindbladModel& model, const Mat& rho_bd,
                                     const EnergyBasis& basis);

struct TradeoffRecord {
  double j_rho = 0.0, j_bd = 0.0, j_sd = 0.0;
  double sigma_rho = 0.0, sigma_bd = 0.0, sigma_sd = 0.0;
  double ratio_rho = 0.0, ratio_bd = 0.0, ratio_sd = 0.0;
  bool ratio_rho_divergent = false, ratio_bd_divergent = false, ratio_sd_divergent = false;
  double bound_cl = 0.0;  // A_cl / 2
  double bound_q = 0.0;   // (A_cl + A_qm) / 2
  double a_cl = 0.0, a_qm = 0.0;
  bool ineq2_ok = false;  // J(rho)^2 sigma(rho_bd) <= J(rho_bd)^2 sigma(rho)
  bool ineq3_ok = false;  // 2 J(rho_sd)^2 <= A_cl sigma(rho_sd)
  bool ineq4_ok = false;  // 2 J(rho_bd)^2 <= (A_cl + A_qm) sigma(rho_bd)
};

/// Cross-multiplied checks of the three trade-off inequalities with
/// scale-aware slack 1e-9 * max(1, |lhs|, |rhs|); ratios are reported
/// separately with divergence flags so sigma = 0 never divides.
TradeoffRecord tradeoff_check(const LindbladModel& model, const Mat& rho,
                              const EnergyBasis& basis);

struct ThermoSample {
  double t = 0.0;
  std::vector<std::pair<std::string, double>> j_per_bath;  // in model bath order
  double j_total = 0.0;
  double entropy_rate = 0.0;
  double sigma_dot = 0.0;
  double ratio = 0.0;  // J^2/sigma, 0 for 0/0, +inf when divergent
  double a_cl = 0.0;
  double a_qm = 0.0;
  double c_l1 = 0.0;   // C_l1(rho_bd)
  bool ratio_divergent = false;
  bool entropy_divergent = false;
};

ThermoSample thermo_sample(const LindbladModel& model, const Mat& rho, const EnergyBasis& basis,
                           double t);

}  // namespace qtherm
