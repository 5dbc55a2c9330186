#pragma once

#include <string>
#include <vector>

#include "qtherm/matrix.hpp"

namespace qtherm {

/// One jump operator L_omega with rate gamma(omega). A channel labeled omega
/// satisfies [L_omega, H] = hbar*omega*L_omega against the owning model's H,
/// so a jump moves the system down by hbar*omega (decay channels carry
/// omega > 0, their adjoint partners omega < 0).
struct JumpChannel {
  double omega = 0.0;
  double rate = 0.0;
  Mat op;

  // Derived data, filled by make(): L†L is reused by the dissipator and the
  // X operator; when L has small rank the factored form op = left*right†
  // drives an O(n^2) dissipator path.
  Mat op_dag_op;
  Mat left;
  Mat right;
  Mat factor_gram;  // left† * left (rank x rank), so L†L = right * factor_gram * right†
  int factor_rank = 0;
  double op_norm_sq = 0.0;

  static JumpChannel make(double omega, double rate, Mat op);
};

/// A heat bath: inverse temperature beta, chemical potential mu (0 for plain
/// thermal baths), and its jump channels under detailed balance
/// gamma(+omega)/gamma(-omega) = exp[beta(hbar*omega - mu)].
struct BathSpec {
  std::string label;
  double beta = 1.0;
  double mu = 0.0;
  std::vector<JumpChannel> channels;
};

struct LindbladModel {
  double hbar = 1.0;
  Mat hamiltonian;
  std::vector<BathSpec> baths;

  bool hamiltonian_diagonal = false;  // cached by make()

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
  const BathSpec* find_bath(const std::string& label) const;

  static LindbladModel make(double hbar, Mat hamiltonian, std::vector<BathSpec> baths);
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  std::string summary() const;
};

struct ModelTolerances {
  double hamiltonian_hermiticity = 1e-10;
  double eigenoperator = 1e-9;   // ||[L,H] - hbar*omega*L||_max
  double adjoint_pairing = 1e-10;
  double detailed_balance = 1e-9;  // relative, per +/-omega pair
};

/// Checks H Hermiticity, the eigenoperator condition per channel, adjoint
/// pairing of +/-omega channels, detailed balance per bath, and rate
/// nonnegativity. Failures are reported, never thrown.
ValidationReport validate_model(const LindbladModel& model, const ModelTolerances& tol = {});

}  // namespace qtherm
