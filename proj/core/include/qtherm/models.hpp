#pragma once

#include <string>

#include "qtherm/density_matrix.hpp"
#include "qtherm/energy_basis.hpp"
#include "qtherm/model.hpp"

namespace qtherm {

/// 2N-state correlated-decay model: N-fold degenerate ground and excited
/// levels split by hbar*omega0, one bath with the collective jump operator
/// L = sum_{j,j'} |g,j><e,j'| (decay channel at +omega0, rate gamma_down) and
/// its adjoint at -omega0 with rate gamma_down*exp(-beta*hbar*omega0).
struct TwoNModelSpec {
  int n = 1;
  double omega0 = 1.0;
  double gamma_down = 1.0;
  double beta = 1.0;
  double hbar = 1.0;
  std::string bath_label = "B";
};

struct BuiltModel {
  LindbladModel model;
  EnergyBasis basis;  // computational |g,1..N>,|e,1..N> ordering
};

BuiltModel build_2n_model(const TwoNModelSpec& spec);

/// rho+ = p_g |g,+><g,+| + p_e |e,+><e,+| with p_g = (1+a_n) p_e e^{beta
/// hbar omega0} and p_g + p_e = 1.
struct PlusStateSpec {
  int n = 1;
  double a_n = 0.0;
  double beta = 1.0;
  double omega0 = 1.0;
  double hbar = 1.0;

  PlusStateSpec() = default;
  PlusStateSpec(const TwoNModelSpec& m, double a)
      : n(m.n), a_n(a), beta(m.beta), omega0(m.omega0), hbar(m.hbar) {}

  double p_e() const;
  double p_g() const { return 1.0 - p_e(); }
};

DensityMatrix build_plus_state(const PlusStateSpec& spec);

/// |g,+> and |e,+> column vectors for dimension 2N.
Vec plus_ground_vector(int n);
Vec plus_excited_vector(int n);

struct AnalyticObservables {
  double j = 0.0;          // N^2 a_N Gamma_down p_e hbar omega0
  double sigma_dot = 0.0;  // N^2 a_N log(1+a_N) Gamma_down p_e
};

/// Closed forms for the instantaneous current and entropy production of the
/// 2N model at rho+.
AnalyticObservables analytic_2n_observables(const TwoNModelSpec& model_spec,
                                            const PlusStateSpec& plus_spec);

/// Two-qubit superradiant model: H = hbar*omega(|1><1|+|2><2|) +
/// 2 hbar*omega |3><3|, collective jump |0><1|+|0><2|+|1><3|+|2><3|.
struct TwoQubitSpec {
  double omega = 1.0;
  double beta = 1.0;
  double gamma0 = 1.0;
  double hbar = 1.0;
  std::string bath_label = "B";

  double gamma_down() const;  // gamma0 / (1 + e^{-beta hbar omega})
  double gamma_up() const;    // gamma0 / (1 + e^{+beta hbar omega})
};

BuiltModel build_two_qubit_model(const TwoQubitSpec& spec);

enum class TwoBathVariant { temperature, chemical_potential };

/// Two-bath 2N model carrying an O(N) steady current with O(1) dissipation.
/// Only the difference of the bath parameters is fixed by the matching
/// condition; the absolute scale is anchored so the steady populations are
/// N-independent (beta_ref for the temperature variant, beta/mu_ref for the
/// chemical one).
struct TwoBathTwoNSpec {
  int n = 2;
  double omega = 1.0;
  TwoBathVariant variant = TwoBathVariant::temperature;
  double gamma_down = 1.0;  // equal across both baths
  double beta_ref = 1.0;    // temperature variant anchor
  double beta = 1.0;        // chemical variant shared inverse temperature
  double mu_ref = 0.0;      // chemical variant anchor
  double hbar = 1.0;
};

struct TwoBathTwoN {
  LindbladModel model;
  EnergyBasis basis;
  DensityMatrix steady;  // the analytic rho^(N)
  double rho_gg = 0.0;
  double rho_ee = 0.0;
  double analytic_j_hot = 0.0;     // N hbar omega Gamma_down rho_ee
  double analytic_sigma_dot = 0.0; // N Gamma_down rho_ee log[(1+1/N)/(1-1/N)]
};

TwoBathTwoN build_two_bath_2n(const TwoBathTwoNSpec& spec);

}  // namespace qtherm
