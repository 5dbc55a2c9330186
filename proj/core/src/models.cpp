#include "qtherm/models.hpp"

#include <cmath>
#include <stdexcept>

namespace qtherm {

namespace {

// Collective decay operator sum_{j,j'} |g,j><e,j'| for the 2N layout
// (columns 0..N-1 ground, N..2N-1 excited).
Mat collective_decay_2n(int n) {
  Mat l = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) l(j, n + k) = Complex(1.0);
  return l;
}

Mat hamiltonian_2n(int n, double hbar, double omega) {
  Mat h = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) h(n + j, n + j) = Complex(hbar * omega);
  return h;
}

BathSpec make_bath_2n(const std::string& label, int n, double omega, double gamma_down,
                      double gamma_up, double beta, double mu) {
  const Mat l = collective_decay_2n(n);
  BathSpec bath;
  bath.label = label;
  bath.beta = beta;
  bath.mu = mu;
  bath.channels.push_back(JumpChannel::make(omega, gamma_down, l));
  bath.channels.push_back(JumpChannel::make(-omega, gamma_up, l.adjoint()));
  return bath;
}

}  // namespace

BuiltModel build_2n_model(const TwoNModelSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("build_2n_model: n must be >= 1");
  if (spec.gamma_down <= 0.0) throw std::invalid_argument("build_2n_model: gamma_down must be > 0");
  if (spec.omega0 <= 0.0) throw std::invalid_argument("build_2n_model: omega0 must be > 0");

  const double gamma_up = spec.gamma_down * std::exp(-spec.beta * spec.hbar * spec.omega0);
  LindbladModel model = LindbladModel::make(
      spec.hbar, hamiltonian_2n(spec.n, spec.hbar, spec.omega0),
      {make_bath_2n(spec.bath_label, spec.n, spec.omega0, spec.gamma_down, gamma_up, spec.beta,
                    0.0)});
  EnergyBasis basis = energy_basis(model, Mat::Identity(2 * spec.n, 2 * spec.n));
  return {std::move(model), std::move(basis)};
}

double PlusStateSpec::p_e() const {
  return 1.0 / (1.0 + (1.0 + a_n) * std::exp(beta * hbar * omega0));
}

Vec plus_ground_vector(int n) {
  Vec v = Vec::Zero(2 * n);
  for (int j = 0; j < n; ++j) v[j] = Complex(1.0 / std::sqrt(static_cast<double>(n)));
  return v;
}

Vec plus_excited_vector(int n) {
  Vec v = Vec::Zero(2 * n);
  for (int j = 0; j < n; ++j) v[n + j] = Complex(1.0 / std::sqrt(static_cast<double>(n)));
  return v;
}

DensityMatrix build_plus_state(const PlusStateSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("build_plus_state: n must be >= 1");
  if (spec.a_n <= -1.0) throw std::invalid_argument("build_plus_state: a_n must exceed -1");
  const double pe = spec.p_e();
  const double pg = 1.0 - pe;
  const Vec u = plus_ground_vector(spec.n);
  const Vec w = plus_excited_vector(spec.n);
  Mat rho = pg * (u * u.adjoint()) + pe * (w * w.adjoint());
  return DensityMatrix(std::move(rho));
}

AnalyticObservables analytic_2n_observables(const TwoNModelSpec& model_spec,
                                            const PlusStateSpec& plus_spec) {
  if (model_spec.n != plus_spec.n || model_spec.beta != plus_spec.beta ||
      model_spec.omega0 != plus_spec.omega0 || model_spec.hbar != plus_spec.hbar)
    throw std::invalid_argument("analytic_2n_observables: inconsistent specs");
  const double n2 = static_cast<double>(model_spec.n) * model_spec.n;
  const double pe = plus_spec.p_e();
  AnalyticObservables out;
  out.j = n2 * plus_spec.a_n * model_spec.gamma_down * pe * model_spec.hbar * model_spec.omega0;
  out.sigma_dot = n2 * plus_spec.a_n * std::log1p(plus_spec.a_n) * model_spec.gamma_down * pe;
  return out;
}

double TwoQubitSpec::gamma_down() const { return gamma0 / (1.0 + std::exp(-beta * hbar * omega)); }
double TwoQubitSpec::gamma_up() const { return gamma0 / (1.0 + std::exp(beta * hbar * omega)); }

BuiltModel build_two_qubit_model(const TwoQubitSpec& spec) {
  if (spec.gamma0 <= 0.0) throw std::invalid_argument("build_two_qubit_model: gamma0 must be > 0");
  if (spec.omega <= 0.0) throw std::invalid_argument("build_two_qubit_model: omega must be > 0");

  Mat h = Mat::Zero(4, 4);
  h(1, 1) = h(2, 2) = Complex(spec.hbar * spec.omega);
  h(3, 3) = Complex(2.0 * spec.hbar * spec.omega);

  Mat l = Mat::Zero(4, 4);
  l(0, 1) = l(0, 2) = l(1, 3) = l(2, 3) = Complex(1.0);

  BathSpec bath;
  bath.label = spec.bath_label;
  bath.beta = spec.beta;
  bath.channels.push_back(JumpChannel::make(spec.omega, spec.gamma_down(), l));
  bath.channels.push_back(JumpChannel::make(-spec.omega, spec.gamma_up(), l.adjoint()));

  LindbladModel model = LindbladModel::make(spec.hbar, std::move(h), {std::move(bath)});
  EnergyBasis basis = energy_basis(model, Mat::Identity(4, 4));
  return {std::move(model), std::move(basis)};
}

TwoBathTwoN build_two_bath_2n(const TwoBathTwoNSpec& spec) {
  if (spec.n < 2)
    throw std::invalid_argument(
        "build_two_bath_2n: n must be >= 2 (the 1-1/N rate ratio degenerates at n=1)");
  if (spec.gamma_down <= 0.0)
    throw std::invalid_argument("build_two_bath_2n: gamma_down must be > 0");

  const int n = spec.n;
  const double hw = spec.hbar * spec.omega;
  const double log_plus = std::log1p(1.0 / n);          // log(1 + 1/N)
  const double log_minus = std::log1p(-1.0 / n);        // log(1 - 1/N)

  double ratio_anchor;  // rho_gg / rho_ee, N-independent by construction
  std::string hot_label, cold_label;
  double beta_hot, beta_cold, mu_hot = 0.0, mu_cold = 0.0;
  if (spec.variant == TwoBathVariant::temperature) {
    hot_label = "H";
    cold_label = "C";
    beta_hot = spec.beta_ref - log_plus / hw;
    beta_cold = spec.beta_ref - log_minus / hw;
    if (beta_hot <= 0.0)
      throw std::invalid_argument("build_two_bath_2n: beta_ref too small for this n");
    ratio_anchor = std::exp(spec.beta_ref * hw);
  } else {
    hot_label = "L";
    cold_label = "R";
    beta_hot = beta_cold = spec.beta;
    if (spec.beta <= 0.0) throw std::invalid_argument("build_two_bath_2n: beta must be > 0");
    mu_hot = spec.mu_ref + log_plus / spec.beta;
    mu_cold = spec.mu_ref + log_minus / spec.beta;
    ratio_anchor = std::exp(spec.beta * (hw - spec.mu_ref));
  }

  const double gamma_up_hot = spec.gamma_down * std::exp(-(beta_hot * hw - beta_hot * mu_hot));
  const double gamma_up_cold = spec.gamma_down * std::exp(-(beta_cold * hw - beta_cold * mu_cold));

  LindbladModel model = LindbladModel::make(
      spec.hbar, hamiltonian_2n(n, spec.hbar, spec.omega),
      {make_bath_2n(hot_label, n, spec.omega, spec.gamma_down, gamma_up_hot, beta_hot, mu_hot),
       make_bath_2n(cold_label, n, spec.omega, spec.gamma_down, gamma_up_cold, beta_cold,
                    mu_cold)});
  EnergyBasis basis = energy_basis(model, Mat::Identity(2 * n, 2 * n));

  TwoBathTwoN out{std::move(model), std::move(basis), DensityMatrix::unchecked(Mat()), 0, 0, 0, 0};
  out.rho_ee = 1.0 / (1.0 + ratio_anchor);
  out.rho_gg = ratio_anchor / (1.0 + ratio_anchor);
  const Vec u = plus_ground_vector(n);
  const Vec w = plus_excited_vector(n);
  out.steady = DensityMatrix(out.rho_gg * (u * u.adjoint()) + out.rho_ee * (w * w.adjoint()));
  out.analytic_j_hot = n * hw * spec.gamma_down * out.rho_ee;
  out.analytic_sigma_dot = n * spec.gamma_down * out.rho_ee * (log_plus - log_minus);
  return out;
}

}  // namespace qtherm
