#include "qtherm/generator.hpp"

#include <stdexcept>

namespace qtherm {

namespace {

// Accumulates gamma*(L rho L† - (1/2){L†L, rho}) into out.
void add_channel_term(const JumpChannel& ch, const Mat& rho, Mat& out) {
  if (ch.rate == 0.0) return;
  const Complex g(ch.rate);
  if (ch.factor_rank > 0) {
    // op = left * right†; everything below is O(n^2 * rank).
    const Mat rho_right = rho * ch.right;             // n x r
    const Mat right_rho = ch.right.adjoint() * rho;   // r x n
    const Mat core = ch.right.adjoint() * rho_right;  // r x r
    out.noalias() += g * (ch.left * (core * ch.left.adjoint()));
    // L†L = right * factor_gram * right†
    out.noalias() -= (0.5 * g) * (ch.right * (ch.factor_gram * right_rho));
    out.noalias() -= (0.5 * g) * ((rho_right * ch.factor_gram) * ch.right.adjoint());
  } else {
    const Mat lr = ch.op * rho;
    out.noalias() += g * (lr * ch.op.adjoint());
    out.noalias() -= (0.5 * g) * (ch.op_dag_op * rho);
    out.noalias() -= (0.5 * g) * (rho * ch.op_dag_op);
  }
}

}  // namespace

Mat apply_dissipator(const LindbladModel& model, const Mat& rho,
                     const std::optional<std::string>& bath) {
  if (rho.rows() != model.dim() || rho.cols() != model.dim())
    throw std::invalid_argument("apply_dissipator: state dimension mismatch");
  if (bath && !model.find_bath(*bath))
    throw std::invalid_argument("apply_dissipator: unknown bath label '" + *bath + "'");

  Mat out = Mat::Zero(model.dim(), model.dim());
  for (const auto& b : model.baths) {
    if (bath && b.label != *bath) continue;
    for (const auto& ch : b.channels) add_channel_term(ch, rho, out);
  }
  return out;
}

Mat apply_generator(const LindbladModel& model, const Mat& rho) {
  Mat out = apply_dissipator(model, rho);
  const Complex scale(0.0, -1.0 / model.hbar);
  if (model.hamiltonian_diagonal) {
    const auto h = model.hamiltonian.diagonal();
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
      for (Eigen::Index i = 0; i < rho.rows(); ++i)
        out(i, j) += scale * (h[i] - h[j]) * rho(i, j);
  } else {
    out.noalias() += scale * (model.hamiltonian * rho);
    out.noalias() -= scale * (rho * model.hamiltonian);
  }
  return out;
}

}  // namespace qtherm
