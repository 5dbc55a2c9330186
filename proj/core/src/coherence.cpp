#include "qtherm/coherence.hpp"

#include <cmath>

namespace qtherm {

Mat x_operator(const LindbladModel& model) {
  Mat x = Mat::Zero(model.dim(), model.dim());
  for (const auto& b : model.baths)
    for (const auto& ch : b.channels) {
      const double w = model.hbar * ch.omega;
      if (ch.rate == 0.0 || w == 0.0) continue;
      x.noalias() += Complex(ch.rate * w * w) * ch.op_dag_op;
    }
  return x;
}

double c_x(const Mat& x_op, const EnergyBasis& basis) {
  const Mat x = basis.to_basis(x_op);
  double best = 0.0;
  for (const auto& level : basis.levels()) {
    const auto& s = level.states;
    for (size_t a = 0; a < s.size(); ++a)
      for (size_t b = 0; b < s.size(); ++b)
        if (a != b) best = std::max(best, std::abs(x(s[a], s[b])));
  }
  return best;
}

CoherenceReport coherence_report(const LindbladModel& model, const Mat& rho,
                                 const EnergyBasis& basis) {
  CoherenceReport rep;
  rep.x_op = x_operator(model);
  rep.c_x = c_x(rep.x_op, basis);
  const Mat rho_bd = block_diagonalize(rho, basis);
  const Mat rho_sd = strict_diagonalize(rho, basis);
  rep.c_l1 = l1_coherence(rho_bd, basis);
  rep.a_cl = (rep.x_op * rho_sd).trace().real();
  rep.a_qm = rep.c_x * rep.c_l1;
  return rep;
}

}  // namespace qtherm
