#include "qtherm/density_matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qtherm {

std::optional<std::string> DensityMatrix::check(const Mat& m, const StateTolerances& tol) {
  if (m.rows() != m.cols()) return "density matrix must be square";
  if (m.rows() == 0) return "density matrix must be non-empty";
  if (!all_finite(m)) return "density matrix has non-finite entries";
  const double herm = hermiticity_residual(m);
  if (herm > tol.hermiticity) {
    std::ostringstream os;
    os << "hermiticity residual " << herm << " exceeds " << tol.hermiticity;
    return os.str();
  }
  const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_err > tol.trace) {
    std::ostringstream os;
    os << "trace deviates from 1 by " << tr_err;
    return os.str();
  }
  const double min_eig = min_eigenvalue(hermitian_part(m));
  if (min_eig < -tol.positivity) {
    std::ostringstream os;
    os << "negative eigenvalue " << min_eig;
    return os.str();
  }
  return std::nullopt;
}

DensityMatrix::DensityMatrix(Mat m, const StateTolerances& tol) {
  if (auto err = check(m, tol)) throw std::invalid_argument("DensityMatrix: " + *err);
  mat_ = std::move(m);
}

DensityMatrix DensityMatrix::unchecked(Mat m) {
  DensityMatrix d;
  d.mat_ = std::move(m);
  return d;
}

DensityMatrix gibbs_state(const Mat& hamiltonian, double beta) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian);
  const Eigen::VectorXd e = es.eigenvalues();
  // Shift by the ground energy before exponentiating.
  const double e0 = e.minCoeff();
  Eigen::VectorXd w(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) w[i] = std::exp(-beta * (e[i] - e0));
  w /= w.sum();
  Mat rho = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  return DensityMatrix(hermitian_part(rho));
}

}  // namespace qtherm
