#include "qtherm/matrix.hpp"

#include <cmath>

namespace qtherm {

double max_abs(const Mat& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Mat& a) {
  return max_abs(a - a.adjoint());
}

bool all_finite(const Mat& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat anticommutator(const Mat& a, const Mat& b) { return a * b + b * a; }

Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

Eigen::VectorXd hermitian_eigenvalues(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue(const Mat& hermitian) {
  return hermitian_eigenvalues(hermitian).minCoeff();
}

double trace_distance(const Mat& a, const Mat& b) {
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

double operator_norm_sq(const Mat& a) {
  return hermitian_eigenvalues(a.adjoint() * a).maxCoeff();
}

double von_neumann_entropy(const Mat& rho, double floor) {
  const Eigen::VectorXd lam = hermitian_eigenvalues(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] > floor) s -= lam[i] * std::log(lam[i]);
  return s;
}

}  // namespace qtherm
