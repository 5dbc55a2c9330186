#include "qtherm/energy_basis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qtherm {

EnergyBasis::EnergyBasis(Mat states, std::vector<EnergyLevel> levels)
    : states_(std::move(states)), levels_(std::move(levels)) {
  level_of_.assign(dim(), -1);
  int covered = 0;
  for (size_t l = 0; l < levels_.size(); ++l) {
    for (int s : levels_[l].states) {
      if (s < 0 || s >= dim() || level_of_[s] != -1)
        throw std::invalid_argument("EnergyBasis: level state indices must partition the basis");
      level_of_[s] = static_cast<int>(l);
      ++covered;
    }
  }
  if (covered != dim())
    throw std::invalid_argument("EnergyBasis: levels must cover every basis state");
  computational_ = max_abs(states_ - Mat::Identity(dim(), dim())) == 0.0;
}

Mat EnergyBasis::to_basis(const Mat& rho) const {
  if (computational_) return rho;
  return states_.adjoint() * rho * states_;
}

Mat EnergyBasis::from_basis(const Mat& rho_in_basis) const {
  if (computational_) return rho_in_basis;
  return states_ * rho_in_basis * states_.adjoint();
}

EnergyBasis energy_basis(const LindbladModel& model, const std::optional<Mat>& preferred_basis,
                         const EnergyBasisOptions& options) {
  const int n = model.dim();
  Mat states;
  Eigen::VectorXd energies(n);

  if (preferred_basis) {
    states = *preferred_basis;
    if (states.rows() != n || states.cols() != n)
      throw std::invalid_argument("energy_basis: preferred basis must be square of model dim");
    const bool identity = max_abs(states - Mat::Identity(n, n)) == 0.0;
    if (!identity) {
      const double gram = max_abs(states.adjoint() * states - Mat::Identity(n, n));
      if (gram > options.orthonormality_tol) {
        std::ostringstream os;
        os << "energy_basis: preferred basis Gram residual " << gram;
        throw std::invalid_argument(os.str());
      }
    }
    for (int j = 0; j < n; ++j) {
      double e, resid;
      if (identity) {
        // Column j of H minus its diagonal entry.
        e = model.hamiltonian(j, j).real();
        Vec col = model.hamiltonian.col(j);
        col[j] -= Complex(e);
        resid = col.norm();
      } else {
        const Vec v = states.col(j);
        e = (v.adjoint() * model.hamiltonian * v).value().real();
        resid = (model.hamiltonian * v - Complex(e) * v).norm();
      }
      if (resid > options.eigenvector_tol) {
        std::ostringstream os;
        os << "energy_basis: preferred column " << j << " is not an eigenvector (residual "
           << resid << ")";
        throw std::invalid_argument(os.str());
      }
      energies[j] = e;
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(model.hamiltonian);
    states = es.eigenvectors();
    energies = es.eigenvalues();
  }

  // Group by energy within the degeneracy tolerance, preserving column order.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return energies[a] < energies[b]; });

  std::vector<EnergyLevel> levels;
  for (int idx : order) {
    if (levels.empty() ||
        energies[idx] - levels.back().energy > options.degeneracy_tol) {
      levels.push_back({energies[idx], {idx}});
    } else {
      levels.back().states.push_back(idx);
    }
  }
  return EnergyBasis(std::move(states), std::move(levels));
}

namespace {

void check_dims(const Mat& rho, const EnergyBasis& basis, const char* who) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

Mat block_diagonalize(const Mat& rho, const EnergyBasis& basis) {
  check_dims(rho, basis, "block_diagonalize");
  Mat r = basis.to_basis(rho);
  for (int i = 0; i < basis.dim(); ++i)
    for (int j = 0; j < basis.dim(); ++j)
      if (basis.level_of(i) != basis.level_of(j)) r(i, j) = Complex(0.0);
  return basis.from_basis(r);
}

Mat strict_diagonalize(const Mat& rho, const EnergyBasis& basis) {
  check_dims(rho, basis, "strict_diagonalize");
  Mat r = basis.to_basis(rho);
  const Vec d = r.diagonal();
  r.setZero();
  r.diagonal() = d;
  return basis.from_basis(r);
}

double l1_coherence(const Mat& rho, const EnergyBasis& basis) {
  check_dims(rho, basis, "l1_coherence");
  const Mat r = basis.to_basis(rho);
  double sum = 0.0;
  for (int i = 0; i < basis.dim(); ++i)
    for (int j = 0; j < basis.dim(); ++j)
      if (i != j) sum += std::abs(r(i, j));
  return sum;
}

}  // namespace qtherm
