#pragma once

#include <optional>
#include <vector>

#include "qtherm/model.hpp"

namespace qtherm {

struct EnergyLevel {
  double energy = 0.0;
  std::vector<int> states;  // column indices into EnergyBasis::states()
};

/// A fixed labeled eigenbasis |e,j> of the Hamiltonian: columns of states()
/// grouped into degenerate levels. The strict dephasing map and C_l1 depend
/// on this choice, so model constructors pin it (the computational basis for
/// the bundled models).
class EnergyBasis {
 public:
  EnergyBasis(Mat states, std::vector<EnergyLevel> levels);

  int dim() const { return static_cast<int>(states_.rows()); }
  const Mat& states() const { return states_; }
  const std::vector<EnergyLevel>& levels() const { return levels_; }
  int level_of(int state_index) const { return level_of_[state_index]; }

  /// True when states() is the identity (computational basis); dephasing and
  /// C_l1 then skip the basis rotation.
  bool is_computational() const { return computational_; }

  /// rho expressed in this basis, states()† rho states().
  Mat to_basis(const Mat& rho) const;
  Mat from_basis(const Mat& rho_in_basis) const;

 private:
  Mat states_;
  std::vector<EnergyLevel> levels_;
  std::vector<int> level_of_;
  bool computational_ = false;
};

struct EnergyBasisOptions {
  double degeneracy_tol = 1e-9;    // energies within it are grouped
  double orthonormality_tol = 1e-10;
  double eigenvector_tol = 1e-9;   // ||H|e,j> - e|e,j>||
};

/// Builds the model's energy basis. A preferred basis (columns = states) is
/// used verbatim after orthonormality and eigenvector checks; otherwise H is
/// diagonalized and eigenvalues grouped within degeneracy_tol.
EnergyBasis energy_basis(const LindbladModel& model,
                         const std::optional<Mat>& preferred_basis = std::nullopt,
                         const EnergyBasisOptions& options = {});

/// rho_bd = sum_e Pi_e rho Pi_e: keeps coherence inside degenerate levels.
Mat block_diagonalize(const Mat& rho, const EnergyBasis& basis);

/// rho_sd = sum_{e,j} Pi_{e,j} rho Pi_{e,j}: diagonal in the basis.
Mat strict_diagonalize(const Mat& rho, const EnergyBasis& basis);

/// l1-norm of coherence: sum over (e,j) != (e',j') of |<e,j|rho|e',j'>|.
double l1_coherence(const Mat& rho, const EnergyBasis& basis);

}  // namespace qtherm
