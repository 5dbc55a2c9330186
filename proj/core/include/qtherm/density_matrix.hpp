#pragma once

#include <optional>
#include <string>

#include "qtherm/matrix.hpp"

namespace qtherm {

/// State validation tolerances: Hermiticity and trace to 1e-10, eigenvalues
/// allowed down to -1e-10.
struct StateTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double positivity = 1e-10;
};

/// Trace-one positive-semidefinite Hermitian matrix.
class DensityMatrix {
 public:
  /// Validates on construction; throws std::invalid_argument on failure.
  explicit DensityMatrix(Mat m, const StateTolerances& tol = {});

  /// Skips validation; for states produced by already-validated paths.
  static DensityMatrix unchecked(Mat m);

  const Mat& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  /// Empty on success, otherwise a description of the violated invariant.
  static std::optional<std::string> check(const Mat& m, const StateTolerances& tol = {});

 private:
  DensityMatrix() = default;
  Mat mat_;
};

/// exp(-beta H)/Z for Hermitian H.
DensityMatrix gibbs_state(const Mat& hamiltonian, double beta);

}  // namespace qtherm
