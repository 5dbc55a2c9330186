#pragma once

#include <cstdint>

#include "qtherm/density_matrix.hpp"
#include "qtherm/energy_basis.hpp"

namespace qtherm {

/// Seeded generator with explicit bit-to-double conversion so the stream is
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();                       // standard normal (Box-Muller)
  Complex normal_complex();              // independent N(0,1) re and im

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Full-rank state from the Hilbert-Schmidt ensemble (G G†/Tr, G Ginibre),
/// mixed with mix_identity * I/d to keep the support numerically solid.
DensityMatrix random_density_matrix(int dim, Rng& rng, double mix_identity = 1e-3);

/// Block-diagonal full-support state in the given basis.
DensityMatrix random_block_diagonal_state(const EnergyBasis& basis, Rng& rng,
                                          double mix_identity = 1e-3);

Mat random_hermitian(int dim, Rng& rng);

}  // namespace qtherm
