#include "qtherm/random_states.hpp"

#include <cmath>

namespace qtherm {

std::uint64_t Rng::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  constexpr double two_pi = 6.283185307179586476925286766559;
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = two_pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::normal_complex() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im);
}

DensityMatrix random_density_matrix(int dim, Rng& rng, double mix_identity) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.normal_complex();
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (1.0 - mix_identity) * rho;
  rho += (mix_identity / dim) * Mat::Identity(dim, dim);
  return DensityMatrix(hermitian_part(rho));
}

DensityMatrix random_block_diagonal_state(const EnergyBasis& basis, Rng& rng,
                                          double mix_identity) {
  const DensityMatrix full = random_density_matrix(basis.dim(), rng, mix_identity);
  return DensityMatrix(hermitian_part(block_diagonalize(full.mat(), basis)));
}

Mat random_hermitian(int dim, Rng& rng) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.normal_complex();
  return hermitian_part(g);
}

}  // namespace qtherm
