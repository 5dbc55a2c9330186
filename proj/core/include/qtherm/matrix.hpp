#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qtherm {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Largest entrywise absolute value.
double max_abs(const Mat& a);

/// max_ij |a_ij - conj(a_ji)|, zero for an exactly Hermitian matrix.
double hermiticity_residual(const Mat& a);

bool all_finite(const Mat& a);

Mat commutator(const Mat& a, const Mat& b);
Mat anticommutator(const Mat& a, const Mat& b);

/// (a + a†)/2
Mat hermitian_part(const Mat& a);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Mat& a);

double min_eigenvalue(const Mat& hermitian);

/// Trace distance (1/2)·||a - b||_1 between Hermitian matrices.
double trace_distance(const Mat& a, const Mat& b);

/// Squared operator 2-norm, i.e. the largest eigenvalue of a†a.
double operator_norm_sq(const Mat& a);

/// -Tr[rho log rho] over eigenvalues above `floor`; natural log, k_B = 1.
double von_neumann_entropy(const Mat& rho, double floor = 1e-12);

}  // namespace qtherm
