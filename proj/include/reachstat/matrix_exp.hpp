#pragma once

#include <Eigen/Dense>

namespace reachstat {

/// e^{A t} by scaling and squaring with the degree-13 Pade approximant.
/// The squaring count is chosen from the 1-norm of A t.
/// Throws InputError on non-finite input or a non-square matrix.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& a, double t = 1.0);

}  // namespace reachstat
