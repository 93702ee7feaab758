#include "reachstat/matrix_exp.hpp"

#include <cmath>

#include "reachstat/errors.hpp"

namespace reachstat {

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& a, double t) {
  if (a.rows() != a.cols()) throw InputError("matrix_exp: matrix must be square");
  if (!std::isfinite(t)) throw InputError("matrix_exp: time must be finite");
  if (!a.allFinite()) throw InputError("matrix_exp: matrix has non-finite entries");
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd at = a * t;

  constexpr double kTheta13 = 5.371920351148152;
  constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                          1187353796428800.0,  129060195264000.0,   10559470521600.0,
                          670442572800.0,      33522128640.0,       1323241920.0,
                          40840800.0,          960960.0,            16380.0,
                          182.0,               1.0};

  const double norm1 = at.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  if (squarings > 0) at /= std::ldexp(1.0, squarings);

  const Eigen::MatrixXd a2 = at * at;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const Eigen::MatrixXd u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                                  b[3] * a2 + b[1] * id;
  const Eigen::MatrixXd u = at * u_inner;
  const Eigen::MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                            b[2] * a2 + b[0] * id;
  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

}  // namespace reachstat
