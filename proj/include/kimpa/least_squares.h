#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace kimpa {

// Residuals r(p) and, when `jac` is non-null, the Jacobian dr/dp.
using ResidualFn = std::function<void(const Eigen::VectorXd& p,
                                      Eigen::VectorXd& r,
                                      Eigen::MatrixXd* jac)>;

struct LeastSquaresOptions {
  double rel_tol = 1e-10;
  int max_iterations = 200;
};

struct LeastSquaresResult {
  Eigen::VectorXd params;
  double cost = 0.0;  // 0.5 * |r|^2
  int iterations = 0;
  bool converged = false;
  std::string message;
};

// Damped Gauss-Newton with Marquardt diagonal scaling.
LeastSquaresResult levenberg_marquardt(const ResidualFn& fn,
                                       Eigen::VectorXd p0,
                                       const LeastSquaresOptions& opt = {});

}  // namespace kimpa
