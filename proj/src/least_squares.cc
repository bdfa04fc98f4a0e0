#include "kimpa/least_squares.h"

#include <cmath>

namespace kimpa {

LeastSquaresResult levenberg_marquardt(const ResidualFn& fn,
                                       Eigen::VectorXd p,
                                       const LeastSquaresOptions& opt) {
  LeastSquaresResult out;
  Eigen::VectorXd r, r_try;
  Eigen::MatrixXd jac;
  fn(p, r, &jac);
  double cost = 0.5 * r.squaredNorm();
  const double cost0 = cost;

  Eigen::MatrixXd jtj = jac.transpose() * jac;
  Eigen::VectorXd grad = jac.transpose() * r;
  double lambda = 1e-3 * jtj.diagonal().maxCoeff();
  if (!(lambda > 0.0)) lambda = 1e-3;
  double nu = 2.0;

  for (int it = 1; it <= opt.max_iterations; ++it) {
    out.iterations = it;
    if (cost == 0.0 || cost <= 1e-32 * cost0) {
      out.converged = true;
      out.message = "zero residual";
      break;
    }
    Eigen::MatrixXd a = jtj;
    for (Eigen::Index k = 0; k < a.rows(); ++k)
      a(k, k) += lambda * std::max(jtj(k, k), 1e-300);
    const Eigen::VectorXd step = a.ldlt().solve(-grad);
    if (!step.allFinite()) {
      lambda *= nu;
      nu *= 2.0;
      continue;
    }
    const Eigen::VectorXd p_try = p + step;
    fn(p_try, r_try, nullptr);
    const double cost_try = 0.5 * r_try.squaredNorm();

    if (std::isfinite(cost_try) && cost_try < cost) {
      const double drop = cost - cost_try;
      const bool small_step =
          step.norm() <= opt.rel_tol * (p.norm() + opt.rel_tol);
      p = p_try;
      cost = cost_try;
      fn(p, r, &jac);
      jtj = jac.transpose() * jac;
      grad = jac.transpose() * r;
      lambda = std::max(lambda / 3.0, 1e-300);
      nu = 2.0;
      if (drop <= opt.rel_tol * cost || small_step) {
        out.converged = true;
        out.message = "relative tolerance reached";
        break;
      }
    } else {
      lambda *= nu;
      nu *= 2.0;
      // A step this damped moves nothing: we sit at a stationary point.
      if (lambda > 1e20 * (jtj.diagonal().maxCoeff() + 1e-300)) {
        out.converged = grad.norm() <= 1e-6 * (std::sqrt(2.0 * cost) + 1e-300) *
                                           (jac.norm() + 1e-300);
        out.message = out.converged ? "stationary point" : "damping diverged";
        break;
      }
    }
  }
  if (!out.converged && out.message.empty())
    out.message = "iteration cap reached";
  out.params = p;
  out.cost = cost;
  return out;
}

}  // namespace kimpa
