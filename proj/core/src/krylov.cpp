#include "stabsel/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace stabsel {

double StoppingRule::threshold(double b_norm) const {
  double t = 0.0;
  if (relative_tol) t = std::max(t, *relative_tol * b_norm);
  if (absolute_tol) t = std::max(t, *absolute_tol);
  return t;
}

void StoppingRule::validate() const {
  if (!relative_tol && !absolute_tol) throw ArgumentError("StoppingRule: no tolerance set");
  if (relative_tol && !(*relative_tol >= 0.0)) throw ArgumentError("StoppingRule: negative relative tolerance");
  if (absolute_tol && !(*absolute_tol >= 0.0)) throw ArgumentError("StoppingRule: negative absolute tolerance");
  if (max_iterations < 1) throw ArgumentError("StoppingRule: max_iterations must be >= 1");
}

SolveResult pcg_solve(const LinearOperator& a, const Preconditioner& m, const Vector& b,
                      const StoppingRule& rule, const std::optional<Vector>& x0) {
  rule.validate();
  const Index d = a.dim();
  require_same_dim(d, m.dim(), "pcg_solve preconditioner");
  require_same_dim(d, b.size(), "pcg_solve right-hand side");

  SolveResult result;
  result.tolerance = rule.threshold(b.norm());

  Vector r(d);
  Vector ap(d);
  if (x0) {
    require_same_dim(d, x0->size(), "pcg_solve initial guess");
    result.x = *x0;
    a.apply(result.x, ap);
    ++result.operator_applies;
    r = b - ap;
  } else {
    result.x = Vector::Zero(d);
    r = b;
  }

  double res_norm = r.norm();
  result.final_residual_norm = res_norm;
  if (res_norm <= result.tolerance) {
    result.converged = true;
  } else {
    Vector z(d);
    m.apply(r, z);
    ++result.preconditioner_applies;
    double rz = r.dot(z);
    if (!(rz > 0.0)) throw NumericalError("operator or preconditioner not positive definite at iteration 0");
    Vector p = z;
    result.residual_history.reserve(static_cast<std::size_t>(std::min<Index>(rule.max_iterations, 4096)));

    while (result.iterations < rule.max_iterations) {
      a.apply(p, ap);
      ++result.operator_applies;
      const double pap = p.dot(ap);
      const Index t = result.iterations + 1;
      if (!(pap > 0.0)) {
        throw NumericalError("operator or preconditioner not positive definite at iteration " + std::to_string(t));
      }
      const double alpha = rz / pap;
      result.x.noalias() += alpha * p;
      r.noalias() -= alpha * ap;
      result.iterations = t;
      res_norm = r.norm();
      result.residual_history.push_back(res_norm);
      if (res_norm <= result.tolerance) {
        result.converged = true;
        break;
      }
      if (result.iterations == rule.max_iterations) break;
      m.apply(r, z);
      ++result.preconditioner_applies;
      const double rz_next = r.dot(z);
      if (!(rz_next > 0.0)) {
        throw NumericalError("operator or preconditioner not positive definite at iteration " + std::to_string(t));
      }
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
    result.final_residual_norm = res_norm;
  }

  a.apply(result.x, ap);
  ++result.operator_applies;
  result.true_residual_norm = (b - ap).norm();
  if (std::abs(result.true_residual_norm - result.final_residual_norm) > 10.0 * result.tolerance &&
      result.tolerance > 0.0) {
    std::ostringstream msg;
    msg << "explicit residual " << result.true_residual_norm << " differs from recurrence residual "
        << result.final_residual_norm << " by more than 10x tolerance " << result.tolerance;
    result.warning = msg.str();
    std::clog << "stabsel: warning: " << *result.warning << '\n';
  }
  return result;
}

}  // namespace stabsel
