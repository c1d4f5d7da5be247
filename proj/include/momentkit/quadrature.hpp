#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <utility>

#include "momentkit/common.hpp"

namespace momentkit::quad {

/// Adaptive Gauss-Kronrod on [0,1] for bounded integrands.  `abs_tol` is an
/// absolute error target; throws QuadratureError when the internal error
/// estimate exceeds it.  Real and complex integrands are both supported.
template <class F>
auto unit_interval(F&& f, double abs_tol, double* attained = nullptr) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  auto value = gauss_kronrod<double, 15>::integrate(std::forward<F>(f), 0.0, 1.0,
                                                    15, abs_tol / 8.0, &err);
  if (attained != nullptr) *attained = err;
  if (!(err <= abs_tol))
    throw QuadratureError("integration over [0,1] did not converge", err, abs_tol);
  return value;
}

/// tanh-sinh on (0,1); tolerates integrable endpoint singularities.
template <class F>
auto unit_interval_singular(F&& f, double abs_tol, double* attained = nullptr) {
  using boost::math::quadrature::tanh_sinh;
  static thread_local tanh_sinh<double> integrator(15);
  double err = 0.0, l1 = 0.0;
  // The boost tolerance is relative to L1, same contract as the check below;
  // asking for extra digits forces full refinement at every level.
  auto value = integrator.integrate(std::forward<F>(f), 0.0, 1.0,
                                    abs_tol, &err, &l1);
  if (attained != nullptr) *attained = err;
  if (!(err <= abs_tol * std::max(1.0, l1)))
    throw QuadratureError("integration over (0,1) did not converge", err, abs_tol);
  return value;
}

/// u^p * exp(-c*u) without the inf*0 = NaN that the naive product hits at
/// the huge abscissae exp-sinh probes.  p == 0 avoids 0 * log(0) at u -> 0.
inline double pow_exp(double u, double p, double c) {
  if (p == 0.0) return std::exp(-c * u);
  return std::exp(p * std::log(u) - c * u);
}

/// exp-sinh on (0, inf) for integrands with exponential decay.
template <class F>
auto halfline(F&& f, double abs_tol, double* attained = nullptr) {
  using boost::math::quadrature::exp_sinh;
  static thread_local exp_sinh<double> integrator(12);
  double err = 0.0, l1 = 0.0;
  auto value = integrator.integrate(std::forward<F>(f), abs_tol, &err, &l1);
  if (attained != nullptr) *attained = err;
  if (!(err <= abs_tol * std::max(1.0, l1)))
    throw QuadratureError("integration over (0,inf) did not converge", err, abs_tol);
  return value;
}

}  // namespace momentkit::quad
