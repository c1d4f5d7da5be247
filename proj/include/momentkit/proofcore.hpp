#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "momentkit/common.hpp"
#include "momentkit/grid.hpp"
#include "momentkit/measure.hpp"
#include "momentkit/report.hpp"
#include "momentkit/stieltjes.hpp"
#include "momentkit/tolerance.hpp"

namespace momentkit {

/// Parameter tuple for the circular-arc ratio q and its companions.
/// Construction normalizes the order to t1 <= t2 (the expressions are
/// symmetric up to that swap) and validates the ranges.
struct ProofPoint {
  double kappa;
  double y;
  double tau;
  double t1;
  double t2;

  ProofPoint(double kappa, double y, double tau, double t1, double t2)
      : kappa(kappa), y(y), tau(tau), t1(t1), t2(t2) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
      throw std::invalid_argument("kappa must be >= 0");
    if (!(y > 0.0) || !std::isfinite(y))
      throw std::invalid_argument("y must be > 0");
    if (!(tau >= 0.0) || !(tau <= 1.0))
      throw std::invalid_argument("tau must lie in [0,1]");
    if (!(t1 >= 0.0) || !(t1 <= 1.0) || !(t2 >= 0.0) || !(t2 <= 1.0))
      throw std::invalid_argument("t1, t2 must lie in [0,1]");
    if (this->t1 > this->t2) std::swap(this->t1, this->t2);
  }
};

/// v(t) = (1 - t - i y t) / (1 - t - i tau y t).
/// Degenerate only at t = 1 with tau = 0, where the denominator vanishes.
inline Complex v_value(double t, double y, double tau) {
  if (!(t >= 0.0) || !(t <= 1.0))
    throw std::invalid_argument("t must lie in [0,1]");
  if (!(y > 0.0)) throw std::invalid_argument("y must be > 0");
  if (!(tau >= 0.0) || !(tau <= 1.0))
    throw std::invalid_argument("tau must lie in [0,1]");
  Complex den(1.0 - t, -tau * y * t);
  if (den == Complex(0.0, 0.0))
    throw DegeneratePointError("v is undefined at t=1 with tau=0");
  return Complex(1.0 - t, -y * t) / den;
}

namespace detail {

// The four building blocks of q: 1 - t - i c y t for c in {tau, 1} and
// t in {t1, t2}.
struct QParts {
  Complex A, B, C, D;
};

inline QParts q_parts(const ProofPoint& p) {
  return {Complex(1.0 - p.t1, -p.tau * p.y * p.t1),
          Complex(1.0 - p.t2, -p.tau * p.y * p.t2),
          Complex(1.0 - p.t1, -p.y * p.t1),
          Complex(1.0 - p.t2, -p.y * p.t2)};
}

inline void require_nondegenerate(const QParts& parts) {
  if (parts.A == Complex(0.0, 0.0) || parts.B == Complex(0.0, 0.0))
    throw DegeneratePointError("q is undefined at t=1 with tau=0");
}

}  // namespace detail

/// q(kappa) = (1/A + kappa/B) / (1/C + kappa/D) with
///   A = 1 - t1 - i tau y t1,  B = 1 - t2 - i tau y t2,
///   C = 1 - t1 - i y t1,      D = 1 - t2 - i y t2.
inline Complex q_value(const ProofPoint& p) {
  auto parts = detail::q_parts(p);
  detail::require_nondegenerate(parts);
  Complex num = 1.0 / parts.A + p.kappa / parts.B;
  Complex den = 1.0 / parts.C + p.kappa / parts.D;
  if (den == Complex(0.0, 0.0))
    throw DegeneratePointError("q denominator vanished");
  return num / den;
}

/// The kappa -> infinity endpoint of the arc, taken as the ratio of the
/// kappa-coefficients (never by a large-kappa evaluation): D/B = v(t2).
inline Complex q_limit_infinity(const ProofPoint& p) {
  auto parts = detail::q_parts(p);
  detail::require_nondegenerate(parts);
  return (1.0 / parts.B) / (1.0 / parts.D);
}

/// s(tau) = t1 t2* + t2 t1* - tau (t2 - t1), with t* = 1 - t.
inline double s_tau(const ProofPoint& p) {
  return p.t1 * (1.0 - p.t2) + p.t2 * (1.0 - p.t1) - p.tau * (p.t2 - p.t1);
}

/// The two building blocks of the derivative below; both are non-negative
/// (N strictly positive) away from the t=1, tau=0 degeneracy.
struct WPrimeTerms {
  double Z;
  double N;
};

inline WPrimeTerms w_prime_terms(const ProofPoint& p) {
  double t1s = 1.0 - p.t1, t2s = 1.0 - p.t2;
  double cross = p.t1 * t2s + p.t2 * t1s;
  double Z = t1s * t2s * (p.t2 - p.t1) + cross * t1s * t2s * p.tau +
             p.t1 * p.t2 * p.y * p.y * p.tau *
                 (cross - p.tau * (p.t2 - p.t1));
  auto sq = [](double v) { return v * v; };
  double N = (sq(t1s) + sq(p.t1 * p.y * p.tau)) *
             (sq(t2s) + sq(p.t2 * p.y * p.tau)) *
             (sq(t2s) + sq(p.t2 * p.y));
  return {Z, N};
}

/// Re q'(0) in closed form: (1 - tau)(t2 - t1) y^2 Z / N.
inline double re_w_prime_zero(const ProofPoint& p) {
  auto [Z, N] = w_prime_terms(p);
  if (N == 0.0)
    throw DegeneratePointError("derivative denominator vanished (t=1, tau=0)");
  return (1.0 - p.tau) * (p.t2 - p.t1) * p.y * p.y * Z / N;
}

/// rho at t1 plus 1-rho at t2; the extreme points of the ratio functional.
inline StieltjesFunction two_atom_function(double rho, double t1, double t2) {
  if (!(rho >= 0.0) || !(rho <= 1.0))
    throw std::invalid_argument("rho must lie in [0,1]");
  Rational r = rational_from_double(rho);
  return StieltjesFunction(Measure::from_atoms(
      {Atom{rational_from_double(t1), r},
       Atom{rational_from_double(t2), 1 - r}}));
}

namespace detail {

inline AxisSpec scan_axis(const GridSpec& grid, const std::string& name) {
  if (const AxisSpec* a = grid.find(name)) return *a;
  return AxisSpec(name, 0.0, 1.0, 20);
}

}  // namespace detail

/// Sweeps two-atom functions over (rho, t1, t2) and records the margin
/// Re f(gamma+iy1)/f(gamma+iy2) - 1.  The two-atom family is extreme for
/// this ratio, so the scan stands proxy for the whole class.  gamma > 1 is
/// deliberately allowed: that is where violations live.
inline VerificationReport extreme_range_scan(double y1, double y2, double gamma,
                                             const GridSpec& grid) {
  if (!(y1 > 0.0) || !(y1 <= y2))
    throw std::invalid_argument("need 0 < y1 <= y2");
  VerificationReport report;
  report.claim_id = "lemma1-range";
  report.param_names = {"rho", "t1", "t2"};
  report.tolerance = verification_tolerance(1e-9);
  AxisSpec rho_axis = detail::scan_axis(grid, "rho");
  AxisSpec t1_axis = detail::scan_axis(grid, "t1");
  AxisSpec t2_axis = detail::scan_axis(grid, "t2");
  report.grid = GridSpec({rho_axis, t1_axis, t2_axis});
  SlitPoint z1(gamma, y1), z2(gamma, y2);
  for (double rho : rho_axis.points())
    for (double t1 : t1_axis.points())
      for (double t2 : t2_axis.points()) {
        StieltjesFunction f = two_atom_function(rho, t1, t2);
        Complex ratio = eval(f, z1) / eval(f, z2);
        double params[] = {rho, t1, t2};
        report.record(params, ratio.real() - 1.0);
      }
  return report;
}

/// Re f(1+eps+i·eps) / f(1+eps+i) for the two-atom f with weights
/// 1/(1+2 eps) at 0 and 2 eps/(1+2 eps) at 1.  Equals 2 eps/(1+eps^2),
/// which drops below 1 for every eps != 1: the gamma > 1 counterexample.
inline double counterexample_value(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  Rational e = rational_from_double(eps);
  Rational w1 = 2 * e / (1 + 2 * e);
  StieltjesFunction f(Measure::from_atoms(
      {Atom{Rational(0), 1 - w1}, Atom{Rational(1), w1}}));
  SlitPoint z1(1.0 + eps, eps), z2(1.0 + eps, 1.0);
  Complex ratio = eval(f, z1) / eval(f, z2);
  return ratio.real();
}

/// The pushforward density of sigma under t -> x t:
/// (1/x) sigma(t/x) on (0, x], zero on (x, 1).
inline double sigma_star(const DensitySpec& sigma, double x, double t) {
  if (!(x > 0.0) || !(x <= 1.0))
    throw std::invalid_argument("x must lie in (0,1]");
  if (!(t > 0.0) || !(t < 1.0))
    throw std::invalid_argument("t must lie in (0,1)");
  if (t > x) return 0.0;
  return sigma.value(t / x) / x;
}

namespace detail {

inline AxisSpec density_axis(const GridSpec& grid) {
  if (const AxisSpec* a = grid.find("t")) return *a;
  // Interior by default: the named densities may blow up at the endpoints.
  return AxisSpec("t", 1e-3, 1.0 - 1e-3, 20);
}

}  // namespace detail

/// Core of the ordering check, over arbitrary positive functions on (0,1):
/// phi(t) psi(s) >= phi(s) psi(t) for all sampled s < t.
template <class Phi, class Psi>
VerificationReport lemma2_check_fns(Phi&& phi, Psi&& psi,
                                    const AxisSpec& t_axis,
                                    double base_tol = 1e-12) {
  VerificationReport report;
  report.claim_id = "lemma2-ordering";
  report.param_names = {"s", "t"};
  report.tolerance = verification_tolerance(base_tol);
  report.grid = GridSpec({t_axis});
  std::vector<double> pts = t_axis.points();
  std::vector<double> phis(pts.size()), psis(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    phis[i] = phi(pts[i]);
    psis[i] = psi(pts[i]);
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double params[] = {pts[i], pts[j]};
      report.record(params, phis[j] * psis[i] - phis[i] * psis[j]);
    }
  return report;
}

/// Density-pair form of the ordering check.
inline VerificationReport lemma2_check(const DensitySpec& phi,
                                       const DensitySpec& psi,
                                       const GridSpec& grid) {
  AxisSpec axis = detail::density_axis(grid);
  return lemma2_check_fns([&](double t) { return phi.value(t); },
                          [&](double t) { return psi.value(t); }, axis);
}

/// Samples h(t) = t sigma'(t) / sigma(t) and checks it is non-increasing
/// (weakly: constant h passes).  The usual hypothesis gate for the
/// log-slope theorems.
inline VerificationReport log_slope_decreasing_check(const DensitySpec& sigma,
                                                     const GridSpec& grid) {
  VerificationReport report;
  report.claim_id = "log-slope-monotone";
  report.param_names = {"s", "t"};
  report.tolerance = verification_tolerance(1e-9);
  AxisSpec axis = detail::density_axis(grid);
  report.grid = GridSpec({axis});
  std::vector<double> pts = axis.points();
  std::vector<double> h(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) h[i] = sigma.log_slope(pts[i]);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double params[] = {pts[i], pts[i + 1]};
    report.record(params, h[i] - h[i + 1]);
  }
  return report;
}

}  // namespace momentkit
