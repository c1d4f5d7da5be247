#pragma once

#include <cmath>

#include "momentkit/common.hpp"
#include "momentkit/gamma.hpp"
#include "momentkit/measure.hpp"
#include "momentkit/stieltjes.hpp"

namespace momentkit {

/// Order parameter alpha for the polylogarithm family, restricted to
/// [0, 50] end to end (the gamma evaluation and the integral representation
/// are validated on that range).
class PolylogOrder {
 public:
  explicit PolylogOrder(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0) || alpha > 50.0)
      throw std::invalid_argument("polylog order must lie in [0, 50], got " +
                                  fmt17(alpha));
  }
  double value() const { return alpha_; }

 private:
  double alpha_;
};

/// The generating function g_alpha(z) = Li_alpha(z) / z, built from its
/// measure: order zero is the point mass at 1 (geometric series), positive
/// orders carry the log-power density with moments (k+1)^(-alpha).
inline StieltjesFunction g_alpha(PolylogOrder alpha) {
  if (alpha.value() == 0.0)
    return StieltjesFunction(Measure::point_mass(Rational(1)));
  return StieltjesFunction(
      Measure::with_density(DensitySpec::log_power(alpha.value())));
}

inline StieltjesFunction g_alpha(double alpha) {
  return g_alpha(PolylogOrder(alpha));
}

/// Direct series sum_{k>=1} z^k / k^alpha; valid for |z| <= 1/2, where the
/// geometric tail bound certifies full double accuracy.
inline Complex li_series(double alpha, Complex z) {
  double r = std::abs(z);
  if (r > 0.5)
    throw std::invalid_argument("series branch needs |z| <= 1/2, got |z|=" +
                                fmt17(r));
  if (z == Complex(0.0, 0.0)) return z;
  Complex sum(0.0, 0.0);
  Complex zk(1.0, 0.0);
  for (int k = 1; k <= 200; ++k) {
    zk *= z;
    sum += zk / std::pow(double(k), alpha);
    // Terms are dominated by |z|^k, so the remaining tail is geometric.
    if (std::abs(zk) / (1.0 - r) < 1e-17 * (std::abs(sum) + 1.0)) break;
  }
  return sum;
}

/// Integral representation z * integral of sigma_alpha(t) / (1 - t z) dt,
/// valid on the whole slit plane for alpha > 0.
inline Complex li_integral(double alpha, SlitPoint z) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("integral branch needs alpha > 0");
  EvalResult kernel = detail_stieltjes_access::density_kernel(
      DensitySpec::log_power(alpha), z.value(), 1e-13);
  return z.value() * kernel.value;
}

/// Polylogarithm Li_alpha on the slit plane.  Closed form at order zero;
/// otherwise the series inside |z| <= 1/2 and the integral representation
/// outside (the two branches agree to ~1e-10 on the overlap band).
inline Complex li(PolylogOrder alpha, SlitPoint z) {
  Complex zv = z.value();
  if (alpha.value() == 0.0) return zv / (1.0 - zv);
  if (std::abs(zv) <= 0.5) return li_series(alpha.value(), zv);
  return li_integral(alpha.value(), z);
}

inline Complex li(double alpha, SlitPoint z) { return li(PolylogOrder(alpha), z); }

}  // namespace momentkit
