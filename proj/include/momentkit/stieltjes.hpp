#pragma once

#include <cmath>
#include <memory>
#include <mutex>
#include <utility>
#include <variant>
#include <vector>

#include "momentkit/common.hpp"
#include "momentkit/gamma.hpp"
#include "momentkit/measure.hpp"
#include "momentkit/moments.hpp"
#include "momentkit/quadrature.hpp"

namespace momentkit {

/// A point of the slit plane C \ [1, inf), kept a guard distance away from
/// the cut so nearby evaluations stay well conditioned.
class SlitPoint {
 public:
  static constexpr double guard = 1e-8;

  SlitPoint(double re, double im) : SlitPoint(Complex(re, im)) {}

  explicit SlitPoint(Complex z) : z_(z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("evaluation point must be finite");
    double d = slit_distance(z);
    if (d < guard) throw SlitViolationError(z, d);
  }

  Complex value() const { return z_; }

  /// Distance to the cut [1, inf).
  static double slit_distance(Complex z) {
    if (z.real() <= 1.0) return std::abs(z - Complex(1.0, 0.0));
    return std::abs(z.imag());
  }

 private:
  Complex z_;
};

struct EvalResult {
  Complex value;
  double abs_error = 0.0;
};

/// A function F(z) = integral of 1 / (1 - t z) over a probability measure on
/// [0,1], or a coefficientwise (Hadamard) product of two such functions.
/// Values are immutable and cheap to copy; Taylor prefixes are cached.
class StieltjesFunction {
 public:
  explicit StieltjesFunction(Measure mu)
      : impl_(std::make_shared<Impl>(std::move(mu))) {}

  bool measure_backed() const {
    return std::holds_alternative<Measure>(impl_->rep);
  }

  const Measure& measure() const {
    if (!measure_backed())
      throw std::logic_error("function is a product, not measure backed");
    return std::get<Measure>(impl_->rep);
  }

 private:
  struct Impl;
  using ImplPtr = std::shared_ptr<const Impl>;

  struct Product {
    ImplPtr left;
    ImplPtr right;
  };

  struct Impl {
    explicit Impl(Measure mu) : rep(std::move(mu)) {}
    explicit Impl(Product p) : rep(std::move(p)) {}
    std::variant<Measure, Product> rep;
    mutable std::mutex cache_mutex;
    mutable std::shared_ptr<const MomentSequence> taylor_cache;
  };

  explicit StieltjesFunction(ImplPtr impl) : impl_(std::move(impl)) {}

  static StieltjesFunction make_product(const StieltjesFunction& left,
                                        const StieltjesFunction& right) {
    return StieltjesFunction(
        std::make_shared<Impl>(Product{left.impl_, right.impl_}));
  }

  ImplPtr impl_;

  friend StieltjesFunction hadamard(const StieltjesFunction&,
                                    const StieltjesFunction&);
  friend MomentSequence taylor(const StieltjesFunction&, int);
  friend struct detail_stieltjes_access;
};

// Internal evaluation plumbing; guards are enforced at the public entry
// points, interior points t*z stay off the cut automatically for t in [0,1).
struct detail_stieltjes_access {
  using Product = StieltjesFunction::Product;
  using ImplPtr = StieltjesFunction::ImplPtr;

  static const std::variant<Measure, Product>& rep(const StieltjesFunction& f) {
    return f.impl_->rep;
  }

  static StieltjesFunction wrap(const ImplPtr& impl) {
    return StieltjesFunction(impl);
  }

  /// Integral of sigma(t) / (1 - t z) dt for a density component.
  static EvalResult density_kernel(const DensitySpec& d, Complex z, double tol) {
    double attained = 0.0;
    Complex value;
    switch (d.family()) {
      case DensitySpec::Family::log_power: {
        // t = exp(-u): the weight becomes u^(alpha-1) exp(-u) / Gamma(alpha).
        double alpha = d.param();
        double norm = gamma_fn(alpha);
        value = quad::halfline(
            [&](double u) {
              return quad::pow_exp(u, alpha - 1.0, 1.0) /
                     (norm * (1.0 - std::exp(-u) * z));
            },
            tol, &attained);
        break;
      }
      case DensitySpec::Family::power:
        if (d.param() < 0.0) {
          value = quad::unit_interval_singular(
              [&](double t) { return d.value(t) / (1.0 - t * z); }, tol,
              &attained);
          break;
        }
        [[fallthrough]];
      default:
        value = quad::unit_interval(
            [&](double t) { return d.value(t) / (1.0 - t * z); }, tol,
            &attained);
    }
    return {value, attained};
  }

  /// Composition form of the product evaluation: (f * g)(z) as the integral
  /// of f(t z) against g's measure.
  static EvalResult product_eval(const StieltjesFunction& f, const Measure& g,
                                 Complex z, double tol) {
    EvalResult acc{Complex(0.0, 0.0), 0.0};
    // Floor the inner target: nested products would otherwise shrink it
    // geometrically past what the quadrature rules can certify.  The slack
    // is reported through abs_error either way.
    const double inner_tol = std::max(tol * 0.01, 1e-13);
    for (const auto& [t, w] : g.atoms_d()) {
      EvalResult part = eval_unchecked(f, t * z, inner_tol);
      acc.value += w * part.value;
      acc.abs_error += w * part.abs_error;
    }
    if (g.density()) {
      const DensitySpec& d = *g.density();
      double attained = 0.0;
      Complex integral;
      if (d.family() == DensitySpec::Family::log_power) {
        double alpha = d.param();
        double norm = gamma_fn(alpha);
        integral = quad::halfline(
            [&](double u) {
              return quad::pow_exp(u, alpha - 1.0, 1.0) / norm *
                     eval_unchecked(f, std::exp(-u) * z, inner_tol).value;
            },
            tol, &attained);
      } else if (d.family() == DensitySpec::Family::power && d.param() < 0.0) {
        integral = quad::unit_interval_singular(
            [&](double t) {
              return d.value(t) * eval_unchecked(f, t * z, inner_tol).value;
            },
            tol, &attained);
      } else {
        integral = quad::unit_interval(
            [&](double t) {
              return d.value(t) * eval_unchecked(f, t * z, inner_tol).value;
            },
            tol, &attained);
      }
      acc.value += g.density_weight_d() * integral;
      acc.abs_error += g.density_weight_d() * (attained + inner_tol);
    }
    return acc;
  }

  static EvalResult eval_unchecked(const StieltjesFunction& f, Complex z,
                                   double tol) {
    if (const auto* mu = std::get_if<Measure>(&rep(f))) {
      EvalResult acc{Complex(0.0, 0.0), 0.0};
      for (const auto& [t, w] : mu->atoms_d()) {
        acc.value += w / (1.0 - t * z);
        acc.abs_error += 4.0 * std::numeric_limits<double>::epsilon();
      }
      if (mu->density()) {
        EvalResult part = density_kernel(*mu->density(), z, tol);
        acc.value += mu->density_weight_d() * part.value;
        acc.abs_error += mu->density_weight_d() * part.abs_error;
      }
      return acc;
    }
    const auto& p = std::get<Product>(rep(f));
    StieltjesFunction left = wrap(p.left);
    StieltjesFunction right = wrap(p.right);
    if (right.measure_backed())
      return product_eval(left, right.measure(), z, tol);
    if (left.measure_backed())
      return product_eval(right, left.measure(), z, tol);
    // Both factors are products: reassociate until the right factor is a
    // measure.  The coefficientwise product is associative, so
    // L * (A * B) = (L * A) * B evaluates the same function.
    const auto& q = std::get<Product>(rep(right));
    StieltjesFunction rotated = StieltjesFunction::make_product(
        StieltjesFunction::make_product(left, wrap(q.left)), wrap(q.right));
    return eval_unchecked(rotated, z, tol);
  }
};

/// F(z) with an a-posteriori absolute error estimate.
inline EvalResult eval_with_error(const StieltjesFunction& f, SlitPoint z,
                                  double tol = 1e-12) {
  return detail_stieltjes_access::eval_unchecked(f, z.value(), tol);
}

inline Complex eval(const StieltjesFunction& f, SlitPoint z, double tol = 1e-12) {
  return eval_with_error(f, z, tol).value;
}

/// First `count` Taylor coefficients at 0; these are the moments of the
/// backing measure (termwise products of them, for Hadamard products).
/// Results are cached: repeated calls reuse the longest computed prefix.
inline MomentSequence taylor(const StieltjesFunction& f, int count) {
  if (count < 1) throw std::invalid_argument("need at least one coefficient");
  using Access = detail_stieltjes_access;
  {
    std::scoped_lock lock(f.impl_->cache_mutex);
    auto cached = f.impl_->taylor_cache;
    if (cached && cached->size() >= static_cast<std::size_t>(count))
      return cached->prefix(static_cast<std::size_t>(count));
  }
  MomentSequence computed = std::visit(
      [&](const auto& rep) -> MomentSequence {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Measure>) {
          return moments_of(rep, count);
        } else {
          MomentSequence a = taylor(Access::wrap(rep.left), count);
          MomentSequence b = taylor(Access::wrap(rep.right), count);
          if (a.exact() && b.exact()) {
            std::vector<Rational> terms(static_cast<std::size_t>(count));
            for (int k = 0; k < count; ++k)
              terms[static_cast<std::size_t>(k)] =
                  a.rationals()[static_cast<std::size_t>(k)] *
                  b.rationals()[static_cast<std::size_t>(k)];
            return MomentSequence::from_rationals(std::move(terms));
          }
          std::vector<double> terms(static_cast<std::size_t>(count));
          for (int k = 0; k < count; ++k)
            terms[static_cast<std::size_t>(k)] =
                a.term_d(static_cast<std::size_t>(k)) * b.term_d(static_cast<std::size_t>(k));
          return MomentSequence::from_doubles(std::move(terms));
        }
      },
      Access::rep(f));
  std::scoped_lock lock(f.impl_->cache_mutex);
  auto cached = f.impl_->taylor_cache;
  if (!cached || cached->size() < computed.size())
    f.impl_->taylor_cache = std::make_shared<const MomentSequence>(computed);
  return computed;
}

/// Coefficientwise product.  Two atomic measures multiply exactly into the
/// pushforward atomic measure (locations s_i t_j, weights w_i v_j); any
/// density component keeps the product symbolic.
inline StieltjesFunction hadamard(const StieltjesFunction& f,
                                  const StieltjesFunction& g) {
  if (f.measure_backed() && g.measure_backed()) {
    const Measure& mf = f.measure();
    const Measure& mg = g.measure();
    if (!mf.density() && !mg.density()) {
      std::vector<Atom> atoms;
      atoms.reserve(mf.atoms().size() * mg.atoms().size());
      for (const auto& a : mf.atoms())
        for (const auto& b : mg.atoms())
          atoms.push_back(Atom{a.location * b.location, a.weight * b.weight});
      return StieltjesFunction(Measure::from_atoms(std::move(atoms)));
    }
  }
  // Keep a measure-backed factor on the right where the evaluator wants it.
  if (!g.measure_backed() && f.measure_backed())
    return StieltjesFunction::make_product(g, f);
  return StieltjesFunction::make_product(f, g);
}

/// (f * g)(z) via the composition integral of f(t z) against g's measure.
inline EvalResult hadamard_eval_with_error(const StieltjesFunction& f,
                                           const StieltjesFunction& g,
                                           SlitPoint z, double tol = 1e-10) {
  StieltjesFunction product = hadamard(f, g);
  return detail_stieltjes_access::eval_unchecked(product, z.value(), tol);
}

inline Complex hadamard_eval(const StieltjesFunction& f,
                             const StieltjesFunction& g, SlitPoint z,
                             double tol = 1e-10) {
  return hadamard_eval_with_error(f, g, z, tol).value;
}

struct SeriesResult {
  Complex value;
  double tail_bound = 0.0;
  int terms_used = 0;
};

/// Partial sum of sum_k a_k z^k with a certified tail bound, valid for
/// |z| <= 1/2 and non-increasing non-negative coefficients (true for every
/// moment sequence): |tail| <= a_N |z|^N / (1 - |z|).
inline SeriesResult series_eval_with_bound(const MomentSequence& seq, Complex z,
                                           int budget = 128) {
  double r = std::abs(z);
  if (r > 0.5)
    throw std::invalid_argument("series evaluation needs |z| <= 1/2, got |z|=" +
                                fmt17(r));
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  int n = std::min<int>(budget, static_cast<int>(seq.size()));
  Complex sum(0.0, 0.0);
  Complex zk(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    sum += seq.term_d(static_cast<std::size_t>(k)) * zk;
    zk *= z;
  }
  double last = std::abs(seq.term_d(static_cast<std::size_t>(n - 1)));
  double tail = last * std::pow(r, double(n)) / (1.0 - r);
  return {sum, tail, n};
}

/// Strict form: throws InsufficientBudgetError unless the tail bound is
/// within `target`.
inline Complex series_eval(const MomentSequence& seq, Complex z,
                           int budget = 128, double target = 1e-12) {
  SeriesResult r = series_eval_with_bound(seq, z, budget);
  if (r.tail_bound > target)
    throw InsufficientBudgetError(
        "series budget of " + std::to_string(budget) + " terms is too small",
        r.tail_bound);
  return r.value;
}

/// Taylor coefficients of the formal quotient (sum a_k z^k) / (sum b_k z^k).
/// Needs b_0 != 0.  Exact when both inputs are exact; the result is a plain
/// sequence (quotients may go negative, which is what the monotonicity
/// checks are for).
inline MomentSequence quotient_taylor(const MomentSequence& num,
                                      const MomentSequence& den, int count) {
  if (count < 1) throw std::invalid_argument("need at least one coefficient");
  std::size_t n = static_cast<std::size_t>(count);
  if (num.size() < n || den.size() < n)
    throw std::invalid_argument("quotient needs " + std::to_string(count) +
                                " coefficients of both operands");
  if (num.exact() && den.exact()) {
    const auto& a = num.rationals();
    const auto& b = den.rationals();
    if (b[0] == 0)
      throw DegeneratePointError("quotient needs a nonzero leading denominator");
    std::vector<Rational> c(n);
    for (std::size_t k = 0; k < n; ++k) {
      Rational acc = a[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * c[k - j];
      c[k] = acc / b[0];
    }
    return MomentSequence::from_rationals(std::move(c));
  }
  std::vector<double> a = num.doubles();
  std::vector<double> b = den.doubles();
  if (b[0] == 0.0)
    throw DegeneratePointError("quotient needs a nonzero leading denominator");
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = a[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * c[k - j];
    c[k] = acc / b[0];
  }
  return MomentSequence::from_doubles(std::move(c));
}

}  // namespace momentkit
