#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "momentkit/common.hpp"
#include "momentkit/gamma.hpp"
#include "momentkit/quadrature.hpp"
#include "momentkit/rational.hpp"

namespace momentkit {

struct DerivativeUnavailableError : Error {
  using Error::Error;
};

/// An absolutely continuous component on (0,1), normalised to unit mass.
class DensitySpec {
 public:
  enum class Family { uniform, power, log_power, tabulated };

  static DensitySpec uniform() { return DensitySpec(Family::uniform, 0.0); }

  /// sigma(t) = (p+1) t^p, p > -1.
  static DensitySpec power(double p) {
    if (!(p > -1.0))
      throw std::invalid_argument("power density needs exponent > -1, got " +
                                  fmt17(p));
    return DensitySpec(Family::power, p);
  }

  /// sigma(t) = log(1/t)^(alpha-1) / Gamma(alpha), alpha in (0, 50].
  static DensitySpec log_power(double alpha) {
    if (!(alpha > 0.0) || alpha > 50.0)
      throw std::invalid_argument(
          "log_power density needs order in (0, 50], got " + fmt17(alpha));
    return DensitySpec(Family::log_power, alpha);
  }

  /// Piecewise-linear interpolant of (t, sigma) samples, rescaled to unit
  /// mass; zero outside the sampled range.
  static DensitySpec tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2)
      throw std::invalid_argument("tabulated density needs at least 2 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      auto [t, s] = samples[i];
      if (!(t >= 0.0) || !(t <= 1.0))
        throw std::invalid_argument("tabulated sample location outside [0,1]");
      if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("tabulated sample value must be >= 0");
      if (i > 0 && !(t > samples[i - 1].first))
        throw std::invalid_argument(
            "tabulated sample locations must be strictly increasing");
    }
    double mass = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i)
      mass += 0.5 * (samples[i].second + samples[i - 1].second) *
              (samples[i].first - samples[i - 1].first);
    if (!(mass > 0.0))
      throw std::invalid_argument("tabulated density has zero mass");
    for (auto& [t, s] : samples) s /= mass;
    DensitySpec d(Family::tabulated, 0.0);
    d.samples_ = std::move(samples);
    return d;
  }

  Family family() const { return family_; }
  double param() const { return param_; }
  const std::vector<std::pair<double, double>>& samples() const {
    return samples_;
  }

  /// Normalised density value at t in (0,1).  May be +inf at an endpoint
  /// singularity (power with p < 0 at 0, log_power with alpha > 1 at 0).
  double value(double t) const {
    switch (family_) {
      case Family::uniform:
        return 1.0;
      case Family::power:
        return (param_ + 1.0) * std::pow(t, param_);
      case Family::log_power:
        return std::pow(std::log(1.0 / t), param_ - 1.0) / gamma_fn(param_);
      case Family::tabulated:
        return interpolate(t);
    }
    return 0.0;
  }

  /// d sigma / dt.  Tabulated densities use centred differences on the
  /// interpolant and need at least 3 samples.
  double derivative(double t) const {
    switch (family_) {
      case Family::uniform:
        return 0.0;
      case Family::power:
        return (param_ + 1.0) * param_ * std::pow(t, param_ - 1.0);
      case Family::log_power: {
        double L = std::log(1.0 / t);
        return -(param_ - 1.0) * std::pow(L, param_ - 2.0) /
               (t * gamma_fn(param_));
      }
      case Family::tabulated: {
        if (samples_.size() < 3)
          throw DerivativeUnavailableError(
              "tabulated density needs at least 3 samples for a derivative");
        double t_lo = samples_.front().first;
        double t_hi = samples_.back().first;
        double h = 0.5 * min_spacing();
        double a = std::max(t - h, t_lo);
        double b = std::min(t + h, t_hi);
        if (!(b > a))
          throw DerivativeUnavailableError(
              "tabulated derivative query outside the sampled range");
        return (interpolate(b) - interpolate(a)) / (b - a);
      }
    }
    return 0.0;
  }

  /// t sigma'(t) / sigma(t); closed forms where available.
  double log_slope(double t) const {
    switch (family_) {
      case Family::uniform:
        return 0.0;
      case Family::power:
        return param_;
      case Family::log_power:
        return (1.0 - param_) / std::log(1.0 / t);
      case Family::tabulated:
        return t * derivative(t) / value(t);
    }
    return 0.0;
  }

  bool exact_moments() const {
    return family_ == Family::uniform || family_ == Family::power;
  }

  /// Exact k-th moment for the uniform / power families.
  Rational moment_exact(int k) const {
    if (k < 0) throw std::invalid_argument("moment index must be >= 0");
    switch (family_) {
      case Family::uniform:
        return Rational(1, k + 1);
      case Family::power: {
        Rational p = rational_from_double(param_);
        return (p + 1) / (p + k + 1);
      }
      default:
        throw std::invalid_argument("density family has no exact moments");
    }
  }

  /// k-th moment by quadrature, absolute error <= tol.
  double moment_numeric(int k, double tol) const {
    if (k < 0) throw std::invalid_argument("moment index must be >= 0");
    switch (family_) {
      case Family::uniform:
        return 1.0 / (k + 1);
      case Family::power:
        return (param_ + 1.0) / (param_ + k + 1.0);
      case Family::log_power: {
        // t = exp(-u) turns the endpoint singularity into exponential decay.
        double alpha = param_;
        double norm = gamma_fn(alpha);
        return quad::halfline(
            [&](double u) {
              return quad::pow_exp(u, alpha - 1.0, k + 1.0) / norm;
            },
            tol);
      }
      case Family::tabulated:
        return quad::unit_interval(
            [&](double t) { return interpolate(t) * std::pow(t, double(k)); },
            tol);
    }
    return 0.0;
  }

  std::string str() const {
    switch (family_) {
      case Family::uniform:
        return "uniform";
      case Family::power:
        return "power " + fmt17(param_);
      case Family::log_power:
        return "log_power " + fmt17(param_);
      case Family::tabulated: {
        std::string out = "tabulated-inline";
        for (const auto& [t, s] : samples_)
          out += " " + fmt17(t) + ":" + fmt17(s);
        return out;
      }
    }
    return "";
  }

 private:
  DensitySpec(Family family, double param) : family_(family), param_(param) {}

  double interpolate(double t) const {
    if (t <= samples_.front().first) {
      return t == samples_.front().first ? samples_.front().second : 0.0;
    }
    if (t >= samples_.back().first) {
      return t == samples_.back().first ? samples_.back().second : 0.0;
    }
    auto it = std::upper_bound(
        samples_.begin(), samples_.end(), t,
        [](double v, const std::pair<double, double>& s) { return v < s.first; });
    auto [t1, s1] = *it;
    auto [t0, s0] = *(it - 1);
    double w = (t - t0) / (t1 - t0);
    return s0 + w * (s1 - s0);
  }

  double min_spacing() const {
    double h = 1.0;
    for (std::size_t i = 1; i < samples_.size(); ++i)
      h = std::min(h, samples_[i].first - samples_[i - 1].first);
    return h;
  }

  Family family_;
  double param_;
  std::vector<std::pair<double, double>> samples_;
};

/// A point mass: location in [0,1], weight > 0, both exact.
struct Atom {
  Rational location;
  Rational weight;
};

/// A probability measure on [0,1]: finitely many atoms plus an optional
/// density component whose weight is the exact complement of the atom mass.
/// Total mass is 1 by construction.
class Measure {
 public:
  static Measure from_atoms(std::vector<Atom> atoms) {
    return Measure(std::move(atoms), std::nullopt);
  }

  static Measure point_mass(const Rational& location) {
    return from_atoms({Atom{location, Rational(1)}});
  }

  static Measure with_density(DensitySpec density, std::vector<Atom> atoms = {}) {
    return Measure(std::move(atoms), std::move(density));
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<DensitySpec>& density() const { return density_; }
  const Rational& density_weight() const { return density_weight_; }

  /// Atom views in double precision, in location order.
  const std::vector<std::pair<double, double>>& atoms_d() const {
    return atoms_d_;
  }
  double density_weight_d() const { return density_weight_d_; }

  bool exact_moments_available() const {
    return !density_ || density_->exact_moments();
  }

  /// True unless every unit of mass sits at t = 0.
  bool has_mass_above_zero() const {
    if (density_) return true;
    for (const auto& a : atoms_)
      if (a.location > 0) return true;
    return false;
  }

  /// Exact k-th moment; requires exact_moments_available().
  Rational moment_exact(int k) const {
    if (!exact_moments_available())
      throw std::invalid_argument("measure has no exact moments");
    Rational acc(0);
    for (const auto& a : atoms_)
      acc += a.weight * rat_pow(a.location, static_cast<unsigned>(k));
    if (density_) acc += density_weight_ * density_->moment_exact(k);
    return acc;
  }

  /// k-th moment in double precision, absolute error <= tol.
  double moment_numeric(int k, double tol) const {
    double acc = 0.0;
    for (const auto& [t, w] : atoms_d_) acc += w * std::pow(t, double(k));
    if (density_) acc += density_weight_d_ * density_->moment_numeric(k, tol);
    return acc;
  }

  void write(std::ostream& os) const {
    os << "measure v1\n";
    for (const auto& a : atoms_)
      os << "atom " << format_rational(a.location) << " "
         << format_rational(a.weight) << "\n";
    if (density_) os << "density " << density_->str() << "\n";
  }

  /// Reads the `measure v1` text format.  Tabulated densities reference a
  /// two-column CSV file (resolved against `base_dir` when relative).
  static Measure read(std::istream& is, const std::string& base_dir = ".") {
    std::string line;
    bool saw_header = false;
    std::vector<Atom> atoms;
    std::optional<DensitySpec> density;
    while (std::getline(is, line)) {
      std::string_view sv(line);
      while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back())))
        sv.remove_suffix(1);
      while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front())))
        sv.remove_prefix(1);
      if (sv.empty() || sv.front() == '#') continue;
      if (!saw_header) {
        if (sv != "measure v1")
          throw FormatError("measure file must start with 'measure v1'");
        saw_header = true;
        continue;
      }
      std::istringstream fields{std::string(sv)};
      std::string kind;
      fields >> kind;
      if (kind == "atom") {
        std::string loc, wt;
        if (!(fields >> loc >> wt))
          throw FormatError("atom line needs a location and a weight");
        atoms.push_back(Atom{parse_rational(loc), parse_rational(wt)});
      } else if (kind == "density") {
        if (density) throw FormatError("measure file has two density lines");
        std::string family;
        if (!(fields >> family))
          throw FormatError("density line needs a family name");
        if (family == "uniform") {
          density = DensitySpec::uniform();
        } else if (family == "power" || family == "log_power") {
          double p = 0.0;
          if (!(fields >> p))
            throw FormatError("density " + family + " needs a parameter");
          density = family == "power" ? DensitySpec::power(p)
                                      : DensitySpec::log_power(p);
        } else if (family == "tabulated") {
          std::string path;
          if (!(fields >> path))
            throw FormatError("density tabulated needs a CSV file path");
          std::filesystem::path p(path);
          if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
          density = DensitySpec::tabulated(read_samples_csv(p.string()));
        } else if (family == "tabulated-inline") {
          std::vector<std::pair<double, double>> samples;
          std::string pair;
          while (fields >> pair) {
            auto colon = pair.find(':');
            if (colon == std::string::npos)
              throw FormatError("tabulated-inline samples must look like t:value");
            samples.emplace_back(std::stod(pair.substr(0, colon)),
                                 std::stod(pair.substr(colon + 1)));
          }
          density = DensitySpec::tabulated(std::move(samples));
        } else {
          throw FormatError("unknown density family '" + family + "'");
        }
      } else {
        throw FormatError("unknown measure line '" + std::string(sv) + "'");
      }
    }
    if (!saw_header) throw FormatError("measure file is empty");
    if (density) return Measure::with_density(std::move(*density), std::move(atoms));
    return Measure::from_atoms(std::move(atoms));
  }

  static Measure read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open measure file '" + path + "'");
    return read(in, std::filesystem::path(path).parent_path().string());
  }

  /// Two-column CSV (t,value), '#' comments and blank lines skipped.
  static std::vector<std::pair<double, double>> read_samples_csv(
      const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open samples file '" + path + "'");
    std::vector<std::pair<double, double>> samples;
    std::string line;
    while (std::getline(in, line)) {
      std::string_view sv(line);
      while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back())))
        sv.remove_suffix(1);
      if (sv.empty() || sv.front() == '#') continue;
      auto comma = sv.find(',');
      if (comma == std::string_view::npos)
        throw FormatError("samples file '" + path + "' needs t,value rows");
      try {
        samples.emplace_back(std::stod(std::string(sv.substr(0, comma))),
                             std::stod(std::string(sv.substr(comma + 1))));
      } catch (const std::exception&) {
        throw FormatError("bad sample row '" + std::string(sv) + "' in '" +
                          path + "'");
      }
    }
    return samples;
  }

 private:
  Measure(std::vector<Atom> atoms, std::optional<DensitySpec> density)
      : density_(std::move(density)) {
    for (const auto& a : atoms) {
      if (a.location < 0 || a.location > 1)
        throw std::invalid_argument("atom location outside [0,1]");
      if (a.weight < 0)
        throw std::invalid_argument("atom weight must be >= 0");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    for (auto& a : atoms) {
      if (a.weight == 0) continue;
      if (!atoms_.empty() && atoms_.back().location == a.location)
        atoms_.back().weight += a.weight;
      else
        atoms_.push_back(a);
    }
    Rational atom_mass(0);
    for (const auto& a : atoms_) atom_mass += a.weight;
    if (!density_) {
      // Atom-only measures must carry unit mass; tiny drift from decimal
      // input is renormalised exactly, anything larger is rejected.
      Rational drift = atom_mass - 1;
      double drift_d = std::abs(to_double(drift));
      if (atom_mass == 0 || drift_d > 1e-12)
        throw std::invalid_argument("atom weights must sum to 1 (off by " +
                                    fmt17(drift_d) + ")");
      if (drift != 0)
        for (auto& a : atoms_) a.weight /= atom_mass;
      density_weight_ = 0;
    } else {
      density_weight_ = 1 - atom_mass;
      double dw = to_double(density_weight_);
      if (dw < -1e-12)
        throw std::invalid_argument("atom weights exceed unit mass");
      if (dw <= 1e-12) {
        // Degenerate density component: renormalise onto the atoms alone.
        density_.reset();
        density_weight_ = 0;
        if (atom_mass == 0)
          throw std::invalid_argument("measure has no mass");
        if (atom_mass != 1)
          for (auto& a : atoms_) a.weight /= atom_mass;
      }
    }
    atoms_d_.reserve(atoms_.size());
    for (const auto& a : atoms_)
      atoms_d_.emplace_back(to_double(a.location), to_double(a.weight));
    density_weight_d_ = to_double(density_weight_);
  }

  std::vector<Atom> atoms_;
  std::optional<DensitySpec> density_;
  Rational density_weight_ = Rational(0);
  std::vector<std::pair<double, double>> atoms_d_;
  double density_weight_d_ = 0.0;
};

}  // namespace momentkit
