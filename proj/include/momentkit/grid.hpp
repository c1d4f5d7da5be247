#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "momentkit/common.hpp"

namespace momentkit {

/// One sampled parameter axis.  Endpoints are always included.
struct AxisSpec {
  enum class Spacing { linear, geometric };

  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  Spacing spacing = Spacing::linear;

  AxisSpec() = default;
  AxisSpec(std::string name, double lo, double hi, int count,
           Spacing spacing = Spacing::linear)
      : name(std::move(name)), lo(lo), hi(hi), count(count), spacing(spacing) {
    validate();
  }

  void validate() const {
    if (name.empty()) throw FormatError("axis needs a name");
    if (!(lo < hi))
      throw FormatError("axis '" + name + "': lower bound must be below upper");
    if (count < 2)
      throw FormatError("axis '" + name + "': need at least 2 points");
    if (spacing == Spacing::geometric && !(lo > 0.0))
      throw FormatError("axis '" + name + "': geometric spacing needs lo > 0");
  }

  std::vector<double> points() const {
    std::vector<double> pts(static_cast<std::size_t>(count));
    if (spacing == Spacing::linear) {
      for (int i = 0; i < count; ++i)
        pts[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    } else {
      double ratio = std::log(hi / lo);
      for (int i = 0; i < count; ++i)
        pts[static_cast<std::size_t>(i)] =
            lo * std::exp(ratio * static_cast<double>(i) / (count - 1));
    }
    pts.front() = lo;
    pts.back() = hi;
    return pts;
  }

  /// "name=lo:hi:count[:lin|:geom]"
  static AxisSpec parse(std::string_view token) {
    auto eq = token.find('=');
    if (eq == std::string_view::npos)
      throw FormatError("axis token '" + std::string(token) +
                        "' is missing '=' (want name=lo:hi:count[:lin|:geom])");
    AxisSpec axis;
    axis.name = std::string(token.substr(0, eq));
    std::string_view rest = token.substr(eq + 1);
    std::vector<std::string> parts;
    while (true) {
      auto colon = rest.find(':');
      if (colon == std::string_view::npos) {
        parts.emplace_back(rest);
        break;
      }
      parts.emplace_back(rest.substr(0, colon));
      rest = rest.substr(colon + 1);
    }
    if (parts.size() < 3 || parts.size() > 4)
      throw FormatError("axis token '" + std::string(token) +
                        "' must be name=lo:hi:count[:lin|:geom]");
    auto as_double = [&](const std::string& s) {
      char* end = nullptr;
      double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str() || *end != '\0')
        throw FormatError("bad number '" + s + "' in axis token '" +
                          std::string(token) + "'");
      return v;
    };
    axis.lo = as_double(parts[0]);
    axis.hi = as_double(parts[1]);
    double cnt = as_double(parts[2]);
    if (cnt != std::floor(cnt))
      throw FormatError("axis count must be an integer in '" +
                        std::string(token) + "'");
    axis.count = static_cast<int>(cnt);
    if (parts.size() == 4) {
      if (parts[3] == "lin")
        axis.spacing = Spacing::linear;
      else if (parts[3] == "geom")
        axis.spacing = Spacing::geometric;
      else
        throw FormatError("axis spacing must be 'lin' or 'geom', got '" +
                          parts[3] + "'");
    }
    axis.validate();
    return axis;
  }

  std::string str() const {
    return name + "=" + fmt17(lo) + ":" + fmt17(hi) + ":" +
           std::to_string(count) +
           (spacing == Spacing::geometric ? ":geom" : ":lin");
  }
};

/// A named collection of axes; the sample set is their Cartesian product.
struct GridSpec {
  std::vector<AxisSpec> axes;

  GridSpec() = default;
  explicit GridSpec(std::vector<AxisSpec> axes) : axes(std::move(axes)) {}

  const AxisSpec* find(std::string_view name) const {
    for (const auto& a : axes)
      if (a.name == name) return &a;
    return nullptr;
  }

  const AxisSpec& require(std::string_view name) const {
    const AxisSpec* a = find(name);
    if (a == nullptr)
      throw FormatError("grid is missing required axis '" + std::string(name) +
                        "'");
    return *a;
  }

  std::string str() const {
    std::string out;
    for (const auto& a : axes) {
      if (!out.empty()) out += " ";
      out += a.str();
    }
    return out;
  }
};

}  // namespace momentkit
