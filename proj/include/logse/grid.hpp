#pragma once

// Radial grids on [r_min, r_max], r_min > 0.
//
// Every grid is the image of a uniform parameter s in [0, 1] under a smooth
// map r(s). Quadrature is composite Simpson in s with the analytic Jacobian
// dr/ds, which keeps fourth-order accuracy on stretched grids.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logse/errors.hpp"

namespace logse {

enum class GridSpacing {
  uniform,
  logarithmic,
  /// r = r_min + (r_max - r_min) * expm1(beta s) / expm1(beta): fine near the
  /// origin, coarse in the tail.
  stretched,
};

inline std::string_view to_string(GridSpacing spacing) {
  switch (spacing) {
    case GridSpacing::uniform: return "uniform";
    case GridSpacing::logarithmic: return "log";
    case GridSpacing::stretched: return "stretched";
  }
  return "unknown";
}

inline GridSpacing grid_spacing_from_string(std::string_view name) {
  if (name == "uniform") return GridSpacing::uniform;
  if (name == "log" || name == "logarithmic") return GridSpacing::logarithmic;
  if (name == "stretched") return GridSpacing::stretched;
  throw DomainError("unknown grid spacing '" + std::string(name) +
                    "' (expected uniform, log or stretched)");
}

class RadialGrid {
 public:
  static constexpr double default_stretch = 4.0;

  RadialGrid(double r_min, double r_max, std::size_t n_points,
             GridSpacing spacing = GridSpacing::uniform, double stretch = default_stretch)
      : spacing_(spacing), stretch_(stretch) {
    detail::require(std::isfinite(r_min) && std::isfinite(r_max),
                    "RadialGrid: bounds must be finite");
    detail::require(r_min > 0.0, "RadialGrid: r_min must be > 0 (coupling is singular at r = 0)");
    detail::require(r_max > r_min, "RadialGrid: r_max must exceed r_min");
    detail::require(n_points >= 3, "RadialGrid: need at least 3 points");
    if (spacing == GridSpacing::stretched) {
      detail::require(std::isfinite(stretch) && stretch > 0.0,
                      "RadialGrid: stretch parameter must be positive");
    }
    build(r_min, r_max, n_points);
  }

  [[nodiscard]] std::size_t size() const noexcept { return r_.size(); }
  [[nodiscard]] double r(std::size_t i) const { return r_[i]; }
  [[nodiscard]] double r_min() const noexcept { return r_.front(); }
  [[nodiscard]] double r_max() const noexcept { return r_.back(); }
  [[nodiscard]] GridSpacing spacing() const noexcept { return spacing_; }
  [[nodiscard]] double stretch() const noexcept { return stretch_; }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return r_; }
  [[nodiscard]] std::span<const double> jacobian() const noexcept { return drds_; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return w_; }
  [[nodiscard]] double ds() const noexcept { return 1.0 / static_cast<double>(r_.size() - 1); }

  [[nodiscard]] double integrate(std::span<const double> f) const {
    check_size(f.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sum += w_[i] * f[i];
    return sum;
  }

  /// C(r_i) = integral of f from r_min to r_i.
  [[nodiscard]] std::vector<double> cumulative_integral(std::span<const double> f) const {
    check_size(f.size());
    const std::size_t n = f.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = f[i] * drds_[i];
    std::vector<double> c(n, 0.0);
    const double h = ds();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      // Quadratic through three neighbouring nodes, integrated over one interval.
      double piece;
      if (i + 2 < n) {
        piece = h / 12.0 * (5.0 * g[i] + 8.0 * g[i + 1] - g[i + 2]);
      } else {
        piece = h / 12.0 * (-g[i - 1] + 8.0 * g[i] + 5.0 * g[i + 1]);
      }
      c[i + 1] = c[i] + piece;
    }
    return c;
  }

  /// First derivative by three-point non-uniform differences (one-sided at the ends).
  template <class T>
  [[nodiscard]] std::vector<T> derivative(std::span<const T> f) const {
    check_size(f.size());
    const std::size_t n = f.size();
    std::vector<T> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double hm = r_[i] - r_[i - 1];
      const double hp = r_[i + 1] - r_[i];
      d[i] = (hm * hm * f[i + 1] - (hm * hm - hp * hp) * f[i] - hp * hp * f[i - 1]) /
             (hm * hp * (hm + hp));
    }
    {
      const double h1 = r_[1] - r_[0];
      const double h2 = r_[2] - r_[1];
      d[0] = (-(2.0 * h1 + h2) / (h1 * (h1 + h2))) * f[0] + ((h1 + h2) / (h1 * h2)) * f[1] -
             (h1 / (h2 * (h1 + h2))) * f[2];
    }
    {
      const double h1 = r_[n - 2] - r_[n - 3];
      const double h2 = r_[n - 1] - r_[n - 2];
      d[n - 1] = (h2 / (h1 * (h1 + h2))) * f[n - 3] - ((h1 + h2) / (h1 * h2)) * f[n - 2] +
                 ((2.0 * h2 + h1) / (h2 * (h1 + h2))) * f[n - 1];
    }
    return d;
  }

  /// Linear interpolation; clamps outside [r_min, r_max].
  [[nodiscard]] double interpolate(std::span<const double> f, double r) const {
    check_size(f.size());
    if (r <= r_.front()) return f.front();
    if (r >= r_.back()) return f.back();
    const auto it = std::upper_bound(r_.begin(), r_.end(), r);
    const auto i = static_cast<std::size_t>(it - r_.begin());
    const double t = (r - r_[i - 1]) / (r_[i] - r_[i - 1]);
    return (1.0 - t) * f[i - 1] + t * f[i];
  }

 private:
  void build(double r_min, double r_max, std::size_t n) {
    r_.resize(n);
    drds_.resize(n);
    const double span = r_max - r_min;
    const double log_ratio = std::log(r_max / r_min);
    const double em1 = std::expm1(stretch_);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = static_cast<double>(i) / static_cast<double>(n - 1);
      switch (spacing_) {
        case GridSpacing::uniform:
          r_[i] = r_min + span * s;
          drds_[i] = span;
          break;
        case GridSpacing::logarithmic:
          r_[i] = r_min * std::exp(log_ratio * s);
          drds_[i] = r_[i] * log_ratio;
          break;
        case GridSpacing::stretched:
          r_[i] = r_min + span * std::expm1(stretch_ * s) / em1;
          drds_[i] = span * stretch_ * std::exp(stretch_ * s) / em1;
          break;
      }
    }
    r_.front() = r_min;
    r_.back() = r_max;
    for (std::size_t i = 1; i < n; ++i) {
      detail::require(r_[i] > r_[i - 1], "RadialGrid: nodes are not strictly increasing");
    }
    w_ = simpson_weights(n);
    for (std::size_t i = 0; i < n; ++i) w_[i] *= drds_[i];
  }

  static std::vector<double> simpson_weights(std::size_t n) {
    const std::size_t intervals = n - 1;
    const double h = 1.0 / static_cast<double>(intervals);
    std::vector<double> w(n, 0.0);
    // Even interval count: plain Simpson. Odd: Simpson then a 3/8 closing panel.
    const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
    for (std::size_t i = 0; i < simpson_end; i += 2) {
      w[i] += h / 3.0;
      w[i + 1] += 4.0 * h / 3.0;
      w[i + 2] += h / 3.0;
    }
    if (simpson_end != intervals) {
      const std::size_t i = simpson_end;
      w[i] += 3.0 * h / 8.0;
      w[i + 1] += 9.0 * h / 8.0;
      w[i + 2] += 9.0 * h / 8.0;
      w[i + 3] += 3.0 * h / 8.0;
    }
    return w;
  }

  void check_size(std::size_t n) const {
    if (n != r_.size()) {
      throw DomainError("RadialGrid: profile has " + std::to_string(n) + " values, grid has " +
                        std::to_string(r_.size()));
    }
  }

  GridSpacing spacing_;
  double stretch_;
  std::vector<double> r_;
  std::vector<double> drds_;
  std::vector<double> w_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

inline GridPtr make_grid(double r_min, double r_max, std::size_t n_points,
                         GridSpacing spacing = GridSpacing::uniform,
                         double stretch = RadialGrid::default_stretch) {
  return std::make_shared<const RadialGrid>(r_min, r_max, n_points, spacing, stretch);
}

}  // namespace logse
