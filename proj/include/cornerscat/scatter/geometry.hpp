#pragma once

// Scene description: medium, incident plane wave and scatterer shape.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

namespace cornerscat::scatter {

using Vec2 = Eigen::Vector2d;
using cplx = std::complex<double>;

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exterior wavenumber kappa, interior index q0; lambda = 1/q0.
/// q0 == 1 is representable (no contrast) so callers can ask for the
/// trivial solution explicitly; see solve_transmission.
class Medium {
 public:
  Medium(double kappa, double q0) : kappa_(kappa), q0_(q0) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidInput("Medium: kappa must be positive");
    if (!(q0 > 0.0) || !std::isfinite(q0)) throw InvalidInput("Medium: q0 must be positive");
  }
  [[nodiscard]] double kappa() const { return kappa_; }
  [[nodiscard]] double q0() const { return q0_; }
  [[nodiscard]] double lambda() const { return 1.0 / q0_; }
  [[nodiscard]] double interior_kappa() const { return kappa_ * std::sqrt(q0_); }
  [[nodiscard]] bool degenerate() const { return q0_ == 1.0; }

 private:
  double kappa_;
  double q0_;
};

/// Incident direction d; the incident field is v_in(x) = -exp(i kappa x.d).
class PlaneWave {
 public:
  explicit PlaneWave(const Vec2& d) : d_(d) {
    if (std::abs(d.norm() - 1.0) > 1e-14) throw InvalidInput("PlaneWave: direction must be a unit vector");
  }
  static PlaneWave from_angle(double theta) { return PlaneWave(Vec2(std::cos(theta), std::sin(theta))); }
  [[nodiscard]] const Vec2& d() const { return d_; }
  [[nodiscard]] double angle() const { return std::atan2(d_.y(), d_.x()); }

  [[nodiscard]] cplx value(const Vec2& x, double kappa) const { return -std::exp(cplx(0.0, kappa * x.dot(d_))); }
  /// Gradient of v_in.
  [[nodiscard]] Eigen::Vector2cd gradient(const Vec2& x, double kappa) const {
    const cplx g = cplx(0.0, kappa) * value(x, kappa);
    return Eigen::Vector2cd(g * d_.x(), g * d_.y());
  }

 private:
  Vec2 d_;
};

/// Center (c1, c2), half-width a along the rotated x1-axis, half-height b,
/// rotation phi in [0, pi) (counter-clockwise).
struct Rectangle {
  Vec2 center = Vec2::Zero();
  double a = 1.0;
  double b = 1.0;
  double phi = 0.0;
};

struct Disk {
  Vec2 center = Vec2::Zero();
  double radius = 1.0;
};

/// Point, first and second derivative of a 2pi-periodic parametrization.
struct CurvePoint {
  Vec2 x;
  Vec2 dx;
  Vec2 ddx;
};

/// Smooth closed curve traversed counter-clockwise for t in [0, 2pi).
struct ParametricCurve {
  std::function<CurvePoint(double)> eval;
};

using ScattererGeometry = std::variant<Rectangle, Disk, ParametricCurve>;

inline Eigen::Matrix2d rotation(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

/// Corners of a rectangle, counter-clockwise starting at local (-a, -b).
inline std::array<Vec2, 4> corners(const Rectangle& r) {
  const Eigen::Matrix2d rot = rotation(r.phi);
  return {r.center + rot * Vec2(-r.a, -r.b), r.center + rot * Vec2(r.a, -r.b), r.center + rot * Vec2(r.a, r.b),
          r.center + rot * Vec2(-r.a, r.b)};
}

inline void validate(const ScattererGeometry& g) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Rectangle>) {
          if (!(s.a > 0.0) || !(s.b > 0.0)) throw InvalidInput("Rectangle: half-widths must be positive");
          if (!s.center.allFinite() || !std::isfinite(s.phi)) throw InvalidInput("Rectangle: non-finite parameters");
          if (s.phi < 0.0 || s.phi >= std::numbers::pi) throw InvalidInput("Rectangle: rotation must lie in [0, pi)");
        } else if constexpr (std::is_same_v<T, Disk>) {
          if (!(s.radius > 0.0) || !std::isfinite(s.radius)) throw InvalidInput("Disk: radius must be positive");
          if (!s.center.allFinite()) throw InvalidInput("Disk: non-finite center");
        } else {
          if (!s.eval) throw InvalidInput("ParametricCurve: missing parametrization");
        }
      },
      g);
}

}  // namespace cornerscat::scatter
