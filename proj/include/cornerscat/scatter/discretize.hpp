#pragma once

// Boundary nodes on a single 2pi-periodic parametrization of the boundary.
//
// Rectangles: each side gets parameter length pi/2 and is traversed through
// Kress's polynomial grading substitution, which flattens the parametrization
// at both corners (all derivatives up to order p-1 vanish there). The grid is
// shifted by half a step so no node sits on a corner.
// Disks and smooth curves: plain equispaced grid.

#include <cornerscat/scatter/geometry.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerscat::scatter {

struct BadMesh : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct Grading {
  double w, dw, ddw;
};

// w: [0,1] -> [0,1], w = v^p / (v^p + (1-v)^p) with the cubic
// v(s) = (1/p - 1/2)(1-2s)^3 + (1/p)(2s-1) + 1/2.
inline Grading kress_grading(double s, double p) {
  const double c = 1.0 / p - 0.5;
  const double u = 1.0 - 2.0 * s;
  const double v = c * u * u * u - u / p + 0.5;
  const double dv = -6.0 * c * u * u + 2.0 / p;
  const double ddv = 24.0 * c * u;
  const double a = std::pow(v, p), b = std::pow(1.0 - v, p);
  const double den = a + b;
  const double vv = v * (1.0 - v);
  const double g = p * dv * std::pow(vv, p - 1.0);
  const double dg = p * ddv * std::pow(vv, p - 1.0) + p * (p - 1.0) * dv * dv * std::pow(vv, p - 2.0) * (1.0 - 2.0 * v);
  const double dden = p * dv * (std::pow(v, p - 1.0) - std::pow(1.0 - v, p - 1.0));
  return {a / den, g / (den * den), dg / (den * den) - 2.0 * g * dden / (den * den * den)};
}

}  // namespace detail

/// x(t), x'(t), x''(t) on [0, 2pi) for any supported geometry.
inline std::function<CurvePoint(double)> parametrization(const ScattererGeometry& geom, double grading_p) {
  validate(geom);
  if (const auto* rect = std::get_if<Rectangle>(&geom)) {
    const auto c = corners(*rect);
    return [c, grading_p](double t) {
      constexpr double quarter = 0.5 * std::numbers::pi;
      double tt = std::fmod(t, 2.0 * std::numbers::pi);
      if (tt < 0) tt += 2.0 * std::numbers::pi;
      const int side = std::min(3, static_cast<int>(tt / quarter));
      const double s = (tt - side * quarter) / quarter;
      const auto g = detail::kress_grading(s, grading_p);
      const Vec2 edge = c[(side + 1) % 4] - c[side];
      const double ds = 1.0 / quarter;
      return CurvePoint{c[side] + g.w * edge, g.dw * ds * edge, g.ddw * ds * ds * edge};
    };
  }
  if (const auto* disk = std::get_if<Disk>(&geom)) {
    const Vec2 c = disk->center;
    const double r = disk->radius;
    return [c, r](double t) {
      const double co = std::cos(t), si = std::sin(t);
      return CurvePoint{c + r * Vec2(co, si), r * Vec2(-si, co), -r * Vec2(co, si)};
    };
  }
  return std::get<ParametricCurve>(geom).eval;
}

struct BoundaryDiscretization {
  std::vector<double> t;             // parameter values
  std::vector<Vec2> nodes;           // x(t_j)
  std::vector<Vec2> velocity;        // x'(t_j)
  std::vector<Vec2> acceleration;    // x''(t_j)
  std::vector<double> speed;         // |x'(t_j)|
  std::vector<Vec2> normals;         // outward unit normal
  std::vector<Vec2> tangents;        // counter-clockwise unit tangent
  std::vector<double> weights;       // arclength weights h |x'(t_j)|
  std::vector<int> corner_map;       // corner index for graded-cluster nodes, -1 elsewhere
  double h = 0.0;                    // parameter step 2pi/N
  double shift = 0.0;                // t_j = (j + shift) h
  double grading_p = 0.0;
  bool has_corners = false;
  std::function<CurvePoint(double)> curve;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  /// Outward normal scaled by the speed, (x2', -x1').
  [[nodiscard]] Vec2 scaled_normal(std::size_t j) const { return Vec2(velocity[j].y(), -velocity[j].x()); }
};

/// Samples the parametrization on N equispaced parameters starting at shift*h.
inline BoundaryDiscretization sample_curve(const std::function<CurvePoint(double)>& curve, std::size_t n_nodes,
                                           double shift) {
  BoundaryDiscretization d;
  d.curve = curve;
  d.h = 2.0 * std::numbers::pi / static_cast<double>(n_nodes);
  d.shift = shift;
  for (std::size_t j = 0; j < n_nodes; ++j) {
    const double t = (static_cast<double>(j) + shift) * d.h;
    const auto cp = curve(t);
    const double sp = cp.dx.norm();
    if (!(sp > 0.0)) throw BadMesh("discretize: zero speed at t=" + std::to_string(t));
    d.t.push_back(t);
    d.nodes.push_back(cp.x);
    d.velocity.push_back(cp.dx);
    d.acceleration.push_back(cp.ddx);
    d.speed.push_back(sp);
    d.tangents.push_back(cp.dx / sp);
    d.normals.push_back(Vec2(cp.dx.y(), -cp.dx.x()) / sp);
    d.weights.push_back(d.h * sp);
    d.corner_map.push_back(-1);
  }
  return d;
}

/// For a Rectangle `count` is the number of nodes per side, otherwise the
/// total node count (must be even).
inline BoundaryDiscretization discretize(const ScattererGeometry& geom, std::size_t count, double grading_p = 4.0) {
  validate(geom);
  if (count < 8) throw BadMesh("discretize: need at least 8 nodes, got " + std::to_string(count));
  if (std::holds_alternative<Rectangle>(geom)) {
    if (!(grading_p >= 2.0)) throw BadMesh("discretize: grading exponent must be >= 2 for corners");
    auto d = sample_curve(parametrization(geom, grading_p), 4 * count, 0.5);
    d.grading_p = grading_p;
    d.has_corners = true;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (d.nodes[j] == d.nodes[(j + 1) % d.size()])
        throw BadMesh("discretize: grading exponent " + std::to_string(grading_p) + " with " + std::to_string(count) +
                      " nodes per side collapses nodes onto a corner");
    }
    for (std::size_t j = 0; j < d.size(); ++j) {
      const std::size_t side = j / count;
      const double s = (static_cast<double>(j % count) + 0.5) / static_cast<double>(count);
      if (s < 0.125) d.corner_map[j] = static_cast<int>(side);
      if (s > 0.875) d.corner_map[j] = static_cast<int>((side + 1) % 4);
    }
    return d;
  }
  if (count % 2 != 0) throw BadMesh("discretize: node count must be even");
  return sample_curve(parametrization(geom, grading_p), count, 0.0);
}

}  // namespace cornerscat::scatter
