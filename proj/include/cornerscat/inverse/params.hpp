#pragma once

// Rectangle parameters for the inverse problem and their symmetry quotient.

#include <cornerscat/scatter/geometry.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace cornerscat::inverse {

using scatter::InvalidInput;
using scatter::Vec2;

struct RectangleParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double a = 1.0;
  double b = 1.0;
  double phi = 0.0;

  static constexpr std::array<const char*, 5> names = {"c1", "c2", "a", "b", "phi"};

  [[nodiscard]] std::array<double, 5> to_array() const { return {c1, c2, a, b, phi}; }
  static RectangleParams from_array(const std::array<double, 5>& v) { return {v[0], v[1], v[2], v[3], v[4]}; }

  [[nodiscard]] double get(std::size_t i) const { return to_array().at(i); }
  void set(std::size_t i, double v) {
    auto arr = to_array();
    arr.at(i) = v;
    *this = from_array(arr);
  }
};

inline std::size_t parameter_index(const std::string& name) {
  for (std::size_t i = 0; i < RectangleParams::names.size(); ++i)
    if (name == RectangleParams::names[i]) return i;
  throw InvalidInput("unknown rectangle parameter '" + name + "' (expected c1, c2, a, b or phi)");
}

/// x mod pi in [0, pi).
inline double reduce_angle(double phi) {
  double r = std::fmod(phi, std::numbers::pi);
  if (r < 0.0) r += std::numbers::pi;
  if (r >= std::numbers::pi) r -= std::numbers::pi;
  return r;
}

/// Unique representative with a >= b and phi in [0, pi).
inline RectangleParams canonicalize(const RectangleParams& t) {
  if (!(t.a > 0.0) || !(t.b > 0.0)) throw InvalidInput("canonicalize: half-widths must be positive");
  RectangleParams c = t;
  if (c.a < c.b) {
    std::swap(c.a, c.b);
    c.phi += 0.5 * std::numbers::pi;
  }
  c.phi = reduce_angle(c.phi);
  return c;
}

inline scatter::Rectangle to_rectangle(const RectangleParams& t) {
  const auto c = canonicalize(t);
  return scatter::Rectangle{Vec2(c.c1, c.c2), c.a, c.b, c.phi};
}

/// Signed difference of two angles modulo pi, in [-pi/2, pi/2).
inline double angle_difference(double x, double y) {
  return reduce_angle(x - y + 0.5 * std::numbers::pi) - 0.5 * std::numbers::pi;
}

/// Per-parameter relative errors |x - x*| / |x*| between canonical forms.
/// The rotation difference is taken modulo pi. Both representations of the
/// estimate are tried so a near-square estimate compares in the quotient by
/// the full symmetry group of the set.
inline std::array<double, 5> relative_errors(const RectangleParams& estimate, const RectangleParams& truth) {
  const auto t = canonicalize(truth);
  auto errors_for = [&](const RectangleParams& e) {
    const std::array<double, 5> d = {e.c1 - t.c1, e.c2 - t.c2, e.a - t.a, e.b - t.b, angle_difference(e.phi, t.phi)};
    std::array<double, 5> r{};
    const auto ta = t.to_array();
    for (std::size_t i = 0; i < 5; ++i) r[i] = std::abs(d[i]) / std::abs(ta[i]);
    return r;
  };
  const auto e = canonicalize(estimate);
  RectangleParams swapped{e.c1, e.c2, e.b, e.a, reduce_angle(e.phi + 0.5 * std::numbers::pi)};
  const auto r1 = errors_for(e), r2 = errors_for(swapped);
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    m1 = std::max(m1, r1[i]);
    m2 = std::max(m2, r2[i]);
  }
  return m1 <= m2 ? r1 : r2;
}

inline nlohmann::json to_json(const RectangleParams& t) {
  return {{"c1", t.c1}, {"c2", t.c2}, {"a", t.a}, {"b", t.b}, {"phi", t.phi}};
}

inline RectangleParams params_from_json(const nlohmann::json& j) {
  RectangleParams t;
  t.c1 = j.at("c1").get<double>();
  t.c2 = j.at("c2").get<double>();
  t.a = j.at("a").get<double>();
  t.b = j.at("b").get<double>();
  t.phi = j.value("phi", 0.0);
  return t;
}

}  // namespace cornerscat::inverse
