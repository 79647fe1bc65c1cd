#pragma once

// JSON run configuration: typed field access with dotted-path error messages.

#include <cornerscat/inverse/invert.hpp>
#include <cornerscat/scatter/geometry.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cornerscat::cli {

using nlohmann::json;

/// Usage or configuration problem (exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

/// Reads and parses a JSON file; parse errors report line and column.
inline json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                      e.what() + ")");
  }
}

class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError((path_.empty() ? "<root>" : path_) + ": expected an object");
  }

  [[nodiscard]] bool has(const std::string& key) const { return j_.contains(key); }
  [[nodiscard]] const std::string& path() const { return path_; }

  [[nodiscard]] Node child(const std::string& key) const {
    if (!has(key)) throw ConfigError(join(path_, key) + ": missing");
    return Node(j_.at(key), join(path_, key));
  }

  [[nodiscard]] double number(const std::string& key) const {
    if (!has(key)) throw ConfigError(join(path_, key) + ": missing");
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(join(path_, key) + ": expected a number");
    return v.get<double>();
  }
  [[nodiscard]] double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  [[nodiscard]] std::size_t count(const std::string& key) const {
    if (!has(key)) throw ConfigError(join(path_, key) + ": missing");
    const auto& v = j_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ConfigError(join(path_, key) + ": expected a non-negative integer");
    return v.get<std::size_t>();
  }
  [[nodiscard]] std::size_t count(const std::string& key, std::size_t fallback) const {
    return has(key) ? count(key) : fallback;
  }

  [[nodiscard]] bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) throw ConfigError(join(path_, key) + ": expected true or false");
    return j_.at(key).get<bool>();
  }

  [[nodiscard]] std::string text(const std::string& key) const {
    if (!has(key)) throw ConfigError(join(path_, key) + ": missing");
    if (!j_.at(key).is_string()) throw ConfigError(join(path_, key) + ": expected a string");
    return j_.at(key).get<std::string>();
  }
  [[nodiscard]] std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  [[nodiscard]] std::array<double, 2> pair(const std::string& key) const {
    if (!has(key)) throw ConfigError(join(path_, key) + ": missing");
    const auto& v = j_.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ConfigError(join(path_, key) + ": expected [number, number]");
    return {v[0].get<double>(), v[1].get<double>()};
  }

 private:
  const json& j_;
  std::string path_;
};

/// Runs `f` and rewrites domain validation errors with the field path.
template <class F>
auto checked(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline scatter::Medium parse_medium(const Node& n) {
  return checked(n.path(), [&] { return scatter::Medium(n.number("kappa"), n.number("q0")); });
}

/// {"angle": theta} or {"d": [d1, d2]}.
inline scatter::PlaneWave parse_wave(const Node& n) {
  if (n.has("angle")) return scatter::PlaneWave::from_angle(n.number("angle"));
  const auto d = n.pair("d");
  return checked(n.path() + ".d", [&] { return scatter::PlaneWave(scatter::Vec2(d[0], d[1])); });
}

inline inverse::RectangleParams parse_rectangle_params(const Node& n) {
  const auto c = n.pair("center");
  inverse::RectangleParams t{c[0], c[1], n.number("a"), n.number("b"), n.number("phi", 0.0)};
  if (!(t.a > 0.0)) throw ConfigError(join(n.path(), "a") + ": must be positive");
  if (!(t.b > 0.0)) throw ConfigError(join(n.path(), "b") + ": must be positive");
  return t;
}

inline json params_json(const inverse::RectangleParams& t) {
  return {{"center", {t.c1, t.c2}}, {"a", t.a}, {"b", t.b}, {"phi", t.phi}};
}

/// {"type": "rectangle", center, a, b, phi} or {"type": "disk", center, radius}.
inline scatter::ScattererGeometry parse_geometry(const Node& n) {
  const auto type = n.text("type");
  if (type == "rectangle") {
    const auto t = parse_rectangle_params(n);
    if (t.phi < 0.0 || t.phi >= std::numbers::pi) throw ConfigError(join(n.path(), "phi") + ": must lie in [0, pi)");
    return scatter::Rectangle{scatter::Vec2(t.c1, t.c2), t.a, t.b, t.phi};
  }
  if (type == "disk") {
    const auto c = n.has("center") ? n.pair("center") : std::array<double, 2>{0.0, 0.0};
    const double r = n.number("radius");
    if (!(r > 0.0)) throw ConfigError(join(n.path(), "radius") + ": must be positive");
    return scatter::Disk{scatter::Vec2(c[0], c[1]), r};
  }
  throw ConfigError(join(n.path(), "type") + ": expected \"rectangle\" or \"disk\"");
}

inline inverse::MeasurementSetup parse_setup(const Node& n) {
  inverse::MeasurementSetup s;
  s.medium = parse_medium(n.child("medium"));
  s.wave = parse_wave(n.child("wave"));
  s.n_directions = n.count("n_directions", 64);
  if (s.n_directions < 8) throw ConfigError(join(n.path(), "n_directions") + ": need at least 8");
  s.noise_level = n.number("noise_level", 0.0);
  if (!(s.noise_level >= 0.0 && s.noise_level <= 0.5))
    throw ConfigError(join(n.path(), "noise_level") + ": must lie in [0, 0.5]");
  s.seed = n.count("seed", 0);
  s.data_refinement = n.count("data_refinement", 2);
  if (s.data_refinement < 1) throw ConfigError(join(n.path(), "data_refinement") + ": must be >= 1");
  if (n.has("forward")) {
    const auto f = n.child("forward");
    s.forward.n_per_side = f.count("n_per_side", s.forward.n_per_side);
    s.forward.grading_p = f.number("grading_p", s.forward.grading_p);
    if (s.forward.n_per_side < 8) throw ConfigError(join(f.path(), "n_per_side") + ": need at least 8");
    if (!(s.forward.grading_p >= 2.0)) throw ConfigError(join(f.path(), "grading_p") + ": must be >= 2");
  }
  return s;
}

inline json setup_json(const inverse::MeasurementSetup& s) {
  return {{"medium", {{"kappa", s.medium.kappa()}, {"q0", s.medium.q0()}}},
          {"wave", {{"d", {s.wave.d().x(), s.wave.d().y()}}}},
          {"n_directions", s.n_directions},
          {"noise_level", s.noise_level},
          {"seed", s.seed},
          {"data_refinement", s.data_refinement},
          {"forward", {{"n_per_side", s.forward.n_per_side}, {"grading_p", s.forward.grading_p}}}};
}

inline inverse::OptConfig parse_optimizer(const Node& n) {
  inverse::OptConfig o;
  if (n.has("bounds")) {
    const auto b = n.child("bounds");
    if (b.has("c1")) o.bounds.c1 = b.pair("c1");
    if (b.has("c2")) o.bounds.c2 = b.pair("c2");
    if (b.has("half_width")) o.bounds.half_width = b.pair("half_width");
    checked(b.path(), [&] {
      o.bounds.validate();
      return 0;
    });
  }
  if (n.has("grid")) {
    const auto g = n.child("grid");
    const char* keys[5] = {"c1", "c2", "a", "b", "phi"};
    for (std::size_t i = 0; i < 5; ++i) {
      o.grid[i] = g.count(keys[i], o.grid[i]);
      if (o.grid[i] < 1) throw ConfigError(join(g.path(), keys[i]) + ": need at least one start");
    }
  }
  o.refine_starts = n.count("refine_starts", o.refine_starts);
  if (o.refine_starts < 1) throw ConfigError(join(n.path(), "refine_starts") + ": must be >= 1");
  o.nelder_mead.tolerance = n.number("tolerance", o.nelder_mead.tolerance);
  if (!(o.nelder_mead.tolerance > 0.0)) throw ConfigError(join(n.path(), "tolerance") + ": must be positive");
  o.nelder_mead.initial_step = n.number("initial_step", o.nelder_mead.initial_step);
  o.nelder_mead.max_evaluations = n.count("max_evaluations", o.nelder_mead.max_evaluations);
  return o;
}

inline json optimizer_json(const inverse::OptConfig& o) {
  return {{"bounds", {{"c1", o.bounds.c1}, {"c2", o.bounds.c2}, {"half_width", o.bounds.half_width}}},
          {"grid", {{"c1", o.grid[0]}, {"c2", o.grid[1]}, {"a", o.grid[2]}, {"b", o.grid[3]}, {"phi", o.grid[4]}}},
          {"refine_starts", o.refine_starts},
          {"tolerance", o.nelder_mead.tolerance},
          {"initial_step", o.nelder_mead.initial_step},
          {"max_evaluations", o.nelder_mead.max_evaluations}};
}

}  // namespace cornerscat::cli
