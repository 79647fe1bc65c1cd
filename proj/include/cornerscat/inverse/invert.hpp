#pragma once

// Multistart Nelder-Mead recovery of a rectangle from one far-field pattern,
// and misfit landscapes.
//
// Every start of the grid is scored with one misfit evaluation; Nelder-Mead
// then runs from the best `refine_starts` of them, and the best local
// minimizer is restarted once so a collapsed simplex cannot stop it early.
// Parameters are scaled to the unit box of the configured bounds (rotation
// by pi). Leaving the box is penalized quadratically; the misfit itself is
// evaluated at the nearest point inside the box.

#include <cornerscat/inverse/forward_map.hpp>
#include <cornerscat/inverse/nelder_mead.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace cornerscat::inverse {

struct ParameterBounds {
  std::array<double, 2> c1{-1.0, 1.0};
  std::array<double, 2> c2{-1.0, 1.0};
  std::array<double, 2> half_width{0.2, 1.5};  // shared by a and b

  void validate() const {
    for (const auto* r : {&c1, &c2, &half_width})
      if (!((*r)[0] < (*r)[1])) throw InvalidInput("ParameterBounds: lower bound must be below upper bound");
    if (!(half_width[0] > 0.0)) throw InvalidInput("ParameterBounds: half-width bounds must be positive");
  }
};

struct OptConfig {
  ParameterBounds bounds{};
  std::array<std::size_t, 5> grid{3, 3, 2, 2, 3};  // starts per parameter: c1, c2, a, b, phi
  std::size_t refine_starts = 8;
  NelderMeadOptions nelder_mead{1e-6, 0.05, 1500};

  void validate() const {
    bounds.validate();
    for (auto g : grid)
      if (g < 1) throw InvalidInput("OptConfig: every grid dimension needs at least one start");
    if (refine_starts < 1) throw InvalidInput("OptConfig: refine_starts must be >= 1");
    if (!(nelder_mead.tolerance > 0.0)) throw InvalidInput("OptConfig: tolerance must be positive");
  }
};

struct InversionResult {
  RectangleParams theta_hat;
  double misfit = 0.0;
  std::size_t n_forward_solves = 0;
  bool converged = false;
  std::size_t start_used = 0;
};

inline nlohmann::json to_json(const InversionResult& r) {
  return {{"theta_hat", to_json(r.theta_hat)},
          {"misfit", r.misfit},
          {"n_forward_solves", r.n_forward_solves},
          {"converged", r.converged},
          {"start_used", r.start_used}};
}

namespace detail {

class ScaledObjective {
 public:
  ScaledObjective(const FarFieldPattern& g, const MeasurementSetup& setup, const ParameterBounds& b)
      : g_(g), setup_(setup), b_(b) {
    data_scale_ = scatter::l2_norm(g) * scatter::l2_norm(g);
    if (!(data_scale_ > 0.0)) data_scale_ = 1.0;
  }

  [[nodiscard]] RectangleParams unscale(const Eigen::VectorXd& s) const {
    auto lin = [](const std::array<double, 2>& r, double v) { return r[0] + v * (r[1] - r[0]); };
    return {lin(b_.c1, s(0)), lin(b_.c2, s(1)), lin(b_.half_width, s(2)), lin(b_.half_width, s(3)),
            s(4) * std::numbers::pi};
  }

  [[nodiscard]] Eigen::VectorXd scale(const RectangleParams& t) const {
    auto inv = [](const std::array<double, 2>& r, double v) { return (v - r[0]) / (r[1] - r[0]); };
    Eigen::VectorXd s(5);
    s << inv(b_.c1, t.c1), inv(b_.c2, t.c2), inv(b_.half_width, t.a), inv(b_.half_width, t.b),
        t.phi / std::numbers::pi;
    return s;
  }

  /// Nearest point of the box; the rotation is left free.
  [[nodiscard]] static Eigen::VectorXd project(const Eigen::VectorXd& s) {
    Eigen::VectorXd p = s;
    for (Eigen::Index i = 0; i < 4; ++i) p(i) = std::clamp(p(i), 0.0, 1.0);
    return p;
  }

  /// Misfit at the box projection plus a quadratic penalty on the distance to the box.
  double operator()(const Eigen::VectorXd& s) {
    const Eigen::VectorXd p = project(s);
    const double out = (s - p).squaredNorm();
    ++solves_;
    return misfit(unscale(p), g_, setup_) + 10.0 * data_scale_ * out;
  }

  [[nodiscard]] std::size_t solves() const { return solves_; }

 private:
  const FarFieldPattern& g_;
  const MeasurementSetup& setup_;
  ParameterBounds b_;
  double data_scale_ = 1.0;
  std::size_t solves_ = 0;
};

inline std::vector<Eigen::VectorXd> start_grid(const std::array<std::size_t, 5>& grid) {
  std::vector<Eigen::VectorXd> out;
  auto frac = [](std::size_t i, std::size_t n) { return (static_cast<double>(i) + 0.5) / static_cast<double>(n); };
  for (std::size_t i0 = 0; i0 < grid[0]; ++i0)
    for (std::size_t i1 = 0; i1 < grid[1]; ++i1)
      for (std::size_t i2 = 0; i2 < grid[2]; ++i2)
        for (std::size_t i3 = 0; i3 < grid[3]; ++i3)
          for (std::size_t i4 = 0; i4 < grid[4]; ++i4) {
            Eigen::VectorXd s(5);
            // Rotations start at 0, pi/n, ...; the others at cell centres.
            s << frac(i0, grid[0]), frac(i1, grid[1]), frac(i2, grid[2]), frac(i3, grid[3]),
                static_cast<double>(i4) / static_cast<double>(grid[4]);
            out.push_back(s);
          }
  return out;
}

}  // namespace detail

/// Nelder-Mead from a single start; the result is canonicalized.
inline InversionResult refine_from(const RectangleParams& start, const FarFieldPattern& g,
                                   const MeasurementSetup& setup, const OptConfig& opt = {}) {
  opt.validate();
  detail::ScaledObjective obj(g, setup, opt.bounds);
  auto fn = [&](const Eigen::VectorXd& s) { return obj(s); };
  auto r = nelder_mead(fn, obj.scale(start), opt.nelder_mead);
  const auto restart = nelder_mead(fn, r.x, opt.nelder_mead);
  const bool converged = restart.converged;
  if (restart.value <= r.value) r = restart;
  InversionResult out;
  out.theta_hat = canonicalize(obj.unscale(detail::ScaledObjective::project(r.x)));
  out.misfit = misfit(out.theta_hat, g, setup);
  out.n_forward_solves = obj.solves() + 1;
  out.converged = converged;
  return out;
}

/// Multistart recovery. `converged` is false when no refined start reached
/// the simplex tolerance within its budget; the best point is still returned.
inline InversionResult invert(const FarFieldPattern& g, const MeasurementSetup& setup, const OptConfig& opt = {}) {
  setup.validate();
  opt.validate();
  if (g.size() != setup.n_directions) throw InvalidInput("invert: data has a different number of directions than the setup");
  detail::ScaledObjective obj(g, setup, opt.bounds);
  auto fn = [&](const Eigen::VectorXd& s) { return obj(s); };

  const auto starts = detail::start_grid(opt.grid);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < starts.size(); ++i) scored.emplace_back(obj(starts[i]), i);
  std::stable_sort(scored.begin(), scored.end());

  const std::size_t k = std::min(opt.refine_starts, scored.size());
  NelderMeadResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::size_t best_start = 0;
  bool any_converged = false;
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t idx = scored[r].second;
    const auto res = nelder_mead(fn, starts[idx], opt.nelder_mead);
    any_converged = any_converged || res.converged;
    if (res.value < best.value || (res.value == best.value && idx < best_start)) {
      best = res;
      best_start = idx;
    }
  }
  const auto restart = nelder_mead(fn, best.x, opt.nelder_mead);
  if (restart.value <= best.value) best = restart;

  InversionResult out;
  out.theta_hat = canonicalize(obj.unscale(detail::ScaledObjective::project(best.x)));
  out.misfit = misfit(out.theta_hat, g, setup);
  out.n_forward_solves = obj.solves() + 1;
  out.converged = any_converged && restart.converged;
  out.start_used = best_start;
  return out;
}

struct LandscapeAxis {
  std::string name;  // c1, c2, a, b or phi
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 11;

  [[nodiscard]] std::vector<double> values() const {
    if (count < 2 || !(lo < hi)) throw InvalidInput("landscape axis '" + name + "': need count >= 2 and lo < hi");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
  }
};

struct LandscapeGrid {
  std::string axis1, axis2;
  std::vector<double> values1, values2;
  Eigen::MatrixXd misfit;  // values1.size() x values2.size()
};

/// Misfit on a Cartesian grid of two parameters, the rest fixed at `fixed`.
inline LandscapeGrid landscape(const FarFieldPattern& g, const MeasurementSetup& setup, const LandscapeAxis& ax1,
                               const LandscapeAxis& ax2, const RectangleParams& fixed) {
  const auto i1 = parameter_index(ax1.name), i2 = parameter_index(ax2.name);
  if (i1 == i2) throw InvalidInput("landscape: the two axes must be different parameters");
  LandscapeGrid out{ax1.name, ax2.name, ax1.values(), ax2.values(), {}};
  out.misfit.resize(static_cast<Eigen::Index>(out.values1.size()), static_cast<Eigen::Index>(out.values2.size()));
  for (std::size_t p = 0; p < out.values1.size(); ++p) {
    for (std::size_t q = 0; q < out.values2.size(); ++q) {
      RectangleParams t = fixed;
      t.set(i1, out.values1[p]);
      t.set(i2, out.values2[q]);
      out.misfit(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = misfit(t, g, setup);
    }
  }
  return out;
}

/// CSV with header p1,p2,misfit; axis 1 outer, axis 2 inner.
inline void write_landscape_csv(std::ostream& os, const LandscapeGrid& l) {
  os << "p1,p2,misfit\n" << std::setprecision(17);
  for (std::size_t p = 0; p < l.values1.size(); ++p)
    for (std::size_t q = 0; q < l.values2.size(); ++q)
      os << l.values1[p] << ',' << l.values2[q] << ','
         << l.misfit(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) << '\n';
}

}  // namespace cornerscat::inverse
