#pragma once

// Forward map theta -> far field, synthetic measurements, misfit, far-field
// gap and the self-convergence error estimate.

#include <cornerscat/inverse/params.hpp>
#include <cornerscat/scatter/far_field.hpp>

#include <cmath>
#include <random>

namespace cornerscat::inverse {

using scatter::FarFieldPattern;

/// Discretization used for forward solves.
struct ForwardConfig {
  std::size_t n_per_side = 32;
  double grading_p = 6.0;
};

struct MeasurementSetup {
  scatter::Medium medium{2.0, 2.0};
  scatter::PlaneWave wave{Vec2(1.0, 0.0)};
  std::size_t n_directions = 64;
  double noise_level = 0.0;  // relative to the RMS of |u_inf|
  std::uint64_t seed = 0;
  ForwardConfig forward{};          // inversion-side forward solves
  std::size_t data_refinement = 2;  // synthetic data uses this many times more nodes

  void validate() const {
    if (!(noise_level >= 0.0 && noise_level <= 0.5)) throw InvalidInput("MeasurementSetup: noise_level must lie in [0, 0.5]");
    if (n_directions < 8) throw InvalidInput("MeasurementSetup: need at least 8 directions");
    if (data_refinement < 1) throw InvalidInput("MeasurementSetup: data_refinement must be >= 1");
  }
};

/// Far field of the canonical rectangle at the given node count per side.
inline FarFieldPattern forward_far_field(const RectangleParams& theta, const MeasurementSetup& setup,
                                         std::size_t n_per_side) {
  const auto rect = to_rectangle(theta);
  const auto disc = scatter::discretize(rect, n_per_side, setup.forward.grading_p);
  return scatter::evaluate_far(scatter::solve_transmission(rect, setup.medium, setup.wave, disc), setup.n_directions);
}

inline FarFieldPattern forward_far_field(const RectangleParams& theta, const MeasurementSetup& setup) {
  return forward_far_field(theta, setup, setup.forward.n_per_side);
}

/// Far field of theta_star on the refined mesh plus seeded complex Gaussian
/// noise with E|n|^2 = (noise_level * RMS|u_inf|)^2 per sample.
inline FarFieldPattern synthesize_measurement(const RectangleParams& theta_star, const MeasurementSetup& setup) {
  setup.validate();
  auto g = forward_far_field(theta_star, setup, setup.forward.n_per_side * setup.data_refinement);
  if (setup.noise_level == 0.0) return g;
  double ms = 0.0;
  for (const auto& v : g.values) ms += std::norm(v);
  const double sigma = setup.noise_level * std::sqrt(ms / static_cast<double>(g.size()));
  std::mt19937_64 rng(setup.seed);
  std::normal_distribution<double> normal(0.0, sigma / std::sqrt(2.0));
  for (auto& v : g.values) {
    const double re = normal(rng);
    const double im = normal(rng);
    v += scatter::cplx(re, im);
  }
  return g;
}

/// Trapezoidal approximation of the squared L2(S^1) distance.
inline double squared_distance(const FarFieldPattern& f, const FarFieldPattern& g) {
  const double d = scatter::l2_distance(f, g);
  return d * d;
}

inline double misfit(const RectangleParams& theta, const FarFieldPattern& g, const MeasurementSetup& setup) {
  if (g.size() != setup.n_directions) throw InvalidInput("misfit: data has a different number of directions than the setup");
  return squared_distance(forward_far_field(theta, setup), g);
}

/// || F_n(theta) - F_2n(theta) || at the setup's forward mesh.
inline double solver_error_estimate(const RectangleParams& theta, const MeasurementSetup& setup) {
  const auto n = setup.forward.n_per_side;
  return scatter::l2_distance(forward_far_field(theta, setup, n), forward_far_field(theta, setup, 2 * n));
}

inline double far_field_gap(const RectangleParams& t1, const RectangleParams& t2, const MeasurementSetup& setup) {
  return scatter::l2_distance(forward_far_field(t1, setup), forward_far_field(t2, setup));
}

}  // namespace cornerscat::inverse
