#pragma once

// Field values off the boundary. The densities are interpolated
// trigonometrically onto a finer parameter grid (the boundary itself is
// resampled exactly) and the layer potentials are summed with the
// trapezoidal rule there. Points closer than two local node spacings of the
// solver grid are rejected.

#include <cornerscat/scatter/transmission.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerscat::scatter {

struct TooCloseToBoundary : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Trigonometric interpolant of samples f_j at t_j = (j + shift) h, evaluated at fine_t.
inline Eigen::VectorXcd trig_upsample(const Eigen::VectorXcd& f, double shift, const std::vector<double>& fine_t) {
  const auto n = static_cast<std::size_t>(f.size());
  const std::size_t half = n / 2;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  // c_m = (1/N) sum_j f_j exp(-i m t_j), m = 0..N/2.
  std::vector<cplx> cpos(half + 1), cneg(half + 1);
  for (std::size_t m = 0; m <= half; ++m) {
    cplx sp = 0.0, sn = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double tj = (static_cast<double>(j) + shift) * h;
      const cplx e = std::exp(cplx(0.0, -static_cast<double>(m) * tj));
      sp += f(static_cast<Eigen::Index>(j)) * e;
      sn += f(static_cast<Eigen::Index>(j)) * std::conj(e);
    }
    cpos[m] = sp / static_cast<double>(n);
    cneg[m] = sn / static_cast<double>(n);
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(fine_t.size()));
  for (std::size_t q = 0; q < fine_t.size(); ++q) {
    const double t = fine_t[q];
    const cplx step = std::exp(cplx(0.0, t));
    cplx ep = 1.0, en = 1.0;
    cplx acc = cpos[0];
    for (std::size_t m = 1; m < half; ++m) {
      ep *= step;
      en *= std::conj(step);
      acc += cpos[m] * ep + cneg[m] * en;
    }
    // Nyquist mode as a cosine through the coarse nodes.
    acc += cpos[half] * std::exp(cplx(0.0, static_cast<double>(half) * shift * h)) *
           std::cos(static_cast<double>(half) * (t - shift * h));
    out(static_cast<Eigen::Index>(q)) = acc;
  }
  return out;
}

}  // namespace detail

class NearFieldEvaluator {
 public:
  explicit NearFieldEvaluator(const DensitySolution& sol, std::size_t upsample = 16)
      : medium_(sol.medium), wave_(sol.wave), trivial_(sol.trivial), coarse_h_(sol.disc.h) {
    const auto& disc = sol.disc;
    if (upsample < 1) throw std::invalid_argument("near field: upsample factor must be >= 1");
    const std::size_t m = disc.size() * upsample;
    fine_ = sample_curve(disc.curve, m, disc.shift);
    phi_ = detail::trig_upsample(sol.phi, disc.shift, fine_.t);
    psi_ = detail::trig_upsample(sol.psi, disc.shift, fine_.t);
  }

  /// Positive inside D. Winding number of the fine boundary polygon.
  [[nodiscard]] bool inside(const Vec2& x) const {
    double wind = 0.0;
    const std::size_t m = fine_.size();
    for (std::size_t q = 0; q < m; ++q) {
      const Vec2 a = fine_.nodes[q] - x, b = fine_.nodes[(q + 1) % m] - x;
      wind += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    }
    return std::abs(wind) > std::numbers::pi;
  }

  /// Distance to the nearest fine node divided by the local spacing of the
  /// solver's own nodes there.
  [[nodiscard]] double clearance(const Vec2& x) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t q = 0; q < fine_.size(); ++q) {
      const double r = (fine_.nodes[q] - x).norm();
      if (r < best) {
        best = r;
        arg = q;
      }
    }
    return best / (coarse_h_ * fine_.speed[arg]);
  }

  /// Total field v: v_in + v_sc outside D, the interior field inside.
  [[nodiscard]] cplx total_field(const Vec2& x) const {
    check(x);
    if (inside(x)) return trivial_ ? wave_.value(x, medium_.kappa()) : interior(x);
    return wave_.value(x, medium_.kappa()) + (trivial_ ? cplx(0.0) : exterior_scattered(x));
  }

  /// Scattered field at an exterior point.
  [[nodiscard]] cplx scattered_field(const Vec2& x) const {
    check(x);
    if (inside(x)) throw std::invalid_argument("scattered_field: point lies inside the scatterer");
    return trivial_ ? cplx(0.0) : exterior_scattered(x);
  }

  static constexpr double min_clearance = 2.0;

 private:
  void check(const Vec2& x) const {
    if (!x.allFinite()) throw std::invalid_argument("near field: non-finite point");
    const double c = clearance(x);
    if (c < min_clearance)
      throw TooCloseToBoundary("near field: point is " + std::to_string(c) +
                               " node spacings from the boundary (minimum " + std::to_string(min_clearance) + ")");
  }

  // sum_q h [ (ik/4) H1(kr) (n.(x-y))/r phi - lambda (i/4) H0(kr) psi ]
  [[nodiscard]] cplx exterior_scattered(const Vec2& x) const {
    return layer_sum(x, medium_.kappa(), 1.0, -medium_.lambda());
  }
  // sum_q h [ (i/4) H0(kr) psi - (ik/4) H1(kr) (n.(x-y))/r phi ]
  [[nodiscard]] cplx interior(const Vec2& x) const { return layer_sum(x, medium_.interior_kappa(), -1.0, 1.0); }

  [[nodiscard]] cplx layer_sum(const Vec2& x, double k, double dl_sign, double sl_sign) const {
    const cplx I(0.0, 1.0);
    cplx acc = 0.0;
    for (std::size_t q = 0; q < fine_.size(); ++q) {
      const Vec2 d = x - fine_.nodes[q];
      const double r = d.norm();
      const auto b = special::kernel_bessel(k * r);
      const cplx h0(b.j0, b.y0);
      const cplx h1(b.j1, b.y1_reg - 2.0 * std::numbers::inv_pi / (k * r));
      const auto qi = static_cast<Eigen::Index>(q);
      acc += dl_sign * 0.25 * I * k * h1 * fine_.scaled_normal(q).dot(d) / r * phi_(qi) +
             sl_sign * 0.25 * I * h0 * psi_(qi);
    }
    return fine_.h * acc;
  }

  Medium medium_;
  PlaneWave wave_;
  bool trivial_;
  double coarse_h_;
  BoundaryDiscretization fine_;
  Eigen::VectorXcd phi_, psi_;
};

/// Total field at each point (see NearFieldEvaluator::total_field).
inline std::vector<cplx> evaluate_near(const DensitySolution& sol, const std::vector<Vec2>& points) {
  const NearFieldEvaluator ev(sol);
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(ev.total_field(p));
  return out;
}

/// One-sided limits of v and its normal derivative at a boundary point.
struct InterfaceTraces {
  cplx v_out, v_in, dn_out, dn_in;
};

/// Degree-7 polynomial fits of the total field along the unit normal n on
/// each side of the boundary point x0, evaluated at x0. Sample offsets start
/// just over two solver node spacings from the boundary.
inline InterfaceTraces boundary_traces(const NearFieldEvaluator& ev, const BoundaryDiscretization& disc, const Vec2& x0,
                                       const Vec2& n) {
  std::size_t near = 0;
  for (std::size_t j = 1; j < disc.size(); ++j)
    if ((disc.nodes[j] - x0).norm() < (disc.nodes[near] - x0).norm()) near = j;
  const double d0 = 2.1 * disc.h * disc.speed[near];
  constexpr int k_samples = 8;
  Eigen::MatrixXcd v(k_samples, k_samples);
  Eigen::VectorXcd fo(k_samples), fi(k_samples);
  for (int k = 0; k < k_samples; ++k) {
    const double del = d0 * (k + 1);
    for (int c = 0; c < k_samples; ++c) v(k, c) = std::pow(del, c);
    fo(k) = ev.total_field(x0 + del * n);
    fi(k) = ev.total_field(x0 - del * n);
  }
  const auto lu = v.partialPivLu();
  const Eigen::VectorXcd co = lu.solve(fo), ci = lu.solve(fi);
  return {co(0), ci(0), co(1), -ci(1)};
}

}  // namespace cornerscat::scatter
