#pragma once

// Separation-of-variables solution for a disk: v_in, v_sc and the interior
// field expanded in J_n, H_n and J_n(kappa sqrt(q0) r), matched mode by mode
// at r = R.

#include <cornerscat/scatter/far_field.hpp>
#include <cornerscat/special/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerscat::scatter {

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scattering coefficients a_n, n = 0..n_terms, for a centered disk and a
/// unit incident coefficient; a_{-n} = a_n.
inline std::vector<cplx> disk_mode_ratios(const Medium& medium, double radius, int n_terms) {
  const double ke = medium.kappa(), ki = medium.interior_kappa(), lam = medium.lambda();
  const double xe = ke * radius, xi = ki * radius;
  const auto je = special::bessel_j_array(n_terms + 1, xe);
  const auto ye = special::bessel_y_array(n_terms + 1, xe);
  const auto ji = special::bessel_j_array(n_terms + 1, xi);
  std::vector<cplx> t(static_cast<std::size_t>(n_terms) + 1);
  for (int n = 0; n <= n_terms; ++n) {
    auto deriv = [n](const std::vector<double>& f, double x) {
      return n == 0 ? -f[1] : f[n - 1] - n / x * f[n];
    };
    const cplx h(je[n], ye[n]);
    const cplx dh(deriv(je, xe), deriv(ye, xe));
    const double dje = deriv(je, xe), dji = deriv(ji, xi);
    const cplx num = lam * ki * dji * je[n] - ke * dje * ji[n];
    const cplx den = ke * dh * ji[n] - lam * ki * dji * h;
    const cplx ratio = num / den;
    t[static_cast<std::size_t>(n)] = std::isfinite(ratio.real()) && std::isfinite(ratio.imag()) ? ratio : cplx(0.0);
  }
  return t;
}

/// Far field of a disk of radius R centered at `center`.
inline FarFieldPattern disk_series_solution(const Medium& medium, double radius, const PlaneWave& wave, int n_terms,
                                            std::size_t n_directions, const Vec2& center = Vec2::Zero()) {
  if (!(radius > 0.0)) throw InvalidInput("disk_series_solution: radius must be positive");
  if (n_terms < 1) throw InvalidInput("disk_series_solution: need at least one term");
  FarFieldPattern f;
  f.theta = uniform_directions(n_directions);
  f.values.assign(n_directions, cplx(0.0));
  if (medium.degenerate()) return f;

  const auto t = disk_mode_ratios(medium, radius, n_terms);
  const double k = medium.kappa();
  const double thd = wave.angle();
  // Incident coefficients c_n = -i^n exp(-i n thd); far-field weight (-i)^n.
  // Their product i^n (-i)^n = 1, so a_n (-i)^n = -exp(-i n thd) T_n.
  double largest = 0.0;
  for (const auto& v : t) largest = std::max(largest, std::abs(v));
  if (std::abs(t.back()) > 1e-14 * largest)
    throw NoConvergence("disk_series_solution: tail coefficient " + std::to_string(std::abs(t.back())) +
                        " is not negligible; increase n_terms");
  const cplx pre = std::sqrt(2.0 / (std::numbers::pi * k)) * std::exp(cplx(0.0, -0.25 * std::numbers::pi));
  const cplx shift_in = std::exp(cplx(0.0, k * center.dot(wave.d())));
  for (std::size_t q = 0; q < n_directions; ++q) {
    const double th = f.theta[q];
    cplx s = -t[0];
    for (int n = 1; n <= n_terms; ++n) s += -2.0 * std::cos(n * (th - thd)) * t[static_cast<std::size_t>(n)];
    const Vec2 xh(std::cos(th), std::sin(th));
    f.values[q] = pre * s * shift_in * std::exp(cplx(0.0, -k * xh.dot(center)));
  }
  return f;
}

/// Enough terms for the disk series: past the transition region of both
/// wavenumbers with a margin.
inline int default_disk_terms(const Medium& medium, double radius) {
  const double x = std::max(medium.kappa(), medium.interior_kappa()) * radius;
  return static_cast<int>(std::ceil(x + 10.0 * std::cbrt(x) + 20.0));
}

}  // namespace cornerscat::scatter
