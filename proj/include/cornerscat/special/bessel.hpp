#pragma once

// Integer-order Bessel functions of real positive argument.
//
// J_n: Miller's downward recurrence normalized by J0 + 2 sum J_2k = 1.
// Y0, Y1: Neumann series in the J_2k for x <= 20, Hankel asymptotics above.
// Y_n: upward recurrence from Y0, Y1.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerscat::special {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct BesselTriple {
  double j = 0.0;
  double y = 0.0;
  std::complex<double> h;  // H^(1)_n = J_n + i Y_n
};

/// J0, J1, J2 together with Y0 and the regularized
///   Y1reg = Y1 + 2/(pi x),   Y2reg = Y2 + 4/(pi x^2) + 1/pi,
/// which stay accurate (relative to their size) as x -> 0.
struct KernelBessel {
  double j0, j1, j2;
  double y0, y1_reg, y2_reg;
};

namespace detail {

inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double asymptotic_threshold = 20.0;

inline void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": argument must be positive and finite");
}

inline int miller_start(int nmax, double x) {
  const int m = std::max(nmax, static_cast<int>(std::ceil(x)));
  int start = m + 30 + static_cast<int>(std::sqrt(40.0 * std::max(m, 1)));
  start += start % 2;
  return start;
}

// Unnormalized downward recurrence; buf[k] ~ J_k for k = 0..start. Returns
// the normalization sum J0 + 2 sum J_2k of the unnormalized values.
inline double miller_fill(double x, int start, double* buf) {
  buf[start] = 0.0;
  buf[start - 1] = 1e-300;
  const double two_over_x = 2.0 / x;
  for (int k = start - 1; k >= 1; --k) {
    buf[k - 1] = k * two_over_x * buf[k] - buf[k + 1];
    if (std::abs(buf[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start; ++i) buf[i] *= 1e-250;
    }
  }
  double sum = buf[0];
  for (int k = 2; k <= start; k += 2) sum += 2.0 * buf[k];
  return sum;
}

// Hankel asymptotic expansion: returns (J_nu, Y_nu) for nu in {0, 1}, x > 20.
inline std::pair<double, double> hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  const double z8 = 8.0 * x;
  double p = 1.0, q = 0.0, term = 1.0, prev = 1e300;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * z8);
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    // k odd -> Q with sign (-1)^((k-1)/2); k even -> P with sign (-1)^(k/2).
    if (k % 2 == 1)
      q += ((k - 1) / 2 % 2 == 0 ? term : -term);
    else
      p += (k / 2 % 2 == 0 ? term : -term);
    if (prev < 1e-18) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
  const double c = std::cos(chi), s = std::sin(chi);
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

// Y0 and Y1reg from normalized J_k (k = 0..start), x <= 20.
inline std::pair<double, double> neumann_y01(double x, const double* j, int start) {
  const double lg = std::log(0.5 * x) + euler_gamma;
  double s0 = 0.0, s1 = 0.0, even = 0.0;
  for (int k = 1; 2 * k <= start; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    s0 += sign * j[2 * k] / k;
    const double jn = 2 * k + 1 <= start ? j[2 * k + 1] : 0.0;
    s1 += sign * (j[2 * k - 1] - jn) / k;
    even += j[2 * k];
  }
  const double inv_pi = std::numbers::inv_pi;
  const double y0 = 2.0 * inv_pi * lg * j[0] - 4.0 * inv_pi * s0;
  const double y1_reg = 4.0 * inv_pi * even / x + 2.0 * inv_pi * lg * j[1] + 2.0 * inv_pi * s1;
  return {y0, y1_reg};
}

}  // namespace detail

/// J_0(x) .. J_nmax(x).
inline std::vector<double> bessel_j_array(int nmax, double x) {
  detail::require_positive(x, "bessel_j_array");
  if (nmax < 0) throw DomainError("bessel_j_array: negative order");
  const int start = detail::miller_start(nmax, x);
  std::vector<double> buf(static_cast<std::size_t>(start) + 1);
  const double sum = detail::miller_fill(x, start, buf.data());
  double scale = 1.0 / sum;
  if (x > detail::asymptotic_threshold) {
    // Normalize against the asymptotic J0 or J1, whichever is larger.
    const double j0 = detail::hankel_asymptotic(0, x).first;
    const double j1 = detail::hankel_asymptotic(1, x).first;
    scale = std::abs(j0) > std::abs(j1) ? j0 / buf[0] : j1 / buf[1];
  }
  buf.resize(static_cast<std::size_t>(nmax) + 1);
  for (auto& v : buf) v *= scale;
  return buf;
}

/// Y_0(x) .. Y_nmax(x).
inline std::vector<double> bessel_y_array(int nmax, double x) {
  detail::require_positive(x, "bessel_y_array");
  if (nmax < 0) throw DomainError("bessel_y_array: negative order");
  std::vector<double> y(static_cast<std::size_t>(std::max(nmax, 1)) + 1);
  if (x > detail::asymptotic_threshold) {
    y[0] = detail::hankel_asymptotic(0, x).second;
    y[1] = detail::hankel_asymptotic(1, x).second;
  } else {
    const int start = detail::miller_start(1, x);
    std::vector<double> j(static_cast<std::size_t>(start) + 1);
    const double sum = detail::miller_fill(x, start, j.data());
    for (auto& v : j) v /= sum;
    const auto [y0, y1_reg] = detail::neumann_y01(x, j.data(), start);
    y[0] = y0;
    y[1] = y1_reg - 2.0 / (std::numbers::pi * x);
  }
  for (int n = 1; n < nmax; ++n) {
    y[n + 1] = 2.0 * n / x * y[n] - y[n - 1];
    if (!std::isfinite(y[n + 1])) throw DomainError("bessel_y_array: Y_n overflows for n=" + std::to_string(n + 1));
  }
  y.resize(static_cast<std::size_t>(nmax) + 1);
  return y;
}

/// J_n(x), Y_n(x) and H^(1)_n(x) for n >= 0, x > 0.
inline BesselTriple bessel_suite(int n, double x) {
  if (n < 0) throw DomainError("bessel_suite: negative order");
  const double j = bessel_j_array(n, x)[static_cast<std::size_t>(n)];
  const double y = bessel_y_array(n, x)[static_cast<std::size_t>(n)];
  return {j, y, {j, y}};
}

/// Orders 0..2 with regularized Y1, Y2, sized for repeated kernel evaluation.
inline KernelBessel kernel_bessel(double x) {
  detail::require_positive(x, "kernel_bessel");
  constexpr double inv_pi = std::numbers::inv_pi;
  KernelBessel out{};
  if (x > detail::asymptotic_threshold) {
    const auto [j0, y0] = detail::hankel_asymptotic(0, x);
    const auto [j1, y1] = detail::hankel_asymptotic(1, x);
    out.j0 = j0;
    out.j1 = j1;
    out.j2 = 2.0 / x * j1 - j0;
    out.y0 = y0;
    out.y1_reg = y1 + 2.0 * inv_pi / x;
    out.y2_reg = 2.0 / x * y1 - y0 + 4.0 * inv_pi / (x * x) + inv_pi;
    return out;
  }
  std::array<double, 128> buf{};
  const int start = detail::miller_start(2, x);
  const double sum = detail::miller_fill(x, start, buf.data());
  for (int k = 0; k <= start; ++k) buf[k] /= sum;
  const auto [y0, y1_reg] = detail::neumann_y01(x, buf.data(), start);
  out.j0 = buf[0];
  out.j1 = buf[1];
  out.j2 = buf[2];
  out.y0 = y0;
  out.y1_reg = y1_reg;
  out.y2_reg = 2.0 / x * y1_reg - y0 + inv_pi;
  return out;
}

}  // namespace cornerscat::special
