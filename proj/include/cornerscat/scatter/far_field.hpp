#pragma once

// Far-field patterns. v_sc(r xhat) = exp(i kappa r) / sqrt(r) * v_inf(xhat) + O(r^-3/2),
// and from the asymptotics of H0 the layer potentials give
//   v_inf(xhat) = exp(i pi/4) / sqrt(8 pi kappa)
//                 * int [-i kappa (nu.xhat) phi - lambda d_nu v-] exp(-i kappa xhat.y) ds(y).

#include <cornerscat/scatter/transmission.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerscat::scatter {

/// Samples on theta_k = 2 pi k / n.
struct FarFieldPattern {
  std::vector<double> theta;
  std::vector<cplx> values;

  [[nodiscard]] std::size_t size() const { return theta.size(); }
};

inline std::vector<double> uniform_directions(std::size_t n) {
  if (n < 1) throw InvalidInput("far field: need at least one direction");
  std::vector<double> th(n);
  for (std::size_t k = 0; k < n; ++k) th[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return th;
}

/// Far field of a density solution in arbitrary directions.
inline std::vector<cplx> far_field_at(const DensitySolution& sol, const std::vector<double>& theta) {
  std::vector<cplx> out(theta.size(), cplx(0.0));
  if (sol.trivial) return out;
  const double k = sol.medium.kappa(), lam = sol.medium.lambda();
  const cplx gamma = std::exp(cplx(0.0, 0.25 * std::numbers::pi)) / std::sqrt(8.0 * std::numbers::pi * k);
  const auto& disc = sol.disc;
  for (std::size_t q = 0; q < theta.size(); ++q) {
    const Vec2 xh(std::cos(theta[q]), std::sin(theta[q]));
    cplx acc = 0.0;
    for (std::size_t j = 0; j < disc.size(); ++j) {
      const cplx phase = std::exp(cplx(0.0, -k * xh.dot(disc.nodes[j])));
      acc += (cplx(0.0, -k) * disc.scaled_normal(j).dot(xh) * sol.phi(static_cast<Eigen::Index>(j)) -
              lam * sol.psi(static_cast<Eigen::Index>(j))) *
             phase;
    }
    out[q] = gamma * disc.h * acc;
  }
  return out;
}

inline FarFieldPattern evaluate_far(const DensitySolution& sol, std::size_t n_directions = 64) {
  if (n_directions < 8) throw InvalidInput("evaluate_far: need at least 8 directions");
  FarFieldPattern f;
  f.theta = uniform_directions(n_directions);
  f.values = far_field_at(sol, f.theta);
  return f;
}

/// Discrete L2(S^1) norm with the trapezoidal rule.
inline double l2_norm(const FarFieldPattern& f) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::norm(v);
  return std::sqrt(2.0 * std::numbers::pi / static_cast<double>(f.size()) * s);
}

inline double l2_distance(const FarFieldPattern& f, const FarFieldPattern& g) {
  if (f.size() != g.size()) throw InvalidInput("far field: sample counts differ");
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += std::norm(f.values[k] - g.values[k]);
  return std::sqrt(2.0 * std::numbers::pi / static_cast<double>(f.size()) * s);
}

inline void write_csv(std::ostream& os, const FarFieldPattern& f) {
  os << "theta,re,im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < f.size(); ++k)
    os << f.theta[k] << ',' << f.values[k].real() << ',' << f.values[k].imag() << '\n';
}

inline void write_csv(const std::string& path, const FarFieldPattern& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_csv(os, f);
}

/// Reads the theta,re,im format back.
inline FarFieldPattern read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(is, line);
  if (line != "theta,re,im") throw std::runtime_error(path + ": expected header theta,re,im");
  FarFieldPattern f;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    double t, re, im;
    char c1, c2;
    if (!(ss >> t >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed row");
    f.theta.push_back(t);
    f.values.emplace_back(re, im);
  }
  return f;
}

}  // namespace cornerscat::scatter
