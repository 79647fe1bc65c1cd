#pragma once

// Nystrom solver for the transmission problem
//   (Delta + kappa^2) v = 0 outside D,  (Delta + kappa^2 q0) v = 0 inside,
//   v+ = v-,  d_nu v+ = lambda d_nu v-,  v = v_in + v_sc,  v_sc outgoing.
//
// Unknowns are phi = v on the boundary and psi = |x'(t)| d_nu v- (interior
// normal derivative times the parametrization speed). With the Green
// representations
//   interior:  v    = SL_i psi - DL_i phi
//   exterior:  v_sc = DL_e phi - lambda SL_e psi
// the sum of the interior and exterior trace equations gives the
// second-kind system (S = 2 SL, K = 2 DL, K' and T their normal derivatives)
//   2 phi - (K_e - K_i) phi + (lambda S_e - S_i) psi = 2 v_in
//   (1 + lambda) psi + (lambda K'_e - K'_i) psi - (T_e - T_i) phi = 2 |x'| d_nu v_in
// in which the hypersingular parts of T_e and T_i cancel. Logarithmic
// singularities are integrated with Kress's product weights.

#include <cornerscat/scatter/discretize.hpp>
#include <cornerscat/special/bessel.hpp>

#include <Eigen/LU>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerscat::scatter {

struct SingularSystem : std::runtime_error {
  SingularSystem(const std::string& what, double rcond_) : std::runtime_error(what), rcond(rcond_) {}
  double rcond;
};

struct DegenerateContrast : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SolveOptions {
  bool strict = false;              // q0 == 1 throws instead of returning the trivial solution
  double rcond_threshold = 1e-13;   // below this the system counts as singular
};

struct DensitySolution {
  BoundaryDiscretization disc;
  Medium medium;
  PlaneWave wave;
  Eigen::VectorXcd phi;  // v on the boundary
  Eigen::VectorXcd psi;  // |x'(t)| times the interior normal derivative
  double rcond = 1.0;
  bool trivial = false;  // no contrast: v_sc = 0 everywhere
};

namespace detail {

inline constexpr double euler_gamma = special::detail::euler_gamma;

/// Kress weights R_k, k = (i - j) mod N, for the kernel log(4 sin^2((t-tau)/2)).
inline std::vector<double> kress_log_weights(std::size_t n_nodes) {
  const std::size_t n = n_nodes / 2;
  std::vector<double> r(n_nodes);
  const double pi = std::numbers::pi;
  for (std::size_t k = 0; k < n_nodes; ++k) {
    double s = 0.0;
    for (std::size_t m = 1; m < n; ++m) s += std::cos(static_cast<double>(m * k) * pi / static_cast<double>(n)) / m;
    r[k] = -2.0 * pi / n * s - pi / static_cast<double>(n * n) * (k % 2 == 0 ? 1.0 : -1.0);
  }
  return r;
}

struct HankelPieces {
  special::KernelBessel b;
  cplx h0() const { return {b.j0, b.y0}; }
  cplx h1reg() const { return {b.j1, b.y1_reg}; }
  cplx h2reg() const { return {b.j2, b.y2_reg}; }
};

inline Eigen::MatrixXcd assemble_system(const BoundaryDiscretization& disc, const Medium& medium) {
  const std::size_t n = disc.size();
  const double ke = medium.kappa(), ki = medium.interior_kappa(), lam = medium.lambda();
  const double h = disc.h;
  const double inv2pi = 0.5 * std::numbers::inv_pi, inv_pi = std::numbers::inv_pi;
  const cplx I(0.0, 1.0);
  const auto R = kress_log_weights(n);
  Eigen::MatrixXcd a(2 * n, 2 * n);

  for (std::size_t i = 0; i < n; ++i) {
    const double s = disc.speed[i];
    const Vec2 nt = disc.scaled_normal(i);
    auto m2 = [&](double k) { return 0.5 * I - euler_gamma * inv_pi - inv_pi * std::log(0.5 * k * s); };
    auto n2 = [&](double k) {
      return 2.0 * s * s * (I * k * k / 8.0 - k * k * 0.25 * inv_pi * (std::log(0.5 * k * s) + euler_gamma - 0.5));
    };
    const double n1 = -0.25 * inv_pi * (ke * ke - ki * ki) * s * s;
    const double curvature = nt.dot(disc.acceleration[i]) * inv2pi / (s * s);
    a(i, i) = 2.0;
    a(i, n + i) = R[0] * (-(lam - 1.0) * inv2pi) + h * (lam * m2(ke) - m2(ki));
    a(n + i, n + i) = (1.0 + lam) + h * (lam - 1.0) * curvature;
    a(n + i, i) = -(R[0] * n1 + h * (n2(ke) - n2(ki)));
  }

  // Row i, column j, with the Bessel values of |x_i - x_j| shared by (i,j) and (j,i).
  auto fill = [&](std::size_t i, std::size_t j, const Vec2& d, double r, double logw, const HankelPieces& e,
                  const HankelPieces& in) {
    const double rw = R[(i + n - j) % n];
    auto quad = [&](cplx full, double log_part) { return rw * log_part + h * (full - log_part * logw); };
    const Vec2 nt = disc.scaled_normal(i), nj = disc.scaled_normal(j);
    const double ntd = nt.dot(d), njd = nj.dot(d), ntnj = nt.dot(nj);

    // -(K_e - K_i) phi
    const cplx kd = 0.5 * I * (ke * e.h1reg() - ki * in.h1reg()) * njd / r;
    const double kd1 = -inv2pi * (ke * e.b.j1 - ki * in.b.j1) * njd / r;
    a(i, j) = -quad(kd, kd1);

    // (lambda S_e - S_i) psi
    const cplx sd = 0.5 * I * (lam * e.h0() - in.h0());
    const double sd1 = -inv2pi * (lam * e.b.j0 - in.b.j0);
    a(i, n + j) = quad(sd, sd1);

    // (lambda K'_e - K'_i) psi, row scaled by |x'(t)|
    const cplx kpe = 0.5 * I * ke * e.h1reg() + inv_pi / r;
    const cplx kpi = 0.5 * I * ki * in.h1reg() + inv_pi / r;
    const cplx kp = (lam * kpe - kpi) * (-ntd) / r;
    const double kp1 = -inv2pi * (lam * ke * e.b.j1 - ki * in.b.j1) * (-ntd) / r;
    a(n + i, n + j) = quad(kp, kp1);

    // -(T_e - T_i) phi, row scaled by |x'(t)|
    const double pr = ntd * njd / (r * r);
    const cplx g2 = -0.25 * I * (ke * ke * e.h2reg() - ki * ki * in.h2reg()) - 0.25 * inv_pi * (ke * ke - ki * ki);
    const cplx g1 = 0.25 * I * (ke * e.h1reg() - ki * in.h1reg()) / r;
    const cplx tn = 2.0 * (g2 * pr + g1 * ntnj);
    const double tn1 = inv2pi * ((ke * ke * e.b.j2 - ki * ki * in.b.j2) * pr - (ke * e.b.j1 - ki * in.b.j1) / r * ntnj);
    a(n + i, j) = -quad(tn, tn1);
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 d = disc.nodes[i] - disc.nodes[j];
      const double r = d.norm();
      const double half = std::sin(0.5 * (disc.t[i] - disc.t[j]));
      const double logw = std::log(4.0 * half * half);
      const HankelPieces e{special::kernel_bessel(ke * r)}, in{special::kernel_bessel(ki * r)};
      fill(i, j, d, r, logw, e, in);
      fill(j, i, -d, r, logw, e, in);
    }
  }
  return a;
}

inline Eigen::VectorXcd incident_rhs(const BoundaryDiscretization& disc, const Medium& medium, const PlaneWave& wave) {
  const std::size_t n = disc.size();
  Eigen::VectorXcd rhs(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = wave.gradient(disc.nodes[i], medium.kappa());
    const Vec2 nt = disc.scaled_normal(i);
    rhs(i) = 2.0 * wave.value(disc.nodes[i], medium.kappa());
    rhs(n + i) = 2.0 * (g(0) * nt.x() + g(1) * nt.y());
  }
  return rhs;
}

}  // namespace detail

inline DensitySolution solve_transmission(const ScattererGeometry& geom, const Medium& medium, const PlaneWave& wave,
                                          const BoundaryDiscretization& disc, const SolveOptions& opts = {}) {
  validate(geom);
  DensitySolution sol{disc, medium, wave, {}, {}, 1.0, false};
  const std::size_t n = disc.size();
  if (medium.degenerate()) {
    if (opts.strict) throw DegenerateContrast("solve_transmission: q0 == 1 gives no scattering problem");
    // Without contrast the densities are the incident traces and v_sc = 0.
    const auto rhs = detail::incident_rhs(disc, medium, wave);
    sol.phi = rhs.head(n) / 2.0;
    sol.psi = rhs.tail(n) / 2.0;
    sol.trivial = true;
    return sol;
  }
  const Eigen::MatrixXcd a = detail::assemble_system(disc, medium);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  sol.rcond = lu.rcond();
  if (!(sol.rcond > opts.rcond_threshold))
    throw SingularSystem("solve_transmission: system is numerically singular (rcond estimate " +
                             std::to_string(sol.rcond) + ")",
                         sol.rcond);
  const Eigen::VectorXcd x = lu.solve(detail::incident_rhs(disc, medium, wave));
  sol.phi = x.head(n);
  sol.psi = x.tail(n);
  return sol;
}

}  // namespace cornerscat::scatter
