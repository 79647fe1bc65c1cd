#pragma once

// Nelder-Mead simplex minimization with standard coefficients
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Stops when the
// simplex diameter (largest vertex distance) drops below `tolerance` or the
// evaluation budget is spent.

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace cornerscat::inverse {

struct NelderMeadOptions {
  double tolerance = 1e-6;
  double initial_step = 0.05;
  std::size_t max_evaluations = 2000;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t evaluations = 0;
  double diameter = 0.0;
  bool converged = false;
};

inline double simplex_diameter(const std::vector<Eigen::VectorXd>& s) {
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) d = std::max(d, (s[i] - s[j]).norm());
  return d;
}

inline NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                                    const NelderMeadOptions& opt = {}) {
  const auto n = static_cast<std::size_t>(x0.size());
  std::vector<Eigen::VectorXd> s(n + 1, x0);
  std::vector<double> fv(n + 1);
  std::size_t evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i < n; ++i) s[i + 1](static_cast<Eigen::Index>(i)) += opt.initial_step;
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(s[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<Eigen::VectorXd> s2;
    std::vector<double> f2;
    for (auto i : order) {
      s2.push_back(s[i]);
      f2.push_back(fv[i]);
    }
    s = std::move(s2);
    fv = std::move(f2);
  };

  sort();
  while (evals < opt.max_evaluations && simplex_diameter(s) >= opt.tolerance) {
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) centroid += s[i];
    centroid /= static_cast<double>(n);
    const Eigen::VectorXd& worst = s[n];

    const Eigen::VectorXd xr = centroid + (centroid - worst);
    const double fr = eval(xr);
    if (fr < fv[0]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst);
      const double fe = eval(xe);
      if (fe < fr) {
        s[n] = xe;
        fv[n] = fe;
      } else {
        s[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      s[n] = xr;
      fv[n] = fr;
    } else {
      const bool outside = fr < fv[n];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                         : Eigen::VectorXd(centroid + 0.5 * (worst - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : fv[n])) {
        s[n] = xc;
        fv[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          s[i] = s[0] + 0.5 * (s[i] - s[0]);
          fv[i] = eval(s[i]);
        }
      }
    }
    sort();
  }
  NelderMeadResult r;
  r.x = s[0];
  r.value = fv[0];
  r.evaluations = evals;
  r.diameter = simplex_diameter(s);
  r.converged = r.diameter < opt.tolerance;
  return r;
}

}  // namespace cornerscat::inverse
