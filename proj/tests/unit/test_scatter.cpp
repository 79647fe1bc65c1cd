#include <cornerscat/scatter/disk_series.hpp>
#include <cornerscat/scatter/far_field.hpp>
#include <cornerscat/scatter/near_field.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

using namespace cornerscat::scatter;

namespace {

constexpr double pi = std::numbers::pi;

DensitySolution solve(const ScattererGeometry& g, const Medium& m, const PlaneWave& w, std::size_t count,
                      double p = 4.0) {
  return solve_transmission(g, m, w, discretize(g, count, p));
}

double rel_l2(const FarFieldPattern& f, const FarFieldPattern& ref) { return l2_distance(f, ref) / l2_norm(ref); }

cplx far_single(const DensitySolution& s, double theta) { return far_field_at(s, {theta})[0]; }

double angle_of(const Vec2& v) { return std::atan2(v.y(), v.x()); }

const Rectangle kRect{Vec2(0.0, 0.0), 1.0, 0.5, 0.0};

}  // namespace

// ---------------------------------------------------------------- geometry

TEST(Geometry, MediumAndWaveValidation) {
  EXPECT_THROW(Medium(0.0, 2.0), InvalidInput);
  EXPECT_THROW(Medium(1.0, -1.0), InvalidInput);
  EXPECT_THROW(Medium(std::nan(""), 2.0), InvalidInput);
  const Medium m(2.0, 4.0);
  EXPECT_EQ(m.lambda(), 0.25);
  EXPECT_DOUBLE_EQ(m.interior_kappa(), 4.0);
  EXPECT_TRUE(Medium(1.0, 1.0).degenerate());
  EXPECT_THROW(PlaneWave(Vec2(1.0, 1e-6)), InvalidInput);
  EXPECT_NO_THROW(PlaneWave::from_angle(2.3));
}

TEST(Geometry, IncidentFieldIsMinusPlaneWave) {
  const auto w = PlaneWave::from_angle(0.4);
  const Vec2 x(0.3, -1.7);
  const double k = 3.0;
  EXPECT_LT(std::abs(w.value(x, k) + std::exp(cplx(0.0, k * x.dot(w.d())))), 1e-15);
}

TEST(Geometry, RectangleValidation) {
  EXPECT_THROW(validate(Rectangle{Vec2::Zero(), 0.0, 1.0, 0.0}), InvalidInput);
  EXPECT_THROW(validate(Rectangle{Vec2::Zero(), 1.0, -1.0, 0.0}), InvalidInput);
  EXPECT_THROW(validate(Rectangle{Vec2::Zero(), 1.0, 1.0, pi}), InvalidInput);
  EXPECT_THROW(validate(Rectangle{Vec2::Zero(), 1.0, 1.0, -0.1}), InvalidInput);
  EXPECT_THROW(validate(Disk{Vec2::Zero(), 0.0}), InvalidInput);
  EXPECT_THROW(validate(ParametricCurve{}), InvalidInput);
}

// ---------------------------------------------------------------- discretize

TEST(Discretize, DiskHasEquispacedArclengthWeights) {
  const auto d = discretize(Disk{Vec2::Zero(), 1.0}, 64);
  ASSERT_EQ(d.size(), 64u);
  for (std::size_t j = 0; j < d.size(); ++j) {
    EXPECT_NEAR(d.weights[j], 2.0 * pi / 64.0, 1e-15);
    EXPECT_NEAR(d.nodes[j].norm(), 1.0, 1e-15);
  }
  const auto d2 = discretize(Disk{Vec2::Zero(), 2.5}, 64);
  EXPECT_NEAR(d2.weights[3], 2.0 * pi / 64.0 * 2.5, 1e-14);
}

TEST(Discretize, RectangleGradingClustersAtCorners) {
  const auto d = discretize(Rectangle{Vec2::Zero(), 1.0, 1.0, 0.0}, 32, 4.0);
  ASSERT_EQ(d.size(), 128u);
  // Side 0: nodes 0..31; nodes 15, 16 straddle the midpoint, node 0 is next to a corner.
  const double mid = (d.nodes[16] - d.nodes[15]).norm();
  const double corner = (d.nodes[1] - d.nodes[0]).norm();
  EXPECT_GT(mid / corner, 10.0);
  // Nodes stay on the boundary and never reach a corner.
  for (const auto& x : d.nodes) {
    EXPECT_NEAR(std::max(std::abs(x.x()), std::abs(x.y())), 1.0, 1e-14);
    EXPECT_FALSE(std::abs(x.x()) == 1.0 && std::abs(x.y()) == 1.0);
  }
}

TEST(Discretize, RectangleSideNormalsAreRotatedAxes) {
  const double phi = 0.7;
  const Rectangle r{Vec2(0.3, -0.2), 1.2, 0.4, phi};
  const auto d = discretize(r, 16);
  const Eigen::Matrix2d rot = rotation(phi);
  const Vec2 axes[4] = {rot * Vec2(0, -1), rot * Vec2(1, 0), rot * Vec2(0, 1), rot * Vec2(-1, 0)};
  for (std::size_t side = 0; side < 4; ++side) {
    for (std::size_t j : {side * 16 + 7, side * 16 + 8}) EXPECT_LT((d.normals[j] - axes[side]).norm(), 1e-14);
    EXPECT_LT((d.tangents[side * 16 + 8] - Vec2(-axes[side].y(), axes[side].x())).norm(), 1e-14);
  }
}

TEST(Discretize, InvariantsHoldForEveryShape) {
  const ParametricCurve ellipse{[](double t) {
    return CurvePoint{Vec2(1.5 * std::cos(t), 0.7 * std::sin(t)), Vec2(-1.5 * std::sin(t), 0.7 * std::cos(t)),
                      Vec2(-1.5 * std::cos(t), -0.7 * std::sin(t))};
  }};
  const std::vector<ScattererGeometry> shapes = {Rectangle{Vec2(1.0, 2.0), 0.8, 0.3, 2.9}, Disk{Vec2(-1.0, 0.5), 0.4},
                                                 ellipse};
  for (const auto& g : shapes) {
    const auto d = discretize(g, 40);
    double area = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      EXPECT_GT(d.weights[j], 0.0);
      EXPECT_NEAR(d.normals[j].norm(), 1.0, 1e-12);
      const Vec2& a = d.nodes[j];
      const Vec2& b = d.nodes[(j + 1) % d.size()];
      area += 0.5 * (a.x() * b.y() - a.y() * b.x());
    }
    EXPECT_GT(area, 0.0) << "nodes must run counter-clockwise";
  }
}

TEST(Discretize, CornerMapMarksClustersOnly) {
  const auto d = discretize(kRect, 32);
  int marked = 0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d.corner_map[j] < 0) continue;
    ++marked;
    const Vec2 c = corners(kRect)[static_cast<std::size_t>(d.corner_map[j])];
    EXPECT_LT((d.nodes[j] - c).norm(), 0.1);
  }
  EXPECT_EQ(marked, 4 * 8);
  EXPECT_TRUE(d.has_corners);
  EXPECT_FALSE(discretize(Disk{}, 32).has_corners);
}

TEST(Discretize, RejectsBadMeshes) {
  EXPECT_THROW(discretize(kRect, 7), BadMesh);
  EXPECT_THROW(discretize(kRect, 16, 1.5), BadMesh);
  EXPECT_THROW(discretize(Disk{}, 4), BadMesh);
  EXPECT_THROW(discretize(Disk{}, 33), BadMesh);
  EXPECT_NO_THROW(discretize(kRect, 8));
}

// ---------------------------------------------------------------- disk series oracle

TEST(DiskSeries, NoContrastGivesZeroPattern) {
  const auto f = disk_series_solution(Medium(2.0, 1.0), 1.0, PlaneWave::from_angle(0.0), 40, 64);
  for (const auto& v : f.values) EXPECT_EQ(v, cplx(0.0));
}

TEST(DiskSeries, LongWavelengthLimitIsDipolar) {
  // With lambda q0 = 1 the monopole cancels at order (kappa R)^2; the dipole
  // coefficient tends to -i pi x^2/4 (lambda - 1)/(lambda + 1), x = kappa R.
  const Medium m(0.05, 2.0);
  const double x = 0.05, lam = m.lambda();
  const auto t = disk_mode_ratios(m, 1.0, 30);
  const cplx t1_limit = cplx(0.0, -pi * x * x / 4.0) * (lam - 1.0) / (lam + 1.0);
  EXPECT_LT(std::abs(t[1] - t1_limit), 1e-2 * std::abs(t1_limit));
  EXPECT_LT(std::abs(t[0]), 1e-2 * std::abs(t[1]));
  const auto f = disk_series_solution(m, 1.0, PlaneWave::from_angle(0.0), 30, 64);
  double peak = 0.0;
  for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
  for (std::size_t k = 0; k < f.size(); ++k)
    EXPECT_NEAR(std::abs(f.values[k]), peak * std::abs(std::cos(f.theta[k])), 2e-2 * peak);
}

TEST(DiskSeries, DoublingTermsChangesNothing) {
  const Medium m(2.0, 4.0);
  const auto w = PlaneWave::from_angle(0.3);
  const int n = default_disk_terms(m, 1.0);
  const auto a = disk_series_solution(m, 1.0, w, n, 64);
  const auto b = disk_series_solution(m, 1.0, w, 2 * n, 64);
  EXPECT_LT(rel_l2(a, b), 1e-12);
}

TEST(DiskSeries, TruncatedSeriesIsRejected) {
  EXPECT_THROW(disk_series_solution(Medium(2.0, 4.0), 1.0, PlaneWave::from_angle(0.0), 5, 64), NoConvergence);
}

// ---------------------------------------------------------------- forward solver vs oracle

TEST(Forward, DiskMatchesSeriesAtTwoHundredFiftySixNodes) {
  const Medium m(2.0, 4.0);
  const PlaneWave w(Vec2(1.0, 0.0));
  const Disk disk{Vec2::Zero(), 1.0};
  const auto ref = disk_series_solution(m, 1.0, w, default_disk_terms(m, 1.0), 64);
  const auto f = evaluate_far(solve(disk, m, w, 256), 64);
  EXPECT_LT(rel_l2(f, ref), 1e-6);
}

TEST(Forward, DiskErrorDropsAtLeastQuadratically) {
  const Medium m(2.0, 4.0);
  const auto w = PlaneWave::from_angle(1.1);
  const Disk disk{Vec2::Zero(), 1.0};
  const auto ref = disk_series_solution(m, 1.0, w, default_disk_terms(m, 1.0), 64);
  double prev = 0.0;
  for (std::size_t n : {16, 24, 32}) {
    const double err = rel_l2(evaluate_far(solve(disk, m, w, n), 64), ref);
    if (prev > 1e-12) {
      EXPECT_LT(err, prev / 2.25) << "n=" << n;
    }
    prev = err;
  }
}

TEST(Forward, OffsetDiskMatchesShiftedSeries) {
  const Medium m(1.5, 2.5);
  const auto w = PlaneWave::from_angle(-0.8);
  const Vec2 c(0.4, -0.9);
  const auto ref = disk_series_solution(m, 0.7, w, default_disk_terms(m, 0.7), 48, c);
  const auto f = evaluate_far(solve(Disk{c, 0.7}, m, w, 96), 48);
  EXPECT_LT(rel_l2(f, ref), 1e-9);
}

TEST(Forward, ParametricCircleMatchesDisk) {
  const Medium m(2.0, 3.0);
  const auto w = PlaneWave::from_angle(0.2);
  const ParametricCurve circle{[](double t) {
    return CurvePoint{Vec2(std::cos(t), std::sin(t)), Vec2(-std::sin(t), std::cos(t)), Vec2(-std::cos(t), -std::sin(t))};
  }};
  const auto a = evaluate_far(solve(circle, m, w, 64), 32);
  const auto b = evaluate_far(solve(Disk{}, m, w, 64), 32);
  EXPECT_LT(l2_distance(a, b), 1e-13);
}

TEST(Forward, NearlyNoContrastScattersNothing) {
  const auto w = PlaneWave::from_angle(0.3);
  const auto f = evaluate_far(solve(kRect, Medium(2.0, 1.0 + 1e-12), w, 128), 64);
  for (const auto& v : f.values) EXPECT_LT(std::abs(v), 1e-8);
}

TEST(Forward, NoContrastIsTrivialOrStrictError) {
  const auto w = PlaneWave::from_angle(0.3);
  const Medium m(2.0, 1.0);
  const auto disc = discretize(kRect, 16);
  EXPECT_THROW(solve_transmission(kRect, m, w, disc, SolveOptions{true}), DegenerateContrast);
  const auto s = solve_transmission(kRect, m, w, disc);
  EXPECT_TRUE(s.trivial);
  EXPECT_EQ(s.phi.size(), static_cast<Eigen::Index>(disc.size()));
  for (const auto& v : evaluate_far(s, 16).values) EXPECT_EQ(v, cplx(0.0));
  const Vec2 x(6.0, -3.0);
  EXPECT_LT(std::abs(evaluate_near(s, {x})[0] - w.value(x, 2.0)), 1e-15);
}

TEST(Forward, DensityLengthsMatchNodeCount) {
  const auto s = solve(kRect, Medium(2.0, 2.0), PlaneWave::from_angle(0.0), 12);
  EXPECT_EQ(s.phi.size(), 48);
  EXPECT_EQ(s.psi.size(), 48);
  EXPECT_GT(s.rcond, 1e-6);
}

TEST(Forward, SingularSystemIsReported) {
  SolveOptions opts;
  opts.rcond_threshold = 2.0;  // no matrix passes
  const auto disc = discretize(kRect, 8);
  try {
    solve_transmission(kRect, Medium(2.0, 2.0), PlaneWave::from_angle(0.0), disc, opts);
    FAIL() << "expected SingularSystem";
  } catch (const SingularSystem& e) {
    EXPECT_GT(e.rcond, 0.0);
    EXPECT_LT(e.rcond, 2.0);
  }
}

TEST(Forward, RectangleSelfConvergesWithOrderAtLeastTwo) {
  const Medium m(2.0, 2.0);
  const auto w = PlaneWave::from_angle(0.3);
  const auto f32 = evaluate_far(solve(kRect, m, w, 32), 64);
  const auto f64 = evaluate_far(solve(kRect, m, w, 64), 64);
  const auto f128 = evaluate_far(solve(kRect, m, w, 128), 64);
  const double e1 = l2_distance(f32, f64), e2 = l2_distance(f64, f128);
  const double order = std::log2(e1 / e2);
  EXPECT_GE(order, 2.0) << "e1=" << e1 << " e2=" << e2;
  EXPECT_LT(e2 / l2_norm(f128), 1e-4);
}

// ---------------------------------------------------------------- far field properties

TEST(FarField, ZeroDensitiesGiveZeroPattern) {
  const auto disc = discretize(kRect, 16);
  const auto n = static_cast<Eigen::Index>(disc.size());
  const DensitySolution s{disc, Medium(2.0, 2.0), PlaneWave::from_angle(0.0), Eigen::VectorXcd::Zero(n),
                          Eigen::VectorXcd::Zero(n)};
  for (const auto& v : evaluate_far(s, 32).values) EXPECT_EQ(v, cplx(0.0));
}

TEST(FarField, DirectionsAreUniform) {
  const auto s = solve(Disk{}, Medium(1.0, 2.0), PlaneWave::from_angle(0.0), 32);
  EXPECT_THROW(evaluate_far(s, 7), InvalidInput);
  const auto f = evaluate_far(s, 64);
  ASSERT_EQ(f.size(), 64u);
  EXPECT_EQ(f.theta[0], 0.0);
  for (std::size_t k = 1; k < f.size(); ++k) EXPECT_NEAR(f.theta[k] - f.theta[k - 1], 2.0 * pi / 64.0, 1e-15);
  EXPECT_LT(f.theta.back(), 2.0 * pi);
}

TEST(FarField, NormalizationMatchesNearFieldAsymptotics) {
  const Medium m(2.0, 2.0);
  const auto s = solve(kRect, m, PlaneWave::from_angle(0.3), 32);
  const NearFieldEvaluator ev(s);
  for (double theta : {0.7, 2.9, 4.4}) {
    const cplx vinf = far_single(s, theta);
    const Vec2 xh(std::cos(theta), std::sin(theta));
    double err[2];
    int i = 0;
    for (double r : {1e3, 1e4}) {
      const cplx approx = ev.scattered_field(r * xh) * std::sqrt(r) * std::exp(cplx(0.0, -m.kappa() * r));
      err[i++] = std::abs(approx - vinf);
    }
    EXPECT_GT(err[0] / err[1], 7.0) << "error must decay like 1/r";
    EXPECT_LT(err[0] / err[1], 13.0);
    EXPECT_LT(err[1] * 1e4, 10.0 * std::abs(vinf) + 1.0);
  }
}

TEST(FarField, VectorFarFieldOfCurlEqualsScalarFarField) {
  // u_sc = (i/kappa) (d2 v_sc, -d1 v_sc); its far field is u_inf(x) x_perp with u_inf = v_inf.
  const Medium m(2.0, 2.0);
  const auto s = solve(kRect, m, PlaneWave::from_angle(1.0), 32);
  const NearFieldEvaluator ev(s);
  const double k = m.kappa();
  for (double theta : {0.4, 2.2, 5.0}) {
    const Vec2 xh(std::cos(theta), std::sin(theta)), perp(-xh.y(), xh.x());
    double err[2];
    int i = 0;
    for (double r : {1e3, 1e4}) {
      const Vec2 x = r * xh;
      const double h = 1e-2;
      auto d = [&](const Vec2& e) {
        return (-ev.scattered_field(x + 2 * h * e) + 8.0 * ev.scattered_field(x + h * e) -
                8.0 * ev.scattered_field(x - h * e) + ev.scattered_field(x - 2 * h * e)) /
               (12.0 * h);
      };
      const cplx d1 = d(Vec2(1, 0)), d2 = d(Vec2(0, 1));
      const cplx scale = std::sqrt(r) * std::exp(cplx(0.0, -k * r));
      const cplx u1 = cplx(0.0, 1.0 / k) * d2 * scale, u2 = cplx(0.0, -1.0 / k) * d1 * scale;
      const cplx along = u1 * perp.x() + u2 * perp.y();
      const cplx radial = u1 * xh.x() + u2 * xh.y();
      err[i++] = std::abs(along - far_single(s, theta));
      EXPECT_LT(std::abs(radial), 50.0 / r);
    }
    EXPECT_LT(err[1], err[0] / 5.0);
    EXPECT_LT(err[1], 1e-3 * std::abs(far_single(s, theta)) + 1e-4);
  }
}

TEST(FarField, ReciprocityOnDisk) {
  const Medium m(2.0, 4.0);
  const Disk disk{Vec2(0.2, -0.1), 1.0};
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * pi);
  for (int trial = 0; trial < 4; ++trial) {
    const double th_x = ang(rng), th_d = ang(rng);
    const auto a = far_single(solve(disk, m, PlaneWave::from_angle(th_d), 128), th_x);
    const auto b = far_single(solve(disk, m, PlaneWave::from_angle(th_x + pi), 128), th_d + pi);
    EXPECT_LT(std::abs(a - b), 1e-6 * std::max(1.0, std::abs(a)));
  }
}

TEST(FarField, ReciprocityImprovesUnderRefinementOnRectangle) {
  const Medium m(2.0, 2.0);
  const Rectangle r{Vec2(0.1, -0.2), 1.0, 0.5, 0.4};
  const double th_x = 2.1, th_d = 0.3;
  double prev = 1e300;
  for (std::size_t n : {16, 32, 64}) {
    const auto a = far_single(solve(r, m, PlaneWave::from_angle(th_d), n), th_x);
    const auto b = far_single(solve(r, m, PlaneWave::from_angle(th_x + pi), n), th_d + pi);
    const double gap = std::abs(a - b);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(FarField, OpticalTheoremOnDiskAndRectangle) {
  // For incident amplitude -1: int |u_inf|^2 = sqrt(8 pi / kappa) Re(e^{i pi/4} u_inf(d)).
  struct Case {
    ScattererGeometry g;
    Medium m;
    std::size_t n;
    double tol;
  };
  const std::vector<Case> cases = {{Disk{}, Medium(2.0, 4.0), 128, 1e-10},
                                   {kRect, Medium(2.0, 2.0), 64, 1e-5},
                                   {Rectangle{Vec2(0.5, 0.5), 0.3, 0.9, 1.2}, Medium(3.0, 0.5), 64, 1e-5}};
  for (const auto& c : cases) {
    const double th_d = 0.9;
    const auto s = solve(c.g, c.m, PlaneWave::from_angle(th_d), c.n);
    const auto f = evaluate_far(s, 256);
    const double lhs = std::pow(l2_norm(f), 2);
    const double rhs =
        std::sqrt(8.0 * pi / c.m.kappa()) * (std::exp(cplx(0.0, 0.25 * pi)) * far_single(s, th_d)).real();
    EXPECT_NEAR(lhs / rhs, 1.0, c.tol);
  }
}

TEST(FarField, TranslationMultipliesByPhase) {
  const Medium m(2.0, 2.0);
  const auto w = PlaneWave::from_angle(0.3);
  const Vec2 t(0.7, -1.3);
  const Rectangle r0{Vec2::Zero(), 1.0, 0.5, 0.2}, r1{t, 1.0, 0.5, 0.2};
  const auto f0 = evaluate_far(solve(r0, m, w, 24), 32);
  const auto f1 = evaluate_far(solve(r1, m, w, 24), 32);
  for (std::size_t k = 0; k < f0.size(); ++k) {
    const Vec2 xh(std::cos(f0.theta[k]), std::sin(f0.theta[k]));
    const cplx expect = f0.values[k] * std::exp(cplx(0.0, m.kappa() * (w.d() - xh).dot(t)));
    EXPECT_LT(std::abs(f1.values[k] - expect), 1e-10);
  }
}

TEST(FarField, RotationRotatesPattern) {
  const Medium m(2.0, 2.0);
  const double alpha = 1.1, th_d = 0.3;
  const Rectangle r0{Vec2(0.2, 0.1), 1.0, 0.5, 0.4};
  const Vec2 c1 = rotation(alpha) * r0.center;
  const Rectangle r1{c1, 1.0, 0.5, r0.phi + alpha};
  const auto s0 = solve(r0, m, PlaneWave::from_angle(th_d), 24);
  const auto s1 = solve(r1, m, PlaneWave::from_angle(th_d + alpha), 24);
  const auto th = uniform_directions(16);
  std::vector<double> rotated(th.size());
  std::transform(th.begin(), th.end(), rotated.begin(), [&](double t) { return t + alpha; });
  const auto a = far_field_at(s0, th), b = far_field_at(s1, rotated);
  for (std::size_t k = 0; k < th.size(); ++k) EXPECT_LT(std::abs(a[k] - b[k]), 1e-10);
}

TEST(FarField, CornerScatteringIsWellAboveNoiseFloor) {
  const std::vector<std::pair<Rectangle, Medium>> cases = {
      {kRect, Medium(2.0, 2.0)},
      {Rectangle{Vec2(0.3, 0.0), 0.4, 0.4, 0.0}, Medium(1.0, 1.5)},
      {Rectangle{Vec2(-0.5, 0.8), 1.5, 0.2, 2.0}, Medium(3.0, 0.5)},
  };
  for (const auto& [r, m] : cases) {
    const auto w = PlaneWave::from_angle(0.3);
    const auto f = evaluate_far(solve(r, m, w, 32), 64);
    const auto g = evaluate_far(solve(r, m, w, 64), 64);
    EXPECT_GT(l2_norm(g), 1e3 * l2_distance(f, g));
  }
}

TEST(FarField, CsvRoundTripIsExact) {
  const auto s = solve(kRect, Medium(2.0, 2.0), PlaneWave::from_angle(0.3), 16);
  const auto f = evaluate_far(s, 64);
  const auto path = (std::filesystem::temp_directory_path() / "cornerscat_far_field_roundtrip.csv").string();
  write_csv(path, f);
  const auto g = read_csv(path);
  std::filesystem::remove(path);
  ASSERT_EQ(g.size(), f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    EXPECT_EQ(g.theta[k], f.theta[k]);
    EXPECT_EQ(g.values[k], f.values[k]);
  }
  std::ostringstream os;
  write_csv(os, f);
  EXPECT_EQ(os.str().substr(0, 12), "theta,re,im\n");
}

TEST(FarField, CsvRejectsWrongHeader) {
  const auto path = (std::filesystem::temp_directory_path() / "cornerscat_bad_header.csv").string();
  {
    std::ofstream os(path);
    os << "theta,real,imag\n0,1,2\n";
  }
  EXPECT_THROW(read_csv(path), std::runtime_error);
  std::filesystem::remove(path);
}

// ---------------------------------------------------------------- near field


TEST(NearField, TransmissionResidualsAtSideMidpoints) {
  const Medium m(2.0, 2.0);
  const auto s = solve(kRect, m, PlaneWave::from_angle(0.3), 128);
  const NearFieldEvaluator ev(s);
  const std::pair<Vec2, Vec2> probes[] = {
      {Vec2(1, 0), Vec2(1, 0)}, {Vec2(0, 0.5), Vec2(0, 1)}, {Vec2(-1, 0), Vec2(-1, 0)}, {Vec2(0, -0.5), Vec2(0, -1)}};
  for (const auto& [mid, n] : probes) {
    const auto t = boundary_traces(ev, s.disc, mid, n);
    EXPECT_LT(std::abs(t.v_out - t.v_in), 1e-4 * std::abs(t.v_out));
    EXPECT_LT(std::abs(t.dn_out - m.lambda() * t.dn_in), 1e-4 * std::abs(t.dn_out));
  }
}

TEST(NearField, HelmholtzResidualInsideAndOutside) {
  const Medium m(2.0, 2.0);
  const auto s = solve(kRect, m, PlaneWave::from_angle(0.3), 64);
  const NearFieldEvaluator ev(s);
  const double h = 2e-3;
  auto residual = [&](const Vec2& x, double k2) {
    const cplx lap = (ev.total_field(x + Vec2(h, 0)) + ev.total_field(x - Vec2(h, 0)) + ev.total_field(x + Vec2(0, h)) +
                      ev.total_field(x - Vec2(0, h)) - 4.0 * ev.total_field(x)) /
                     (h * h);
    return std::abs(lap + k2 * ev.total_field(x)) / std::abs(ev.total_field(x));
  };
  const double k2 = m.kappa() * m.kappa();
  EXPECT_LT(residual(Vec2(0.2, 0.1), k2 * m.q0()), 1e-4);
  EXPECT_LT(residual(Vec2(-0.6, -0.25), k2 * m.q0()), 1e-4);
  EXPECT_LT(residual(Vec2(1.6, 0.9), k2), 1e-4);
  EXPECT_LT(residual(Vec2(-0.3, -1.4), k2), 1e-4);
}

TEST(NearField, InteriorExteriorClassification) {
  const auto s = solve(Rectangle{Vec2(1.0, 1.0), 1.0, 0.5, 0.5}, Medium(2.0, 2.0), PlaneWave::from_angle(0.0), 16);
  const NearFieldEvaluator ev(s);
  EXPECT_TRUE(ev.inside(Vec2(1.0, 1.0)));
  EXPECT_FALSE(ev.inside(Vec2(-1.0, 1.0)));
  EXPECT_FALSE(ev.inside(Vec2(1.0, 3.0)));
  EXPECT_THROW((void)ev.scattered_field(Vec2(1.0, 1.0)), std::invalid_argument);
}

TEST(NearField, PointsTooCloseAreRejected) {
  const auto s = solve(kRect, Medium(2.0, 2.0), PlaneWave::from_angle(0.0), 16);
  const NearFieldEvaluator ev(s);
  EXPECT_THROW((void)ev.total_field(Vec2(1.0 + 1e-4, 0.0)), TooCloseToBoundary);
  EXPECT_THROW((void)ev.total_field(Vec2(1.0, 0.0)), TooCloseToBoundary);
  EXPECT_THROW(evaluate_near(s, {Vec2(0.0, 0.5)}), TooCloseToBoundary);
  EXPECT_NO_THROW((void)ev.total_field(Vec2(1.5, 0.0)));
  EXPECT_THROW((void)ev.total_field(Vec2(std::nan(""), 0.0)), std::invalid_argument);
}

TEST(NearField, FarExteriorPointSeesIncidentWaveWithoutContrast) {
  const auto w = PlaneWave::from_angle(0.3);
  const auto s = solve(kRect, Medium(2.0, 1.0 + 1e-12), w, 32);
  const Vec2 x(8.0, 5.0);
  EXPECT_LT(std::abs(evaluate_near(s, {x})[0] - w.value(x, 2.0)), 1e-7);
}

TEST(NearField, DiskFieldMatchesSeriesOnBothSides) {
  // Interior and exterior total fields of a disk against the separation-of-variables solution.
  const Medium m(2.0, 4.0);
  const auto w = PlaneWave::from_angle(0.0);
  const auto s = solve(Disk{}, m, w, 128);
  const NearFieldEvaluator ev(s);
  const int nt = default_disk_terms(m, 1.0);
  const auto t = disk_mode_ratios(m, 1.0, nt);
  const double ke = m.kappa(), ki = m.interior_kappa();
  auto series = [&](const Vec2& x) {
    const double r = x.norm(), th = angle_of(x);
    cplx acc = 0.0;
    const auto je = cornerscat::special::bessel_j_array(nt + 1, ke * r);
    const auto ye = cornerscat::special::bessel_y_array(nt + 1, ke * r);
    const auto ji = cornerscat::special::bessel_j_array(nt + 1, ki * r);
    const auto jeR = cornerscat::special::bessel_j_array(nt + 1, ke);
    const auto yeR = cornerscat::special::bessel_y_array(nt + 1, ke);
    const auto jiR = cornerscat::special::bessel_j_array(nt + 1, ki);
    for (int n = 0; n <= nt; ++n) {
      const cplx in_coef = -std::pow(cplx(0.0, 1.0), n) * (n == 0 ? 1.0 : 2.0) * std::cos(n * th);
      const cplx a = in_coef * t[static_cast<std::size_t>(n)];
      if (r > 1.0) {
        acc += in_coef * je[n] + a * cplx(je[n], ye[n]);
      } else {
        // Continuity at r = 1 fixes the interior coefficient.
        const cplx b = (in_coef * jeR[n] + a * cplx(jeR[n], yeR[n])) / jiR[n];
        acc += b * ji[n];
      }
    }
    return acc;
  };
  for (const Vec2& x : {Vec2(1.5, 0.2), Vec2(-0.3, 2.0), Vec2(0.3, -0.4), Vec2(-0.6, 0.1)}) {
    const cplx want = series(x);
    EXPECT_LT(std::abs(ev.total_field(x) - want), 1e-9 * std::max(1.0, std::abs(want))) << x.transpose();
  }
}
