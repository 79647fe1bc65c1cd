#pragma once

#include <cornerscat/certify/coefficients.hpp>

#include <utility>

namespace cornerscat::certify {

/// Recovers the coefficients of u and v from those of a = u - v:
///   v[n,m] = ((n+1)(n+2) a[n+2,m] + (m+1)(m+2) a[n,m+2] + q1 a[n,m]) / (q2 - q1)
///   u[n,m] = same with q2 in place of q1
/// Both grids are defined for n + m <= M - 2.
inline std::pair<CoefficientGrid, CoefficientGrid> reconstruct_uv(const CoefficientGrid& a,
                                                                  const WavenumberPair& pair) {
  const int out_order = a.order() - 2;
  if (out_order < 0) throw BadOrder("reconstruct_uv: grid order must be >= 2");
  const BigRational inv = BigRational(1) / (pair.q2() - pair.q1());
  CoefficientGrid u(out_order), v(out_order);
  for (int j = 1; j <= 2; ++j)
    for (int d = 0; d <= out_order; ++d)
      for (int n = 0; n <= d; ++n) {
        const int m = d - n;
        const BigRational lap = BigRational((n + 1) * (n + 2)) * a.get(j, n + 2, m) +
                                BigRational((m + 1) * (m + 2)) * a.get(j, n, m + 2);
        const BigRational an = a.get(j, n, m);
        v.set({j, n, m}, (lap + pair.q1() * an) * inv);
        u.set({j, n, m}, (lap + pair.q2() * an) * inv);
      }
  return {std::move(u), std::move(v)};
}

}  // namespace cornerscat::certify
