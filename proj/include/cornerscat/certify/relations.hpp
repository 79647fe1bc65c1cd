#pragma once

// The four families of linear relations satisfied by the Taylor coefficients
// of w = u - v:
//
//   helmholtz  - fourth-order relation obtained by eliminating v from the two
//                Helmholtz recursions; coefficients are affine in (q1+q2, q1 q2)
//   divergence - (n+1) a1[n+1,m] + (m+1) a2[n,m+1] = 0
//   tangential - a1[n,0] = 0 and a2[0,m] = 0 on the two corner edges
//   curl       - (n+1) a2[n+1,0] = a1[n,1] and a2[1,m] = (m+1) a1[0,m+1]

#include <cornerscat/certify/coefficients.hpp>

#include <string>
#include <vector>

namespace cornerscat::certify {

enum class RelationKind { tangential, curl, divergence, helmholtz };

inline const char* to_string(RelationKind k) {
  switch (k) {
    case RelationKind::tangential: return "tangential";
    case RelationKind::curl: return "curl";
    case RelationKind::divergence: return "divergence";
    case RelationKind::helmholtz: return "helmholtz";
  }
  return "?";
}

/// Where a row came from. For tangential/curl rows `variant` distinguishes
/// the edge (0: x1-axis, 1: x2-axis); j is only meaningful for helmholtz rows.
struct RowTag {
  RelationKind kind;
  int j = 0;
  int n = 0;
  int m = 0;
  int variant = 0;
  friend bool operator==(const RowTag&, const RowTag&) = default;
};

struct Term {
  CoefficientIndex index;
  BigRational coefficient;
};

/// A homogeneous relation sum(coeff * a) = 0 with integer coefficients.
struct Relation {
  RowTag tag;
  std::vector<Term> terms;
};

/// Helmholtz relation split by how the wavenumbers enter:
/// pure + (q1+q2) * sum_part + q1 q2 * product_part = 0.
/// pure terms have degree n+m+4, sum terms n+m+2, the product term n+m.
struct HelmholtzRelation {
  RowTag tag;
  std::vector<Term> pure;
  std::vector<Term> sum_part;
  std::vector<Term> product_part;

  /// Collapses to a single relation for a concrete pair.
  [[nodiscard]] Relation evaluate(const WavenumberPair& pair) const {
    Relation r{tag, pure};
    const BigRational s = pair.sum();
    const BigRational p = pair.product();
    for (const auto& t : sum_part) r.terms.push_back({t.index, t.coefficient * s});
    for (const auto& t : product_part) r.terms.push_back({t.index, t.coefficient * p});
    return r;
  }
};

inline HelmholtzRelation helmholtz_relation(int j, int n, int m) {
  HelmholtzRelation r;
  r.tag = {RelationKind::helmholtz, j, n, m, 0};
  const long n1 = n + 1, n2 = n + 2, n3 = n + 3, n4 = n + 4;
  const long m1 = m + 1, m2 = m + 2, m3 = m + 3, m4 = m + 4;
  r.pure.push_back({{j, n, m + 4}, BigRational(m4 * m3 * m2 * m1)});
  r.pure.push_back({{j, n + 4, m}, BigRational(n4 * n3 * n2 * n1)});
  r.pure.push_back({{j, n + 2, m + 2}, BigRational(2 * n2 * n1 * m2 * m1)});
  r.sum_part.push_back({{j, n + 2, m}, BigRational(n2 * n1)});
  r.sum_part.push_back({{j, n, m + 2}, BigRational(m2 * m1)});
  r.product_part.push_back({{j, n, m}, BigRational(1)});
  return r;
}

inline Relation divergence_relation(int n, int m) {
  return {{RelationKind::divergence, 0, n, m, 0},
          {{{1, n + 1, m}, BigRational(n + 1)}, {{2, n, m + 1}, BigRational(m + 1)}}};
}

/// variant 0: a1[n,0] = 0; variant 1: a2[0,m] = 0 (the degree goes in n resp. m).
inline Relation tangential_relation(int variant, int degree) {
  if (variant == 0) return {{RelationKind::tangential, 0, degree, 0, 0}, {{{1, degree, 0}, BigRational(1)}}};
  return {{RelationKind::tangential, 0, 0, degree, 1}, {{{2, 0, degree}, BigRational(1)}}};
}

/// variant 0 (index n): (n+1) a2[n+1,0] - a1[n,1] = 0
/// variant 1 (index m): a2[1,m] - (m+1) a1[0,m+1] = 0
inline Relation curl_relation(int variant, int index) {
  if (variant == 0) {
    const int n = index;
    return {{RelationKind::curl, 0, n, 0, 0},
            {{{2, n + 1, 0}, BigRational(n + 1)}, {{1, n, 1}, BigRational(-1)}}};
  }
  const int m = index;
  return {{RelationKind::curl, 0, 0, m, 1},
          {{{2, 1, m}, BigRational(1)}, {{1, 0, m + 1}, BigRational(-(m + 1))}}};
}

/// Evaluates sum(coeff * value) of a term list against a grid.
inline BigRational apply(const std::vector<Term>& terms, const CoefficientGrid& grid) {
  BigRational acc;
  for (const auto& t : terms) acc += t.coefficient * grid.get(t.index);
  return acc;
}

}  // namespace cornerscat::certify
