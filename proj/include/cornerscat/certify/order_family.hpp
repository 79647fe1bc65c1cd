#pragma once

// Solution families of a single total degree M.
//
// The divergence, tangential and curl relations only couple coefficients of
// equal total degree. Restricted to degree M they leave a family of
// coefficient vectors parametrized by M-2 free values, which the corner
// argument names c_k (the chain starting at a2[M,0]) and b_k.

#include <cornerscat/certify/relations.hpp>
#include <cornerscat/exact/elimination.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace cornerscat::certify {

struct FamilyParameter {
  std::string name;        // "c1", "b2", ...
  CoefficientIndex anchor; // coefficient that equals the parameter
};

struct OrderFamily {
  int order = 0;
  std::size_t nullity = 0;
  std::vector<FamilyParameter> parameters;  // one per basis grid
  std::vector<CoefficientGrid> basis;       // basis[k] has parameter k = 1, others 0
};

/// The c/b anchors used to coordinatize the degree-M family.
inline std::vector<FamilyParameter> family_anchors(int order) {
  const int M = order;
  std::vector<FamilyParameter> c, b;
  if (M % 2 == 1) {
    c.push_back({"c1", {2, M, 0}});
    for (int k = 2; k <= (M - 3) / 2; ++k) c.push_back({"c" + std::to_string(k), {1, M - 2 * k + 1, 2 * k - 1}});
    if ((M - 1) / 2 >= 2) c.push_back({"c" + std::to_string((M - 1) / 2), {1, 0, M}});
    for (int k = 1; k <= (M - 3) / 2; ++k) b.push_back({"b" + std::to_string(k), {1, M - 2 * k, 2 * k}});
  } else {
    c.push_back({"c1", {2, M, 0}});
    for (int k = 2; k <= M / 2 - 1; ++k) c.push_back({"c" + std::to_string(k), {1, M - 2 * k + 1, 2 * k - 1}});
    for (int k = 1; k <= M / 2 - 2; ++k) b.push_back({"b" + std::to_string(k), {1, M - 2 * k, 2 * k}});
    if (M / 2 - 1 >= 1) b.push_back({"b" + std::to_string(M / 2 - 1), {1, 0, M}});
  }
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

/// Relations that involve only degree-M coefficients.
inline std::vector<Relation> same_degree_relations(int order) {
  const int M = order;
  std::vector<Relation> rels;
  rels.push_back(tangential_relation(0, M));
  rels.push_back(tangential_relation(1, M));
  rels.push_back(curl_relation(0, M - 1));
  rels.push_back(curl_relation(1, M - 1));
  for (int n = 0; n <= M - 1; ++n) rels.push_back(divergence_relation(n, M - 1 - n));
  return rels;
}

/// Helmholtz rows at level M-4 restricted to their degree-M terms, i.e. with
/// every lower-degree coefficient set to zero.
inline std::vector<Relation> top_level_helmholtz_relations(int order) {
  std::vector<Relation> rels;
  const int s = order - 4;
  for (int n = 0; n <= s; ++n)
    for (int j = 1; j <= 2; ++j) {
      auto h = helmholtz_relation(j, n, s - n);
      rels.push_back({h.tag, h.pure});
    }
  return rels;
}

namespace detail {

// Solves the relations over the 2(M+1) degree-M unknowns. Anchor columns are
// placed last so they become the free variables whenever they can be.
inline OrderFamily solve_degree_family(int order, const std::vector<Relation>& rels) {
  const int M = order;
  const auto anchors = family_anchors(M);
  std::vector<CoefficientIndex> cols;
  for (int j = 1; j <= 2; ++j)
    for (int n = M; n >= 0; --n) {
      CoefficientIndex idx(j, n, M - n);
      bool is_anchor = std::any_of(anchors.begin(), anchors.end(), [&](const auto& a) { return a.anchor == idx; });
      if (!is_anchor) cols.push_back(idx);
    }
  // Reverse so c1 lands in the last column.
  for (auto it = anchors.rbegin(); it != anchors.rend(); ++it) cols.push_back(it->anchor);

  auto column_of = [&](const CoefficientIndex& idx) -> std::size_t {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), idx) - cols.begin());
  };

  exact::QMatrix mat(0, cols.size());
  for (const auto& rel : rels) {
    exact::QVector row(cols.size());
    for (const auto& t : rel.terms) {
      if (t.index.degree() != M) continue;
      row[column_of(t.index)] += t.coefficient;
    }
    mat.append_row(row);
  }

  const auto red = exact::rref(mat);
  const auto kernel = exact::nullspace_basis(red, cols.size());

  OrderFamily fam;
  fam.order = M;
  fam.nullity = kernel.size();
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (std::find(red.pivots.begin(), red.pivots.end(), c) == red.pivots.end()) free_cols.push_back(c);
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    const auto& v = kernel[k];
    const std::size_t free_col = free_cols[k];
    FamilyParameter param{"free_" + cols[free_col].label(), cols[free_col]};
    for (const auto& a : anchors)
      if (a.anchor == cols[free_col]) param.name = a.name;
    CoefficientGrid g(M);
    for (std::size_t c = 0; c < cols.size(); ++c) g.set(cols[c], v[c]);
    fam.parameters.push_back(param);
    fam.basis.push_back(std::move(g));
  }
  return fam;
}

}  // namespace detail

/// Degree-M solution family of the same-degree relations. With
/// `with_helmholtz_rows`, the helmholtz rows at level M-4 are imposed as
/// well, with all lower-degree coefficients taken as zero.
inline OrderFamily order_family_nullity(int order, bool with_helmholtz_rows = false) {
  if (order < 3) throw BadOrder("order_family_nullity: order must be >= 3, got " + std::to_string(order));
  auto rels = same_degree_relations(order);
  if (with_helmholtz_rows && order >= 4) {
    auto extra = top_level_helmholtz_relations(order);
    rels.insert(rels.end(), extra.begin(), extra.end());
  }
  return detail::solve_degree_family(order, rels);
}

/// The one-parameter odd-degree family that survives the argument at degree
/// M, normalized so that a2[M,0] = 1.
inline CoefficientGrid odd_degree_family(int order) {
  if (order < 3 || order % 2 == 0) throw BadOrder("odd_degree_family: order must be odd and >= 3");
  auto fam = order_family_nullity(order, true);
  if (fam.nullity != 1)
    throw std::logic_error("odd_degree_family: expected a one-parameter family at degree " + std::to_string(order) +
                           ", found nullity " + std::to_string(fam.nullity));
  CoefficientGrid g = fam.basis.front();
  const auto lead = g.get(2, order, 0);
  if (lead.is_zero()) throw std::logic_error("odd_degree_family: a2[M,0] vanishes on the family");
  g *= exact::BigRational(1) / lead;
  return g;
}

}  // namespace cornerscat::certify
