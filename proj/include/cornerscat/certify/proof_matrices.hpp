#pragma once

// Square systems from the degree-by-degree induction.
//
// Each row is a helmholtz relation at level M-4 with the degree-M
// coefficients written in the c/b coordinates of order_family_nullity and
// the lower-degree coefficients replaced by what the induction hypothesis
// says about them. Nothing here is transcribed by hand; a row whose
// substitution does not close up (a stray b in a c-system, a surviving
// (q1+q2) term) is a logic error.

#include <cornerscat/certify/order_family.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cornerscat::certify {

struct OddProofSystem {
  exact::QMatrix a;           // coefficients of c_1 .. c_{(M-1)/2}
  exact::QVector b_unit;      // coefficient of q1 q2 eta_{M-4}, per row
  std::vector<RowTag> rows;
};

struct EvenProofSystems {
  exact::QMatrix a;        // columns c_1 .. c_{M/2-1}
  exact::QMatrix a_tilde;  // columns b_{M/2-1} .. b_1
  std::vector<RowTag> a_rows;
  std::vector<RowTag> a_tilde_rows;
};

namespace detail {

struct ParametrizedDegree {
  std::vector<FamilyParameter> parameters;
  std::vector<CoefficientGrid> basis;

  [[nodiscard]] std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t k = 0; k < parameters.size(); ++k)
      if (parameters[k].name == name) return k;
    return std::nullopt;
  }
};

inline ParametrizedDegree parametrize_degree(int order) {
  auto fam = order_family_nullity(order, false);
  const auto anchors = family_anchors(order);
  if (fam.nullity != anchors.size())
    throw std::logic_error("degree " + std::to_string(order) + " family has nullity " + std::to_string(fam.nullity) +
                           ", expected " + std::to_string(anchors.size()));
  for (const auto& p : fam.parameters)
    if (p.name.rfind("free_", 0) == 0)
      throw std::logic_error("degree " + std::to_string(order) + ": anchor set is not a valid coordinate system");
  return {fam.parameters, fam.basis};
}

// Coefficient of every parameter in sum(coeff * a) for the given terms.
inline exact::QVector coefficients_over(const std::vector<Term>& terms, const ParametrizedDegree& deg) {
  exact::QVector out(deg.basis.size());
  for (std::size_t k = 0; k < deg.basis.size(); ++k) out[k] = apply(terms, deg.basis[k]);
  return out;
}

inline std::vector<std::string> names(char prefix, int from, int to, int step) {
  std::vector<std::string> out;
  for (int k = from; step > 0 ? k <= to : k >= to; k += step) out.push_back(prefix + std::to_string(k));
  return out;
}

// Picks the named columns and insists every other parameter has coefficient 0.
inline exact::QVector select_columns(const exact::QVector& coeffs, const ParametrizedDegree& deg,
                                     const std::vector<std::string>& wanted, const RowTag& tag) {
  exact::QVector row;
  std::vector<bool> used(deg.parameters.size(), false);
  for (const auto& w : wanted) {
    auto k = deg.find(w);
    if (!k) throw std::logic_error("missing family parameter " + w);
    row.push_back(coeffs[*k]);
    used[*k] = true;
  }
  for (std::size_t k = 0; k < used.size(); ++k)
    if (!used[k] && !coeffs[k].is_zero())
      throw std::logic_error("helmholtz row (j=" + std::to_string(tag.j) + ", n=" + std::to_string(tag.n) +
                             ", m=" + std::to_string(tag.m) + ") involves " + deg.parameters[k].name);
  return row;
}

inline void check_odd_order(int order, const char* who) {
  if (order < 7 || order % 2 == 0)
    throw BadOrder(std::string(who) + ": order must be odd and >= 7, got " + std::to_string(order));
}

}  // namespace detail

/// A_M and B_M (with eta_{M-4} = 1) from the c-step at odd degree M.
/// The rows read  A_M c = -q1 q2 eta_{M-4} B_M.
inline OddProofSystem build_proof_matrix_odd(int order) {
  detail::check_odd_order(order, "build_proof_matrix_odd");
  const int M = order;
  const auto top = detail::parametrize_degree(M);
  const auto below = odd_degree_family(M - 2);
  const auto base = odd_degree_family(M - 4);
  const auto cols = detail::names('c', 1, (M - 1) / 2, 1);

  std::vector<HelmholtzRelation> rels;
  rels.push_back(helmholtz_relation(2, M - 4, 0));
  for (int k = 0; k <= (M - 5) / 2; ++k) rels.push_back(helmholtz_relation(1, M - 2 * k - 5, 2 * k + 1));

  OddProofSystem sys;
  sys.a = exact::QMatrix(0, cols.size());
  for (const auto& rel : rels) {
    sys.a.append_row(detail::select_columns(detail::coefficients_over(rel.pure, top), top, cols, rel.tag));
    if (!apply(rel.sum_part, below).is_zero())
      throw std::logic_error("(q1+q2) terms do not cancel on the degree " + std::to_string(M - 2) + " family");
    sys.b_unit.push_back(apply(rel.product_part, base));
    sys.rows.push_back(rel.tag);
  }
  return sys;
}

/// G~_M of the b-step at odd degree M (columns b_1 .. b_{(M-3)/2}).
inline exact::QMatrix build_G_tilde(int order) {
  detail::check_odd_order(order, "build_G_tilde");
  const int M = order;
  const auto top = detail::parametrize_degree(M);
  const auto below = odd_degree_family(M - 2);
  const auto base = odd_degree_family(M - 4);
  const auto cols = detail::names('b', 1, (M - 3) / 2, 1);

  exact::QMatrix g(0, cols.size());
  for (int k = 0; k <= (M - 5) / 2; ++k) {
    const auto rel = helmholtz_relation(1, M - 2 * k - 4, 2 * k);
    g.append_row(detail::select_columns(detail::coefficients_over(rel.pure, top), top, cols, rel.tag));
    if (!apply(rel.sum_part, below).is_zero() || !apply(rel.product_part, base).is_zero())
      throw std::logic_error("lower-degree terms survive in a b-step row at degree " + std::to_string(M));
  }
  return g;
}

/// A (c-step) and A~ (b-step) at even degree M >= 6; lower even degrees are
/// already zero by induction, so only the degree-M terms enter.
inline EvenProofSystems build_even_matrices(int order) {
  if (order < 6 || order % 2 == 1)
    throw BadOrder("build_even_matrices: order must be even and >= 6, got " + std::to_string(order));
  const int M = order;
  const auto top = detail::parametrize_degree(M);
  const auto c_cols = detail::names('c', 1, M / 2 - 1, 1);
  const auto b_cols = detail::names('b', M / 2 - 1, 1, -1);

  EvenProofSystems out;
  out.a = exact::QMatrix(0, c_cols.size());
  out.a_tilde = exact::QMatrix(0, b_cols.size());

  std::vector<HelmholtzRelation> a_rels;
  a_rels.push_back(helmholtz_relation(2, M - 4, 0));
  for (int k = 0; k <= (M - 6) / 2; ++k) a_rels.push_back(helmholtz_relation(1, M - 2 * k - 5, 2 * k + 1));
  for (const auto& rel : a_rels) {
    out.a.append_row(detail::select_columns(detail::coefficients_over(rel.pure, top), top, c_cols, rel.tag));
    out.a_rows.push_back(rel.tag);
  }
  for (int k = 0; k <= (M - 4) / 2; ++k) {
    const auto rel = helmholtz_relation(1, 2 * k, M - 2 * k - 4);
    out.a_tilde.append_row(detail::select_columns(detail::coefficients_over(rel.pure, top), top, b_cols, rel.tag));
    out.a_tilde_rows.push_back(rel.tag);
  }
  return out;
}

}  // namespace cornerscat::certify
