#pragma once

#include <cornerscat/certify/relations.hpp>
#include <cornerscat/exact/qmatrix.hpp>

#include <map>
#include <string>
#include <vector>

namespace cornerscat::certify {

/// All relations among the coefficients of total degree <= order, assembled
/// as one exact matrix. Columns are the unknowns a^{(j)}_{n,m}.
struct TruncatedSystem {
  int order = 0;
  exact::QMatrix matrix;
  std::vector<CoefficientIndex> columns;
  std::map<CoefficientIndex, std::size_t> column_of;
  std::vector<RowTag> row_tags;
};

namespace detail {

// Highest degree first; within a degree, j then n. Putting the top-degree
// unknowns on the left keeps the elimination of the helmholtz rows local.
inline std::vector<CoefficientIndex> truncated_columns(int order) {
  std::vector<CoefficientIndex> cols;
  cols.reserve(count_unknowns(order));
  for (int d = order; d >= 0; --d)
    for (int j = 1; j <= 2; ++j)
      for (int n = d; n >= 0; --n) cols.emplace_back(j, n, d - n);
  return cols;
}

inline void append_relation(TruncatedSystem& sys, const Relation& rel) {
  exact::QVector row(sys.columns.size());
  for (const auto& t : rel.terms) {
    auto it = sys.column_of.find(t.index);
    if (it == sys.column_of.end())
      throw std::logic_error("relation references " + t.index.label() + " beyond order " + std::to_string(sys.order));
    row[it->second] += t.coefficient;
  }
  sys.matrix.append_row(row);
  sys.row_tags.push_back(rel.tag);
}

}  // namespace detail

/// Rows, in order: tangential (n <= M, m <= M), curl (resulting degree <= M),
/// divergence (n+m <= M-1) and helmholtz for j = 1, 2 (n+m <= M-4); the last
/// two blocks sorted by n+m, then n.
inline TruncatedSystem build_truncated_system(int order, const WavenumberPair& pair) {
  if (order < 4) throw BadOrder("build_truncated_system: order must be >= 4, got " + std::to_string(order));
  TruncatedSystem sys;
  sys.order = order;
  sys.columns = detail::truncated_columns(order);
  for (std::size_t c = 0; c < sys.columns.size(); ++c) sys.column_of[sys.columns[c]] = c;
  sys.matrix = exact::QMatrix(0, sys.columns.size());

  for (int d = 0; d <= order; ++d) detail::append_relation(sys, tangential_relation(0, d));
  for (int d = 0; d <= order; ++d) detail::append_relation(sys, tangential_relation(1, d));
  for (int n = 0; n + 1 <= order; ++n) detail::append_relation(sys, curl_relation(0, n));
  for (int m = 0; m + 1 <= order; ++m) detail::append_relation(sys, curl_relation(1, m));
  for (int s = 0; s <= order - 1; ++s)
    for (int n = 0; n <= s; ++n) detail::append_relation(sys, divergence_relation(n, s - n));
  for (int s = 0; s <= order - 4; ++s)
    for (int n = 0; n <= s; ++n)
      for (int j = 1; j <= 2; ++j) detail::append_relation(sys, helmholtz_relation(j, n, s - n).evaluate(pair));
  return sys;
}

}  // namespace cornerscat::certify
