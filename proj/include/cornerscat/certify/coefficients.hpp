#pragma once

// Index bookkeeping for the Taylor coefficients a^{(j)}_{n,m} of the
// difference field w = u - v around a right corner.

#include <cornerscat/exact/big_rational.hpp>

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerscat::certify {

using exact::BigRational;

struct DegeneratePair : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadOrder : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Two distinct squared wavenumbers q1 (inside) and q2 (outside).
class WavenumberPair {
 public:
  WavenumberPair(BigRational q1, BigRational q2) : q1_(std::move(q1)), q2_(std::move(q2)) {
    if (q1_ == q2_) throw DegeneratePair("wavenumber pair has q1 == q2 (" + q1_.to_string() + ")");
  }
  [[nodiscard]] const BigRational& q1() const { return q1_; }
  [[nodiscard]] const BigRational& q2() const { return q2_; }
  [[nodiscard]] BigRational sum() const { return q1_ + q2_; }
  [[nodiscard]] BigRational product() const { return q1_ * q2_; }

 private:
  BigRational q1_;
  BigRational q2_;
};

/// (j, n, m): component j of the coefficient of x1^n x2^m.
struct CoefficientIndex {
  int j = 1;
  int n = 0;
  int m = 0;

  CoefficientIndex() = default;
  CoefficientIndex(int j_, int n_, int m_) : j(j_), n(n_), m(m_) {
    if (j != 1 && j != 2) throw std::invalid_argument("CoefficientIndex: component must be 1 or 2");
    if (n < 0 || m < 0) throw std::invalid_argument("CoefficientIndex: negative degree");
  }
  [[nodiscard]] int degree() const { return n + m; }
  [[nodiscard]] std::string label() const {
    return "a" + std::to_string(j) + "[" + std::to_string(n) + "," + std::to_string(m) + "]";
  }
  friend auto operator<=>(const CoefficientIndex&, const CoefficientIndex&) = default;
};

/// Number of (j, n, m) with n + m <= order.
inline std::size_t count_unknowns(int order) {
  return order < 0 ? 0 : static_cast<std::size_t>((order + 1) * (order + 2));
}

/// Sparse table of coefficient values truncated at total degree `order`.
/// Missing entries read as zero.
class CoefficientGrid {
 public:
  explicit CoefficientGrid(int order = 0) : order_(order) {}

  [[nodiscard]] int order() const { return order_; }

  void set(const CoefficientIndex& idx, BigRational value) {
    if (idx.degree() > order_)
      throw std::out_of_range("CoefficientGrid: " + idx.label() + " exceeds order " + std::to_string(order_));
    if (value.is_zero())
      values_.erase(idx);
    else
      values_[idx] = std::move(value);
  }

  [[nodiscard]] BigRational get(const CoefficientIndex& idx) const {
    auto it = values_.find(idx);
    return it == values_.end() ? BigRational(0) : it->second;
  }
  [[nodiscard]] BigRational get(int j, int n, int m) const { return get(CoefficientIndex(j, n, m)); }

  [[nodiscard]] const std::map<CoefficientIndex, BigRational>& nonzeros() const { return values_; }
  [[nodiscard]] bool is_zero() const { return values_.empty(); }

  CoefficientGrid& operator*=(const BigRational& s) {
    if (s.is_zero()) {
      values_.clear();
      return *this;
    }
    for (auto& [k, v] : values_) v *= s;
    return *this;
  }

  friend bool operator==(const CoefficientGrid& a, const CoefficientGrid& b) { return a.values_ == b.values_; }

 private:
  int order_;
  std::map<CoefficientIndex, BigRational> values_;
};

/// True when a is a nonzero rational multiple of b (or both are zero).
inline bool proportional(const CoefficientGrid& a, const CoefficientGrid& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto& [key, bval] = *b.nonzeros().begin();
  const BigRational ratio = a.get(key) / bval;
  if (ratio.is_zero()) return false;
  CoefficientGrid scaled = b;
  scaled *= ratio;
  return scaled == a;
}

}  // namespace cornerscat::certify
