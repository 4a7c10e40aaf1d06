// atlas - learning program abstractions for example-guided synthesis
// Exact rational matrices and Gaussian elimination.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace atlas {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (auto v : row) data_.emplace_back(v);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<Rational>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("row width mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

/// Incremental reduced row echelon form of an augmented system [A | B].
/// Rows are added one at a time; the first row that contradicts the earlier
/// ones marks the system inconsistent.
class EchelonSystem {
 public:
  EchelonSystem(std::size_t unknowns, std::size_t rhs) : n_(unknowns), m_(rhs) {}

  std::size_t unknowns() const { return n_; }
  std::size_t rank() const { return pivots_.size(); }
  bool consistent() const { return consistent_; }
  bool full_rank() const { return rank() == n_; }

  /// Adds the equation lhs . x = rhs. Returns true if the rank grew.
  bool add(std::vector<Rational> lhs, std::vector<Rational> rhs) {
    if (lhs.size() != n_ || rhs.size() != m_) throw std::invalid_argument("equation shape mismatch");
    if (!consistent_) return false;
    std::vector<Rational> row = std::move(lhs);
    row.insert(row.end(), rhs.begin(), rhs.end());
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const auto col = pivots_[k];
      if (row[col] == 0) continue;
      const Rational f = row[col];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (rows_[k][j] != 0) row[j] -= f * rows_[k][j];
    }
    std::size_t lead = n_;
    for (std::size_t j = 0; j < n_; ++j)
      if (row[j] != 0) {
        lead = j;
        break;
      }
    if (lead == n_) {
      for (std::size_t j = n_; j < row.size(); ++j)
        if (row[j] != 0) consistent_ = false;
      return false;
    }
    const Rational inv = 1 / row[lead];
    for (auto& v : row) v *= inv;
    for (auto& other : rows_) {
      if (other[lead] == 0) continue;
      const Rational f = other[lead];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) other[j] -= f * row[j];
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(lead);
    return true;
  }

  /// Right-hand side forced by the current equations for `lhs`, if `lhs` lies
  /// in their row space.
  std::optional<std::vector<Rational>> predict(const std::vector<Rational>& lhs) const {
    std::vector<Rational> row = lhs;
    row.resize(n_ + m_);
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const auto col = pivots_[k];
      if (row[col] == 0) continue;
      const Rational f = row[col];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (rows_[k][j] != 0) row[j] -= f * rows_[k][j];
    }
    for (std::size_t j = 0; j < n_; ++j)
      if (row[j] != 0) return std::nullopt;
    std::vector<Rational> rhs(m_);
    for (std::size_t r = 0; r < m_; ++r) rhs[r] = -row[n_ + r];
    return rhs;
  }

  /// Particular solution as an m x n matrix (one row per right-hand side),
  /// free unknowns set to zero. Empty if inconsistent.
  std::optional<RationalMatrix> solution() const {
    if (!consistent_) return std::nullopt;
    RationalMatrix p(m_, n_);
    for (std::size_t k = 0; k < pivots_.size(); ++k)
      for (std::size_t r = 0; r < m_; ++r) p(r, pivots_[k]) = rows_[k][n_ + r];
    return p;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  bool consistent_ = true;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Solves A . P^T = B exactly. Returns P (shape B.cols x A.cols) or nothing
/// when the system is inconsistent.
inline std::optional<RationalMatrix> solve_linear(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("A and B must have the same number of rows");
  EchelonSystem sys(a.cols(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::vector<Rational> lhs(a.cols()), rhs(b.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) lhs[c] = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) rhs[c] = b(r, c);
    sys.add(std::move(lhs), std::move(rhs));
  }
  return sys.solution();
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace atlas
