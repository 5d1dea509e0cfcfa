#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mbs {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_diagonal() const;
  IntegerMatrix transpose() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  /// Plain-text debug form: one line per row, entries separated by spaces.
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * M * V = S with U, V unimodular and S diagonal with d1 | d2 | ...
struct SmithDecomposition {
  IntegerMatrix diagonal;
  IntegerMatrix left;   // U, rows x rows
  IntegerMatrix right;  // V, cols x cols

  /// Nonzero diagonal entries in order.
  std::vector<Integer> invariant_factors() const;
  std::size_t rank() const { return invariant_factors().size(); }
};

/// Row/column reduction with smallest-magnitude pivoting. Deterministic.
SmithDecomposition smith_normal_form(const IntegerMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination. Square input only.
Integer determinant(const IntegerMatrix& m);

}  // namespace mbs
