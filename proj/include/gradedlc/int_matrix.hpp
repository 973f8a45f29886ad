#pragma once

#include "gradedlc/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gradedlc {

// Dense row-major matrix of exact integers. 0 x m and m x 0 shapes are legal.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix scalar(std::size_t n, const Integer& value);
  static IntMatrix column(const IntVector& v);
  static IntMatrix hstack(const IntMatrix& left, const IntMatrix& right);
  static IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);
  /// Block matrix [[a, b], [c, d]]; block shapes must agree.
  static IntMatrix blocks(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c, const IntMatrix& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column_vector(std::size_t c) const;
  IntVector row_vector(std::size_t r) const;
  void set_column(std::size_t c, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix select_rows(std::size_t begin, std::size_t end) const;
  IntMatrix select_columns(std::size_t begin, std::size_t end) const;
  IntMatrix pick_rows(std::span<const std::size_t> which) const;
  IntMatrix pick_columns(std::span<const std::size_t> which) const;

  bool is_zero() const;
  IntVector apply(const IntVector& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

}  // namespace gradedlc
