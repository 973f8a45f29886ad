#include "gradedlc/int_matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace gradedlc {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) { return scalar(n, 1); }

IntMatrix IntMatrix::scalar(std::size_t n, const Integer& value) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

IntMatrix IntMatrix::column(const IntVector& v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& left, const IntMatrix& right) {
  if (left.rows_ != right.rows_) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix m(left.rows_, left.cols_ + right.cols_);
  for (std::size_t r = 0; r < m.rows_; ++r) {
    for (std::size_t c = 0; c < left.cols_; ++c) m(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols_; ++c) m(r, left.cols_ + c) = right(r, c);
  }
  return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix m(top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
  return m;
}

IntMatrix IntMatrix::blocks(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c, const IntMatrix& d) {
  return vstack(hstack(a, b), hstack(c, d));
}

IntVector IntMatrix::column_vector(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row_vector(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::set_column(std::size_t c, const IntVector& v) {
  if (v.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_rows(std::size_t begin, std::size_t end) const {
  IntMatrix m(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r - begin, c) = (*this)(r, c);
  return m;
}

IntMatrix IntMatrix::select_columns(std::size_t begin, std::size_t end) const {
  IntMatrix m(rows_, end - begin);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = begin; c < end; ++c) m(r, c - begin) = (*this)(r, c);
  return m;
}

IntMatrix IntMatrix::pick_rows(std::span<const std::size_t> which) const {
  IntMatrix m(which.size(), cols_);
  for (std::size_t i = 0; i < which.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(which[i], c);
  return m;
}

IntMatrix IntMatrix::pick_columns(std::span<const std::size_t> which) const {
  IntMatrix m(rows_, which.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < which.size(); ++i) m(r, i) = (*this)(r, which[i]);
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: length mismatch");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Integer acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (v[c] != 0 && (*this)(r, c) != 0) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) m(i, j) += x * b(k, j);
    }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix m = a;
  for (auto& x : m.data_) x *= s;
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) out << (c ? ", " : "") << (*this)(r, c).get_str();
    out << ']';
  }
  out << ']';
  return out.str();
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace gradedlc
