#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bfred/exact/gaussian.hpp"

namespace bfred::exact {

/// Dense row-major matrix over Q(i). Dimensions are positive.
class ExactMatrix {
 public:
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<GaussianRational> entries);
  /// Row-list literal, e.g. {{1, 2}, {3, 4}}.
  ExactMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  /// Matrix unit E_{ij} (zero-based indices).
  static ExactMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  static ExactMatrix diagonal(std::span<const GaussianRational> values);
  static ExactMatrix column(std::span<const GaussianRational> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const GaussianRational> entries() const noexcept { return data_; }
  std::vector<GaussianRational> column_values(std::size_t c) const;

  bool is_zero() const;
  bool is_identity() const;

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix& operator*=(const GaussianRational& s);

  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(ExactMatrix a, const GaussianRational& s) { return a *= s; }
  friend ExactMatrix operator*(const GaussianRational& s, ExactMatrix a) { return a *= s; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  ExactMatrix operator-() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

  ExactMatrix transpose() const;
  GaussianRational trace() const;
  ExactMatrix pow(unsigned n) const;

  /// Block-diagonal part with respect to the given block sizes.
  ExactMatrix block_diagonal_part(std::span<const std::size_t> blocks) const;

  /// "[[a, b], [c, d]]"
  std::string to_string() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GaussianRational> data_;
};

std::ostream& operator<<(std::ostream& os, const ExactMatrix& m);

}  // namespace bfred::exact
