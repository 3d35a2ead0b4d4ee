#pragma once

#include <vector>

#include "bfred/exact/gaussian.hpp"

namespace bfred::exact {

/// Element of Z[i]. Used by fraction-free elimination and root finding.
struct GaussianInteger {
  Integer re{0};
  Integer im{0};

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  Integer norm() const { return re * re + im * im; }
  GaussianInteger conj() const { return {re, -im}; }

  friend GaussianInteger operator+(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianInteger operator-(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianInteger& a, const GaussianInteger& b) {
    return a.re == b.re && a.im == b.im;
  }

  GaussianRational to_rational() const { return {Rational(re), Rational(im)}; }
};

/// Writes a / b into quotient when b divides a in Z[i]; returns false otherwise.
bool exact_divide(const GaussianInteger& a, const GaussianInteger& b, GaussianInteger& quotient);

/// Euclidean division with rounding to the nearest Gaussian integer.
GaussianInteger rounded_quotient(const GaussianInteger& a, const GaussianInteger& b);
GaussianInteger gaussian_gcd(GaussianInteger a, GaussianInteger b);

/// Least common multiple of all denominators of the listed values.
Integer common_denominator(const std::vector<GaussianRational>& values);

}  // namespace bfred::exact
