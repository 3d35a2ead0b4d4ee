#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bfred/exact/gaussian.hpp"
#include "bfred/exact/matrix.hpp"

namespace bfred::exact {

/// Dense univariate polynomial over Q(i); coefficients are degree-indexed
/// and trailing zeros are trimmed, so the zero polynomial has no coefficients.
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<GaussianRational> coefficients);
  ExactPolynomial(GaussianRational constant);

  static ExactPolynomial x() { return ExactPolynomial({GaussianRational(0), GaussianRational(1)}); }
  static ExactPolynomial monomial(unsigned degree, GaussianRational coefficient = 1);
  /// x - root
  static ExactPolynomial linear(const GaussianRational& root);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<GaussianRational>& coefficients() const noexcept { return coeffs_; }
  GaussianRational coefficient(unsigned k) const;
  const GaussianRational& leading() const;
  bool is_monic() const { return !is_zero() && leading().is_one(); }
  ExactPolynomial monic() const;

  GaussianRational operator()(const GaussianRational& x) const;
  /// Horner evaluation at a square matrix.
  ExactMatrix operator()(const ExactMatrix& a) const;
  /// f(g(x))
  ExactPolynomial compose(const ExactPolynomial& g) const;
  ExactPolynomial derivative() const;
  /// Coefficient-wise complex conjugate.
  ExactPolynomial conj() const;

  ExactPolynomial& operator+=(const ExactPolynomial& o);
  ExactPolynomial& operator-=(const ExactPolynomial& o);
  ExactPolynomial& operator*=(const ExactPolynomial& o);
  friend ExactPolynomial operator+(ExactPolynomial a, const ExactPolynomial& b) { return a += b; }
  friend ExactPolynomial operator-(ExactPolynomial a, const ExactPolynomial& b) { return a -= b; }
  friend ExactPolynomial operator*(ExactPolynomial a, const ExactPolynomial& b) { return a *= b; }
  ExactPolynomial operator-() const;

  friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const ExactPolynomial& a, const ExactPolynomial& b) { return !(a == b); }

  /// Polynomial in `var`, e.g. "x^2 - 2*x".
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<GaussianRational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const ExactPolynomial& p);

/// Euclidean division: f = q*g + r with deg r < deg g.
std::pair<ExactPolynomial, ExactPolynomial> divmod(const ExactPolynomial& f, const ExactPolynomial& g);
ExactPolynomial operator/(const ExactPolynomial& f, const ExactPolynomial& g);
ExactPolynomial operator%(const ExactPolynomial& f, const ExactPolynomial& g);

/// Monic gcd; gcd(0, 0) = 0.
ExactPolynomial gcd(const ExactPolynomial& f, const ExactPolynomial& g);

struct BezoutResult {
  ExactPolynomial u;
  ExactPolynomial v;
  ExactPolynomial gcd;  // monic
};

/// Extended Euclid: u*f + v*g = gcd(f, g). Requires f and g not both zero.
BezoutResult bezout(const ExactPolynomial& f, const ExactPolynomial& g);

/// m = x^k * q with q(0) != 0. Requires m != 0.
std::pair<unsigned, ExactPolynomial> split_at_zero(const ExactPolynomial& m);

/// Yun's square-free decomposition of a nonzero polynomial: pairs
/// (square-free monic factor, multiplicity) with pairwise coprime factors.
std::vector<std::pair<ExactPolynomial, unsigned>> squarefree_decomposition(const ExactPolynomial& f);

}  // namespace bfred::exact
