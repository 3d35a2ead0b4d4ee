#pragma once

#include <map>
#include <vector>

#include "bfred/exact/gaussian_integer.hpp"
#include "bfred/exact/polynomial.hpp"

namespace bfred::exact {

/// Prime factorization of |n| (n != 0): prime -> exponent. Trial division
/// followed by Pollard rho (Brent variant).
std::map<Integer, unsigned> factor_integer(const Integer& n);

/// Divisors of a nonzero Gaussian integer, one representative per class of
/// associates.
std::vector<GaussianInteger> gaussian_divisors(const GaussianInteger& z);

/// Distinct roots of f lying in Q(i), sorted. f must be nonzero.
std::vector<GaussianRational> gaussian_roots(const ExactPolynomial& f);

/// Distinct rational (real) roots of f, sorted ascending. Works for any
/// Q(i) coefficients: a real x is a root iff it is a root of both the real
/// and the imaginary coefficient parts.
std::vector<Rational> rational_roots(const ExactPolynomial& f);

/// Multiplicity of root r in f (0 if not a root).
unsigned root_multiplicity(const ExactPolynomial& f, const GaussianRational& r);

}  // namespace bfred::exact
