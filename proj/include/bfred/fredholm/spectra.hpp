#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfred/fredholm/classify.hpp"

namespace bfred::fredholm {

using exact::ExactPolynomial;
using exact::GaussianRational;

struct SpectralFactor {
  ExactPolynomial polynomial;  // monic
  unsigned multiplicity = 1;
  /// Linear factors and square-free blocks of degree <= 3 without roots in
  /// Q(i) are irreducible; larger blocks are reported unsplit.
  bool certified_irreducible = true;

  std::optional<GaussianRational> point() const;
};

/// Finite spectrum as a multiset of roots of factors over Q(i).
class AlgebraicPointSet {
 public:
  AlgebraicPointSet() = default;
  /// Factors a nonzero polynomial: roots in Q(i) explicitly, the rest as
  /// square-free blocks.
  static AlgebraicPointSet from_polynomial(const ExactPolynomial& f);

  const std::vector<SpectralFactor>& factors() const noexcept { return factors_; }
  bool empty() const noexcept { return factors_.empty(); }
  std::vector<GaussianRational> explicit_points() const;
  std::vector<SpectralFactor> symbolic_factors() const;
  bool contains(const GaussianRational& z) const;
  /// Product of the distinct factors.
  ExactPolynomial radical() const;
  std::string to_string() const;

  void add(SpectralFactor f);

 private:
  std::vector<SpectralFactor> factors_;
};

/// Same underlying point sets, optionally ignoring 0.
bool same_points(const AlgebraicPointSet& x, const AlgebraicPointSet& y, bool ignore_zero = false);

AlgebraicPointSet spectrum(const Element& a);
/// sigma(T(a)).
AlgebraicPointSet fredholm_spectrum(const Homomorphism& hom, const Element& a);
AlgebraicPointSet weyl_spectrum(const Homomorphism& hom, const Element& a, std::uint64_t seed = 0);
AlgebraicPointSet browder_spectrum(const Homomorphism& hom, const Element& a, std::uint64_t seed = 0);

struct BSpectra {
  AlgebraicPointSet bf, bw, bb, gbf, gbw, gbb;
};

/// All empty for finite algebras. The Drazin invertibility of T(a) - l at
/// each explicit point of sigma(T(a)) is certified on the way.
BSpectra b_spectra(const Homomorphism& hom, const Element& a);

}  // namespace bfred::fredholm
