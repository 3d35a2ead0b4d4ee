#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bfred/spectral/spectral_set.hpp"

namespace bfred::spectral {

/// Diagonal operators on l^2 modulo the diagonals tending to zero. The
/// entries are listed by atoms; T(d) lives in l^inf / c_0, whose spectrum is
/// the set of essential values.
struct FiniteAtom {
  GaussianRational value;
  unsigned multiplicity = 1;
  friend bool operator==(const FiniteAtom&, const FiniteAtom&) = default;
};

/// Value repeated infinitely often.
struct ConstantAtom {
  GaussianRational value;
  friend bool operator==(const ConstantAtom&, const ConstantAtom&) = default;
};

using Atom = std::variant<FiniteAtom, ConstantAtom, Tail, TailFamily>;

struct DiagonalElement {
  std::vector<Atom> atoms;

  static DiagonalElement constant(const GaussianRational& c) { return {{ConstantAtom{c}}}; }
  std::string to_string() const;
  friend bool operator==(const DiagonalElement&, const DiagonalElement&) = default;
};

/// finite, const, tail and family items; repeated finite values add up.
DiagonalElement parse_diagonal(std::string_view text);

/// Closure of the entries.
SpectralSet diag_spectrum(const DiagonalElement& d);
/// Essential values: constants, tail limits and the limit structure of
/// families, repeated values included.
SpectralSet essential_values(const DiagonalElement& d);

struct DiagonalReport {
  SpectralSet sigma;
  SpectralSet sigma_F;
  SpectralSet sigma_BF;   // Lambda minus its poles
  SpectralSet sigma_GBF;  // acc Lambda
  bool fredholm_at_0 = false;
  bool bfredholm_at_0 = false;
  bool riesz = false;
  bool t_algebraic = false;  // Lambda finite
};

/// Throws DefectError if the two B-spectra disagree.
DiagonalReport diag_classify(const DiagonalElement& d);

enum class DiagOp { Add, Mul };

/// Entrywise combination. A lone constant atom acts as a scalar; otherwise
/// atoms are paired by position. ShapeError on mismatched structures.
DiagonalElement diag_arith(const DiagonalElement& a, const DiagonalElement& b, DiagOp op);

}  // namespace bfred::spectral
