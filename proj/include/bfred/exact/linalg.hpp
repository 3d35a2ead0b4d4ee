#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bfred/exact/matrix.hpp"
#include "bfred/exact/polynomial.hpp"

namespace bfred::exact {

using Vector = std::vector<GaussianRational>;

struct EchelonForm {
  ExactMatrix rref;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

/// Reduced row echelon form. Forward elimination is fraction-free (Bareiss
/// over Z[i] after clearing row denominators); pivots are the first nonzero
/// entry met scanning column-major; rational normalization happens last.
EchelonForm row_reduce(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);
GaussianRational determinant(const ExactMatrix& m);
std::optional<ExactMatrix> inverse(const ExactMatrix& m);

/// Kernel basis of m as coordinate vectors of length m.cols(): one vector
/// per free column, with a 1 in that column.
std::vector<Vector> kernel_basis(const ExactMatrix& m);

struct LinearSolution {
  ExactMatrix particular;        // cols(m) x cols(rhs), free variables set to 0
  std::vector<Vector> kernel;    // basis of the solution space of m x = 0
};

/// Solves m * X = rhs. nullopt when the system is inconsistent.
std::optional<LinearSolution> solve_linear(const ExactMatrix& m, const ExactMatrix& rhs);

/// Monic least-degree P with P(a) = 0, from the first linear dependence
/// among I, a, a^2, ...
ExactPolynomial minimal_polynomial(const ExactMatrix& a);

/// det(x I - a).
ExactPolynomial characteristic_polynomial(const ExactMatrix& a);

/// Incrementally maintained span of vectors of a fixed length, with exact
/// membership and coordinate queries relative to the inserted vectors.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(std::size_t length) : length_(length) {}

  std::size_t size() const noexcept { return inserted_; }
  std::size_t length() const noexcept { return length_; }

  /// Coordinates of v with respect to the inserted vectors, or nullopt if
  /// v is outside the span.
  std::optional<Vector> coordinates(const Vector& v) const;
  bool contains(const Vector& v) const { return coordinates(v).has_value(); }
  /// Inserts v if independent; returns whether it was inserted.
  bool insert(const Vector& v);

 private:
  // Reduced rows: rows_[k] has a 1 at pivots_[k] and zeros at the other
  // pivots; combos_[k] expresses rows_[k] in terms of inserted vectors.
  std::size_t length_;
  std::size_t inserted_ = 0;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> combos_;
  void reduce(Vector& v, Vector& combo) const;
};

}  // namespace bfred::exact
