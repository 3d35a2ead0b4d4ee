#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bfred/exact/linalg.hpp"

namespace bfred::algebra {

using exact::ExactMatrix;
using exact::GaussianRational;
using exact::Vector;

class Element;
class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Unital subalgebra of the ambient n x n matrices, given by a basis.
/// Construction verifies independence, that 1 is in the span, and closure.
class FiniteAlgebra : public std::enable_shared_from_this<FiniteAlgebra> {
 public:
  static AlgebraPtr create(std::size_t ambient_dim, std::vector<ExactMatrix> basis);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<ExactMatrix>& basis() const noexcept { return basis_; }

  /// c[i][j] = coordinates of basis_i * basis_j. Computed on first use.
  const std::vector<std::vector<Vector>>& structure_constants() const;

  std::optional<Vector> coordinates(const ExactMatrix& m) const;
  bool contains(const ExactMatrix& m) const { return coordinates(m).has_value(); }

  /// Throws VerificationError if m is outside the algebra.
  Element element(const ExactMatrix& m) const;
  Element from_coords(Vector coords) const;
  Element basis_element(std::size_t k) const;
  Element one() const;
  Element zero() const;

  bool is_commutative() const;

 private:
  FiniteAlgebra(std::size_t ambient_dim, std::vector<ExactMatrix> basis);

  std::size_t ambient_dim_;
  std::vector<ExactMatrix> basis_;
  exact::IncrementalSpan span_;
  mutable std::once_flag constants_once_;
  mutable std::vector<std::vector<Vector>> constants_;
};

/// Member of a FiniteAlgebra; carries both coordinates and the matrix.
class Element {
 public:
  Element(AlgebraPtr algebra, Vector coords, ExactMatrix matrix);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Vector& coords() const noexcept { return coords_; }
  const ExactMatrix& matrix() const noexcept { return matrix_; }

  bool is_zero() const { return matrix_.is_zero(); }
  bool is_one() const { return matrix_.is_identity(); }
  bool is_idempotent() const;
  bool commutes_with(const Element& o) const;
  Element pow(unsigned n) const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const GaussianRational& s);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const GaussianRational& s) { return a *= s; }
  friend Element operator*(const GaussianRational& s, Element a) { return a *= s; }
  friend Element operator*(const Element& a, const Element& b);
  Element operator-() const;
  /// a + s*1
  Element shifted(const GaussianRational& s) const;

  friend bool operator==(const Element& a, const Element& b) { return a.matrix_ == b.matrix_; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

 private:
  void check_same_algebra(const Element& o) const;

  AlgebraPtr algebra_;
  Vector coords_;
  ExactMatrix matrix_;
};

/// Two-sided ideal, given by coordinate vectors in the algebra basis.
class Ideal {
 public:
  /// Verifies closure under left and right multiplication by the basis.
  Ideal(AlgebraPtr algebra, std::vector<Vector> basis);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  std::vector<Element> elements() const;

  bool contains(const Element& a) const;
  bool contains_coords(const Vector& v) const { return span_.contains(v); }

  /// True iff some power I^m (m <= dim + 1) of the ideal is zero.
  bool is_nilpotent() const;
  /// Least m with I^m = 0, if nilpotent.
  std::optional<unsigned> nilpotency_index() const;

 private:
  AlgebraPtr algebra_;
  std::vector<Vector> basis_;
  exact::IncrementalSpan span_;
};

/// Unital multiplicative linear map between finite algebras, acting on
/// coordinates by map_matrix (target dim x source dim).
class Homomorphism {
 public:
  Homomorphism(AlgebraPtr source, AlgebraPtr target, ExactMatrix map_matrix);

  /// Map matrix computed from the images of the source basis matrices.
  template <class F>
  static Homomorphism from_function(AlgebraPtr source, AlgebraPtr target, F&& f) {
    ExactMatrix m(target->dim(), source->dim());
    for (std::size_t k = 0; k < source->dim(); ++k) {
      Element image = target->element(f(source->basis()[k]));
      for (std::size_t r = 0; r < target->dim(); ++r) m(r, k) = image.coords()[r];
    }
    return Homomorphism(std::move(source), std::move(target), std::move(m));
  }

  const AlgebraPtr& source() const noexcept { return source_; }
  const AlgebraPtr& target() const noexcept { return target_; }
  const ExactMatrix& map_matrix() const noexcept { return map_; }
  const Ideal& kernel() const noexcept { return *kernel_; }

  Element operator()(const Element& a) const;
  bool in_kernel(const Element& a) const { return (*this)(a).is_zero(); }

  bool is_surjective() const noexcept { return surjective_; }
  /// Idempotent lifting is constructive exactly when the kernel is nilpotent.
  bool has_lifting_oracle() const noexcept { return kernel_nilpotent_; }

  /// Canonical section: the preimage with free coordinates set to zero.
  std::optional<Element> preimage(const Element& b) const;

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  ExactMatrix map_;
  std::shared_ptr<const Ideal> kernel_;
  bool surjective_ = false;
  bool kernel_nilpotent_ = false;
};

/// Smallest unital algebra of n x n matrices containing the generators.
/// cap = 0 means n^2.
AlgebraPtr build_algebra(std::size_t n, const std::vector<ExactMatrix>& generators, std::size_t cap = 0);

std::optional<Element> invert_in_algebra(const Element& a);

struct Quotient {
  AlgebraPtr algebra;       // left regular representation of source / kernel
  Homomorphism projection;  // source -> algebra
  std::vector<std::size_t> complement;  // source coordinates used as coset basis
  /// Canonical section: coset basis vector j maps to source basis complement[j].
  Element section(const Element& x) const;
};

Quotient quotient(const Homomorphism& hom);

struct LiftResult {
  Element p;
  unsigned steps;  // cubic refinement steps performed
};

/// Idempotent p in the source with hom(p) = q, from the given preimage or
/// the canonical one, by p <- 3p^2 - 2p^3. Requires a nilpotent kernel.
LiftResult lift_idempotent(const Homomorphism& hom, const Element& q, std::optional<Element> start = std::nullopt);

std::string describe(const Element& a);

}  // namespace bfred::algebra
